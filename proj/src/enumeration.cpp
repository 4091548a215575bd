#include "buchset/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace buchset {

namespace {

using nlohmann::ordered_json;

std::int64_t ceil_div_pos(std::int64_t a, std::int64_t b) {
    // b > 0
    std::int64_t q = a / b;
    if (a % b != 0 && a > 0) ++q;
    return q;
}

// ---------------------------------------------------------------------------
// semigroup tree

// Membership window wide enough for every minimal generator at genus
// <= g_max: f <= 2g-1, m <= g+1, and minimal generators are <= c+m-1.
std::int64_t tree_limit(std::int64_t g_max) { return 3 * g_max + 8; }

struct TreeNode {
    detail::BitWindow member;
    std::int64_t m = 1;
    std::int64_t f = -1;
    std::int64_t g = 0;
};

TreeNode root_node(std::int64_t limit) {
    TreeNode n;
    n.member = detail::BitWindow(limit);
    for (std::int64_t i = 0; i < limit; ++i) n.member.set(i);
    return n;
}

// Minimal generators above the Frobenius number; removing one keeps the
// set closed, and each removal bumps the genus by one.
std::vector<std::int64_t> right_generators(const TreeNode& n) {
    const std::int64_t c = n.f + 1;
    const std::int64_t hi = std::min(std::max(c + n.m - 1, n.m), n.member.width() - 1);
    std::vector<std::int64_t> out;
    for (std::int64_t x = std::max<std::int64_t>(n.f + 1, 1); x <= hi; ++x) {
        bool minimal = true;
        for (std::int64_t y = n.m; 2 * y <= x; ++y) {
            if (n.member.test(y) && n.member.test(x - y)) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(x);
    }
    return out;
}

TreeNode child_node(const TreeNode& n, std::int64_t x) {
    TreeNode ch;
    ch.member = n.member;
    ch.member.clear(x);
    ch.f = x;
    ch.g = n.g + 1;
    ch.m = n.m;
    if (x == n.m)
        while (!ch.member.test(ch.m)) ++ch.m;
    return ch;
}

std::vector<std::int64_t> gap_values(const TreeNode& n) {
    std::vector<std::int64_t> gaps;
    gaps.reserve(static_cast<std::size_t>(n.g));
    for (std::int64_t x = 1; x <= n.f; ++x)
        if (!n.member.test(x)) gaps.push_back(x);
    return gaps;
}

// ---------------------------------------------------------------------------
// survey aggregation

struct Aggregate {
    std::vector<SurveyRow> rows;  // genus 2..g_max
    std::vector<std::string> cex;
    std::int64_t visited = 0;
};

std::vector<SurveyRow> blank_rows(std::int64_t g_max) {
    std::vector<SurveyRow> rows(static_cast<std::size_t>(g_max - 1));
    for (std::int64_t g = 2; g <= g_max; ++g) rows[static_cast<std::size_t>(g - 2)].genus = g;
    return rows;
}

std::string counterexample_line(const std::vector<std::int64_t>& gaps,
                                const BuchweitzResult& res, const BetaProfile& profile) {
    const NumericalSemigroup s = semigroup_from_gap_values_unchecked(gaps);
    ordered_json j;
    j["generators"] = s.minimal_generators();
    j["gapset"] = gaps;
    j["buch"] = res.head;
    j["beta_head"] = std::vector<std::int64_t>(profile.values.begin() + 1, profile.values.end());
    return j.dump();
}

void process_gapset(const TreeNode& node, std::vector<SurveyRow>& rows,
                    std::vector<std::string>& cex) {
    if (node.g < 2) return;
    const std::vector<std::int64_t> gaps = gap_values(node);
    const FiniteIntSet gapset = FiniteIntSet::from_values(gaps);
    const BetaProfile profile = beta_profile(gapset);
    const BuchweitzResult res = buchweitz_from_profile(profile);
    if (res.kind != BuchweitzResult::Kind::Finite)
        throw std::logic_error("survey: cofinite Buchweitz set at genus >= 2");
    const ShapeClass shape = classify_shape(res, profile);

    SurveyRow& row = rows[static_cast<std::size_t>(node.g - 2)];
    row.count += 1;
    row.max_beta2 = std::max(row.max_beta2, profile.beta_at(2));
    row.shape_histogram[shape.sign_pattern] += 1;
    if (!res.head.empty()) {
        row.nonempty_buchweitz += 1;
        row.max_buch_size = std::max(row.max_buch_size,
                                     static_cast<std::int64_t>(res.head.size()));
        if (!shape.is_interval) row.non_interval_count += 1;
        cex.push_back(counterexample_line(gaps, res, profile));
    }
}

// Survey of the strict descendants of `root`, genus capped at g_max.
Aggregate survey_subtree(const TreeNode& root, std::int64_t g_max) {
    Aggregate agg;
    agg.rows = blank_rows(g_max);
    auto dfs = [&](auto&& self, const TreeNode& n) -> void {
        process_gapset(n, agg.rows, agg.cex);
        ++agg.visited;
        if (n.g == g_max) return;
        for (std::int64_t x : right_generators(n)) self(self, child_node(n, x));
    };
    if (root.g < g_max)
        for (std::int64_t x : right_generators(root)) dfs(dfs, child_node(root, x));
    return agg;
}

// ---------------------------------------------------------------------------
// checkpoint

ordered_json row_to_json(const SurveyRow& r) {
    ordered_json j;
    j["genus"] = r.genus;
    j["count"] = r.count;
    j["nonempty_buchweitz"] = r.nonempty_buchweitz;
    j["max_beta2"] = r.max_beta2;
    j["non_interval_count"] = r.non_interval_count;
    j["max_buch_size"] = r.max_buch_size;
    ordered_json shapes = ordered_json::object();
    for (const auto& [pat, cnt] : r.shape_histogram) shapes[pat] = cnt;
    j["shapes"] = shapes;
    return j;
}

SurveyRow row_from_json(const ordered_json& j) {
    SurveyRow r;
    r.genus = j.at("genus").get<std::int64_t>();
    r.count = j.at("count").get<std::int64_t>();
    r.nonempty_buchweitz = j.at("nonempty_buchweitz").get<std::int64_t>();
    r.max_beta2 = j.at("max_beta2").get<std::int64_t>();
    r.non_interval_count = j.at("non_interval_count").get<std::int64_t>();
    r.max_buch_size = j.at("max_buch_size").get<std::int64_t>();
    for (const auto& [pat, cnt] : j.at("shapes").items())
        r.shape_histogram[pat] = cnt.get<std::int64_t>();
    return r;
}

void write_checkpoint(const std::string& path, std::int64_t g_max, std::int64_t split,
                      std::size_t root_count, const std::vector<Aggregate>& results,
                      const std::vector<char>& done) {
    ordered_json j;
    j["version"] = 1;
    j["g_max"] = g_max;
    j["split_genus"] = split;
    j["root_count"] = root_count;
    ordered_json completed = ordered_json::object();
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (!done[i]) continue;
        ordered_json e;
        e["visited"] = results[i].visited;
        ordered_json rows = ordered_json::array();
        for (const SurveyRow& r : results[i].rows) rows.push_back(row_to_json(r));
        e["rows"] = rows;
        e["cex"] = results[i].cex;
        completed[std::to_string(i)] = e;
    }
    j["completed"] = completed;

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw checkpoint_error("cannot write checkpoint at " + tmp);
        out << j.dump();
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw checkpoint_error("cannot replace checkpoint at " + path);
}

void load_checkpoint(const std::string& path, std::int64_t g_max, std::int64_t split,
                     std::size_t root_count, std::vector<Aggregate>& results,
                     std::vector<char>& done) {
    std::ifstream in(path);
    if (!in) return;  // nothing to resume
    ordered_json j;
    try {
        in >> j;
        if (j.at("version").get<int>() != 1) throw checkpoint_error("unknown checkpoint version");
        if (j.at("g_max").get<std::int64_t>() != g_max ||
            j.at("split_genus").get<std::int64_t>() != split ||
            j.at("root_count").get<std::size_t>() != root_count)
            throw checkpoint_error("checkpoint belongs to a different survey configuration");
        for (const auto& [key, e] : j.at("completed").items()) {
            const std::size_t i = std::stoull(key);
            if (i >= root_count) throw checkpoint_error("checkpoint root index out of range");
            Aggregate agg;
            agg.visited = e.at("visited").get<std::int64_t>();
            for (const auto& rj : e.at("rows")) agg.rows.push_back(row_from_json(rj));
            if (agg.rows.size() != static_cast<std::size_t>(g_max - 1))
                throw checkpoint_error("checkpoint row block has the wrong shape");
            for (const auto& c : e.at("cex")) agg.cex.push_back(c.get<std::string>());
            results[i] = std::move(agg);
            done[i] = 1;
        }
    } catch (const checkpoint_error&) {
        throw;
    } catch (const std::exception& ex) {
        throw checkpoint_error(std::string("corrupt checkpoint at ") + path + ": " + ex.what());
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// public surface

void SurveyRow::merge(const SurveyRow& other) {
    count += other.count;
    nonempty_buchweitz += other.nonempty_buchweitz;
    max_beta2 = std::max(max_beta2, other.max_beta2);
    non_interval_count += other.non_interval_count;
    max_buch_size = std::max(max_buch_size, other.max_buch_size);
    for (const auto& [pat, cnt] : other.shape_histogram) shape_histogram[pat] += cnt;
}

ShapeClass classify_shape(const BuchweitzResult& result, const BetaProfile& profile) {
    if (result.kind != BuchweitzResult::Kind::Finite)
        throw std::invalid_argument("classify_shape: defined for finite results only");
    ShapeClass s;
    s.peak_count = 0;
    for (std::size_t i = 0; i < result.head.size(); ++i)
        if (i == 0 || result.head[i] != result.head[i - 1] + 1) ++s.peak_count;
    s.is_interval = s.peak_count <= 1;

    // walk the signs until the tail sign has settled for good
    std::int64_t n_end = profile.tail_start;
    const std::int64_t sl = profile.tail_slope, t = profile.tail_intercept;
    if (sl > 0) n_end = std::max(n_end, ceil_div_pos(1 - t, sl));
    if (sl < 0) n_end = std::max(n_end, ceil_div_pos(1 + t, -sl));
    std::string pat;
    for (std::int64_t n = 2; n <= n_end; ++n) {
        const std::int64_t v = profile.beta_at(n);
        const char c = v >= 1 ? '+' : (v <= -1 ? '-' : '0');
        if (pat.empty() || pat.back() != c) pat.push_back(c);
    }
    pat.push_back('*');
    s.sign_pattern = pat;
    return s;
}

std::vector<std::int64_t> enumerate_by_genus(
    std::int64_t g_max, const std::function<void(const NumericalSemigroup&)>& visit) {
    if (g_max < 0) throw std::invalid_argument("enumerate_by_genus: need g_max >= 0");
    std::vector<std::int64_t> counts(static_cast<std::size_t>(g_max + 1), 0);
    auto dfs = [&](auto&& self, const TreeNode& n) -> void {
        ++counts[static_cast<std::size_t>(n.g)];
        if (visit) visit(semigroup_from_gap_values_unchecked(gap_values(n)));
        if (n.g == g_max) return;
        for (std::int64_t x : right_generators(n)) self(self, child_node(n, x));
    };
    dfs(dfs, root_node(tree_limit(g_max)));
    return counts;
}

std::vector<std::int64_t> enumerate_by_genus(std::int64_t g_max) {
    return enumerate_by_genus(g_max, nullptr);
}

SurveyReport survey(std::int64_t g_max, const SurveyOptions& opts) {
    if (g_max < 2) throw std::invalid_argument("survey: need g_max >= 2");
    const std::int64_t split = std::clamp<std::int64_t>(opts.split_genus, 0, g_max);

    SurveyReport report;
    report.g_max = g_max;
    report.rows = blank_rows(g_max);

    // shallow pass: everything at genus <= split, collecting the subtree
    // roots for the pool in DFS order
    std::vector<TreeNode> roots;
    std::vector<std::string> shallow_cex;
    auto dfs = [&](auto&& self, const TreeNode& n) -> void {
        process_gapset(n, report.rows, shallow_cex);
        if (n.g == split) {
            if (split < g_max) roots.push_back(n);
            return;
        }
        for (std::int64_t x : right_generators(n)) self(self, child_node(n, x));
    };
    dfs(dfs, root_node(tree_limit(g_max)));

    std::vector<Aggregate> results(roots.size());
    std::vector<char> done(roots.size(), 0);
    if (!opts.checkpoint_path.empty())
        load_checkpoint(opts.checkpoint_path, g_max, split, roots.size(), results, done);

    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (!done[i]) pending.push_back(i);

    std::atomic<std::size_t> cursor{0};
    std::mutex mu;
    std::int64_t since_flush = 0;
    std::exception_ptr first_error;
    auto work = [&] {
        for (;;) {
            const std::size_t slot = cursor.fetch_add(1);
            if (slot >= pending.size()) return;
            const std::size_t i = pending[slot];
            Aggregate agg;
            try {
                agg = survey_subtree(roots[i], g_max);
            } catch (...) {
                const std::lock_guard<std::mutex> lk(mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
            const std::lock_guard<std::mutex> lk(mu);
            results[i] = std::move(agg);
            done[i] = 1;
            since_flush += results[i].visited;
            if (!opts.checkpoint_path.empty() && since_flush >= opts.checkpoint_every) {
                write_checkpoint(opts.checkpoint_path, g_max, split, roots.size(), results, done);
                since_flush = 0;
            }
        }
    };

    const int workers = std::max(1, opts.workers);
    if (workers == 1 || pending.size() <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        const int n_threads = static_cast<int>(
            std::min<std::size_t>(static_cast<std::size_t>(workers), pending.size()));
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    if (!opts.checkpoint_path.empty() && !roots.empty())
        write_checkpoint(opts.checkpoint_path, g_max, split, roots.size(), results, done);

    // deterministic merge in root order
    report.counterexamples = std::move(shallow_cex);
    for (std::size_t i = 0; i < results.size(); ++i) {
        for (std::size_t r = 0; r < report.rows.size(); ++r)
            report.rows[r].merge(results[i].rows[r]);
        report.counterexamples.insert(report.counterexamples.end(), results[i].cex.begin(),
                                      results[i].cex.end());
    }
    return report;
}

std::string survey_csv(const SurveyReport& report) {
    std::ostringstream os;
    os << "genus,count,nonempty_buchweitz,max_beta2,non_interval_count,max_buch_size\n";
    for (const SurveyRow& r : report.rows) {
        os << r.genus << ',' << r.count << ',' << r.nonempty_buchweitz << ',' << r.max_beta2
           << ',' << r.non_interval_count << ',' << r.max_buch_size << '\n';
    }
    return os.str();
}

std::string survey_shapes_json(const SurveyReport& report) {
    ordered_json j = ordered_json::object();
    for (const SurveyRow& r : report.rows) {
        ordered_json shapes = ordered_json::object();
        for (const auto& [pat, cnt] : r.shape_histogram) shapes[pat] = cnt;
        j[std::to_string(r.genus)] = shapes;
    }
    return j.dump(2) + "\n";
}

}  // namespace buchset
