#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "buchset/buchweitz.hpp"
#include "buchset/enumeration.hpp"
#include "buchset/families.hpp"
#include "buchset/intset.hpp"
#include "buchset/semigroup.hpp"

using nlohmann::ordered_json;

namespace {

// exit codes: 0 ok, 2 bad input, 3 verification mismatch, 4 checkpoint error
constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitVerifyFail = 3;
constexpr int kExitCheckpoint = 4;

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const std::int64_t v = std::stoll(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
        out.push_back(v);
    }
    return out;
}

// "4", "1..10", or "1,3,7"
std::vector<std::int64_t> parse_k_spec(const std::string& text) {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const std::int64_t lo = std::stoll(text.substr(0, dots));
        const std::int64_t hi = std::stoll(text.substr(dots + 2));
        if (hi < lo) throw std::invalid_argument("empty range '" + text + "'");
        std::vector<std::int64_t> out;
        for (std::int64_t k = lo; k <= hi; ++k) out.push_back(k);
        return out;
    }
    return parse_int_list(text);
}

ordered_json buch_to_json(const buchset::BuchweitzResult& r) {
    ordered_json j;
    j["kind"] = r.kind == buchset::BuchweitzResult::Kind::Finite ? "finite" : "cofinite";
    j["head"] = r.head;
    if (r.kind == buchset::BuchweitzResult::Kind::Cofinite) j["cofinite_from"] = r.cofinite_from;
    return j;
}

ordered_json profile_to_json(const buchset::BetaProfile& p) {
    ordered_json j;
    j["values_from_2"] = std::vector<std::int64_t>(
        p.values.size() > 1 ? p.values.begin() + 1 : p.values.end(), p.values.end());
    j["tail_slope"] = p.tail_slope;
    j["tail_intercept"] = p.tail_intercept;
    j["tail_start"] = p.tail_start;
    return j;
}

std::string buch_human(const buchset::BuchweitzResult& r) {
    if (r.kind == buchset::BuchweitzResult::Kind::Cofinite && r.head.empty() &&
        r.cofinite_from == 2)
        return "all n >= 2";
    return r.to_string();
}

std::string join(const std::vector<std::int64_t>& v, const char* sep = ",") {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << sep;
        os << v[i];
    }
    return os.str();
}

void print_beta_human(std::ostream& os, const buchset::BetaProfile& p) {
    if (p.tail_start > 2) {
        os << "beta(n), n = 2.." << p.tail_start - 1 << ":";
        for (std::size_t i = 1; i < p.values.size(); ++i) os << ' ' << p.values[i];
        os << "\n";
    }
    os << "tail: beta(n) = " << p.tail_slope << "*n + " << p.tail_intercept
       << " for n >= " << std::max<std::int64_t>(p.tail_start - 1, 1) << "\n";
}

// ---------------------------------------------------------------------------
// info

struct InfoArgs {
    std::string gens, gaps, spec, format = "human";
};

int run_info(InfoArgs args) {
    // positional "gens: a1,a2,..." / "gaps: g1,g2,..." forms
    if (!args.spec.empty()) {
        std::string text = args.spec;
        text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
        if (text.rfind("gens:", 0) == 0)
            args.gens = text.substr(5);
        else if (text.rfind("gaps:", 0) == 0)
            args.gaps = text.substr(5);
        else {
            std::cerr << "info: spec must start with 'gens:' or 'gaps:'\n";
            return kExitBadInput;
        }
    }
    if (args.gens.empty() == args.gaps.empty()) {
        std::cerr << "info: give exactly one of --gens or --gaps\n";
        return kExitBadInput;
    }
    buchset::NumericalSemigroup s =
        !args.gens.empty()
            ? buchset::NumericalSemigroup::from_generators(parse_int_list(args.gens))
            : buchset::NumericalSemigroup::from_gapset(
                  buchset::FiniteIntSet::from_values(parse_int_list(args.gaps)));

    const buchset::BuchweitzResult buch = buchset::buchweitz_set_of_semigroup(s);
    const bool has_profile = s.genus() >= 2;
    buchset::BetaProfile profile;
    if (has_profile) profile = buchset::beta_profile(s.gapset());

    if (args.format == "json") {
        ordered_json j;
        j["generators"] = s.minimal_generators();
        j["gapset"] = s.gapset().values();
        j["m"] = s.multiplicity();
        j["f"] = s.frobenius();
        j["c"] = s.conductor();
        j["g"] = s.genus();
        j["q"] = s.depth();
        if (s.genus() >= 1)
            j["symmetric"] = is_symmetric(s);
        else
            j["symmetric"] = nullptr;
        j["buchweitz"] = buch_to_json(buch);
        if (has_profile) j["beta"] = profile_to_json(profile);
        std::cout << j.dump() << "\n";
        return kExitOk;
    }

    std::cout << "generators: " << join(s.minimal_generators()) << "\n"
              << "gapset:     " << s.gapset().to_string() << "\n"
              << "m = " << s.multiplicity() << "  f = " << s.frobenius()
              << "  c = " << s.conductor() << "  g = " << s.genus() << "  q = " << s.depth()
              << "\n"
              << "symmetric:  "
              << (s.genus() >= 1 ? (is_symmetric(s) ? "yes" : "no") : "n/a (genus 0)") << "\n"
              << "Buch(S) =   " << buch_human(buch) << "\n";
    if (has_profile)
        print_beta_human(std::cout, profile);
    else
        std::cout << "beta(n) = " << (s.genus() == 0 ? "2n-1" : "1") << " for all n >= 1\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// buch

struct BuchArgs {
    std::string set, format = "human";
};

int run_buch(const BuchArgs& args) {
    const std::vector<std::int64_t> vals = parse_int_list(args.set);
    const buchset::FiniteIntSet a = buchset::make_set(vals);
    const buchset::BuchweitzResult r = buchset::buchweitz_set(a);
    const bool has_profile = a.size() >= 2;
    buchset::BetaProfile profile;
    if (has_profile) profile = buchset::beta_profile(a);

    if (args.format == "json") {
        ordered_json j;
        j["set"] = a.values();
        j["buchweitz"] = buch_to_json(r);
        if (has_profile) j["beta"] = profile_to_json(profile);
        std::cout << j.dump() << "\n";
        return kExitOk;
    }
    std::cout << "A =       " << a.to_string() << "  (size " << a.size() << ")\n"
              << "Buch(A) = " << buch_human(r) << "\n";
    if (has_profile)
        print_beta_human(std::cout, profile);
    else
        std::cout << "beta(n) = " << (a.empty() ? "2n-1" : "1") << " for all n >= 1\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// family

struct FamilyArgs {
    std::string name;
    std::string k_spec = "1";
    std::int64_t n_extra = 10;
    std::string format = "human";
};

int run_family(const FamilyArgs& args) {
    const buchset::Family fam = buchset::family_from_name(args.name);
    const std::vector<std::int64_t> ks = parse_k_spec(args.k_spec);
    if (ks.empty()) {
        std::cerr << "family: empty k list\n";
        return kExitBadInput;
    }
    bool all_ok = true;
    for (const std::int64_t k : ks) {
        const buchset::FamilySpec spec = buchset::build_family(fam, k);
        const buchset::VerificationReport rep = buchset::verify_family(spec, args.n_extra);
        all_ok = all_ok && rep.match;
        if (args.format == "json") {
            ordered_json j;
            j["family"] = buchset::family_name(rep.family);
            j["k"] = rep.k;
            j["predicted"] = {{"lo", rep.predicted_lo}, {"hi", rep.predicted_hi}};
            j["computed"] = buch_to_json(rep.computed);
            j["match"] = rep.match;
            j["first_mismatch"] =
                rep.match ? ordered_json(nullptr) : ordered_json(rep.first_mismatch);
            std::cout << j.dump() << "\n";
        } else {
            std::cout << buchset::family_name(rep.family) << " k=" << k << ": "
                      << (rep.match ? "PASS" : "FAIL") << "  Buch = "
                      << rep.computed.to_string() << "  predicted = {" << rep.predicted_lo
                      << ".." << rep.predicted_hi << "}";
            if (!rep.match) std::cout << "  (" << rep.first_mismatch << ")";
            std::cout << "\n";
        }
    }
    return all_ok ? kExitOk : kExitVerifyFail;
}

// ---------------------------------------------------------------------------
// survey

struct SurveyArgs {
    std::int64_t g_max = 8;
    int workers = 1;
    std::int64_t split_genus = 8;
    std::string checkpoint;
    std::int64_t checkpoint_every = 1000;
    std::string csv_out = "-";
    std::string shapes_out;
    std::string cex_out = "-";
    std::string format = "csv";
    bool force = false;
};

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

int run_survey(const SurveyArgs& args) {
    if (args.g_max < 2) {
        std::cerr << "survey: need --g-max >= 2\n";
        return kExitBadInput;
    }
    // counts grow ~x1.6 per genus; keep accidental week-long runs behind a flag
    if (args.g_max > 20 && !args.force) {
        std::cerr << "survey: --g-max " << args.g_max
                  << " exceeds the guard of 20; pass --force if you mean it\n";
        return kExitBadInput;
    }
    if (args.g_max > 25)
        std::cerr << "survey: warning: --g-max " << args.g_max
                  << " is far past desk scale; expect a very long run\n";

    buchset::SurveyOptions opts;
    opts.workers = args.workers;
    opts.split_genus = args.split_genus;
    opts.checkpoint_path = args.checkpoint;
    opts.checkpoint_every = args.checkpoint_every;
    const buchset::SurveyReport report = buchset::survey(args.g_max, opts);

    if (args.format == "json") {
        std::ostringstream os;
        for (const buchset::SurveyRow& r : report.rows) {
            ordered_json j;
            j["genus"] = r.genus;
            j["count"] = r.count;
            j["nonempty_buchweitz"] = r.nonempty_buchweitz;
            j["max_beta2"] = r.max_beta2;
            j["non_interval_count"] = r.non_interval_count;
            j["max_buch_size"] = r.max_buch_size;
            os << j.dump() << "\n";
        }
        write_text(args.csv_out, os.str());
    } else if (args.format == "human") {
        std::ostringstream os;
        os << "genus  count  nonempty  max_beta2  non_interval  max_size\n";
        for (const buchset::SurveyRow& r : report.rows) {
            os << r.genus << "  " << r.count << "  " << r.nonempty_buchweitz << "  "
               << r.max_beta2 << "  " << r.non_interval_count << "  " << r.max_buch_size
               << "\n";
        }
        write_text(args.csv_out, os.str());
    } else {
        write_text(args.csv_out, buchset::survey_csv(report));
    }

    if (!args.shapes_out.empty()) write_text(args.shapes_out, buchset::survey_shapes_json(report));

    std::ostringstream cex;
    for (const std::string& line : report.counterexamples) cex << line << "\n";
    write_text(args.cex_out, cex.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Buchweitz sets, beta profiles and sumset growth of finite integer sets "
                 "and numerical semigroups"};
    app.require_subcommand(1);

    InfoArgs info;
    CLI::App* info_cmd = app.add_subcommand(
        "info", "Invariants, symmetry, Buchweitz set and beta profile of a semigroup");
    info_cmd->add_option("spec", info.spec, "'gens: a1,a2,...' or 'gaps: g1,g2,...'");
    info_cmd->add_option("--gens", info.gens, "comma-separated generators");
    info_cmd->add_option("--gaps", info.gaps, "comma-separated gapset");
    info_cmd->add_option("--format", info.format, "human|json")
        ->check(CLI::IsMember({"human", "json"}));

    BuchArgs buch;
    CLI::App* buch_cmd =
        app.add_subcommand("buch", "Buchweitz set of an arbitrary finite integer set");
    buch_cmd->add_option("--set", buch.set, "comma-separated integers")->required();
    buch_cmd->add_option("--format", buch.format, "human|json")
        ->check(CLI::IsMember({"human", "json"}));

    FamilyArgs family;
    CLI::App* family_cmd = app.add_subcommand(
        "family", "Verify an interval family (P2..P6, komeda) against its closed forms");
    family_cmd->add_option("name", family.name, "family name")->required();
    family_cmd->add_option("--k", family.k_spec, "parameter: N, lo..hi, or comma list");
    family_cmd->add_option("--n-extra", family.n_extra, "extra beta indices past the interval");
    family_cmd->add_option("--format", family.format, "human|json")
        ->check(CLI::IsMember({"human", "json"}));

    SurveyArgs survey;
    CLI::App* survey_cmd = app.add_subcommand(
        "survey", "Enumerate all semigroups up to a genus bound and survey Buchweitz sets");
    survey_cmd->add_option("--g-max", survey.g_max, "genus bound (>= 2)")->required();
    survey_cmd->add_option("--workers", survey.workers, "worker threads (default 1)");
    survey_cmd->add_option("--split-genus", survey.split_genus,
                           "genus at which subtrees go to the pool (default 8)");
    survey_cmd->add_option("--checkpoint", survey.checkpoint, "checkpoint file for resuming");
    survey_cmd->add_option("--checkpoint-every", survey.checkpoint_every,
                           "semigroups between checkpoint flushes");
    survey_cmd->add_option("--csv", survey.csv_out, "CSV/report destination ('-' = stdout)");
    survey_cmd->add_option("--shapes", survey.shapes_out, "shape-histogram JSON sidecar path");
    survey_cmd->add_option("--cex", survey.cex_out,
                           "counterexample JSONL destination ('-' = stdout)");
    survey_cmd->add_option("--format", survey.format, "csv|json|human")
        ->check(CLI::IsMember({"csv", "json", "human"}));
    survey_cmd->add_flag("--force", survey.force, "allow --g-max past the guard of 20");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (app.got_subcommand(info_cmd)) return run_info(info);
        if (app.got_subcommand(buch_cmd)) return run_buch(buch);
        if (app.got_subcommand(family_cmd)) return run_family(family);
        if (app.got_subcommand(survey_cmd)) return run_survey(survey);
    } catch (const buchset::checkpoint_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckpoint;
    } catch (const buchset::closure_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const buchset::window_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
