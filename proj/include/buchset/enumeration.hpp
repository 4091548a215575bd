#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "buchset/buchweitz.hpp"
#include "buchset/semigroup.hpp"

namespace buchset {

/// Shape of a finite Buchweitz set together with the sign history of its
/// beta function.
struct ShapeClass {
    bool is_interval = true;
    /// Number of maximal runs of consecutive members (blocks of n with
    /// beta(n) >= 1). is_interval iff <= 1.
    std::int64_t peak_count = 0;
    /// Run-compressed signs of beta(2), beta(3), ... over {-, 0, +},
    /// extended until the tail sign settles, with a trailing '*' meaning
    /// the last sign repeats forever.
    std::string sign_pattern;
};

/// Pre: result is finite (classification of cofinite results throws
/// std::invalid_argument).
ShapeClass classify_shape(const BuchweitzResult& result, const BetaProfile& profile);

struct SurveyRow {
    std::int64_t genus = 0;
    std::int64_t count = 0;
    std::int64_t nonempty_buchweitz = 0;
    std::int64_t max_beta2 = std::numeric_limits<std::int64_t>::min();
    std::int64_t non_interval_count = 0;
    std::int64_t max_buch_size = 0;
    std::map<std::string, std::int64_t> shape_histogram;

    void merge(const SurveyRow& other);
};

/// Depth-first walk of the semigroup tree: the root is N and children
/// remove one minimal generator above the Frobenius number, so every
/// numerical semigroup of genus <= g_max is visited exactly once.
/// Returns per-genus counts (index = genus). Pre: g_max >= 0.
std::vector<std::int64_t> enumerate_by_genus(
    std::int64_t g_max, const std::function<void(const NumericalSemigroup&)>& visit);
std::vector<std::int64_t> enumerate_by_genus(std::int64_t g_max);

struct SurveyOptions {
    int workers = 1;
    /// Genus at which subtrees are handed to the worker pool.
    std::int64_t split_genus = 8;
    /// Empty disables checkpointing; otherwise completed subtrees are
    /// persisted here and a rerun resumes past them.
    std::string checkpoint_path;
    /// Flush the checkpoint after this many newly surveyed semigroups.
    std::int64_t checkpoint_every = 1000;
};

struct SurveyReport {
    std::int64_t g_max = 0;
    std::vector<SurveyRow> rows;  ///< genus 2..g_max, in order
    /// One JSON object per semigroup with nonempty Buchweitz set:
    /// {"generators": [...], "gapset": [...], "buch": [...], "beta_head": [...]}
    std::vector<std::string> counterexamples;
};

/// Computes Buchweitz set and shape for every semigroup of genus in
/// [2, g_max] and aggregates per genus. Deterministic: any worker count
/// yields a byte-identical report. Pre: g_max >= 2.
SurveyReport survey(std::int64_t g_max, const SurveyOptions& opts = {});

/// CSV rows matching the report schema:
/// genus,count,nonempty_buchweitz,max_beta2,non_interval_count,max_buch_size
std::string survey_csv(const SurveyReport& report);

/// JSON sidecar mapping genus -> {sign_pattern: count}.
std::string survey_shapes_json(const SurveyReport& report);

}  // namespace buchset
