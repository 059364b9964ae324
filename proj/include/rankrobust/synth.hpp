#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rankrobust/normalize.hpp"
#include "rankrobust/ranked_list.hpp"
#include "rankrobust/taxonomy.hpp"

namespace rankrobust::synth {

enum class PerturbKind { Identity, AdjacentSwap, TopSwap, TailReplace, Truncate, Shuffle };

/// A deterministic edit of a ranked list.
///   AdjacentSwap(j): swap ranks j and j+1
///   TopSwap: swap ranks 1 and 2
///   TailReplace(m): replace the last m items with items not in the list
///   Truncate(m): keep the top m
///   Shuffle: uniform permutation drawn from `seed`
struct PerturbationSpec {
    PerturbKind kind = PerturbKind::Identity;
    std::size_t param = 0;
    std::uint64_t seed = 0;
    std::size_t list_len = 0;  // when non-zero, the input list must have this length
};

/// Parses "identity", "shuffle", "top_swap", "adjacent_swap:J",
/// "tail_replace:M" or "truncate:M".
[[nodiscard]] PerturbationSpec parse_perturbation(std::string_view text);
[[nodiscard]] std::string to_string(const PerturbationSpec& spec);

/// Throws InvalidInput when the parameter is out of bounds for the list.
[[nodiscard]] RankedList perturb(const RankedList& list, const PerturbationSpec& spec);

struct SynthPairSpec {
    std::string base;
    taxonomy::Label label = taxonomy::Label::WordOrder;
    std::vector<std::string> vocabulary;  // words to add when the base lacks the needed structure
    std::uint64_t seed = 0;
};

struct SynthPair {
    std::string q1;
    std::string q2;
    taxonomy::Label label;
};

/// Words used when a transform must add content ("for <w>", a second word
/// to reorder or connect).
[[nodiscard]] const std::vector<std::string>& default_vocabulary();

/// Builds a pair whose second query is the first under one taxonomy
/// transform. `q1` equals the base whenever the base already has the
/// structure the transform needs (a preposition for C1, a number and unit
/// for C2 and C7, two or more words for C4 and C8); otherwise content from
/// the vocabulary is added. Both queries share a TPS key and
/// classify(q1, q2) == label. Throws InvalidInput when the label is
/// Unclassified, the vocabulary is empty, or no valid pair can be built.
[[nodiscard]] SynthPair gen_pair(const SynthPairSpec& spec,
                                 const normalize::NormalizationConfig& cfg = normalize::NormalizationConfig::defaults());

enum class NoiseKind {
    Identity,  // every week shows the ground truth
    Shuffle,   // every week shows a random draw from the candidate pool
    Jitter,    // ground-truth rank plus Gaussian noise, re-ranked each week
    AbTest,    // each week a query is served by the ground truth or by a second,
               // family-fixed ranking (both jittered by `sigma`)
    Perturb,   // `perturbation` applied to the ground truth each week
};

struct LogNoise {
    NoiseKind kind = NoiseKind::Identity;
    double sigma = 6.0;  // Jitter: median per-family noise scale; AbTest: weekly noise, in ranks
    double treatment_share = 0.5;        // AbTest: chance a week is served by the second ranking
    double treatment_divergence = 100.0;  // AbTest: rank noise separating the second ranking from the truth
    PerturbationSpec perturbation;
};

/// Parses "identity", "shuffle", "jitter", "ab_test" or any perturbation spelling.
[[nodiscard]] LogNoise parse_noise(std::string_view text, double sigma = 6.0);

struct GenLogConfig {
    std::size_t n_queries = 100;  // query families; each yields 2-4 variant queries
    std::size_t weeks = 5;
    std::string start_week = "2023-04-15";
    int step_days = 7;
    std::size_t depth = 24;       // items logged per query and week
    std::size_t pool_size = 240;  // candidate items per family
    LogNoise noise;
    std::uint64_t seed = 1;
    bool include_distractors = true;  // foreign-locale and short-list queries the filters drop
};

struct GenLogSummary {
    std::size_t families = 0;
    std::size_t variant_queries = 0;
    std::size_t log_lines = 0;
    std::vector<std::string> weeks;
};

/// Writes a multi-week log in the ingest format to `log`, the ground truth
/// `query<TAB>item_id<TAB>true_rank` (top `depth` per query) to `truth`,
/// and, when non-null, a similarity table to `sim`. Output depends only on
/// the config.
GenLogSummary gen_log(const GenLogConfig& config, std::ostream& log, std::ostream& truth, std::ostream* sim = nullptr);

/// ISO date `days` after `iso`.
[[nodiscard]] std::string add_days(std::string_view iso, int days);

}  // namespace rankrobust::synth
