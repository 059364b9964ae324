#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "rankrobust/ranked_list.hpp"

namespace rankrobust::metrics {

/// Ranking distance between two lists and its [0,1] normalization.
struct RdsResult {
    double raw = 0.0;
    double max_possible = 0.0;  // rds_max(len_a, len_b)
    double normalized = 0.0;
    double similarity = 1.0;    // 1 - normalized
};

/// Value of a rank-correlation baseline over the common items of two lists.
/// `value` is empty when fewer than two items are shared.
struct MetricOutcome {
    std::optional<double> value;
    std::size_t support = 0;

    [[nodiscard]] bool defined() const noexcept { return value.has_value(); }
};

struct PearsonResult {
    double coefficient = 0.0;
    double p_value = 1.0;
};

/// Log position discount 1 / log2(p + 1) for a 1-based position.
[[nodiscard]] double position_weight(std::size_t position);

/// Sum over the union of both lists of the per-item distance: the absolute
/// difference of position weights for shared items, and for an item found
/// only in list X at rank p, the missing-item penalty
/// (1 - position_weight(|X|)) + position_weight(p).
[[nodiscard]] double rds_raw(const RankedList& a, const RankedList& b);

/// rds_raw of two disjoint lists with the given lengths; upper bound of
/// rds_raw for any lists of those lengths.
[[nodiscard]] double rds_max(std::size_t len_a, std::size_t len_b);

[[nodiscard]] RdsResult rds(const RankedList& a, const RankedList& b);

[[nodiscard]] MetricOutcome kendall_tau(const RankedList& a, const RankedList& b);

/// AP rank correlation of `other` against `reference`, over common items.
/// Not symmetric.
[[nodiscard]] MetricOutcome tau_ap(const RankedList& reference, const RankedList& other);

/// Mean of tau_ap in both directions.
[[nodiscard]] MetricOutcome tau_ap_symmetric(const RankedList& a, const RankedList& b);

[[nodiscard]] MetricOutcome spearman_rho(const RankedList& a, const RankedList& b);

/// Copies of `a` and `b` extended with the items each is missing, appended
/// in the order they occur in the other list.
[[nodiscard]] std::pair<RankedList, RankedList> with_appended_missing(const RankedList& a,
                                                                      const RankedList& b);

/// Sample Pearson r with a two-sided p-value from Student's t on n - 2
/// degrees of freedom. Throws InvalidInput on length mismatch, n < 3, or
/// zero variance.
[[nodiscard]] PearsonResult pearson(std::span<const double> xs, std::span<const double> ys);

}  // namespace rankrobust::metrics
