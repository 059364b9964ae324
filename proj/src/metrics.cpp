#include "rankrobust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "rankrobust/error.hpp"

namespace rankrobust::metrics {

namespace {

double missing_penalty(std::size_t list_len) { return std::abs(1.0 - position_weight(list_len)); }

// Items of `list` that also occur in `other`, in `list` order.
std::vector<ItemId> common_in_order(const RankedList& list, const RankedList& other) {
    std::vector<ItemId> out;
    for (const auto& item : list.items()) {
        if (other.contains(item)) {
            out.push_back(item);
        }
    }
    return out;
}

// 0-based rank of each item of `order` within `filtered`.
std::vector<std::size_t> ranks_within(const std::vector<ItemId>& order,
                                      const std::vector<ItemId>& filtered) {
    std::vector<std::size_t> ranks;
    ranks.reserve(order.size());
    for (const auto& item : order) {
        auto it = std::find(filtered.begin(), filtered.end(), item);
        ranks.push_back(static_cast<std::size_t>(it - filtered.begin()));
    }
    return ranks;
}

}  // namespace

double position_weight(std::size_t position) {
    return 1.0 / std::log2(static_cast<double>(position) + 1.0);
}

double rds_raw(const RankedList& a, const RankedList& b) {
    // Evaluate in a canonical argument order so the sum is bit-identical
    // under swapping.
    const auto ai = a.items();
    const auto bi = b.items();
    if (std::lexicographical_compare(bi.begin(), bi.end(), ai.begin(), ai.end())) return rds_raw(b, a);

    const double penalty_a = missing_penalty(a.size());
    const double penalty_b = missing_penalty(b.size());
    double shared = 0.0;
    double only_a = 0.0;
    double only_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double wa = position_weight(i + 1);
        if (auto rb = b.rank_of(ai[i])) {
            shared += std::abs(wa - position_weight(*rb));
        } else {
            only_a += penalty_a + wa;
        }
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!a.contains(bi[i])) only_b += penalty_b + position_weight(i + 1);
    }
    return shared + (only_a + only_b);
}

double rds_max(std::size_t len_a, std::size_t len_b) {
    if (len_a == 0 || len_b == 0) {
        throw InvalidInput("rds_max requires non-empty list lengths");
    }
    auto one_side = [](std::size_t n) {
        const double penalty = missing_penalty(n);
        double sum = 0.0;
        for (std::size_t p = 1; p <= n; ++p) {
            sum += penalty + position_weight(p);
        }
        return sum;
    };
    return one_side(len_a) + one_side(len_b);
}

RdsResult rds(const RankedList& a, const RankedList& b) {
    RdsResult r;
    r.raw = rds_raw(a, b);
    r.max_possible = rds_max(a.size(), b.size());
    r.normalized = std::clamp(r.raw / r.max_possible, 0.0, 1.0);
    r.similarity = 1.0 - r.normalized;
    return r;
}

MetricOutcome kendall_tau(const RankedList& a, const RankedList& b) {
    const auto common = common_in_order(a, b);
    const std::size_t k = common.size();
    MetricOutcome out{.value = std::nullopt, .support = k};
    if (k < 2) {
        return out;
    }
    // `common` is in a-order, so the pair (i, j) with i < j is concordant
    // exactly when b also ranks common[i] first.
    long long balance = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const auto ri = *b.rank_of(common[i]);
        for (std::size_t j = i + 1; j < k; ++j) {
            balance += (ri < *b.rank_of(common[j])) ? 1 : -1;
        }
    }
    const double pairs = static_cast<double>(k * (k - 1)) / 2.0;
    out.value = static_cast<double>(balance) / pairs;
    return out;
}

MetricOutcome tau_ap(const RankedList& reference, const RankedList& other) {
    const auto other_order = common_in_order(other, reference);
    const std::size_t k = other_order.size();
    MetricOutcome out{.value = std::nullopt, .support = k};
    if (k < 2) {
        return out;
    }
    std::vector<std::size_t> ref_rank(k);
    for (std::size_t i = 0; i < k; ++i) {
        ref_rank[i] = *reference.rank_of(other_order[i]);
    }
    double sum = 0.0;
    for (std::size_t i = 1; i < k; ++i) {
        std::size_t correct = 0;
        for (std::size_t j = 0; j < i; ++j) {
            if (ref_rank[j] < ref_rank[i]) {
                ++correct;
            }
        }
        sum += static_cast<double>(correct) / static_cast<double>(i);
    }
    out.value = 2.0 / static_cast<double>(k - 1) * sum - 1.0;
    return out;
}

MetricOutcome tau_ap_symmetric(const RankedList& a, const RankedList& b) {
    auto ab = tau_ap(a, b);
    auto ba = tau_ap(b, a);
    if (ab.defined()) {
        ab.value = (*ab.value + *ba.value) / 2.0;
    }
    return ab;
}

MetricOutcome spearman_rho(const RankedList& a, const RankedList& b) {
    const auto in_a = common_in_order(a, b);
    const std::size_t k = in_a.size();
    MetricOutcome out{.value = std::nullopt, .support = k};
    if (k < 2) {
        return out;
    }
    const auto rank_b = ranks_within(in_a, common_in_order(b, a));
    double d2 = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double d = static_cast<double>(i) - static_cast<double>(rank_b[i]);
        d2 += d * d;
    }
    const double kd = static_cast<double>(k);
    out.value = 1.0 - 6.0 * d2 / (kd * (kd * kd - 1.0));
    return out;
}

std::pair<RankedList, RankedList> with_appended_missing(const RankedList& a, const RankedList& b) {
    auto extend = [](const RankedList& base, const RankedList& foreign) {
        std::vector<ItemId> items(base.items().begin(), base.items().end());
        for (const auto& item : foreign.items()) {
            if (!base.contains(item)) {
                items.push_back(item);
            }
        }
        return RankedList(std::move(items));
    };
    return {extend(a, b), extend(b, a)};
}

PearsonResult pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw InvalidInput("pearson: sequences differ in length");
    }
    const std::size_t n = xs.size();
    if (n < 3) {
        throw InvalidInput("pearson: at least three observations are required");
    }
    auto constant = [](std::span<const double> v) {
        return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
    };
    if (constant(xs) || constant(ys)) {
        throw InvalidInput("pearson: zero variance");
    }

    const double nd = static_cast<double>(n);
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= nd;
    my /= nd;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    PearsonResult out;
    out.coefficient = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);

    const double r2 = out.coefficient * out.coefficient;
    if (r2 >= 1.0) {
        out.p_value = 0.0;
        return out;
    }
    const double dof = nd - 2.0;
    const double t = std::abs(out.coefficient) * std::sqrt(dof / (1.0 - r2));
    const boost::math::students_t dist(dof);
    out.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, t)));
    return out;
}

}  // namespace rankrobust::metrics
