#pragma once

// Shared fixtures and brute-force oracles for the test binaries.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "rankrobust/ranked_list.hpp"

namespace rankrobust {
inline void PrintTo(const RankedList& l, std::ostream* os) {
    *os << '<';
    for (std::size_t i = 0; i < l.size(); ++i) *os << (i ? "," : "") << l.items()[i];
    *os << '>';
}
}  // namespace rankrobust

namespace testing_support {

using rankrobust::ItemId;
using rankrobust::RankedList;

/// "1 2 3 4" -> <1,2,3,4>
inline RankedList L(const std::string& spaced) {
    std::istringstream in(spaced);
    std::vector<ItemId> items;
    for (std::string s; in >> s;) items.push_back(s);
    return RankedList(std::move(items));
}

inline std::vector<ItemId> items_of(const RankedList& l) { return {l.items().begin(), l.items().end()}; }

/// Every ordered selection of 1..max_len distinct items from `universe`.
inline std::vector<RankedList> all_partial_permutations(std::size_t universe, std::size_t max_len) {
    std::vector<RankedList> out;
    std::vector<ItemId> current;
    std::vector<bool> used(universe, false);
    auto rec = [&](auto&& self) -> void {
        if (!current.empty()) out.emplace_back(current);
        if (current.size() == max_len) return;
        for (std::size_t i = 0; i < universe; ++i) {
            if (used[i]) continue;
            used[i] = true;
            current.push_back(std::to_string(i + 1));
            self(self);
            current.pop_back();
            used[i] = false;
        }
    };
    rec(rec);
    return out;
}

// ---------------------------------------------------------------- oracles

inline double w(double p) { return 1.0 / std::log2(p + 1.0); }

/// Per-item sum written straight from the definition.
inline double oracle_rds_raw(const RankedList& a, const RankedList& b) {
    std::map<ItemId, std::pair<int, int>> pos;
    for (std::size_t i = 0; i < a.size(); ++i) pos[a.items()[i]].first = static_cast<int>(i + 1);
    for (std::size_t i = 0; i < b.size(); ++i) pos[b.items()[i]].second = static_cast<int>(i + 1);
    double sum = 0.0;
    for (const auto& [item, p] : pos) {
        if (p.first && p.second) {
            sum += std::fabs(w(p.first) - w(p.second));
        } else if (p.first) {
            sum += std::fabs(w(1) - w(static_cast<double>(a.size()))) + w(p.first);
        } else {
            sum += std::fabs(w(1) - w(static_cast<double>(b.size()))) + w(p.second);
        }
    }
    return sum;
}

inline double oracle_rds_max(std::size_t n, std::size_t m) {
    std::vector<ItemId> a, b;
    for (std::size_t i = 0; i < n; ++i) a.push_back("a" + std::to_string(i));
    for (std::size_t i = 0; i < m; ++i) b.push_back("b" + std::to_string(i));
    return oracle_rds_raw(RankedList(a), RankedList(b));
}

/// Common items in the order they appear in `l`.
inline std::vector<ItemId> common_in_order(const RankedList& l, const RankedList& other) {
    std::vector<ItemId> out;
    for (const auto& id : l.items()) {
        if (other.contains(id)) out.push_back(id);
    }
    return out;
}

inline std::size_t index_in(const std::vector<ItemId>& v, const ItemId& id) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), id) - v.begin());
}

/// Pair counting over the common items; nullopt-like NaN when fewer than 2.
inline double oracle_kendall(const RankedList& a, const RankedList& b) {
    const auto ca = common_in_order(a, b);
    const auto cb = common_in_order(b, a);
    const std::size_t k = ca.size();
    if (k < 2) return std::nan("");
    long conc = 0, disc = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const bool same = index_in(cb, ca[i]) < index_in(cb, ca[j]);
            (same ? conc : disc)++;
        }
    }
    return static_cast<double>(conc - disc) / (static_cast<double>(k * (k - 1)) / 2.0);
}

/// AP correlation: for each position i >= 2 of `other`, the fraction of
/// items above it that the reference also puts above it.
inline double oracle_tau_ap(const RankedList& reference, const RankedList& other) {
    const auto cr = common_in_order(reference, other);
    const auto co = common_in_order(other, reference);
    const std::size_t k = co.size();
    if (k < 2) return std::nan("");
    double sum = 0.0;
    for (std::size_t i = 1; i < k; ++i) {
        std::size_t agree = 0;
        for (std::size_t j = 0; j < i; ++j) {
            if (index_in(cr, co[j]) < index_in(cr, co[i])) ++agree;
        }
        sum += static_cast<double>(agree) / static_cast<double>(i);
    }
    return 2.0 / static_cast<double>(k - 1) * sum - 1.0;
}

inline double oracle_spearman(const RankedList& a, const RankedList& b) {
    const auto ca = common_in_order(a, b);
    const auto cb = common_in_order(b, a);
    const double k = static_cast<double>(ca.size());
    if (ca.size() < 2) return std::nan("");
    double d2 = 0.0;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        const double d = static_cast<double>(i) - static_cast<double>(index_in(cb, ca[i]));
        d2 += d * d;
    }
    return 1.0 - 6.0 * d2 / (k * (k * k - 1.0));
}

/// Textbook two-pass covariance / standard deviations.
inline double oracle_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

// ------------------------------------------------------------------ files

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("rankrobust-test-" + std::to_string(::getpid()) + "-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

/// Runs the CLI binary; returns its exit status.
inline int run_cli(const std::string& args, const std::string& redirect = "> /dev/null 2>&1") {
    const std::string cmd = std::string(RANKROBUST_CLI) + " " + args + " " + redirect;
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace testing_support
