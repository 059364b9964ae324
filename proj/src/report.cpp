#include "rankrobust/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "rankrobust/error.hpp"
#include "rankrobust/tsv.hpp"

namespace rankrobust::report {

namespace {

using tsv::format_double;

double edge(std::size_t i, std::size_t n_bins) { return static_cast<double>(i) / static_cast<double>(n_bins); }

// Population mean and STD; exactly zero STD when all values are equal.
std::pair<double, double> mean_std(std::span<const double> xs) {
    if (xs.empty()) return {0.0, 0.0};
    if (std::adjacent_find(xs.begin(), xs.end(), std::not_equal_to<>()) == xs.end()) return {xs.front(), 0.0};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size()))};
}

}  // namespace

std::size_t bin_count(double bin_width) {
    if (!(bin_width > 0.0 && bin_width <= 1.0)) {
        throw InvalidInput(fmt::format("bin width {} must be in (0, 1]", bin_width));
    }
    const double n = 1.0 / bin_width;
    const double rounded = std::round(n);
    if (std::abs(n - rounded) > 1e-9 * rounded) {
        throw InvalidInput(fmt::format("bin width {} does not divide [0, 1] evenly", bin_width));
    }
    return static_cast<std::size_t>(rounded);
}

std::size_t bin_index(double value, std::size_t n_bins) {
    auto idx = static_cast<std::size_t>(std::clamp(std::floor(value * static_cast<double>(n_bins)), 0.0,
                                                   static_cast<double>(n_bins - 1)));
    // Settle against the exact edges i / n so edge values land in the upper bin.
    while (idx + 1 < n_bins && value >= edge(idx + 1, n_bins)) ++idx;
    while (idx > 0 && value < edge(idx, n_bins)) --idx;
    return idx;
}

HistogramBuilder::HistogramBuilder(double bin_width) : bin_width_(bin_width), counts_(bin_count(bin_width), 0) {}

void HistogramBuilder::add(double value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw InvalidInput(fmt::format("normalized value {} outside [0, 1]", value));
    }
    ++counts_[bin_index(value, counts_.size())];
    ++total_;
    const double delta = value - mean_;
    mean_ += delta / static_cast<double>(total_);
    m2_ += delta * (value - mean_);
}

HistogramReport HistogramBuilder::finish() const {
    HistogramReport h;
    h.bin_width = bin_width_;
    h.total = total_;
    const std::size_t n = counts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double rate = total_ ? static_cast<double>(counts_[i]) / static_cast<double>(total_) : 0.0;
        h.bins.push_back({edge(i, n), edge(i + 1, n), counts_[i], rate});
    }
    if (total_ > 0) {
        h.mean = mean_;
        h.std = std::sqrt(std::max(0.0, m2_ / static_cast<double>(total_)));
    }
    return h;
}

HistogramReport histogram(std::span<const double> values, double bin_width) {
    HistogramBuilder builder(bin_width);
    for (double v : values) builder.add(v);
    return builder.finish();
}

HistogramReport histogram(std::span<const metrics::RdsResult> results, double bin_width) {
    HistogramBuilder builder(bin_width);
    for (const auto& r : results) builder.add(r.normalized);
    return builder.finish();
}

double TrendReport::max_std() const {
    double m = 0.0;
    for (const auto& b : bins) m = std::max(m, b.std);
    return m;
}

TrendReport trend(std::span<const HistogramReport> weekly) {
    if (weekly.size() < 2) throw InvalidInput("trend needs at least two weekly reports");
    const auto& first = weekly.front();
    const bool labelled = !first.week.empty();
    for (std::size_t w = 0; w < weekly.size(); ++w) {
        const auto& h = weekly[w];
        if (h.bins.size() != first.bins.size() || std::abs(h.bin_width - first.bin_width) > 1e-12) {
            throw InvalidInput("trend: weekly reports use different binning");
        }
        if (h.week.empty() == labelled) throw InvalidInput("trend: week labels must be all set or all empty");
        if (labelled && w > 0 && !(weekly[w - 1].week < h.week)) {
            throw InvalidInput("trend: weeks must be strictly increasing");
        }
    }

    TrendReport t;
    for (std::size_t w = 0; w < weekly.size(); ++w) {
        t.weeks.push_back(labelled ? weekly[w].week : std::to_string(w + 1));
    }
    for (std::size_t i = 0; i < first.bins.size(); ++i) {
        TrendBin b{.lo = first.bins[i].lo, .hi = first.bins[i].hi, .rates = {}, .mean = 0.0, .std = 0.0};
        for (const auto& h : weekly) b.rates.push_back(h.bins[i].rate);
        std::tie(b.mean, b.std) = mean_std(b.rates);
        t.bins.push_back(std::move(b));
    }
    return t;
}

CorrelationReport correlate(std::span<const std::pair<double, double>> score_vs_rds) {
    CorrelationReport c;
    c.n = score_vs_rds.size();
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& [s, r] : score_vs_rds) {
        xs.push_back(s);
        ys.push_back(r);
    }
    try {
        const auto p = metrics::pearson(xs, ys);
        c.r = p.coefficient;
        c.p_value = p.p_value;
        c.low_correlation = std::abs(p.coefficient) < kLowCorrelationThreshold;
    } catch (const InvalidInput&) {
        // degenerate input: leave undefined
    }
    return c;
}

void write_csv(std::ostream& out, const HistogramReport& h) {
    out << "bin_lo,bin_hi,count,rate\n";
    for (const auto& b : h.bins) {
        out << format_double(b.lo) << ',' << format_double(b.hi) << ',' << b.count << ',' << format_double(b.rate)
            << '\n';
    }
}

void write_csv(std::ostream& out, const TrendReport& t) {
    out << "bin_lo,bin_hi,mean_rate,std_rate";
    for (const auto& w : t.weeks) out << ",rate_" << w;
    out << '\n';
    for (const auto& b : t.bins) {
        out << format_double(b.lo) << ',' << format_double(b.hi) << ',' << format_double(b.mean) << ','
            << format_double(b.std);
        for (double r : b.rates) out << ',' << format_double(r);
        out << '\n';
    }
}

void write_csv(std::ostream& out, const CorrelationReport& c) {
    out << "n,r,p_value,low_correlation\n";
    out << c.n << ',' << (c.r ? format_double(*c.r) : "NA") << ',' << (c.p_value ? format_double(*c.p_value) : "NA")
        << ',' << (c.defined() ? (c.low_correlation ? "true" : "false") : "NA") << '\n';
}

void write_csv(std::ostream& out, const taxonomy::LabelTable& t) {
    out << "label,count,rate\n";
    for (const auto& row : t.rows) {
        out << taxonomy::code(row.label) << ',' << row.count << ',' << format_double(row.rate) << '\n';
    }
}

nlohmann::ordered_json to_json(const HistogramReport& h) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "histogram";
    j["week"] = h.week;
    j["bin_width"] = h.bin_width;
    j["total"] = h.total;
    j["mean"] = h.mean;
    j["std"] = h.std;
    auto bins = nlohmann::ordered_json::array();
    for (const auto& b : h.bins) {
        bins.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}, {"rate", b.rate}});
    }
    j["bins"] = std::move(bins);
    return j;
}

nlohmann::ordered_json to_json(const TrendReport& t) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "trend";
    j["weeks"] = t.weeks;
    j["max_std"] = t.max_std();
    auto bins = nlohmann::ordered_json::array();
    for (const auto& b : t.bins) {
        bins.push_back({{"lo", b.lo}, {"hi", b.hi}, {"mean", b.mean}, {"std", b.std}, {"rates", b.rates}});
    }
    j["bins"] = std::move(bins);
    return j;
}

nlohmann::ordered_json to_json(const CorrelationReport& c) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "correlation";
    j["n"] = c.n;
    j["defined"] = c.defined();
    j["r"] = c.r ? nlohmann::ordered_json(*c.r) : nlohmann::ordered_json(nullptr);
    j["p_value"] = c.p_value ? nlohmann::ordered_json(*c.p_value) : nlohmann::ordered_json(nullptr);
    j["low_correlation"] = c.low_correlation;
    return j;
}

nlohmann::ordered_json to_json(const taxonomy::LabelTable& t) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "taxonomy";
    j["total"] = t.total;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        rows.push_back({{"label", taxonomy::code(row.label)},
                        {"name", taxonomy::name(row.label)},
                        {"count", row.count},
                        {"rate", row.rate}});
    }
    j["labels"] = std::move(rows);
    auto overflow = nlohmann::ordered_json::array();
    for (const auto& [q1, q2] : t.overflow) overflow.push_back({q1, q2});
    j["overflow"] = std::move(overflow);
    return j;
}

HistogramReport histogram_from_json(const nlohmann::json& j) {
    try {
        if (j.at("schema_version").get<int>() != kSchemaVersion || j.at("kind").get<std::string>() != "histogram") {
            throw InvalidInput("not a histogram report with a supported schema_version");
        }
        HistogramReport h;
        h.week = j.value("week", std::string());
        h.bin_width = j.at("bin_width").get<double>();
        h.total = j.at("total").get<std::size_t>();
        h.mean = j.at("mean").get<double>();
        h.std = j.at("std").get<double>();
        for (const auto& b : j.at("bins")) {
            h.bins.push_back({b.at("lo").get<double>(), b.at("hi").get<double>(), b.at("count").get<std::size_t>(),
                              b.at("rate").get<double>()});
        }
        return h;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(fmt::format("malformed histogram JSON: {}", e.what()));
    }
}

}  // namespace rankrobust::report
