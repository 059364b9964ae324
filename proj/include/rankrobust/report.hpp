#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rankrobust/metrics.hpp"
#include "rankrobust/taxonomy.hpp"

namespace rankrobust::report {

inline constexpr int kSchemaVersion = 1;

struct Bin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
    double rate = 0.0;
};

/// Frequency rates of normalized RDS values over equal-width bins that
/// partition [0, 1]. Bins are upper-exclusive except the last.
struct HistogramReport {
    double bin_width = 0.1;
    std::vector<Bin> bins;
    std::size_t total = 0;
    double mean = 0.0;
    double std = 0.0;  // population
    std::string week;  // optional label, used by trend
};

/// Number of bins for `bin_width`; throws InvalidInput unless 1 / bin_width
/// is a whole number.
[[nodiscard]] std::size_t bin_count(double bin_width);

/// Index of the bin holding `value`; values on an interior edge belong to
/// the upper bin and 1.0 to the last bin.
[[nodiscard]] std::size_t bin_index(double value, std::size_t n_bins);

/// Streaming accumulator behind histogram().
class HistogramBuilder {
public:
    explicit HistogramBuilder(double bin_width = 0.1);

    /// Throws InvalidInput for values outside [0, 1].
    void add(double value);
    [[nodiscard]] HistogramReport finish() const;

private:
    double bin_width_;
    std::vector<std::size_t> counts_;
    std::size_t total_ = 0;
    double mean_ = 0.0;  // running (Welford)
    double m2_ = 0.0;
};

[[nodiscard]] HistogramReport histogram(std::span<const double> values, double bin_width = 0.1);
[[nodiscard]] HistogramReport histogram(std::span<const metrics::RdsResult> results, double bin_width = 0.1);

struct TrendBin {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> rates;  // one per week
    double mean = 0.0;
    double std = 0.0;           // population
};

struct TrendReport {
    std::vector<std::string> weeks;
    std::vector<TrendBin> bins;

    [[nodiscard]] double max_std() const;
};

/// Per-bin mean and population STD of frequency rates across weekly
/// reports. Needs at least two reports with identical binning. Week labels
/// must be all empty or all set and strictly increasing.
[[nodiscard]] TrendReport trend(std::span<const HistogramReport> weekly);

struct CorrelationReport {
    std::size_t n = 0;
    std::optional<double> r;
    std::optional<double> p_value;
    bool low_correlation = false;  // |r| < 0.5

    [[nodiscard]] bool defined() const noexcept { return r.has_value(); }
};

inline constexpr double kLowCorrelationThreshold = 0.5;

/// Pearson r between similarity scores and normalized RDS values; undefined
/// when fewer than three points or either side has no variance.
[[nodiscard]] CorrelationReport correlate(std::span<const std::pair<double, double>> score_vs_rds);

void write_csv(std::ostream& out, const HistogramReport& h);
void write_csv(std::ostream& out, const TrendReport& t);
void write_csv(std::ostream& out, const CorrelationReport& c);
void write_csv(std::ostream& out, const taxonomy::LabelTable& t);

[[nodiscard]] nlohmann::ordered_json to_json(const HistogramReport& h);
[[nodiscard]] nlohmann::ordered_json to_json(const TrendReport& t);
[[nodiscard]] nlohmann::ordered_json to_json(const CorrelationReport& c);
[[nodiscard]] nlohmann::ordered_json to_json(const taxonomy::LabelTable& t);

/// Reads a histogram written by to_json. Throws InvalidInput on schema mismatch.
[[nodiscard]] HistogramReport histogram_from_json(const nlohmann::json& j);

}  // namespace rankrobust::report
