#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bondscape/engine.hpp"

namespace bondscape {

struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;  // sample standard deviation (n - 1)
    double min = 0.0;
    double max = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double iqr = 0.0;
    std::size_t n = 0;
};

// Quantile with exclusive linear interpolation (Weibull plotting positions):
// the q-quantile sits at position q * (n + 1) - 1 in the sorted sample,
// clamped to the ends, interpolating linearly between neighbours.
inline double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw std::domain_error("quantile of an empty sample");
    if (q < 0.0 || q > 1.0) throw std::domain_error("quantile order outside [0, 1]");
    const double pos = q * (static_cast<double>(sorted.size()) + 1.0) - 1.0;
    if (pos <= 0.0) return sorted.front();
    if (pos >= static_cast<double>(sorted.size()) - 1.0) return sorted.back();
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline SummaryStats summary_stats(std::vector<double> values) {
    if (values.empty()) throw std::domain_error("summary_stats of an empty sample");
    std::sort(values.begin(), values.end());
    SummaryStats s;
    s.n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = s.n > 1 ? std::sqrt(ss / static_cast<double>(s.n - 1)) : 0.0;
    s.min = values.front();
    s.max = values.back();
    s.median = quantile(values, 0.5);
    s.q1 = quantile(values, 0.25);
    s.q3 = quantile(values, 0.75);
    s.iqr = s.q3 - s.q1;
    return s;
}

struct HistogramBin {
    double lower = 0.0;
    std::size_t count = 0;
    double cumulative_pct = 0.0;
};

// Equal-width bins spanning [min, max]; the top bin includes the maximum.
// Degenerate samples (min == max) put everything in the first bin.
inline std::vector<HistogramBin> histogram(const std::vector<double>& values, int n_bins) {
    if (values.empty()) throw std::domain_error("histogram of an empty sample");
    if (n_bins < 1) throw std::invalid_argument("histogram needs at least one bin");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double width = (hi - lo) / n_bins;
    std::vector<HistogramBin> bins(static_cast<std::size_t>(n_bins));
    for (int b = 0; b < n_bins; ++b) bins[static_cast<std::size_t>(b)].lower = lo + width * b;
    for (double v : values) {
        int b = width > 0.0 ? static_cast<int>((v - lo) / width) : 0;
        if (b >= n_bins) b = n_bins - 1;
        ++bins[static_cast<std::size_t>(b)].count;
    }
    std::size_t running = 0;
    for (HistogramBin& bin : bins) {
        running += bin.count;
        bin.cumulative_pct = 100.0 * static_cast<double>(running) / static_cast<double>(values.size());
    }
    return bins;
}

// Share of interactions that were market-maker trades, in percent.
inline double trade_fraction(const EpochResult& r) {
    const long long total = r.n_trade_events + r.n_service_events;
    if (total == 0) return 0.0;
    return 100.0 * static_cast<double>(r.n_trade_events) / static_cast<double>(total);
}

// Percentage of epochs that saw no trade at all.
inline double zero_trade_epoch_share(const std::vector<EpochResult>& epochs) {
    if (epochs.empty()) throw std::domain_error("zero_trade_epoch_share of no epochs");
    std::size_t zero = 0;
    for (const EpochResult& r : epochs)
        if (r.n_trade_events == 0) ++zero;
    return 100.0 * static_cast<double>(zero) / static_cast<double>(epochs.size());
}

struct ReferenceSeries {
    std::vector<std::string> labels;
    std::vector<double> values;
};

// Quarterly bond turnover percentages of an institutional dealer panel,
// September 2016 through June 2024. Used as the calibration target the
// simulated trade fractions are checked against.
inline const ReferenceSeries& aofm_reference() {
    static const ReferenceSeries series{
        {"Sep 16", "Dec 16", "Mar 17", "Jun 17", "Sep 17", "Dec 17", "Mar 18", "Jun 18",
         "Sep 18", "Dec 18", "Mar 19", "Jun 19", "Sep 19", "Dec 19", "Mar 20", "Jun 20",
         "Sep 20", "Dec 20", "Mar 21", "Jun 21", "Sep 21", "Dec 21", "Mar 22", "Jun 22",
         "Sep 22", "Dec 22", "Mar 23", "Jun 23", "Sep 23", "Dec 23", "Mar 24", "Jun 24"},
        {28.357, 29.266, 26.316, 27.980, 28.729, 28.252, 26.779, 23.524,
         24.873, 24.420, 23.654, 22.075, 27.104, 31.115, 29.303, 27.083,
         28.698, 23.240, 22.865, 21.144, 15.935, 19.344, 25.486, 27.435,
         32.764, 32.547, 36.691, 30.461, 32.398, 30.656, 36.036, 26.837}};
    return series;
}

struct ReferenceCheckLine {
    const char* field;
    double expected;
    double tolerance;
    double actual;
    bool ok;
};

// Recomputes the summary statistics of the reference series and compares
// them against the published values they must reproduce.
inline std::vector<ReferenceCheckLine> reference_check() {
    const SummaryStats s = summary_stats(aofm_reference().values);
    auto line = [](const char* field, double expected, double tol, double actual) {
        return ReferenceCheckLine{field, expected, tol, actual,
                                  std::abs(actual - expected) <= tol};
    };
    return {
        line("mean", 27.23, 0.01, s.mean),
        line("median", 27.27, 0.05, s.median),
        line("std", 4.54, 0.05, s.stddev),
        line("min", 15.94, 0.01, s.min),
        line("max", 36.69, 0.01, s.max),
        line("q1", 23.85, 0.15, s.q1),
        line("q3", 30.17, 0.15, s.q3),
        line("iqr", 6.33, 0.15, s.iqr),
    };
}

}  // namespace bondscape
