#pragma once

#include <json.hpp>

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ammlab::stats {

struct SampleSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double stddev = 0.0;  ///< sample standard deviation, n-1 denominator
    double min = 0.0;
    double max = 0.0;
};

struct TTestResult {
    double t_statistic = 0.0;
    double p_value = 1.0;  ///< two-sided
    double cohens_d = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double confidence_level = 0.95;
    bool significant = false;  ///< p < 0.05
};

struct OlsResult {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_p_value = 1.0;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
};

SampleSummary summarize(std::span<const double> samples);

/// One-sample two-sided t test of mean against mu0, with Cohen's d and a
/// confidence interval for the mean. Requires n >= 2 and nonzero variance.
TTestResult one_sample_t(std::span<const double> samples, double mu0,
                         double confidence = 0.95);

double cohens_d(std::span<const double> samples, double mu0);

/// Product-moment correlation; requires equal lengths >= 2 and nonzero
/// variance on both sides.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Least-squares line with a t-based slope p-value (df = n - 2) and
/// adjusted R^2 for the single predictor. Requires n >= 3 and nonzero x
/// variance.
OlsResult ols_simple(std::span<const double> xs, std::span<const double> ys);

/// Share of samples with |value| strictly greater than each threshold.
std::vector<std::pair<double, double>> threshold_shares(
    std::span<const double> samples, std::span<const double> thresholds);

// -- Student-t machinery -----------------------------------------------------
// The CDF runs on the regularized incomplete beta function evaluated with a
// modified Lentz continued fraction; accurate to ~1e-12 for df up to 1e4.

double regularized_incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);
/// Inverse CDF by bracketed bisection on the monotone CDF.
double student_t_quantile(double probability, double df);

// -- Report & input ----------------------------------------------------------

/// Thresholds used by the summary report: 0.01, 0.05, 0.1, 0.5, 1.0 (%).
std::span<const double> report_thresholds();

/// Full summary-table report over one sample of price impacts: n, mean,
/// stddev, min, max, t, p, d, CI, threshold shares, plus one correlation
/// per named companion column. Emits {"insufficient_data": true, ...} when
/// the t test is undefined instead of failing.
nlohmann::json impact_report(
    std::span<const double> samples, double mu0,
    std::span<const std::pair<std::string, std::vector<double>>> companions = {});

struct SampleTable {
    std::vector<std::string> names;             ///< empty for headerless input
    std::vector<std::vector<double>> columns;
};

/// Reads a numeric CSV (with or without a header row) or a JSON array of
/// numbers. Parse errors carry 1-based line numbers.
SampleTable load_sample_table(std::istream& in);

}  // namespace ammlab::stats
