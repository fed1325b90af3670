#include "ammlab/stats.hpp"

#include "ammlab/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

namespace ammlab::stats {

namespace {

void require_samples(std::span<const double> samples, std::size_t at_least,
                     const char* what) {
    if (samples.size() < at_least)
        throw InsufficientDataError(std::string(what) + " needs at least " +
                                    std::to_string(at_least) + " samples, got " +
                                    std::to_string(samples.size()));
}

double sum_of(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
}

// Continued fraction for the incomplete beta function, modified Lentz.
double betacf(double a, double b, double x) {
    constexpr int max_iterations = 400;
    constexpr double eps = 3e-16;
    constexpr double tiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iterations; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0)
        throw ValidationError("incomplete beta parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;

    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    // The continued fraction converges fast only on one side of the mean;
    // use the reflection I_x(a,b) = 1 - I_{1-x}(b,a) on the other.
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
    if (df <= 0.0) throw ValidationError("degrees of freedom must be positive");
    if (t == 0.0) return 0.5;
    const double x = df / (df + t * t);
    const double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x);
    return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double probability, double df) {
    if (probability <= 0.0 || probability >= 1.0)
        throw ValidationError("quantile probability must lie in (0, 1)");
    if (probability == 0.5) return 0.0;
    const bool upper = probability > 0.5;
    const double p = upper ? probability : 1.0 - probability;

    double lo = 0.0;
    double hi = 1.0;
    while (student_t_cdf(hi, df) < p) {
        hi *= 2.0;
        if (hi > 1e300) break;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (student_t_cdf(mid, df) < p ? lo : hi) = mid;
    }
    const double q = 0.5 * (lo + hi);
    return upper ? q : -q;
}

SampleSummary summarize(std::span<const double> samples) {
    require_samples(samples, 1, "summary");
    SampleSummary s;
    s.n = samples.size();
    s.mean = sum_of(samples) / double(s.n);
    const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
    s.min = *min_it;
    s.max = *max_it;
    if (s.n > 1) {
        double ss = 0.0;
        for (double x : samples) ss += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(ss / double(s.n - 1));
    }
    return s;
}

TTestResult one_sample_t(std::span<const double> samples, double mu0,
                         double confidence) {
    require_samples(samples, 2, "one-sample t test");
    if (confidence <= 0.0 || confidence >= 1.0)
        throw ValidationError("confidence level must lie in (0, 1)");
    const SampleSummary s = summarize(samples);
    if (s.min == s.max)
        throw InsufficientDataError("one-sample t test needs nonzero sample variance");

    const double df = double(s.n - 1);
    const double se = s.stddev / std::sqrt(double(s.n));

    TTestResult r;
    r.confidence_level = confidence;
    r.t_statistic = (s.mean - mu0) / se;
    r.cohens_d = (s.mean - mu0) / s.stddev;
    // Two-sided p: I_{df/(df+t^2)}(df/2, 1/2).
    r.p_value = r.t_statistic == 0.0
                    ? 1.0
                    : regularized_incomplete_beta(
                          df / 2.0, 0.5, df / (df + r.t_statistic * r.t_statistic));
    const double t_crit = student_t_quantile(1.0 - (1.0 - confidence) / 2.0, df);
    r.ci_low = s.mean - t_crit * se;
    r.ci_high = s.mean + t_crit * se;
    r.significant = r.p_value < 0.05;
    return r;
}

double cohens_d(std::span<const double> samples, double mu0) {
    require_samples(samples, 2, "Cohen's d");
    const SampleSummary s = summarize(samples);
    if (s.min == s.max)
        throw InsufficientDataError("Cohen's d needs nonzero sample variance");
    return (s.mean - mu0) / s.stddev;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw ValidationError("pearson inputs must have equal length");
    require_samples(xs, 2, "pearson");
    const double mx = sum_of(xs) / double(xs.size());
    const double my = sum_of(ys) / double(ys.size());
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw InsufficientDataError("pearson needs nonzero variance on both sides");
    return sxy / std::sqrt(sxx * syy);
}

OlsResult ols_simple(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw ValidationError("ols inputs must have equal length");
    require_samples(xs, 3, "simple ols");
    const std::size_t n = xs.size();
    const double mx = sum_of(xs) / double(n);
    const double my = sum_of(ys) / double(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0)
        throw InsufficientDataError("simple ols needs nonzero predictor variance");

    OlsResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = ys[i] - (r.intercept + r.slope * xs[i]);
        sse += resid * resid;
    }
    r.r_squared = syy == 0.0 ? 1.0 : 1.0 - sse / syy;
    r.adj_r_squared = 1.0 - (1.0 - r.r_squared) * double(n - 1) / double(n - 2);

    const double df = double(n - 2);
    const double se_slope = std::sqrt(sse / df / sxx);
    if (se_slope == 0.0) {
        r.slope_p_value = r.slope == 0.0 ? 1.0 : 0.0;
    } else {
        const double t = r.slope / se_slope;
        r.slope_p_value = regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    }
    return r;
}

std::vector<std::pair<double, double>> threshold_shares(
    std::span<const double> samples, std::span<const double> thresholds) {
    require_samples(samples, 1, "threshold shares");
    std::vector<std::pair<double, double>> out;
    out.reserve(thresholds.size());
    for (double threshold : thresholds) {
        std::size_t count = 0;
        for (double x : samples)
            if (std::fabs(x) > threshold) ++count;
        out.emplace_back(threshold, double(count) / double(samples.size()));
    }
    return out;
}

std::span<const double> report_thresholds() {
    static const std::array<double, 5> thresholds = {0.01, 0.05, 0.1, 0.5, 1.0};
    return thresholds;
}

nlohmann::json impact_report(
    std::span<const double> samples, double mu0,
    std::span<const std::pair<std::string, std::vector<double>>> companions) {
    nlohmann::json report;
    report["schema_version"] = 1;
    report["n"] = samples.size();
    if (samples.empty()) {
        report["insufficient_data"] = true;
        return report;
    }

    const SampleSummary s = summarize(samples);
    report["mean"] = s.mean;
    report["stddev"] = s.stddev;
    report["min"] = s.min;
    report["max"] = s.max;

    try {
        const TTestResult t = one_sample_t(samples, mu0);
        report["mu0"] = mu0;
        report["t_statistic"] = t.t_statistic;
        report["p_value"] = t.p_value;
        report["significant"] = t.significant;
        report["cohens_d"] = t.cohens_d;
        report["confidence_level"] = t.confidence_level;
        report["ci_low"] = t.ci_low;
        report["ci_high"] = t.ci_high;
    } catch (const InsufficientDataError&) {
        report["insufficient_data"] = true;
    }

    nlohmann::json shares = nlohmann::json::object();
    for (const auto& [threshold, share] : threshold_shares(samples, report_thresholds())) {
        std::ostringstream key;
        key << threshold;
        shares[key.str()] = share;
    }
    report["threshold_shares"] = std::move(shares);

    if (!companions.empty()) {
        nlohmann::json correlations = nlohmann::json::object();
        for (const auto& [name, column] : companions) {
            try {
                correlations[name] = pearson(column, samples);
            } catch (const ValidationError&) {
                correlations[name] = nullptr;
            }
        }
        report["correlations"] = std::move(correlations);
    }
    return report;
}

SampleTable load_sample_table(std::istream& in) {
    // Peek past whitespace: a '[' means a JSON array of numbers.
    char first = 0;
    while (in.get(first) && (first == ' ' || first == '\n' || first == '\r' || first == '\t')) {
    }
    if (!in) throw ParseError("empty input");
    in.putback(first);

    SampleTable table;
    if (first == '[') {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid JSON array: ") + e.what());
        }
        if (!j.is_array()) throw ParseError("expected a JSON array of numbers");
        std::vector<double> column;
        for (const auto& v : j) {
            if (!v.is_number()) throw ParseError("JSON array must contain only numbers");
            column.push_back(v.get<double>());
        }
        table.columns.push_back(std::move(column));
        return table;
    }

    auto split = [](const std::string& line) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(line);
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        return fields;
    };
    auto parse_field = [](const std::string& field, double& out) {
        try {
            std::size_t pos = 0;
            out = std::stod(field, &pos);
            while (pos < field.size() && (field[pos] == ' ' || field[pos] == '\r')) ++pos;
            return pos == field.size();
        } catch (...) {
            return false;
        }
    };

    std::string line;
    std::size_t line_no = 0;
    bool saw_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line);

        if (!saw_data && table.names.empty() && table.columns.empty()) {
            // First content line: header unless every field is numeric.
            bool all_numeric = true;
            std::vector<double> row(fields.size());
            for (std::size_t i = 0; i < fields.size(); ++i)
                if (!parse_field(fields[i], row[i])) {
                    all_numeric = false;
                    break;
                }
            table.columns.resize(fields.size());
            if (all_numeric) {
                for (std::size_t i = 0; i < fields.size(); ++i)
                    table.columns[i].push_back(row[i]);
                saw_data = true;
            } else {
                for (const auto& f : fields) table.names.push_back(f);
            }
            continue;
        }

        if (fields.size() != table.columns.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(table.columns.size()) + " fields, got " +
                             std::to_string(fields.size()));
        for (std::size_t i = 0; i < fields.size(); ++i) {
            double value = 0.0;
            if (!parse_field(fields[i], value))
                throw ParseError("line " + std::to_string(line_no) +
                                 ": not a number: '" + fields[i] + "'");
            table.columns[i].push_back(value);
        }
        saw_data = true;
    }
    if (table.columns.empty() || (!saw_data && table.names.empty()))
        throw ParseError("no data rows in input");
    return table;
}

}  // namespace ammlab::stats
