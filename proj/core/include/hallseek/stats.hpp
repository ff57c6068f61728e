#pragma once

#include <string>
#include <vector>

#include "hallseek/oracle.hpp"

namespace hallseek {

struct KsResult {
    double d_stat;
    double p_value;
};

// One-sample Kolmogorov-Smirnov test of samples in (0, upper] against the
// uniform distribution: D = sup |F_emp - u/upper|, p from the asymptotic
// Kolmogorov distribution. Throws std::invalid_argument on empty input.
KsResult ks_uniform(std::vector<double> samples, double upper);

// Q(lambda) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 lambda^2), clamp to [0, 1].
double kolmogorov_p(double lambda);

double mean_ratio(const std::vector<double>& samples);

// Expected number of cases with x < X and |k| <= n sqrt(x): 0.80 n ln X.
double count_model(double x_bound, double n);

struct StatsReport {
    std::size_t count = 0;
    double mean = 0;
    KsResult ks{0, 0};
    double model_count = 0;
    std::vector<std::size_t> histogram;  // unit bins (i, i+1]
};

// Distribution analysis of oracle samples with ratios in (0, n_max]; ratios
// enter as their decimal renderings, all selection upstream stays exact.
StatsReport analyze_samples(const std::vector<RatioSample>& samples, int n_max, double x_bound);

std::string format_report(const StatsReport& report);

}  // namespace hallseek
