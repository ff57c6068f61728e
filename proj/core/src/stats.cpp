#include "hallseek/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hallseek {

double kolmogorov_p(double lambda) {
    if (lambda <= 0) return 1.0;
    double sum = 0;
    double sign = 1;
    for (int j = 1; j <= 100; ++j) {
        double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-18 && j >= 25) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_uniform(std::vector<double> samples, double upper) {
    if (samples.empty()) throw std::invalid_argument("ks_uniform: empty sample set");
    if (upper <= 0) throw std::invalid_argument("ks_uniform: upper bound must be positive");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = std::clamp(samples[i] / upper, 0.0, 1.0);
        d = std::max(d, (static_cast<double>(i) + 1) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return KsResult{d, kolmogorov_p(std::sqrt(n) * d)};
}

double mean_ratio(const std::vector<double>& samples) {
    if (samples.empty()) throw std::invalid_argument("mean_ratio: empty sample set");
    double sum = 0;
    for (double v : samples) sum += v;
    return sum / static_cast<double>(samples.size());
}

double count_model(double x_bound, double n) {
    if (x_bound <= 1 || n < 1) throw std::invalid_argument("count_model: requires X > 1, n >= 1");
    return 0.80 * n * std::log(x_bound);
}

StatsReport analyze_samples(const std::vector<RatioSample>& samples, int n_max, double x_bound) {
    StatsReport report;
    report.count = samples.size();
    report.model_count = count_model(x_bound, n_max);
    report.histogram.assign(static_cast<std::size_t>(n_max), 0);
    if (samples.empty()) return report;

    std::vector<double> ratios;
    ratios.reserve(samples.size());
    for (const auto& s : samples) {
        double v = std::stod(s.ratio_display);
        ratios.push_back(v);
        auto bin = static_cast<std::size_t>(std::ceil(v));
        if (bin == 0) bin = 1;
        if (bin <= report.histogram.size()) ++report.histogram[bin - 1];
    }
    report.mean = mean_ratio(ratios);
    report.ks = ks_uniform(ratios, static_cast<double>(n_max));
    return report;
}

std::string format_report(const StatsReport& report) {
    std::ostringstream os;
    os << "samples           " << report.count << "\n";
    os << "mean ratio        " << report.mean << "\n";
    os << "KS D              " << report.ks.d_stat << "\n";
    os << "KS p              " << report.ks.p_value << "\n";
    os << "model count       " << report.model_count << " (observed " << report.count << ")\n";
    os << "histogram (|k|/sqrt(x) per unit bin)\n";
    for (std::size_t i = 0; i < report.histogram.size(); ++i)
        os << "  (" << i << ", " << i + 1 << "]  " << report.histogram[i] << "\n";
    return os.str();
}

}  // namespace hallseek
