#include "triesz/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace triesz {

double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf)
{
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double d = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, (double(i) + 1) / n - f, f - double(i) / n});
    }
    return d;
}

double kolmogorov_survival(double lambda)
{
    if (lambda <= 0) return 1.0;
    constexpr double pi = std::numbers::pi;
    if (lambda < 1.18) {
        // Jacobi-transformed series of the Kolmogorov CDF, fast for small lambda.
        const double c = -pi * pi / (8 * lambda * lambda);
        double s = 0;
        for (int k = 1; k <= 20; ++k) s += std::exp(c * (2 * k - 1) * (2 * k - 1));
        return std::clamp(1 - std::sqrt(2 * pi) / lambda * s, 0.0, 1.0);
    }
    double s = 0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        s += (k % 2 ? 2 : -2) * term;
        if (term < 1e-300) break;
    }
    return std::clamp(s, 0.0, 1.0);
}

double kolmogorov_critical(double alpha)
{
    double lo = 0.2, hi = 10;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (kolmogorov_survival(mid) > alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double ks_lambda(double d, std::size_t n)
{
    const double sn = std::sqrt(double(n));
    return (sn + 0.12 + 0.11 / sn) * d;
}

double ks_pvalue(double d, std::size_t n) { return kolmogorov_survival(ks_lambda(d, n)); }

MeanEstimate mean_estimate(const std::vector<double>& x)
{
    const double n = double(x.size());
    double mean = 0;
    for (double v : x) mean += v;
    mean /= n;
    double ss = 0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1) / n)};
}

ImportanceEstimate importance_mean(const std::vector<double>& log_w, const std::vector<double>& g)
{
    const double top = *std::max_element(log_w.begin(), log_w.end());
    double sw = 0, sw2 = 0, swg = 0;
    std::vector<double> w(log_w.size());
    for (std::size_t i = 0; i < log_w.size(); ++i) {
        w[i] = std::exp(log_w[i] - top);
        sw += w[i];
        sw2 += w[i] * w[i];
        swg += w[i] * g[i];
    }
    const double mean = swg / sw;
    // Delta-method variance of the ratio estimator.
    double v = 0;
    for (std::size_t i = 0; i < w.size(); ++i) v += w[i] * w[i] * (g[i] - mean) * (g[i] - mean);
    return {mean, std::sqrt(v) / sw, sw * sw / sw2};
}

double z_score(double a, double se_a, double b, double se_b)
{
    return std::abs(a - b) / std::sqrt(se_a * se_a + se_b * se_b);
}

}  // namespace triesz
