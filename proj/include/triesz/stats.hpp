#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace triesz {

// Two-sided Kolmogorov-Smirnov statistic sup |F_n - F|; sorts its argument.
double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf);

// Q(lambda) = P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);
// lambda with Q(lambda) = alpha.
double kolmogorov_critical(double alpha);

// Stephens' scaled distance (sqrt(n) + 0.12 + 0.11/sqrt(n)) d.
double ks_lambda(double d, std::size_t n);
// Asymptotic P(D_n >= d) with Stephens' finite-n correction.
double ks_pvalue(double d, std::size_t n);

struct MeanEstimate {
    double mean = 0;
    double std_error = 0;
};

MeanEstimate mean_estimate(const std::vector<double>& x);

// Self-normalized importance estimate of E_p[g] from log weights log p - log q.
struct ImportanceEstimate {
    double mean = 0;
    double std_error = 0;
    double ess = 0;
};

ImportanceEstimate importance_mean(const std::vector<double>& log_w, const std::vector<double>& g);

// |a - b| / sqrt(se_a^2 + se_b^2).
double z_score(double a, double se_a, double b, double se_b);

}  // namespace triesz
