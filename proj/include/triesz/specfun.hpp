#pragma once

#include "triesz/hwv.hpp"

namespace triesz {

enum class GammaSign { plus, minus };

struct GammaArgs {
    double a = 0;
    WeightVector kappa;
    int beta = 1;
    int m = 1;
    GammaSign sign = GammaSign::plus;
};

// log Gamma_m^beta[a] = m(m-1)beta/4 log pi + sum log Gamma(a - (i-1)beta/2).
double log_mv_gamma(int m, int beta, double a);

// plus:  m(m-1)beta/4 log pi + sum log Gamma(a + k_i - (i-1)beta/2)
// minus: m(m-1)beta/4 log pi + sum log Gamma(a - k_i - (m-i)beta/2)
double log_mv_gamma_weighted(const GammaArgs& args);

// Gamma-function arguments of the weighted gamma, in order i = 1..m.
std::vector<double> weighted_gamma_arguments(const GammaArgs& args);

// [a]_kappa = prod (a - (i-1)beta/2)_{k_i}. Integer weights use the product;
// other weights use Gamma_m[a,kappa] / Gamma_m[a].
double log_gen_pochhammer(int m, int beta, double a, const WeightVector& kappa);

struct SignedLog {
    double log_abs = 0;
    int sign = 1;
};
// Product form for nonnegative integer weights with factors of any sign.
SignedLog signed_log_gen_pochhammer(int m, int beta, double a, const WeightVector& kappa);

// Gamma_m[a,kappa] Gamma_m[b,tau] / Gamma_m[a+b,kappa+tau]
double log_c_beta(int m, int beta, double a, const WeightVector& kappa, double b,
                  const WeightVector& tau);
// Gamma_m[a,-kappa] Gamma_m[b,-tau] / Gamma_m[a+b,-kappa-tau]
double log_k_beta(int m, int beta, double a, const WeightVector& kappa, double b,
                  const WeightVector& tau);

// 2^m pi^{mn beta/2} / Gamma_m[n beta/2]
double log_stiefel_volume(int n, int m, int beta);

// Direct integration of etr(-A) |A|^{a-(m-1)beta/2-1} q (A) over the PD cone,
// with q = q_kappa(A) (plus) or q_kappa(A^-1) (minus). m in {1,2}, beta = 1.
// Returns the log of the integral.
double quadrature_gamma_oracle(int m, int beta, double a, const WeightVector& kappa,
                               GammaSign sign);

}  // namespace triesz
