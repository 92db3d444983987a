#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "triesz/densities.hpp"
#include "triesz/specfun.hpp"

namespace triesz {

struct VerificationReport {
    std::string check;
    // Ordered name/value pairs describing the inputs.
    std::vector<std::pair<std::string, std::string>> parameters;
    double value = 0;
    double reference = 0;
    double abs_error = 0;
    double rel_error = 0;
    // Which quantity is compared with the tolerance: "absolute", "relative",
    // "z" (standard errors) or "ks_lambda" (scaled KS distance).
    std::string measure = "relative";
    double error = 0;
    double tolerance = 0;
    bool pass = false;
    double runtime_seconds = 0;
    // Draws, quadrature nodes or trials.
    long long evaluations = 0;
    std::string message;

    void add(std::string name, std::string value) { parameters.emplace_back(std::move(name), std::move(value)); }
    void add(std::string name, double value);
    // Fills abs/rel errors from value and reference.
    void compare(double computed, double expected);
    // pass = error <= tolerance (false for NaN).
    void finish();
};

bool all_pass(const std::vector<VerificationReport>& reports);

// Jacobian determinants -------------------------------------------------------

enum class Transform {
    linear,          // Y = A X B + C
    congruence,      // Y = A X A* + C on Hermitian X
    inverse,         // Y = S^-1 + C on positive definite S
    polar_cholesky,  // X = H1 u(S) with H1 on the Stiefel manifold
};

const char* transform_name(Transform t);

struct TransformUnderTest {
    Transform kind = Transform::linear;
    int beta = 1;
    int n = 1;  // rows of X (linear, polar_cholesky)
    int m = 1;
    // Seeds the constant matrices and the evaluation point.
    std::uint64_t seed = 0;
};

// Central-difference Jacobian determinant against the closed form, relative
// tolerance 1e-5. Throws DomainError for invalid dimensions and
// IllConditioned when the Jacobian's condition estimate exceeds 1e10.
VerificationReport jacobian_check(const TransformUnderTest& t);

// Worst case of jacobian_check over `points` random constants/points.
VerificationReport jacobian_batch(Transform kind, int beta, int n, int m, std::uint64_t seed, int points);

// Normalization ----------------------------------------------------------------

enum class NormalizationMethod { quadrature, importance_mc };

// Quadrature: |integral - 1| <= tol (default 1e-4). Available for m = 1
// (radial reduction for matrix families), for 2x2 real problems (Cholesky
// cone rule; matrix families through the polar reduction) and for 1x1 real
// points. Importance MC: |estimate - 1| <= tol standard errors (default 3),
// `budget` draws; throws DegenerateProposal when the effective sample size is
// below 1% of the budget.
VerificationReport check_normalization(const DistributionSpec& spec, NormalizationMethod method,
                                       long long budget = 1000000, std::uint64_t seed = 0, double tol = 0);

// Identities ------------------------------------------------------------------

// Randomized weighted-gamma, beta-function and highest-weight-vector
// identities; `trials` random cases per (m <= 5, beta) cell, one report per
// identity.
std::vector<VerificationReport> identity_suite(std::uint64_t seed, int trials);

// Closed-form weighted gamma against direct integration (m in {1, 2}, beta = 1).
VerificationReport gamma_oracle_check(int m, double a, const WeightVector& kappa, GammaSign sign,
                                      double tol = 1e-5);

// Sampler against density -----------------------------------------------------

enum class GofStatistic { ks, trace, logdet };

// ks: m = 1 only; scalar reduction (the point itself, its squared norm, or the
// Hermitian scalar) against the CDF obtained by integrating the density; pass
// at alpha = 0.01. trace / logdet: first and second moments of tr Q or
// log|I + Q| (Q the Gram matrix of the point, or the point itself for
// Hermitian families)
// from the sampler against self-normalized importance sampling under the
// density, both with n_draws draws; pass when every z-score is below 3.
VerificationReport gof_sampler_vs_density(const DistributionSpec& spec, long long n_draws, GofStatistic statistic,
                                          std::uint64_t seed);

// E[q_tau(V)] (type I) or E[q_tau(V^-1)] (type II) for Riesz draws against the
// weighted gamma ratio; pass within 3 standard errors.
VerificationReport riesz_moment_check(const DistributionSpec& riesz, const WeightVector& tau, long long n_draws,
                                      std::uint64_t seed);

// Fraction of Pearson draws with I - R*R positive definite; pass when all are.
VerificationReport pearson_support_check(const DistributionSpec& pearson, long long n_draws, std::uint64_t seed);

// Largest deviation, relative to max(1, max |T|), between X f(U)^-1 and
// R f(I - R*R)^-1 with R = X f(U + X*X)^-1, over `trials` shared draws.
// Pass at 1e-10.
VerificationReport theorem_roundtrip_check(const DistributionSpec& t_riesz, std::uint64_t seed, int trials = 100);

// Zero weights: log constant against the classical constant, and type I
// against type II at random points; both at 1e-12.
VerificationReport zero_weight_constant_check(Family f, int beta, int n, int m, double nu_or_a);
VerificationReport zero_weight_types_check(Family f, int beta, int n, int m, double nu_or_a, std::uint64_t seed,
                                           int points = 50);

// Suite -------------------------------------------------------------------------

struct SuiteOptions {
    std::uint64_t seed = 0;
    // Monte Carlo draws for m = 2 checks; KS checks use a tenth of this.
    long long draws = 1000000;
    int identity_trials = 200;
    int jacobian_points = 20;
    // 0 = hardware concurrency.
    int threads = 0;
};

// Every check at the given budgets. Each task draws from RngStream(seed, task
// index), so results do not depend on scheduling; reports are in task order.
std::vector<VerificationReport> run_suite(const SuiteOptions& options);

}  // namespace triesz
