#include "triesz/specfun.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "triesz/errors.hpp"

namespace triesz {
namespace {

using std::numbers::pi;

TEST(MvGamma, SpecExamples)
{
    EXPECT_NEAR(log_mv_gamma(1, 2, 4.0), std::log(6.0), 1e-14);
    EXPECT_NEAR(log_mv_gamma(2, 1, 2.0), std::log(pi / 2), 1e-14);
    EXPECT_NEAR(log_mv_gamma(1, 1, 0.5), 0.5 * std::log(pi), 1e-14);
    EXPECT_THROW(log_mv_gamma(2, 1, 0.5), DomainError);
}

TEST(MvGamma, Weighted)
{
    for (auto sign : {GammaSign::plus, GammaSign::minus}) {
        EXPECT_NEAR(log_mv_gamma_weighted({4.2, WeightVector::zero(3), 2, 3, sign}), log_mv_gamma(3, 2, 4.2),
                    1e-13);
    }
    EXPECT_NEAR(log_mv_gamma_weighted({3, {2}, 1, 1, GammaSign::plus}), std::log(24.0), 1e-14);
    EXPECT_NEAR(log_mv_gamma_weighted({5, {2}, 1, 1, GammaSign::minus}), std::log(2.0), 1e-14);
    // (-1)^k Gamma(a) / [1-a]_k at a = 5, k = 2.
    const SignedLog p = signed_log_gen_pochhammer(1, 1, 1 - 5.0, {2});
    EXPECT_EQ(p.sign, 1);
    EXPECT_NEAR(std::log(24.0) - p.log_abs, std::log(2.0), 1e-14);

    // Values frozen from an independent arbitrary-precision evaluation.
    EXPECT_NEAR(log_mv_gamma_weighted({7.5, {2, 1, 0}, 2, 3, GammaSign::plus}), 26.6157012827229182540, 1e-12);
    EXPECT_NEAR(log_mv_gamma_weighted({3, {1, 0}, 1, 2, GammaSign::minus}), 1.14472988584940017414, 1e-13);
    EXPECT_THROW(log_mv_gamma_weighted({1, {-1.5}, 1, 1, GammaSign::plus}), DomainError);
}

TEST(Pochhammer, SpecExamples)
{
    EXPECT_EQ(log_gen_pochhammer(3, 2, 1.3, WeightVector::zero(3)), 0.0);
    EXPECT_NEAR(log_gen_pochhammer(1, 1, 3, {2}), std::log(12.0), 1e-14);
    EXPECT_NEAR(log_gen_pochhammer(2, 1, 3, {1, 1}), std::log(7.5), 1e-14);
    // Non-integer weights use the gamma ratio.
    EXPECT_NEAR(log_gen_pochhammer(1, 1, 3, {0.5}), std::lgamma(3.5) - std::lgamma(3.0), 1e-13);
}

TEST(Pochhammer, FactorizesWeightedGamma)
{
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> kd(0, 4);
    std::uniform_real_distribution<double> ad(0, 5);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + trial % 5;
        const int beta = (trial / 5) % 3 == 0 ? 1 : (trial / 5) % 3 == 1 ? 2 : 4;
        std::vector<double> k(m);
        for (double& v : k) v = kd(rng);
        const double a = (m - 1) * beta / 2.0 + 0.1 + ad(rng);
        const WeightVector kappa(k);
        EXPECT_NEAR(log_mv_gamma_weighted({a, kappa, beta, m, GammaSign::plus}),
                    log_gen_pochhammer(m, beta, a, kappa) + log_mv_gamma(m, beta, a), 1e-11);
    }
}

TEST(Beta, SpecExamples)
{
    EXPECT_NEAR(log_c_beta(1, 1, 0.5, {0}, 0.5, {0}), std::log(pi), 1e-14);
    EXPECT_NEAR(log_c_beta(3, 2, 3.1, WeightVector::zero(3), 4.2, WeightVector::zero(3)),
                log_mv_gamma(3, 2, 3.1) + log_mv_gamma(3, 2, 4.2) - log_mv_gamma(3, 2, 7.3), 1e-12);
    EXPECT_NEAR(log_c_beta(1, 1, 1, {1}, 1, {0}), std::log(0.5), 1e-14);

    EXPECT_NEAR(log_k_beta(2, 4, 5, WeightVector::zero(2), 3, WeightVector::zero(2)),
                log_c_beta(2, 4, 5, WeightVector::zero(2), 3, WeightVector::zero(2)), 1e-13);
    EXPECT_NEAR(log_k_beta(1, 1, 3, {1}, 2, {0}), std::log(1.0 / 6), 1e-14);
    EXPECT_THROW(log_k_beta(1, 1, 2, {2}, 2, {0}), DomainError);

    EXPECT_NEAR(log_c_beta(2, 2, 3, {1, -0.5}, 2.5, {0.25, 0}), -4.73753581393769855608, 1e-12);
    EXPECT_NEAR(log_k_beta(2, 2, 3, {1, -0.5}, 2.5, {0.25, 0}), -3.19117915164319095538, 1e-12);
    EXPECT_EQ(log_c_beta(2, 2, 3, {1, -0.5}, 2.5, {0.25, 0}), log_c_beta(2, 2, 2.5, {0.25, 0}, 3, {1, -0.5}));
}

TEST(Stiefel, Volumes)
{
    EXPECT_NEAR(log_stiefel_volume(2, 1, 1), std::log(2 * pi), 1e-14);
    EXPECT_NEAR(log_stiefel_volume(3, 1, 1), std::log(4 * pi), 1e-14);
    EXPECT_NEAR(log_stiefel_volume(1, 1, 2), std::log(2 * pi), 1e-14);
    EXPECT_NEAR(log_stiefel_volume(3, 2, 4), 6.25434200760379136521, 1e-12);
    EXPECT_THROW(log_stiefel_volume(1, 2, 1), DomainError);
}

TEST(GammaOracle, ScalarExamples)
{
    EXPECT_NEAR(quadrature_gamma_oracle(1, 1, 2, {0}, GammaSign::plus), 0.0, 1e-6);
    EXPECT_NEAR(quadrature_gamma_oracle(1, 1, 2, {1}, GammaSign::plus), std::log(2.0), 1e-6);
    EXPECT_NEAR(quadrature_gamma_oracle(1, 1, 3.5, {1.2}, GammaSign::minus),
                log_mv_gamma_weighted({3.5, {1.2}, 1, 1, GammaSign::minus}), 1e-6);
}

TEST(GammaOracle, TwoByTwo)
{
    const double plus = quadrature_gamma_oracle(2, 1, 2, {1, 0}, GammaSign::plus);
    EXPECT_NEAR(plus, log_mv_gamma_weighted({2, {1, 0}, 1, 2, GammaSign::plus}), 1e-5);
    const double minus = quadrature_gamma_oracle(2, 1, 3, {1, 0.5}, GammaSign::minus);
    EXPECT_NEAR(minus, log_mv_gamma_weighted({3, {1, 0.5}, 1, 2, GammaSign::minus}), 1e-5);
}

}  // namespace
}  // namespace triesz
