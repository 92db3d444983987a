#include "triesz/hwv.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "triesz/errors.hpp"

namespace triesz {
namespace {

const AlgebraTag R(1);

HermitianMatrix diag23()
{
    const double d[] = {2, 0, 0, 3};
    return HermitianMatrix(Matrix::from_real(R, 2, 2, d));
}

TEST(QKappa, SpecExamples)
{
    EXPECT_EQ(q_kappa(HermitianMatrix::identity(AlgebraTag(4), 3), {1.5, -2, 0.3}), 1.0);
    EXPECT_NEAR(q_kappa(diag23(), {2, 2}), 36.0, 1e-12);
    EXPECT_NEAR(q_kappa(diag23(), {2, 1}), 12.0, 1e-12);
}

TEST(QKappa, ViaLdl)
{
    EXPECT_NEAR(q_kappa_via_ldl(diag23(), {2, 1}), 12.0, 1e-12);
    EXPECT_EQ(q_kappa_via_ldl(HermitianMatrix::identity(R, 2), {3, 1}), 1.0);
    const double a[] = {2, 1, 1, 2};
    EXPECT_NEAR(q_kappa_via_ldl(HermitianMatrix(Matrix::from_real(R, 2, 2, a)), {1, 0}), 2.0, 1e-14);
}

TEST(QKappa, Star)
{
    EXPECT_EQ(q_star_kappa(HermitianMatrix::identity(R, 2), {3, 1}), 1.0);
    EXPECT_NEAR(q_star_kappa(diag23(), {2, 1}), 18.0, 1e-12);
    EXPECT_NEAR(q_star_kappa(diag23(), {1.5, 1.5}), std::pow(6.0, 1.5), 1e-12);
}

TEST(QKappa, DimensionMismatch)
{
    EXPECT_THROW(q_kappa(diag23(), {1, 2, 3}), DimensionMismatch);
    const double s[] = {1, 1, 1, 1};
    EXPECT_THROW(q_kappa(HermitianMatrix(Matrix::from_real(R, 2, 2, s)), {1, 0}), NotPositiveDefinite);
}

TEST(QKappa, TriangularTransposeWeights)
{
    EXPECT_EQ(triangular_transpose_weights(1, 4), WeightVector({0}));
    EXPECT_EQ(triangular_transpose_weights(2, 1), WeightVector({-0.5, 0.5}));
    EXPECT_EQ(triangular_transpose_weights(3, 2), WeightVector({-2, 0, 2}));
}

class QKappaIdentities : public ::testing::TestWithParam<int> {};

TEST_P(QKappaIdentities, HoldOnRandomMatrices)
{
    const int beta = GetParam();
    std::mt19937_64 rng(100 + beta);
    for (int m = 1; m <= 5; ++m) {
        for (int trial = 0; trial < 20; ++trial) {
            const HermitianMatrix a = test::random_pd(rng, beta, m);
            const WeightVector k = test::random_weights(rng, m);
            const WeightVector t = test::random_weights(rng, m);
            const double lq = log_q_kappa(a, k);

            EXPECT_NEAR(lq, log_q_kappa_via_ldl(a, k), 1e-10 * (1 + std::abs(lq)));
            EXPECT_NEAR(log_q_kappa(inverse_hermitian_pd(a), k), log_q_star_kappa(a, -k.reversed()),
                        1e-9 * (1 + std::abs(lq)));
            EXPECT_NEAR(log_q_kappa_of_inverse(a, k), log_q_kappa(inverse_hermitian_pd(a), k),
                        1e-9 * (1 + std::abs(lq)));
            EXPECT_NEAR(log_q_kappa(a, k + t), lq + log_q_kappa(a, t), 1e-12 * (1 + std::abs(lq)));
            EXPECT_NEAR(log_q_kappa(a, k.plus(0.7)), lq + 0.7 * log_det_hermitian_pd(a),
                        1e-12 * (1 + std::abs(lq)));
            EXPECT_NEAR(log_q_star_kappa(a, k), log_q_kappa(reversed(a), k), 1e-10 * (1 + std::abs(lq)));

            const Matrix b = test::random_upper(rng, beta, m);
            const HermitianMatrix c = HermitianMatrix::gram(b);
            EXPECT_NEAR(log_q_kappa(HermitianMatrix::congruence(b, a), k), log_q_kappa(c, k) + lq,
                        1e-9 * (1 + std::abs(lq)));
            const Matrix binv = invert_upper_triangular(UpperTriangular(b)).matrix();
            EXPECT_NEAR(log_q_kappa(HermitianMatrix::congruence(binv, a), k), log_q_kappa(c, -k) + lq,
                        1e-9 * (1 + std::abs(lq)));
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Algebras, QKappaIdentities, ::testing::Values(1, 2, 4));

// The star variant pairs with lower-triangular congruences.
TEST(QKappa, StarCongruenceWithLowerFactor)
{
    std::mt19937_64 rng(7);
    for (int beta : {1, 2, 4}) {
        const HermitianMatrix a = test::random_pd(rng, beta, 4);
        const Matrix l = adjoint(test::random_upper(rng, beta, 4));
        const WeightVector k = test::random_weights(rng, 4);
        EXPECT_NEAR(log_q_star_kappa(HermitianMatrix::congruence(l, a), k),
                    log_q_star_kappa(HermitianMatrix::gram(l), k) + log_q_star_kappa(a, k), 1e-9);
    }
}

}  // namespace
}  // namespace triesz
