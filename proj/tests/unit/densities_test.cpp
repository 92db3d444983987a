#include "triesz/densities.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "triesz/errors.hpp"
#include "triesz/quadrature.hpp"
#include "triesz/specfun.hpp"

namespace triesz {
namespace {

using std::numbers::pi;
const AlgebraTag R(1);

Matrix scalar_point(double v)
{
    const double x[] = {v};
    return Matrix::from_real(R, 1, 1, x);
}

using test::base;
using test::make;

TEST(Families, NamesRoundTrip)
{
    for (Family f : kAllFamilies) {
        EXPECT_EQ(family_from_name(family_name(f)), f);
        EXPECT_EQ(counterpart(counterpart(f)), f);
        EXPECT_NE(is_type_one(f), is_type_one(counterpart(f)));
    }
    EXPECT_FALSE(family_from_name("Wishart"));
}

TEST(Validation, ListsEveryProblem)
{
    DistributionParams p = base(Family::TRieszI, 1, 2, 2);
    p.nu = 1.0;
    p.tau.reset();
    p.a = 2.0;
    const auto problems = validate(p);
    ASSERT_EQ(problems.size(), 3u);
    EXPECT_NE(problems[0].find("tau is required"), std::string::npos);
    EXPECT_NE(problems[1].find("a is not a parameter"), std::string::npos);
    EXPECT_NE(problems[2].find("Re(νβ/2) > (m−1)β/2 − k_m violated: 0.5 ≤ 0.5"), std::string::npos);
    EXPECT_THROW(DistributionSpec{p}, DomainError);

    DistributionParams q = base(Family::RieszII, 1, 2, 2);
    q.a = 2.0;
    q.kappa = {2, 0};
    EXPECT_FALSE(validate(q).empty());
    q.kappa = {0.4, 0};
    EXPECT_TRUE(validate(q).empty());

    DistributionParams r = base(Family::KotzRieszI, 1, 1, 2);
    EXPECT_FALSE(validate(r).empty());
}

TEST(KotzRiesz, ScalarExamples)
{
    const DistributionSpec s0 = make(Family::KotzRieszI, 1, 1, 1, {0}, {}, 0);
    EXPECT_NEAR(logpdf(s0, scalar_point(0)), -0.5 * std::log(pi), 1e-14);
    const DistributionSpec s1 = make(Family::KotzRieszI, 1, 1, 1, {1}, {}, 0);
    EXPECT_NEAR(logpdf(s1, scalar_point(1)), std::log(2 / std::sqrt(pi)) - 1, 1e-14);
    EXPECT_EQ(logpdf(s1, scalar_point(0)), -std::numeric_limits<double>::infinity());
    const DistributionSpec s2 = make(Family::KotzRieszII, 1, 1, 1, {-1}, {}, 0);
    EXPECT_NEAR(logpdf(s2, scalar_point(1)), std::log(2 / std::sqrt(pi)) - 1, 1e-14);
}

TEST(KotzRiesz, ZeroWeightsMatchMatrixNormal)
{
    std::mt19937_64 rng(21);
    for (int beta : {1, 2, 4}) {
        DistributionParams p = base(Family::KotzRieszI, beta, 3, 2);
        p.Sigma = test::random_pd(rng, beta, 2);
        p.Theta = test::random_pd(rng, beta, 3);
        p.mu = test::random_matrix(rng, beta, 3, 2);
        const DistributionSpec spec(p);
        const Matrix y = test::random_matrix(rng, beta, 3, 2);
        // Independent route: explicit inverses and determinants.
        const Matrix d = y - *p.mu;
        const Matrix quad = inverse_hermitian_pd(*p.Sigma).matrix() * adjoint(d)
                            * inverse_hermitian_pd(*p.Theta).matrix() * d;
        const double expected = 3 * beta * std::log(beta / pi) - 1.5 * beta * std::log(det_hermitian_pd(*p.Sigma))
                                - beta * std::log(det_hermitian_pd(*p.Theta)) - beta * trace_re(quad);
        EXPECT_NEAR(logpdf(spec, y), expected, 1e-11);
        p.family = Family::KotzRieszII;
        EXPECT_NEAR(logpdf(DistributionSpec(p), y), expected, 1e-11);
    }
}

TEST(Riesz, ScalarExamples)
{
    EXPECT_NEAR(logpdf(make(Family::RieszI, 1, 1, 1, {0}, {}, 1), scalar_point(1)), -1.0, 1e-14);
    EXPECT_NEAR(logpdf(make(Family::RieszI, 1, 1, 1, {2}, {}, 1), scalar_point(1)), -1 - std::log(2.0), 1e-14);
    // Type II: Gamma(a - k, beta).
    EXPECT_NEAR(logpdf(make(Family::RieszII, 1, 1, 1, {1}, {}, 3), scalar_point(2)),
                std::log(2.0) - 2, 1e-13);
    EXPECT_THROW(logpdf(make(Family::RieszI, 1, 1, 1, {0}, {}, 1), scalar_point(-1)), NotPositiveDefinite);
}

TEST(Pearson, ScalarExamples)
{
    const DistributionSpec uniform = make(Family::PearsonIIRieszI, 1, 1, 1, {0}, WeightVector{0}, 2);
    EXPECT_NEAR(logpdf(uniform, scalar_point(0.3)), std::log(0.5), 1e-14);
    const DistributionSpec quad = make(Family::PearsonIIRieszI, 1, 1, 1, {0}, WeightVector{0}, 4);
    EXPECT_NEAR(logpdf(quad, scalar_point(0)), std::log(0.75), 1e-14);
    EXPECT_THROW(logpdf(quad, scalar_point(1.5)), SupportError);
    EXPECT_FALSE(in_support(quad, scalar_point(1.5)));

    const DistributionSpec weighted = make(Family::PearsonIIRieszI, 1, 1, 1, {0}, WeightVector{1}, 4);
    EXPECT_EQ(logpdf(weighted, scalar_point(0)), -std::numeric_limits<double>::infinity());
    const DistributionSpec negative = make(Family::PearsonIIRieszI, 1, 1, 1, {0}, WeightVector{-0.2}, 4);
    EXPECT_THROW(logpdf(negative, scalar_point(0)), SupportError);

    for (double nu : {2.0, 3.0, 4.0}) {
        const DistributionSpec s = make(Family::PearsonIIRieszII, 1, 1, 1, {0.5}, WeightVector{-0.2}, nu);
        // q_tau puts an integrable singularity at r = 0; split there.
        const auto log_f = [&](double x) { return logpdf(s, scalar_point(x)); };
        const double mass = integrate_interval(log_f, -1, 0, 1e-9).value + integrate_interval(log_f, 0, 1, 1e-9).value;
        EXPECT_NEAR(mass, 1.0, 1e-7) << "nu = " << nu;
    }
}

TEST(TRiesz, ScalarExamples)
{
    const DistributionSpec cauchy = make(Family::TRieszI, 1, 1, 1, {0}, WeightVector{0}, 1);
    EXPECT_NEAR(logpdf(cauchy, scalar_point(0)), -std::log(pi), 1e-14);
    EXPECT_NEAR(logpdf(cauchy, scalar_point(2)), -std::log(5 * pi), 1e-14);

    const DistributionSpec s = make(Family::TRieszI, 1, 1, 1, {1}, WeightVector{1}, 3);
    const auto r = integrate_real_line([&](double x) { return logpdf(s, scalar_point(x)); }, 1e-10);
    EXPECT_NEAR(r.value, 1.0, 1e-8);
    // f(x) = C (1+x^2)^{-(nu+1)/2-k-t} x^{2t}
    const double c = std::exp(logpdf(s, scalar_point(1))) * std::pow(2.0, 4.0);
    EXPECT_NEAR(std::exp(logpdf(s, scalar_point(0.5))), c * std::pow(1.25, -4.0) * 0.25, 1e-13);
}

TEST(BetaRiesz, ScalarExamples)
{
    const DistributionSpec s = make(Family::BetaRiesz2C, 1, 1, 1, {0}, WeightVector{0}, 1);
    EXPECT_NEAR(logpdf(s, scalar_point(1)), -std::log(2 * pi), 1e-14);
    EXPECT_THROW(logpdf(s, scalar_point(0)), NotPositiveDefinite);

    DistributionParams p = base(Family::BetaRiesz2C, 1, 1, 1);
    p.nu = 1;
    const double th[] = {2.5};
    p.Theta = HermitianMatrix(Matrix::from_real(R, 1, 1, th));
    const DistributionSpec scaled(p);
    // Z = theta F: f_Z(z) = f_F(z / theta) / theta.
    for (double z : {0.3, 1.0, 4.0}) {
        EXPECT_NEAR(logpdf(scaled, scalar_point(z)), logpdf(s, scalar_point(z / 2.5)) - std::log(2.5), 1e-13);
    }
}

TEST(Constants, ZeroWeightsMatchClassical)
{
    for (Family f : kAllFamilies) {
        for (int beta : {1, 2, 4}) {
            for (int m = 1; m <= 3; ++m) {
                const int n = m + 1;
                const double par = f == Family::RieszI || f == Family::RieszII ? m * beta / 2.0 + 0.7 : m + 0.5;
                const DistributionSpec s = make(f, beta, n, m, WeightVector::zero(m),
                                                WeightVector::zero(m), par);
                EXPECT_NEAR(s.log_base_constant(), classical_log_constant(f, beta, n, m, par), 1e-12)
                    << family_name(f) << " beta=" << beta << " m=" << m;
            }
        }
    }
}

TEST(Constants, TypesCoincideAtZeroWeights)
{
    std::mt19937_64 rng(31);
    for (Family f : {Family::KotzRieszI, Family::RieszI, Family::PearsonIIRieszI}) {
        for (int beta : {1, 2, 4}) {
            const int m = 2, n = 3;
            const double par = f == Family::RieszI ? 2.5 * beta : 3.5;
            const DistributionSpec one = make(f, beta, n, m, WeightVector::zero(m), WeightVector::zero(m), par);
            const DistributionSpec two = make(counterpart(f), beta, n, m, WeightVector::zero(m),
                                              WeightVector::zero(m), par);
            Matrix x = f == Family::RieszI ? test::random_pd(rng, beta, m).matrix() : test::random_matrix(rng, beta, n, m);
            if (f == Family::PearsonIIRieszI) x *= 0.2;
            EXPECT_NEAR(logpdf(one, x), logpdf(two, x), 1e-12);
        }
    }
}

// The triangular correction makes type I and type II T-Riesz differ at m >= 2
// even with zero weights; at m = 1 the correction weight is zero.
TEST(Constants, TriangularCorrectionSeparatesTypes)
{
    std::mt19937_64 rng(32);
    const DistributionSpec one = make(Family::TRieszI, 1, 3, 2, {0, 0}, WeightVector{0, 0}, 3);
    const DistributionSpec two = make(Family::TRieszII, 1, 3, 2, {0, 0}, WeightVector{0, 0}, 3);
    const Matrix t = test::random_matrix(rng, 1, 3, 2);
    const HermitianMatrix g = HermitianMatrix::identity(R, 2) + HermitianMatrix::gram(t);
    const WeightVector rho = triangular_transpose_weights(2, 1);
    EXPECT_NEAR(logpdf(one, t) - logpdf(two, t), log_q_kappa(g, rho) - log_q_kappa_of_inverse(g, rho), 1e-12);

    const DistributionSpec one1 = make(Family::TRieszI, 2, 2, 1, {0}, WeightVector{0}, 3);
    const DistributionSpec two1 = make(Family::TRieszII, 2, 2, 1, {0}, WeightVector{0}, 3);
    const Matrix t1 = test::random_matrix(rng, 2, 2, 1);
    EXPECT_NEAR(logpdf(one1, t1), logpdf(two1, t1), 1e-12);
}

class TransformConsistency : public ::testing::TestWithParam<int> {};

TEST_P(TransformConsistency, TRieszGeneralEqualsStandardPlusJacobian)
{
    const int beta = GetParam();
    std::mt19937_64 rng(40 + beta);
    const int n = 3, m = 2;
    for (Family f : {Family::TRieszI, Family::TRieszII}) {
        DistributionParams p = base(f, beta, n, m);
        p.nu = 4.5;
        p.kappa = {0.7, -0.3};
        p.tau = {0.2, 0.4};
        const DistributionSpec standard(p);
        p.mu = test::random_matrix(rng, beta, n, m);
        p.Delta = test::random_pd(rng, beta, n);
        p.Pi = test::random_pd(rng, beta, m);
        const DistributionSpec general(p);
        const double log_jac = m * beta / 2.0 * log_det_hermitian_pd(*p.Delta)
                               - n * beta / 2.0 * log_det_hermitian_pd(*p.Pi);
        for (int trial = 0; trial < 20; ++trial) {
            const Matrix s = test::random_matrix(rng, beta, n, m);
            const Matrix t = *general.left_whitening() * (s - *p.mu) * *general.right_whitening();
            EXPECT_NEAR(logpdf_t_riesz_general(general, s), logpdf_t_riesz(standard, t) + log_jac, 1e-10);
        }
        // Location only.
        DistributionParams shift = base(f, beta, n, m);
        shift.nu = 4.5;
        shift.kappa = p.kappa;
        shift.tau = p.tau;
        shift.mu = p.mu;
        const Matrix s = test::random_matrix(rng, beta, n, m);
        EXPECT_NEAR(logpdf(DistributionSpec(shift), s), logpdf(standard, s - *p.mu), 1e-12);
    }
}

TEST_P(TransformConsistency, BetaNonstandardEqualsStandardPlusJacobian)
{
    const int beta = GetParam();
    std::mt19937_64 rng(50 + beta);
    const int n = 4, m = 3;
    const double p_exp = (m - 1) * beta / 2.0 + 1;
    for (Family f : {Family::BetaRiesz2C, Family::BetaRiesz2K}) {
        DistributionParams p = base(f, beta, n, m);
        p.nu = 5.5;
        p.kappa = {0.5, 0.1, -0.2};
        p.tau = {-0.1, 0.3, 0.2};
        const DistributionSpec standard(p);
        p.Theta = test::random_pd(rng, beta, m);
        const DistributionSpec scaled(p);
        const Matrix factor = f == Family::BetaRiesz2C ? cholesky_upper(*p.Theta).matrix()
                                                       : cholesky_lower(*p.Theta).matrix();
        const Matrix finv = f == Family::BetaRiesz2C ? invert_upper_triangular(UpperTriangular(factor)).matrix()
                                                     : invert_lower_triangular(LowerTriangular(factor)).matrix();
        for (int trial = 0; trial < 20; ++trial) {
            const HermitianMatrix z = test::random_pd(rng, beta, m);
            const HermitianMatrix fz = HermitianMatrix::congruence(finv, z);
            EXPECT_NEAR(logpdf_beta_riesz2_nonstd(scaled, z),
                        logpdf_beta_riesz2(standard, fz) - p_exp * log_det_hermitian_pd(*p.Theta), 1e-10);
        }
    }
}

TEST_P(TransformConsistency, RieszScaleEqualsStandardPlusJacobian)
{
    const int beta = GetParam();
    std::mt19937_64 rng(60 + beta);
    const int m = 3;
    const double p_exp = (m - 1) * beta / 2.0 + 1;
    for (Family f : {Family::RieszI, Family::RieszII}) {
        DistributionParams p = base(f, beta, m, m);
        p.a = m * beta / 2.0 + 1.5;
        p.kappa = {0.5, -0.4, 0.2};
        const DistributionSpec standard(p);
        p.Xi = test::random_pd(rng, beta, m);
        const DistributionSpec scaled(p);
        const Matrix finv = f == Family::RieszI
                                ? invert_upper_triangular(cholesky_upper(*p.Xi)).matrix()
                                : invert_lower_triangular(cholesky_lower(*p.Xi)).matrix();
        for (int trial = 0; trial < 20; ++trial) {
            const HermitianMatrix v = test::random_pd(rng, beta, m);
            const HermitianMatrix w = HermitianMatrix::congruence(finv, v);
            EXPECT_NEAR(logpdf_riesz(scaled, v), logpdf_riesz(standard, w) - p_exp * log_det_hermitian_pd(*p.Xi),
                        1e-10);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Algebras, TransformConsistency, ::testing::Values(1, 2, 4));

double cone_mass(const std::function<double(const HermitianMatrix&)>& log_f, bool reversed = false)
{
    return integrate_pd_cone_2x2_real(log_f, 1e-6, reversed).value;
}

TEST(Normalization, HermitianFamiliesOnTheTwoByTwoCone)
{
    const DistributionSpec riesz = make(Family::RieszI, 1, 2, 2, {1, 0}, {}, 3);
    EXPECT_NEAR(cone_mass([&](const HermitianMatrix& v) { return logpdf_riesz(riesz, v); }), 1.0, 1e-5);
    const DistributionSpec riesz2 = make(Family::RieszII, 1, 2, 2, {0.6, -0.4}, {}, 2.5);
    EXPECT_NEAR(cone_mass([&](const HermitianMatrix& v) { return logpdf_riesz(riesz2, v); }, true), 1.0, 1e-5);

    const DistributionSpec c = make(Family::BetaRiesz2C, 1, 3, 2, {1, 0.5}, WeightVector{0.5, -0.2}, 5);
    EXPECT_NEAR(cone_mass([&](const HermitianMatrix& f) { return logpdf_beta_riesz2(c, f); }), 1.0, 1e-5);
    const DistributionSpec k = make(Family::BetaRiesz2K, 1, 3, 2, {-0.3, 0.4}, WeightVector{0.2, 0.1}, 5);
    EXPECT_NEAR(cone_mass([&](const HermitianMatrix& f) { return logpdf_beta_riesz2(k, f); }, true), 1.0, 1e-5);
}

// Without the q_rho factor the beta-Riesz kernel does not carry unit mass at
// m = 2 once the weights are nonzero.
TEST(Normalization, UncorrectedKernelMissesUnitMass)
{
    const DistributionSpec c = make(Family::BetaRiesz2C, 1, 3, 2, {1, 0.5}, WeightVector{0.5, -0.2}, 5);
    const WeightVector rho = triangular_transpose_weights(2, 1);
    const double mass = cone_mass([&](const HermitianMatrix& f) {
        const HermitianMatrix g = HermitianMatrix::identity(R, 2) + f;
        return logpdf_beta_riesz2(c, f) - log_q_kappa(g, rho);
    });
    EXPECT_GT(std::abs(mass - 1.0), 1e-2);
}

}  // namespace
}  // namespace triesz
