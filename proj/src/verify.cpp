#include "triesz/verify.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "triesz/errors.hpp"
#include "triesz/samplers.hpp"

namespace triesz {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string weights_text(const WeightVector& w)
{
    std::ostringstream s;
    s << "(";
    for (int i = 0; i < w.size(); ++i) s << (i ? "," : "") << w[i];
    s << ")";
    return s.str();
}

int beta_of(int cell) { return cell == 0 ? 1 : cell == 1 ? 2 : 4; }

// Tracks the worst case of one identity across trials.
struct Worst {
    VerificationReport report;
    long long trials = 0;

    Worst(std::string check, std::string measure, double tol)
    {
        report.check = std::move(check);
        report.measure = std::move(measure);
        report.tolerance = tol;
        report.error = -1;
    }

    // Error is |lhs - rhs| of logs, i.e. the relative error of the values.
    void observe(double lhs, double rhs, int m, int beta)
    {
        ++trials;
        double err = std::abs(lhs - rhs);
        if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
        if (err > report.error) {
            report.error = err;
            report.value = lhs;
            report.reference = rhs;
            report.abs_error = err;
            report.rel_error = std::abs(std::expm1(lhs - rhs));
            report.message = "worst case at m = " + std::to_string(m) + ", beta = " + std::to_string(beta);
        }
    }

    VerificationReport done(std::uint64_t seed, int trials_per_cell, Clock::time_point start)
    {
        report.add("seed", std::to_string(seed));
        report.add("trials_per_cell", trials_per_cell);
        report.add("grid", "m in 1..5, beta in {1,2,4}");
        report.add("quantity", "log values; error is the relative error of the values");
        report.evaluations = trials;
        report.runtime_seconds = seconds_since(start);
        report.finish();
        return report;
    }
};

Matrix gaussian(RngStream& rng, int beta, int rows, int cols)
{
    Matrix x(AlgebraTag(beta), rows, cols);
    for (double& v : x.raw()) v = rng.normal();
    return x;
}

HermitianMatrix random_pd(RngStream& rng, int beta, int m)
{
    Matrix a = HermitianMatrix::gram(gaussian(rng, beta, m + 1, m)).matrix();
    for (int i = 0; i < m; ++i) a.entry(i, i)[0] += 0.5;
    return HermitianMatrix(a);
}

Matrix random_upper(RngStream& rng, int beta, int m)
{
    Matrix t(AlgebraTag(beta), m, m);
    for (int i = 0; i < m; ++i) {
        t.entry(i, i)[0] = 0.5 + 1.5 * rng.uniform();
        for (int j = i + 1; j < m; ++j) {
            for (int c = 0; c < beta; ++c) t.entry(i, j)[c] = rng.normal();
        }
    }
    return t;
}

WeightVector random_weights(RngStream& rng, int m, double lo, double hi)
{
    std::vector<double> w(m);
    for (double& v : w) v = lo + (hi - lo) * rng.uniform();
    return WeightVector(w);
}

WeightVector random_integer_weights(RngStream& rng, int m, int hi)
{
    std::vector<double> w(m);
    for (double& v : w) v = double(rng.bits() % std::uint64_t(hi + 1));
    return WeightVector(w);
}

DistributionParams zero_weight_params(Family f, int beta, int n, int m, double nu_or_a)
{
    DistributionParams p;
    p.family = f;
    p.beta = beta;
    p.n = n;
    p.m = m;
    p.kappa = WeightVector::zero(m);
    if (uses_tau(f)) p.tau = WeightVector::zero(m);
    if (uses_nu(f)) p.nu = nu_or_a;
    if (is_riesz(f)) p.a = nu_or_a;
    return p;
}

void describe(VerificationReport& r, Family f, int beta, int n, int m)
{
    r.add("family", std::string(family_name(f)));
    r.add("beta", beta);
    r.add("n", n);
    r.add("m", m);
}

// A point in the support of the family.
Matrix support_point(RngStream& rng, Family f, int beta, int n, int m)
{
    const AlgebraTag tag(beta);
    if (!is_matrix_family(f)) return random_pd(rng, beta, m).matrix();
    const Matrix x = gaussian(rng, beta, n, m);
    if (!is_pearson(f)) return x;
    // X u(I + X*X)^-1 lies in the unit matrix ball.
    return x * invert_upper_triangular(cholesky_upper(HermitianMatrix::identity(tag, m) + HermitianMatrix::gram(x)));
}

}  // namespace

void VerificationReport::add(std::string name, double v)
{
    std::ostringstream s;
    s.precision(17);
    s << v;
    parameters.emplace_back(std::move(name), s.str());
}

void VerificationReport::compare(double computed, double expected)
{
    value = computed;
    reference = expected;
    abs_error = std::abs(computed - expected);
    rel_error = abs_error / std::max(std::abs(expected), std::numeric_limits<double>::min());
}

void VerificationReport::finish()
{
    pass = error <= tolerance;
}

bool all_pass(const std::vector<VerificationReport>& reports)
{
    for (const auto& r : reports) {
        if (!r.pass) return false;
    }
    return true;
}

std::vector<VerificationReport> identity_suite(std::uint64_t seed, int trials)
{
    const auto start = Clock::now();
    Worst factor("identity/gamma_pochhammer_factorization", "relative", 1e-10);
    Worst minus("identity/gamma_minus_closed_form", "relative", 1e-10);
    Worst c_form("identity/c_beta_gamma_ratio", "absolute", 0.0);
    Worst k_form("identity/k_beta_gamma_ratio", "absolute", 0.0);
    Worst c_sym("identity/c_beta_symmetry", "absolute", 1e-12);
    Worst inverse("identity/q_inverse_is_star_of_negated_reversal", "relative", 1e-9);
    Worst additive("identity/q_additive_in_weights", "relative", 1e-12);
    Worst shift("identity/q_constant_shift_is_determinant_power", "relative", 1e-12);
    Worst congr("identity/q_upper_triangular_congruence", "relative", 1e-9);
    Worst congr_inv("identity/q_inverse_upper_triangular_congruence", "relative", 1e-9);
    Worst ldl("identity/q_minors_match_ldl", "relative", 1e-10);

    for (int m = 1; m <= 5; ++m) {
        for (int cell = 0; cell < 3; ++cell) {
            const int beta = beta_of(cell);
            const double half_cone = (m - 1) * beta / 2.0;
            RngStream rng(seed, std::uint64_t(m * 3 + cell));
            for (int t = 0; t < trials; ++t) {
                // Weighted gamma functions with integer weights.
                const WeightVector k = random_integer_weights(rng, m, 4);
                const double a = half_cone + 0.1 + 5 * rng.uniform();
                factor.observe(log_mv_gamma_weighted({a, k, beta, m, GammaSign::plus}),
                               log_gen_pochhammer(m, beta, a, k) + log_mv_gamma(m, beta, a), m, beta);

                double kmax = 0;
                for (int i = 0; i < m; ++i) kmax = std::max(kmax, k[i]);
                const double am = half_cone + kmax + 0.1 + 5 * rng.uniform();
                const SignedLog p = signed_log_gen_pochhammer(m, beta, -am + half_cone + 1, k);
                const int parity = int(k.sum()) % 2 == 0 ? 1 : -1;
                const double closed = parity * p.sign > 0 ? log_mv_gamma(m, beta, am) - p.log_abs
                                                          : std::numeric_limits<double>::quiet_NaN();
                minus.observe(log_mv_gamma_weighted({am, k, beta, m, GammaSign::minus}), closed, m, beta);

                // Beta functions with real weights inside their domains.
                const WeightVector kr = random_weights(rng, m, -1, 1), tr = random_weights(rng, m, -1, 1);
                double kr_lo = 0, tr_lo = 0, kr_hi = 0, tr_hi = 0;  // smallest valid a, b less half_cone
                for (int i = 0; i < m; ++i) {
                    kr_lo = std::max(kr_lo, -kr[i] + i * beta / 2.0 - half_cone);
                    tr_lo = std::max(tr_lo, -tr[i] + i * beta / 2.0 - half_cone);
                    kr_hi = std::max(kr_hi, kr[i] - i * beta / 2.0);
                    tr_hi = std::max(tr_hi, tr[i] - i * beta / 2.0);
                }
                const double ca = half_cone + kr_lo + 0.1 + 3 * rng.uniform();
                const double cb = half_cone + tr_lo + 0.1 + 3 * rng.uniform();
                const double lc = log_c_beta(m, beta, ca, kr, cb, tr);
                c_form.observe(lc,
                               log_mv_gamma_weighted({ca, kr, beta, m, GammaSign::plus})
                                   + log_mv_gamma_weighted({cb, tr, beta, m, GammaSign::plus})
                                   - log_mv_gamma_weighted({ca + cb, kr + tr, beta, m, GammaSign::plus}),
                               m, beta);
                c_sym.observe(lc, log_c_beta(m, beta, cb, tr, ca, kr), m, beta);
                const double ka = half_cone + kr_hi + 0.1 + 3 * rng.uniform();
                const double kb = half_cone + tr_hi + 0.1 + 3 * rng.uniform();
                k_form.observe(log_k_beta(m, beta, ka, kr, kb, tr),
                               log_mv_gamma_weighted({ka, kr, beta, m, GammaSign::minus})
                                   + log_mv_gamma_weighted({kb, tr, beta, m, GammaSign::minus})
                                   - log_mv_gamma_weighted({ka + kb, kr + tr, beta, m, GammaSign::minus}),
                               m, beta);

                // Highest weight vector identities on a random positive definite matrix.
                const HermitianMatrix x = random_pd(rng, beta, m);
                const WeightVector kk = random_weights(rng, m, -2, 2), tt = random_weights(rng, m, -2, 2);
                const double lq = log_q_kappa(x, kk);
                inverse.observe(log_q_kappa(inverse_hermitian_pd(x), kk), log_q_star_kappa(x, -kk.reversed()), m, beta);
                additive.observe(log_q_kappa(x, kk + tt), lq + log_q_kappa(x, tt), m, beta);
                const double p_shift = 4 * rng.uniform() - 2;
                shift.observe(log_q_kappa(x, kk.plus(p_shift)), lq + p_shift * log_det_hermitian_pd(x), m, beta);
                const Matrix b = random_upper(rng, beta, m);
                const HermitianMatrix c = HermitianMatrix::gram(b);
                congr.observe(log_q_kappa(HermitianMatrix::congruence(b, x), kk), log_q_kappa(c, kk) + lq, m, beta);
                const Matrix b_inv = invert_upper_triangular(UpperTriangular(b)).matrix();
                congr_inv.observe(log_q_kappa(HermitianMatrix::congruence(b_inv, x), kk), log_q_kappa(c, -kk) + lq, m,
                                  beta);
                ldl.observe(lq, log_q_kappa_via_ldl(x, kk), m, beta);
            }
        }
    }
    std::vector<VerificationReport> out;
    for (Worst* w : {&factor, &minus, &c_form, &k_form, &c_sym, &inverse, &additive, &shift, &congr, &congr_inv, &ldl}) {
        out.push_back(w->done(seed, trials, start));
    }
    return out;
}

VerificationReport gamma_oracle_check(int m, double a, const WeightVector& kappa, GammaSign sign, double tol)
{
    const auto start = Clock::now();
    VerificationReport r;
    r.check = "quadrature/weighted_gamma";
    r.add("m", m);
    r.add("beta", 1);
    r.add("a", a);
    r.add("kappa", weights_text(kappa));
    r.add("sign", sign == GammaSign::plus ? "plus" : "minus");
    r.add("quantity", "log Gamma; error is the relative error of the value");
    r.measure = "relative";
    r.tolerance = tol;
    const double closed = log_mv_gamma_weighted({a, kappa, 1, m, sign});
    try {
        const double quad = quadrature_gamma_oracle(m, 1, a, kappa, sign);
        r.value = quad;
        r.reference = closed;
        r.abs_error = std::abs(quad - closed);
        r.rel_error = std::abs(std::expm1(quad - closed));
        r.error = r.rel_error;
    } catch (const Error& e) {
        r.reference = closed;
        r.error = std::numeric_limits<double>::infinity();
        r.message = e.what();
    }
    r.evaluations = 1;
    r.runtime_seconds = seconds_since(start);
    r.finish();
    return r;
}

VerificationReport zero_weight_constant_check(Family f, int beta, int n, int m, double nu_or_a)
{
    const auto start = Clock::now();
    VerificationReport r;
    r.check = "zero_weights/constant";
    describe(r, f, beta, n, m);
    r.add(is_riesz(f) ? "a" : "nu", nu_or_a);
    r.measure = "absolute";
    r.tolerance = 1e-12;
    try {
        const DistributionSpec spec(zero_weight_params(f, beta, n, m, nu_or_a));
        r.compare(spec.log_constant(), classical_log_constant(f, beta, n, m, nu_or_a));
        r.error = r.abs_error;
        r.add("quantity", "log normalizing constant");
    } catch (const Error& e) {
        r.error = std::numeric_limits<double>::infinity();
        r.message = e.what();
    }
    r.evaluations = 1;
    r.runtime_seconds = seconds_since(start);
    r.finish();
    return r;
}

VerificationReport zero_weight_types_check(Family f, int beta, int n, int m, double nu_or_a, std::uint64_t seed,
                                           int points)
{
    const auto start = Clock::now();
    const Family one = is_type_one(f) ? f : counterpart(f);
    VerificationReport r;
    r.check = "zero_weights/type_one_equals_type_two";
    describe(r, one, beta, n, m);
    r.add("counterpart", std::string(family_name(counterpart(one))));
    r.add(is_riesz(f) ? "a" : "nu", nu_or_a);
    r.add("seed", std::to_string(seed));
    r.add("quantity", "log density; error is the largest difference over the points");
    r.measure = "absolute";
    r.tolerance = 1e-12;
    r.error = -1;
    try {
        const DistributionSpec s1(zero_weight_params(one, beta, n, m, nu_or_a));
        const DistributionSpec s2(zero_weight_params(counterpart(one), beta, n, m, nu_or_a));
        RngStream rng(seed, 0);
        for (int i = 0; i < points; ++i) {
            const Matrix x = support_point(rng, one, beta, n, m);
            const double l1 = logpdf(s1, x), l2 = logpdf(s2, x);
            const double err = std::abs(l1 - l2);
            if (!(err <= r.error)) {
                r.compare(l1, l2);
                r.error = std::isnan(err) ? std::numeric_limits<double>::infinity() : err;
            }
        }
    } catch (const Error& e) {
        r.error = std::numeric_limits<double>::infinity();
        r.message = e.what();
    }
    r.evaluations = points;
    r.runtime_seconds = seconds_since(start);
    r.finish();
    return r;
}

VerificationReport theorem_roundtrip_check(const DistributionSpec& spec, std::uint64_t seed, int trials)
{
    const auto start = Clock::now();
    const RieszVariant variant = variant_of(spec.family());
    VerificationReport r;
    r.check = "construction/pearson_then_t_matches_direct";
    describe(r, spec.family(), spec.beta(), spec.n(), spec.m());
    r.add("nu", spec.nu());
    r.add("kappa", weights_text(spec.kappa()));
    r.add("tau", weights_text(spec.tau()));
    r.add("seed", std::to_string(seed));
    r.add("quantity", "max |T_direct - T_via_R| / max(1, max |T|)");
    r.measure = "absolute";
    r.tolerance = 1e-10;
    r.reference = 0;
    RngStream rng(seed, 0);
    for (int i = 0; i < trials; ++i) {
        const TRieszParts parts = sample_t_riesz_parts(rng, spec);
        const Matrix direct = t_from_parts(parts, variant);
        const Matrix via_r = t_from_pearson(pearson_from_parts(parts, variant), variant);
        double scale = 1;
        for (double v : direct.raw()) scale = std::max(scale, std::abs(v));
        const double dev = max_abs_diff(direct, via_r) / scale;
        r.error = std::max(r.error, std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev);
    }
    r.value = r.abs_error = r.rel_error = r.error;
    r.evaluations = trials;
    r.runtime_seconds = seconds_since(start);
    r.finish();
    return r;
}

}  // namespace triesz
