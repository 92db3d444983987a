#include <algorithm>
#include <atomic>
#include <boost/math/quadrature/gauss.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "triesz/errors.hpp"
#include "triesz/quadrature.hpp"
#include "triesz/samplers.hpp"
#include "triesz/stats.hpp"
#include "triesz/verify.hpp"

namespace triesz {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

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

void describe(VerificationReport& r, const DistributionSpec& spec)
{
    r.add("family", std::string(family_name(spec.family())));
    r.add("beta", spec.beta());
    r.add("n", spec.n());
    r.add("m", spec.m());
    r.add("kappa", weights_text(spec.kappa()));
    if (uses_tau(spec.family())) r.add("tau", weights_text(spec.tau()));
    if (uses_nu(spec.family())) r.add("nu", spec.nu());
    if (is_riesz(spec.family())) r.add("a", spec.a());
    if (!spec.is_standard()) r.add("form", "location-scale");
}

Matrix scalar_point(AlgebraTag tag, double x)
{
    Matrix p(tag, 1, 1);
    p.entry(0, 0)[0] = x;
    return p;
}

// log density, -inf off the support.
double safe_logpdf(const DistributionSpec& spec, const Matrix& y)
{
    try {
        if (!in_support(spec, y)) return -kInf;
        return logpdf(spec, y);
    } catch (const SupportError&) {
        return -kInf;
    } catch (const NotPositiveDefinite&) {
        return -kInf;
    }
}

// n x m matrix [u(S); 0]; its Gram matrix is S.
Matrix polar_point(const HermitianMatrix& s, int n)
{
    const Matrix u = cholesky_upper(s).matrix();
    Matrix x(s.tag(), n, s.dim());
    for (int i = 0; i < s.dim(); ++i) {
        for (int j = 0; j < s.dim(); ++j) std::copy(u.entry(i, j), u.entry(i, j) + s.beta(), x.entry(i, j));
    }
    return x;
}

// Density of s = X*X at m = 1 for a standard matrix family, through
// X = h sqrt(s), (dX) = 1/2 s^(beta n/2 - 1) ds (h*dh).
double log_radial_density(const DistributionSpec& spec, double s)
{
    if (!(s > 0)) return -kInf;
    const int n = spec.n(), beta = spec.beta();
    Matrix x(spec.tag(), n, 1);
    x.entry(0, 0)[0] = std::sqrt(s);
    return log_stiefel_volume(n, 1, beta) - std::log(2.0) + (beta * n / 2.0 - 1) * std::log(s)
           + safe_logpdf(spec, x);
}

struct QuadPlan {
    std::function<double()> integrate;
    std::string reduction;
};

QuadPlan quadrature_plan(const DistributionSpec& spec, double tol, double cone_tol, std::size_t& nodes)
{
    const Family f = spec.family();
    const int beta = spec.beta(), n = spec.n(), m = spec.m();
    const AlgebraTag tag = spec.tag();
    const bool reversed = !is_type_one(f);
    auto count = [&nodes](const QuadratureResult& r) {
        nodes += r.evaluations;
        return r.value;
    };

    if (!is_matrix_family(f)) {
        if (m == 1) {
            return {[=, &spec] {
                        return count(integrate_half_line(
                            [&](double s) { return safe_logpdf(spec, scalar_point(tag, s)); }, tol));
                    },
                    "half line"};
        }
        if (m == 2 && beta == 1) {
            return {[=, &spec] {
                        return count(integrate_pd_cone_2x2_real(
                            [&](const HermitianMatrix& s) { return safe_logpdf(spec, s.matrix()); }, cone_tol,
                            reversed));
                    },
                    "Cholesky coordinates on the 2x2 cone"};
        }
    } else if (n == 1 && m == 1 && beta == 1) {
        const double mu = spec.params().mu ? spec.params().mu->entry(0, 0)[0] : 0.0;
        auto log_f = [&spec, tag](double x) { return safe_logpdf(spec, scalar_point(tag, x)); };
        if (is_pearson(f)) {
            return {[=] {
                        return count(integrate_interval(log_f, -1, 0, tol)) + count(integrate_interval(log_f, 0, 1, tol));
                    },
                    "interval split at 0"};
        }
        return {[=] {
                    // Split at the location, where type II densities may be singular.
                    return count(integrate_half_line([&](double t) { return log_f(mu + t); }, tol))
                           + count(integrate_half_line([&](double t) { return log_f(mu - t); }, tol));
                },
                "real line split at the location"};
    } else if (spec.is_standard() && m == 1) {
        auto log_g = [&spec](double s) { return log_radial_density(spec, s); };
        if (is_pearson(f)) {
            return {[=] { return count(integrate_interval(log_g, 0, 1, tol)); }, "radial, X*X on (0,1)"};
        }
        return {[=] { return count(integrate_half_line(log_g, tol)); }, "radial, X*X on the half line"};
    } else if (spec.is_standard() && m == 2 && beta == 1) {
        // X = H u(S): (dX) = 2^-m |S|^(beta(n-m+1)/2 - 1) (dS) (H*dH).
        const double log_c = log_stiefel_volume(n, 2, 1) - 2 * std::log(2.0);
        const double power = (n - 1) / 2.0 - 1;
        if (is_pearson(f)) {
            // X*X ranges over 0 < S < I; S = I - (I + V)^-1 maps the whole cone
            // onto it with (dS) = |I + V|^-3 (dV).
            return {[=, &spec] {
                        const HermitianMatrix id = HermitianMatrix::identity(tag, 2);
                        return count(integrate_pd_cone_2x2_real(
                            [&](const HermitianMatrix& v) {
                                const HermitianMatrix w = id + v;
                                const HermitianMatrix s = id - inverse_hermitian_pd(w);
                                if (!is_positive_definite(s)) return -kInf;
                                const double lf = safe_logpdf(spec, polar_point(s, n));
                                return lf == -kInf ? lf
                                                   : log_c + power * log_det_hermitian_pd(s)
                                                         - 3 * log_det_hermitian_pd(w) + lf;
                            },
                            cone_tol, reversed));
                    },
                    "polar, X*X = I - (I + V)^-1 with V on the 2x2 cone"};
        }
        return {[=, &spec] {
                    return count(integrate_pd_cone_2x2_real(
                        [&](const HermitianMatrix& s) {
                            const double lf = safe_logpdf(spec, polar_point(s, n));
                            return lf == -kInf ? lf : log_c + power * log_det_hermitian_pd(s) + lf;
                        },
                        cone_tol, reversed));
                },
                "polar, X*X on the 2x2 cone"};
    }
    throw DomainError("quadrature normalization covers m = 1, 2x2 real Hermitian points, standard matrix "
                      "families with m = 1 or (m = 2, beta = 1), and 1x1 real points");
}

Matrix invert_triangular(const Matrix& t)
{
    bool upper = true;
    for (int i = 0; i < t.rows() && upper; ++i) {
        for (int j = 0; j < i && upper; ++j) {
            for (int c = 0; c < t.beta(); ++c) upper = upper && t.entry(i, j)[c] == 0;
        }
    }
    return upper ? invert_upper_triangular(UpperTriangular(t)).matrix()
                 : invert_lower_triangular(LowerTriangular(t)).matrix();
}

double log_abs_det_squared(const Matrix& t)
{
    return log_det_hermitian_pd(HermitianMatrix::gram(t));
}

// Heavy-tailed zero-weight member mapped onto the target's location and scale.
// Matrix families: T-Riesz (Pearson for Pearson targets); Hermitian families:
// beta type II with n = m. nu = m, the smallest integer the zero-weight
// members accept.
class Proposal {
public:
    explicit Proposal(const DistributionSpec& target) : base_(base_params(target))
    {
        const Family f = target.family();
        const int beta = target.beta(), n = target.n(), m = target.m();
        if (is_matrix_family(f)) {
            if (target.left_whitening()) {
                left_ = invert_triangular(*target.left_whitening());
                log_jac_ += m * beta / 2.0 * log_abs_det_squared(*target.left_whitening());
            }
            if (target.right_whitening()) {
                right_ = invert_triangular(*target.right_whitening());
                log_jac_ += n * beta / 2.0 * log_abs_det_squared(*target.right_whitening());
            }
            mu_ = target.params().mu;
        } else {
            const auto& p = target.params();
            const auto& scale = is_riesz(f) ? p.Xi : p.Theta;
            Matrix c = scale ? cholesky_upper(*scale).matrix() : Matrix::identity(target.tag(), m);
            if (is_riesz(f)) c *= std::sqrt(std::max(target.a(), 1.0) / beta);
            log_jac_ = -((m - 1) * beta / 2.0 + 1) * log_abs_det_squared(c);
            congruence_ = c;
        }
    }

    // Draws y from the proposal; returns log g(y). Draws so extreme that the
    // proposal density cannot be evaluated (near-singular pivots) are redrawn
    // and counted.
    double draw(RngStream& rng, Matrix& y)
    {
        Matrix z(base_.tag(), 1, 1);
        double lg;
        for (;;) {
            try {
                z = sample(rng, base_);
                lg = logpdf(base_, z) + log_jac_;
                break;
            } catch (const NotPositiveDefinite&) {
            } catch (const SupportError&) {
                // Pearson draws rounded onto the unit sphere.
            }
            ++redrawn_;
        }
        if (congruence_) {
            y = HermitianMatrix::congruence(*congruence_, HermitianMatrix(z)).matrix();
        } else {
            if (left_) z = *left_ * z;
            if (right_) z = z * *right_;
            if (mu_) z += *mu_;
            y = std::move(z);
        }
        return lg;
    }

    long long redrawn() const { return redrawn_; }

    std::string name() const
    {
        return std::string(family_name(base_.family())) + " with zero weights, nu = " + std::to_string(base_.nu());
    }

private:
    static DistributionSpec base_params(const DistributionSpec& t)
    {
        DistributionParams p;
        p.beta = t.beta();
        p.m = t.m();
        p.kappa = WeightVector::zero(t.m());
        p.tau = WeightVector::zero(t.m());
        if (is_matrix_family(t.family())) {
            p.n = t.n();
            p.family = is_pearson(t.family()) ? Family::PearsonIIRieszI : Family::TRieszI;
            p.nu = t.m();
        } else {
            p.n = t.m();
            p.family = Family::BetaRiesz2C;
            p.nu = t.m();
        }
        return DistributionSpec(p);
    }

    DistributionSpec base_;
    std::optional<Matrix> left_, right_, mu_, congruence_;
    double log_jac_ = 0;
    long long redrawn_ = 0;
};

double effective_sample_size(const std::vector<double>& log_w)
{
    const double top = *std::max_element(log_w.begin(), log_w.end());
    if (!std::isfinite(top)) return 0;
    double s = 0, s2 = 0;
    for (double l : log_w) {
        const double w = std::exp(l - top);
        s += w;
        s2 += w * w;
    }
    return s * s / s2;
}

void require_ess(double ess, long long budget)
{
    if (!(ess >= 0.01 * double(budget))) {
        throw DegenerateProposal("effective sample size " + std::to_string(ess) + " is below 1% of "
                                 + std::to_string(budget) + " draws");
    }
}

VerificationReport quadrature_normalization(const DistributionSpec& spec, double tol)
{
    VerificationReport r;
    r.check = "normalization/quadrature";
    describe(r, spec);
    r.measure = "absolute";
    r.tolerance = tol > 0 ? tol : 1e-4;
    std::size_t nodes = 0;
    const QuadPlan plan = quadrature_plan(spec, std::min(1e-10, r.tolerance * 1e-3), r.tolerance * 1e-2, nodes);
    r.add("reduction", plan.reduction);
    double mass;
    try {
        mass = plan.integrate();
    } catch (const QuadratureFailure& e) {
        r.message = e.what();
        mass = std::numeric_limits<double>::quiet_NaN();
    }
    r.compare(mass, 1.0);
    r.error = std::isnan(r.abs_error) ? kInf : r.abs_error;
    r.evaluations = (long long)nodes;
    return r;
}

VerificationReport mc_normalization(const DistributionSpec& spec, long long budget, std::uint64_t seed, double tol)
{
    VerificationReport r;
    r.check = "normalization/importance_mc";
    describe(r, spec);
    Proposal proposal(spec);
    r.add("proposal", proposal.name());
    r.add("seed", std::to_string(seed));
    r.measure = "z";
    r.tolerance = tol > 0 ? tol : 3.0;
    RngStream rng(seed, 0);
    std::vector<double> log_w(budget), w(budget);
    Matrix y(spec.tag(), 1, 1);
    for (long long i = 0; i < budget; ++i) {
        const double lg = proposal.draw(rng, y);
        log_w[i] = safe_logpdf(spec, y) - lg;
        w[i] = std::exp(log_w[i]);
    }
    const double ess = effective_sample_size(log_w);
    require_ess(ess, budget);
    const MeanEstimate est = mean_estimate(w);
    r.add("ess", std::round(ess));
    r.add("redrawn", double(proposal.redrawn()));
    r.compare(est.mean, 1.0);
    r.add("std_error", est.std_error);
    r.error = est.std_error > 0 ? r.abs_error / est.std_error : kInf;
    r.evaluations = budget;
    return r;
}

// Scalar reduction used for KS at m = 1, with its log density and support.
struct ScalarReduction {
    std::function<double(const Matrix&)> of_point;
    std::function<double(double)> log_density;
    double lo, hi;
    std::vector<double> singular;
    std::string name;
};

ScalarReduction scalar_reduction(const DistributionSpec& spec)
{
    const Family f = spec.family();
    const AlgebraTag tag = spec.tag();
    if (spec.m() != 1) throw DomainError("KS goodness of fit needs m = 1");
    if (!is_matrix_family(f)) {
        return {[](const Matrix& y) { return y.entry(0, 0)[0]; },
                [&spec, tag](double s) { return safe_logpdf(spec, scalar_point(tag, s)); }, 0.0, kInf, {}, "point"};
    }
    if (spec.n() == 1 && spec.beta() == 1) {
        const double mu = spec.params().mu ? spec.params().mu->entry(0, 0)[0] : 0.0;
        std::vector<double> singular{mu};
        if (mu != 0) singular.push_back(0.0);
        const bool ball = is_pearson(f);
        return {[](const Matrix& y) { return y.entry(0, 0)[0]; },
                [&spec, tag](double x) { return safe_logpdf(spec, scalar_point(tag, x)); }, ball ? -1.0 : -kInf,
                ball ? 1.0 : kInf, singular, "point"};
    }
    if (!spec.is_standard()) throw DomainError("KS goodness of fit needs the standard form unless the point is 1x1 real");
    return {[](const Matrix& y) { return HermitianMatrix::gram(y).matrix().entry(0, 0)[0]; },
            [&spec](double s) { return log_radial_density(spec, s); }, 0.0, is_pearson(f) ? 1.0 : kInf, {},
            "squared norm"};
}

// Adaptive integral over (a, b); tiny tail slices may miss the relative
// tolerance, so a looser one (still far below the KS resolution) is retried.
double adaptive_piece(const ScalarReduction& red, double a, double b, std::size_t& evals)
{
    QuadratureResult q;
    try {
        q = integrate_interval(red.log_density, a, b, 1e-9);
    } catch (const QuadratureFailure&) {
        q = integrate_interval(red.log_density, a, b, 1e-6);
    }
    evals += q.evaluations;
    return q.value;
}

// Integral of the density over (a, b) with finite a < b.
double piece(const ScalarReduction& red, double a, double b, std::size_t& evals)
{
    using boost::math::quadrature::gauss;
    auto f = [&](double x) {
        ++evals;
        return std::exp(red.log_density(x));
    };
    for (double s : red.singular) {
        if (a < s && s < b) return piece(red, a, s, evals) + piece(red, s, b, evals);
    }
    const double whole = gauss<double, 7>::integrate(f, a, b);
    const double mid = 0.5 * (a + b);
    const double halves = gauss<double, 7>::integrate(f, a, mid) + gauss<double, 7>::integrate(f, mid, b);
    if (std::abs(whole - halves) <= 1e-13 + 1e-10 * std::abs(halves)) return halves;
    return adaptive_piece(red, a, b, evals);
}

// CDF at each sorted sample, accumulated gap by gap.
std::vector<double> cumulative_cdf(const ScalarReduction& red, const std::vector<double>& sorted, std::size_t& evals)
{
    std::vector<double> cdf(sorted.size());
    double acc;
    const double x0 = sorted.front();
    if (std::isfinite(red.lo)) {
        acc = 0;
        double a = red.lo;
        std::vector<double> cuts;
        for (double s : red.singular) {
            if (a < s && s < x0) cuts.push_back(s);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.push_back(x0);
        for (double b : cuts) {
            acc += adaptive_piece(red, a, b, evals);
            a = b;
        }
    } else {
        // Left tail below the smallest sample (and below any singular point).
        double edge = x0;
        for (double s : red.singular) edge = std::min(edge, s);
        const QuadratureResult q = integrate_half_line([&](double t) { return red.log_density(edge - t); }, 1e-9);
        acc = q.value;
        evals += q.evaluations;
        if (edge < x0) acc += piece(red, edge, x0, evals);
    }
    cdf[0] = acc;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] > sorted[i - 1]) acc += piece(red, sorted[i - 1], sorted[i], evals);
        cdf[i] = acc;
    }
    return cdf;
}

VerificationReport ks_check(const DistributionSpec& spec, long long n_draws, std::uint64_t seed)
{
    VerificationReport r;
    r.check = "gof/ks";
    describe(r, spec);
    const ScalarReduction red = scalar_reduction(spec);
    r.add("statistic", red.name);
    r.add("draws", double(n_draws));
    r.add("seed", std::to_string(seed));
    r.add("alpha", 0.01);
    RngStream rng(seed, 0);
    std::vector<double> xs(n_draws);
    for (double& x : xs) x = red.of_point(sample(rng, spec));
    std::sort(xs.begin(), xs.end());
    std::size_t evals = 0;
    const std::vector<double> cdf = cumulative_cdf(red, xs, evals);
    const double n = double(xs.size());
    double d = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) d = std::max({d, (double(i) + 1) / n - cdf[i], cdf[i] - double(i) / n});
    r.add("ks_distance", d);
    r.value = ks_pvalue(d, xs.size());
    r.reference = 0.01;
    r.abs_error = std::abs(r.value - r.reference);
    r.rel_error = r.abs_error / r.reference;
    r.measure = "ks_lambda";
    r.error = ks_lambda(d, xs.size());
    r.tolerance = kolmogorov_critical(0.01);
    r.evaluations = n_draws;
    r.message = "value is the p-value; error is the scaled KS distance";
    return r;
}

double moment_statistic(const DistributionSpec& spec, const Matrix& y, GofStatistic statistic)
{
    const HermitianMatrix q = is_matrix_family(spec.family()) ? HermitianMatrix::gram(y) : HermitianMatrix(y);
    if (statistic == GofStatistic::trace) return trace_re(q.matrix());
    // log|I + Q| stays finite where Q is numerically singular.
    return log_det_hermitian_pd(HermitianMatrix::identity(q.tag(), q.dim()) + q);
}

VerificationReport moment_check(const DistributionSpec& spec, long long n_draws, GofStatistic statistic,
                                std::uint64_t seed)
{
    VerificationReport r;
    const bool trace = statistic == GofStatistic::trace;
    r.check = trace ? "gof/trace_moments" : "gof/logdet_moments";
    describe(r, spec);
    r.add("statistic", trace ? "tr Q" : "log|I + Q|");
    r.add("draws", double(n_draws));
    r.add("seed", std::to_string(seed));
    r.measure = "z";
    r.tolerance = 3.0;

    RngStream rng_s(seed, 0), rng_q(seed, 1);
    std::vector<double> h(n_draws), h2(n_draws);
    for (long long i = 0; i < n_draws; ++i) {
        const double v = moment_statistic(spec, sample(rng_s, spec), statistic);
        h[i] = v;
        h2[i] = v * v;
    }
    const MeanEstimate s1 = mean_estimate(h), s2 = mean_estimate(h2);

    Proposal proposal(spec);
    r.add("proposal", proposal.name());
    std::vector<double> log_w(n_draws);
    Matrix y(spec.tag(), 1, 1);
    for (long long i = 0; i < n_draws; ++i) {
        const double lg = proposal.draw(rng_q, y);
        log_w[i] = safe_logpdf(spec, y) - lg;
        const double v = log_w[i] == -kInf ? 0.0 : moment_statistic(spec, y, statistic);
        h[i] = v;
        h2[i] = v * v;
    }
    const ImportanceEstimate i1 = importance_mean(log_w, h), i2 = importance_mean(log_w, h2);
    require_ess(i1.ess, n_draws);
    const double z1 = z_score(s1.mean, s1.std_error, i1.mean, i1.std_error);
    const double z2 = z_score(s2.mean, s2.std_error, i2.mean, i2.std_error);
    r.add("first_moment_sampler", s1.mean);
    r.add("first_moment_density", i1.mean);
    r.add("second_moment_sampler", s2.mean);
    r.add("second_moment_density", i2.mean);
    r.add("ess", std::round(i1.ess));
    r.add("redrawn", double(proposal.redrawn()));
    r.compare(s1.mean, i1.mean);
    r.error = std::max(z1, z2);
    if (std::isnan(r.error)) r.error = kInf;
    r.evaluations = 2 * n_draws;
    r.message = "value/reference are first moments; error is the larger z-score of the first two moments";
    return r;
}

}  // namespace

VerificationReport check_normalization(const DistributionSpec& spec, NormalizationMethod method, long long budget,
                                       std::uint64_t seed, double tol)
{
    const auto start = Clock::now();
    if (method == NormalizationMethod::importance_mc && budget < 2) throw DomainError("budget must be at least 2");
    VerificationReport r = method == NormalizationMethod::quadrature ? quadrature_normalization(spec, tol)
                                                                     : mc_normalization(spec, budget, seed, tol);
    r.runtime_seconds = seconds_since(start);
    r.finish();
    return r;
}

VerificationReport gof_sampler_vs_density(const DistributionSpec& spec, long long n_draws, GofStatistic statistic,
                                          std::uint64_t seed)
{
    const auto start = Clock::now();
    if (n_draws < 2) throw DomainError("n_draws must be at least 2");
    VerificationReport r = statistic == GofStatistic::ks ? ks_check(spec, n_draws, seed)
                                                         : moment_check(spec, n_draws, statistic, seed);
    r.runtime_seconds = seconds_since(start);
    r.finish();
    return r;
}

VerificationReport riesz_moment_check(const DistributionSpec& riesz, const WeightVector& tau, long long n_draws,
                                      std::uint64_t seed)
{
    const auto start = Clock::now();
    if (!is_riesz(riesz.family())) throw DomainError("riesz_moment_check needs a Riesz family");
    if (tau.size() != riesz.m()) throw DimensionMismatch("tau must have length m");
    if (n_draws < 2) throw DomainError("n_draws must be at least 2");
    const bool one = is_type_one(riesz.family());
    const int m = riesz.m(), beta = riesz.beta();
    const double a = riesz.a();
    const GammaSign sign = one ? GammaSign::plus : GammaSign::minus;
    const WeightVector& kappa = riesz.kappa();
    const auto& xi = riesz.params().Xi;

    VerificationReport r;
    r.check = one ? "gof/riesz_moment_q_tau" : "gof/riesz_moment_q_tau_of_inverse";
    describe(r, riesz);
    r.add("moment_tau", weights_text(tau));
    r.add("draws", double(n_draws));
    r.add("seed", std::to_string(seed));
    r.measure = "z";
    r.tolerance = 3.0;
    // Type I: E q_tau(V) = q_tau(Xi) Gamma[a, kappa + tau] / Gamma[a, kappa] / beta^|tau|.
    // Type II: the statistic is taken on the standardized draw l^-* V l^-1, Xi = l* l.
    double log_expected;
    try {
        log_expected = (one ? -1 : 1) * tau.sum() * std::log(double(beta))
                       + log_mv_gamma_weighted({a, kappa + tau, beta, m, sign})
                       - log_mv_gamma_weighted({a, kappa, beta, m, sign});
    } catch (const DomainError& e) {
        throw DomainError(std::string("moment of order tau does not exist: ") + e.what());
    }
    if (one && xi) log_expected += log_q_kappa(*xi, tau);
    std::optional<Matrix> standardize;
    if (!one && xi) standardize = invert_lower_triangular(cholesky_lower(*xi)).matrix();

    RngStream rng(seed, 0);
    std::vector<double> q(n_draws);
    for (double& v : q) {
        HermitianMatrix s = sample_riesz(rng, riesz);
        if (standardize) s = HermitianMatrix::congruence(*standardize, s);
        v = std::exp(one ? log_q_kappa(s, tau) : log_q_kappa_of_inverse(s, tau));
    }
    const MeanEstimate est = mean_estimate(q);
    r.compare(est.mean, std::exp(log_expected));
    r.add("std_error", est.std_error);
    r.error = est.std_error > 0 ? r.abs_error / est.std_error : kInf;
    r.evaluations = n_draws;
    r.runtime_seconds = seconds_since(start);
    r.finish();
    return r;
}

VerificationReport pearson_support_check(const DistributionSpec& pearson, long long n_draws, std::uint64_t seed)
{
    const auto start = Clock::now();
    if (!is_pearson(pearson.family())) throw DomainError("pearson_support_check needs a Pearson family");
    VerificationReport r;
    r.check = "gof/pearson_support";
    describe(r, pearson);
    r.add("draws", double(n_draws));
    r.add("seed", std::to_string(seed));
    r.measure = "absolute";
    r.tolerance = 0;
    RngStream rng(seed, 0);
    const HermitianMatrix id = HermitianMatrix::identity(pearson.tag(), pearson.m());
    long long inside = 0;
    for (long long i = 0; i < n_draws; ++i) {
        if (is_positive_definite(id - HermitianMatrix::gram(sample(rng, pearson)))) ++inside;
    }
    r.compare(double(inside) / double(n_draws), 1.0);
    r.error = r.abs_error;
    r.evaluations = n_draws;
    r.runtime_seconds = seconds_since(start);
    r.finish();
    return r;
}

}  // namespace triesz
