#include "triesz/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "triesz/errors.hpp"
#include "triesz/quadrature.hpp"

namespace triesz {

namespace {

double lgamma_pos(double x)
{
    if (!(x > 0)) {
        std::ostringstream msg;
        msg << "gamma argument " << x << " is not positive";
        throw DomainError(msg.str());
    }
    return boost::math::lgamma(x);
}

double log_pi_factor(int m, int beta) { return m * (m - 1) * beta / 4.0 * std::log(std::numbers::pi); }

bool all_nonnegative_integers(const WeightVector& kappa)
{
    for (double k : kappa.values()) {
        if (k < 0 || k != std::floor(k)) return false;
    }
    return true;
}

void require_length(int m, const WeightVector& kappa)
{
    if (kappa.size() != m) {
        throw DimensionMismatch("weight vector has length " + std::to_string(kappa.size()) + ", expected "
                                + std::to_string(m));
    }
}

}  // namespace

double log_mv_gamma(int m, int beta, double a)
{
    if (m < 1) throw DomainError("m must be positive");
    if (!(a > (m - 1) * beta / 2.0)) {
        std::ostringstream msg;
        msg << "a > (m-1)*beta/2 violated: " << a << " <= " << (m - 1) * beta / 2.0;
        throw DomainError(msg.str());
    }
    double s = log_pi_factor(m, beta);
    for (int i = 1; i <= m; ++i) s += lgamma_pos(a - (i - 1) * beta / 2.0);
    return s;
}

std::vector<double> weighted_gamma_arguments(const GammaArgs& args)
{
    require_length(args.m, args.kappa);
    std::vector<double> out(args.m);
    for (int i = 1; i <= args.m; ++i) {
        const double k = args.kappa[i - 1];
        out[i - 1] = args.sign == GammaSign::plus ? args.a + k - (i - 1) * args.beta / 2.0
                                                  : args.a - k - (args.m - i) * args.beta / 2.0;
    }
    return out;
}

double log_mv_gamma_weighted(const GammaArgs& args)
{
    double s = log_pi_factor(args.m, args.beta);
    for (double x : weighted_gamma_arguments(args)) s += lgamma_pos(x);
    return s;
}

SignedLog signed_log_gen_pochhammer(int m, int beta, double a, const WeightVector& kappa)
{
    require_length(m, kappa);
    if (!all_nonnegative_integers(kappa)) throw DomainError("product form needs nonnegative integer weights");
    SignedLog r;
    for (int i = 1; i <= m; ++i) {
        const double base = a - (i - 1) * beta / 2.0;
        for (int j = 0; j < int(kappa[i - 1]); ++j) {
            const double f = base + j;
            if (f == 0) throw DomainError("generalized Pochhammer symbol has a zero factor");
            if (f < 0) r.sign = -r.sign;
            r.log_abs += std::log(std::abs(f));
        }
    }
    return r;
}

double log_gen_pochhammer(int m, int beta, double a, const WeightVector& kappa)
{
    require_length(m, kappa);
    if (all_nonnegative_integers(kappa)) {
        const SignedLog r = signed_log_gen_pochhammer(m, beta, a, kappa);
        if (r.sign < 0) throw DomainError("generalized Pochhammer symbol is negative");
        return r.log_abs;
    }
    return log_mv_gamma_weighted({a, kappa, beta, m, GammaSign::plus}) - log_mv_gamma(m, beta, a);
}

double log_c_beta(int m, int beta, double a, const WeightVector& kappa, double b, const WeightVector& tau)
{
    return log_mv_gamma_weighted({a, kappa, beta, m, GammaSign::plus})
           + log_mv_gamma_weighted({b, tau, beta, m, GammaSign::plus})
           - log_mv_gamma_weighted({a + b, kappa + tau, beta, m, GammaSign::plus});
}

double log_k_beta(int m, int beta, double a, const WeightVector& kappa, double b, const WeightVector& tau)
{
    auto check = [&](double x, const WeightVector& w, const char* name) {
        const double bound = (m - 1) * beta / 2.0 + w.first();
        if (!(x > bound)) {
            std::ostringstream msg;
            msg << name << " > (m-1)*beta/2 + k_1 violated: " << x << " <= " << bound;
            throw DomainError(msg.str());
        }
    };
    require_length(m, kappa);
    require_length(m, tau);
    check(a, kappa, "a");
    check(b, tau, "b");
    return log_mv_gamma_weighted({a, kappa, beta, m, GammaSign::minus})
           + log_mv_gamma_weighted({b, tau, beta, m, GammaSign::minus})
           - log_mv_gamma_weighted({a + b, kappa + tau, beta, m, GammaSign::minus});
}

double log_stiefel_volume(int n, int m, int beta)
{
    if (m < 1 || n < m) throw DomainError("Stiefel manifold needs n >= m >= 1");
    return m * std::numbers::ln2 + m * n * beta / 2.0 * std::log(std::numbers::pi)
           - log_mv_gamma(m, beta, n * beta / 2.0);
}

double quadrature_gamma_oracle(int m, int beta, double a, const WeightVector& kappa, GammaSign sign)
{
    if (beta != 1 || (m != 1 && m != 2)) throw DomainError("quadrature oracle covers m in {1,2}, beta = 1");
    require_length(m, kappa);
    // Domain of the defining integral.
    const double bound = sign == GammaSign::plus ? (m - 1) * beta / 2.0 - kappa.last()
                                                 : (m - 1) * beta / 2.0 + kappa.first();
    if (!(a > bound)) throw DomainError("weighted gamma integral diverges for these parameters");
    const double power = a - (m - 1) * beta / 2.0 - 1.0;
    const double tol = 1e-6;
    if (m == 1) {
        const double k = sign == GammaSign::plus ? kappa[0] : -kappa[0];
        const auto r = integrate_half_line([&](double v) { return -v + (power + k) * std::log(v); }, tol);
        return std::log(r.value);
    }
    const auto r = integrate_pd_cone_2x2_real(
        [&](const HermitianMatrix& s) {
            const double q = sign == GammaSign::plus ? log_q_kappa(s, kappa) : log_q_kappa_of_inverse(s, kappa);
            return -trace_re(s.matrix()) + power * log_det_hermitian_pd(s) + q;
        },
        tol, sign == GammaSign::minus);
    return std::log(r.value);
}

}  // namespace triesz
