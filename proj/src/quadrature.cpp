#include "triesz/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <vector>

#include "triesz/errors.hpp"

namespace triesz {

namespace {

using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::sinh_sinh;
using boost::math::quadrature::tanh_sinh;

// Coordinates beyond this only appear at the far tail of the transforms,
// where every integrand used here is negligible.
constexpr double kFar = 1e100;

struct Counted {
    const std::function<double(double)>& log_f;
    std::size_t& count;

    double operator()(double x) const
    {
        ++count;
        if (!(std::abs(x) < kFar)) return 0.0;
        const double lf = log_f(x);
        if (std::isnan(lf)) { char buf[64]; std::snprintf(buf, sizeof buf, "%.6g", x); throw QuadratureFailure(std::string("integrand is NaN at x = ") + buf); }
        return std::exp(lf);
    }
};

void check(double value, double error, double l1, double tol, int level = 0)
{
    if (!std::isfinite(value) || !std::isfinite(error)) throw QuadratureFailure("non-finite quadrature result");
    // Inner levels of a nested integral are often negligible slices whose
    // relative error is meaningless; the outer estimate carries the verdict.
    if (level > 0) return;
    if (error > 1e3 * tol * std::max(l1, std::numeric_limits<double>::min())) {
        throw QuadratureFailure("quadrature error estimate " + std::to_string(error)
                                + " exceeds tolerance for integral " + std::to_string(value));
    }
}

// Nesting levels each get their own integrator.
template <class Integrator>
Integrator& integrator(int level)
{
    thread_local Integrator instances[3];
    return instances[level];
}

double half_line(const std::function<double(double)>& log_f, double tol, int level, std::size_t& count,
                 double* err_out = nullptr)
{
    double error = 0, l1 = 0;
    const double v = integrator<exp_sinh<double>>(level).integrate(Counted{log_f, count}, tol, &error, &l1);
    check(v, error, l1, tol, level);
    if (err_out) *err_out = error;
    return v;
}

double real_line(const std::function<double(double)>& log_f, double tol, int level, std::size_t& count,
                 double* err_out = nullptr)
{
    double error = 0, l1 = 0;
    const double v = integrator<sinh_sinh<double>>(level).integrate(Counted{log_f, count}, tol, &error, &l1);
    check(v, error, l1, tol, level);
    if (err_out) *err_out = error;
    return v;
}

}  // namespace

QuadratureResult integrate_half_line(const std::function<double(double)>& log_f, double tol)
{
    QuadratureResult r;
    r.value = half_line(log_f, tol, 0, r.evaluations, &r.error);
    return r;
}

QuadratureResult integrate_real_line(const std::function<double(double)>& log_f, double tol)
{
    QuadratureResult r;
    r.value = real_line(log_f, tol, 0, r.evaluations, &r.error);
    return r;
}

QuadratureResult integrate_interval(const std::function<double(double)>& log_f, double lo, double hi,
                                    double tol)
{
    QuadratureResult r;
    double l1 = 0;
    thread_local tanh_sinh<double> ts;
    r.value = ts.integrate(Counted{log_f, r.evaluations}, lo, hi, tol, &r.error, &l1);
    check(r.value, r.error, l1, tol);
    return r;
}

QuadratureResult integrate_pd_cone_2x2_real(const std::function<double(const HermitianMatrix&)>& log_f,
                                            double tol, bool reversed)
{
    // Fixed double-exponential tensor rule: x, z on (0, inf) via exp-sinh,
    // y on the real line via sinh-sinh, trapezoid in t with step 1/16. The
    // step-1/8 and step-1/4 sub-grids give a geometric error estimate.
    constexpr double kStep = 1.0 / 16;
    constexpr double kTMax = 4.0;
    const int nodes = int(std::lround(2 * kTMax / kStep)) + 1;
    std::vector<double> hx(nodes), hw(nodes), rx(nodes), rw(nodes);
    for (int i = 0; i < nodes; ++i) {
        const double t = -kTMax + i * kStep;
        const double s = std::numbers::pi / 2 * std::sinh(t);
        const double ds = std::numbers::pi / 2 * std::cosh(t);
        hx[i] = std::exp(s);
        hw[i] = hx[i] * ds * kStep;
        rx[i] = std::sinh(s);
        rw[i] = std::cosh(s) * ds * kStep;
    }

    const AlgebraTag real(1);
    Matrix s(real, 2, 2);
    QuadratureResult r;
    double fine = 0, coarse = 0, coarser = 0;
    for (int i = 0; i < nodes; ++i) {
        const double x = hx[i];
        for (int j = 0; j < nodes; ++j) {
            const double y = rx[j];
            for (int k = 0; k < nodes; ++k) {
                const double z = hx[k];
                const double a = x * x, b = x * y, c = y * y + z * z;
                const double norm = std::sqrt(a * a + 2 * b * b + c * c);
                // Numerically singular corner of the cone (rejected by the
                // definiteness check); its mass is below the rule's resolution.
                const double det = a * z * z;
                if (!std::isfinite(norm) || !(a > 1e-12 * norm) || !(z * z > 1e-12 * norm)
                    || !(c > 1e-12 * norm) || !(det > 1e-12 * norm * c)) {
                    continue;
                }
                s.entry(reversed ? 1 : 0, reversed ? 1 : 0)[0] = a;
                s.entry(0, 1)[0] = s.entry(1, 0)[0] = b;
                s.entry(reversed ? 0 : 1, reversed ? 0 : 1)[0] = c;
                ++r.evaluations;
                const double lf = log_f(HermitianMatrix(s));
                if (std::isnan(lf)) throw QuadratureFailure("integrand is NaN inside the cone");
                if (lf == -std::numeric_limits<double>::infinity()) continue;
                const double v = std::exp(lf + std::log(4.0 * a * z)) * hw[i] * rw[j] * hw[k];
                fine += v;
                if (i % 2 == 0 && j % 2 == 0 && k % 2 == 0) coarse += 8 * v;
                if (i % 4 == 0 && j % 4 == 0 && k % 4 == 0) coarser += 64 * v;
            }
        }
    }
    r.value = fine;
    const double d1 = std::abs(fine - coarse), d2 = std::abs(coarse - coarser);
    r.error = d2 > 0 ? std::min(d1, d1 * d1 / d2) : d1;
    r.error = std::max(r.error, 1e-15 * std::abs(fine));
    if (!std::isfinite(fine)) throw QuadratureFailure("non-finite quadrature result");
    if (r.error > tol * std::abs(fine)) {
        throw QuadratureFailure("cone quadrature error estimate " + std::to_string(r.error)
                                + " exceeds tolerance for integral " + std::to_string(fine));
    }
    return r;
}

}  // namespace triesz
