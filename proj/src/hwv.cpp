#include "triesz/hwv.hpp"

#include <cmath>
#include <string>

#include "triesz/errors.hpp"

namespace triesz {

namespace {

void require_dim(const HermitianMatrix& a, const WeightVector& kappa)
{
    if (a.dim() != kappa.size()) {
        throw DimensionMismatch("weight vector has length " + std::to_string(kappa.size())
                                + " but matrix is " + std::to_string(a.dim()) + "x"
                                + std::to_string(a.dim()));
    }
}

}  // namespace

double WeightVector::sum() const
{
    double s = 0;
    for (double v : w_) s += v;
    return s;
}

bool WeightVector::is_zero() const
{
    for (double v : w_) {
        if (v != 0) return false;
    }
    return true;
}

WeightVector WeightVector::reversed() const { return WeightVector(std::vector<double>(w_.rbegin(), w_.rend())); }

WeightVector WeightVector::operator-() const
{
    WeightVector r = *this;
    for (double& v : r.w_) v = -v;
    return r;
}

WeightVector WeightVector::operator+(const WeightVector& o) const
{
    if (o.size() != size()) throw DimensionMismatch("weight vectors differ in length");
    WeightVector r = *this;
    for (int i = 0; i < size(); ++i) r.w_[i] += o.w_[i];
    return r;
}

WeightVector WeightVector::operator-(const WeightVector& o) const { return *this + (-o); }

WeightVector WeightVector::plus(double p) const
{
    WeightVector r = *this;
    for (double& v : r.w_) v += p;
    return r;
}

double weighted_log_pivots(std::span<const double> log_pivots, const WeightVector& kappa)
{
    double s = 0;
    for (int i = 0; i < kappa.size(); ++i) {
        if (kappa[i] != 0) s += kappa[i] * log_pivots[i];
    }
    return s;
}

double log_q_kappa(const HermitianMatrix& a, const WeightVector& kappa)
{
    require_dim(a, kappa);
    const int m = a.dim();
    const std::vector<double> minors = leading_principal_minor_dets(a);
    double s = kappa[m - 1] * std::log(minors[m - 1]);
    for (int i = 0; i + 1 < m; ++i) {
        const double w = kappa[i] - kappa[i + 1];
        if (w != 0) s += w * std::log(minors[i]);
    }
    return s;
}

double q_kappa(const HermitianMatrix& a, const WeightVector& kappa) { return std::exp(log_q_kappa(a, kappa)); }

double log_q_kappa_via_ldl(const HermitianMatrix& a, const WeightVector& kappa)
{
    require_dim(a, kappa);
    const LdlFactors f = ldl_decompose(a);
    double s = 0;
    for (int i = 0; i < a.dim(); ++i) s += kappa[i] * std::log(f.pivots[i]);
    return s;
}

double q_kappa_via_ldl(const HermitianMatrix& a, const WeightVector& kappa)
{
    return std::exp(log_q_kappa_via_ldl(a, kappa));
}

double log_q_star_kappa(const HermitianMatrix& a, const WeightVector& kappa)
{
    require_dim(a, kappa);
    // Trailing pivots listed top to bottom; lambda*_i belongs to position m-1-i.
    const std::vector<double> lt = log_trailing_pivots(a);
    const int m = a.dim();
    double s = 0;
    for (int i = 0; i < m; ++i) s += kappa[m - 1 - i] * lt[i];
    return s;
}

double q_star_kappa(const HermitianMatrix& a, const WeightVector& kappa)
{
    return std::exp(log_q_star_kappa(a, kappa));
}

double log_q_kappa_of_inverse(const HermitianMatrix& a, const WeightVector& kappa)
{
    return log_q_star_kappa(a, -kappa.reversed());
}

WeightVector triangular_transpose_weights(int m, int beta)
{
    std::vector<double> rho(m);
    for (int i = 1; i <= m; ++i) rho[i - 1] = beta * (2.0 * i - m - 1) / 2.0;
    return WeightVector(std::move(rho));
}

}  // namespace triesz
