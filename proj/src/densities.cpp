#include "triesz/densities.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "triesz/errors.hpp"
#include "triesz/specfun.hpp"

namespace triesz {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLogPi = std::log(std::numbers::pi);

struct FamilyInfo {
    Family family;
    std::string_view name;
};

constexpr FamilyInfo kFamilyNames[] = {
    {Family::KotzRieszI, "KotzRieszI"},
    {Family::KotzRieszII, "KotzRieszII"},
    {Family::RieszI, "RieszI"},
    {Family::RieszII, "RieszII"},
    {Family::PearsonIIRieszI, "PearsonIIRieszI"},
    {Family::PearsonIIRieszII, "PearsonIIRieszII"},
    {Family::TRieszI, "TRieszI"},
    {Family::TRieszII, "TRieszII"},
    {Family::BetaRiesz2C, "BetaRiesz2C"},
    {Family::BetaRiesz2K, "BetaRiesz2K"},
};


std::string fmt(double x)
{
    std::ostringstream s;
    s << x;
    return s.str();
}

// "lhs > rhs" must hold; records the inequality with its numbers otherwise.
void require_greater(std::vector<std::string>& problems, const std::string& inequality, double lhs, double rhs)
{
    if (!(lhs > rhs)) problems.push_back(inequality + " violated: " + fmt(lhs) + " ≤ " + fmt(rhs));
}

// log(|A|^e q_w(A)) or, with inverse, log(|A|^e q_w(A^-1)), for a Gram matrix A
// that may be singular. Singular A gives -inf when every pivot exponent is
// positive (the factor vanishes), 0 when all are zero, SupportError otherwise.
double log_power_term(const HermitianMatrix& a, double det_exp, const WeightVector& w, bool inverse)
{
    std::vector<double> lp;
    try {
        lp = inverse ? log_trailing_pivots(a) : log_leading_pivots(a);
    } catch (const NotPositiveDefinite&) {
        bool all_zero = true, all_positive = true;
        for (int i = 0; i < w.size(); ++i) {
            const double e = det_exp + (inverse ? -w[i] : w[i]);
            all_zero = all_zero && e == 0;
            all_positive = all_positive && e > 0;
        }
        if (all_zero) return 0.0;
        if (all_positive) return kNegInf;
        throw SupportError("density diverges or is undefined at a singular argument");
    }
    // q_w(A^-1) = prod l_ii^{-2 w_i} with A = l* l, l lower.
    double s = 0;
    for (int i = 0; i < w.size(); ++i) s += (det_exp + (inverse ? -w[i] : w[i])) * lp[i];
    return s;
}

// log(|H|^e q_w(H)) (or of H^-1) for H known to be positive definite.
double log_pd_term(const HermitianMatrix& h, double det_exp, const WeightVector& w, bool inverse)
{
    const std::vector<double> lp = inverse ? log_trailing_pivots(h) : log_leading_pivots(h);
    double s = 0;
    for (int i = 0; i < w.size(); ++i) s += (det_exp + (inverse ? -w[i] : w[i])) * lp[i];
    return s;
}

void require_family(const DistributionSpec& spec, bool ok, const char* fn)
{
    if (!ok) {
        throw DomainError(std::string(fn) + " does not accept family " + std::string(family_name(spec.family())));
    }
}

void require_shape(const Matrix& x, int rows, int cols, int beta)
{
    if (x.beta() != beta || x.rows() != rows || x.cols() != cols) {
        throw DimensionMismatch("point must be a " + std::to_string(rows) + "x" + std::to_string(cols)
                                + " matrix over beta = " + std::to_string(beta));
    }
}

Matrix whiten(const DistributionSpec& spec, const Matrix& point)
{
    Matrix x = point;
    if (spec.params().mu) x -= *spec.params().mu;
    if (spec.left_whitening()) x = *spec.left_whitening() * x;
    if (spec.right_whitening()) x = x * *spec.right_whitening();
    return x;
}

double p_exponent(int m, int beta) { return (m - 1) * beta / 2.0 + 1.0; }

// Shared kernel of the T-Riesz and beta-Riesz type II families in terms of
// Q (= T*T or its location-scale analogue) and H = Pi + Q:
//   |Q|^qdet |H|^{-(nu+n)beta/2} q_{-kappa-tau}(H) q_rho(H) q_tau(Q)
// with every q taken at inverse arguments for type II.
double t_kernel(const DistributionSpec& spec, const HermitianMatrix& q, const HermitianMatrix& h, double qdet)
{
    const bool inv = !is_type_one(spec.family());
    const int m = spec.m(), beta = spec.beta();
    const WeightVector w = -(spec.kappa() + spec.tau()) + triangular_transpose_weights(m, beta);
    const double hdet = -(spec.nu() + spec.n()) * beta / 2.0;
    const double hterm = log_pd_term(h, hdet, w, inv);
    const double qterm = log_power_term(q, qdet, spec.tau(), inv);
    return hterm + qterm;
}

}  // namespace

// Families ----------------------------------------------------------------

bool is_kotz_riesz(Family f) { return f == Family::KotzRieszI || f == Family::KotzRieszII; }
bool is_riesz(Family f) { return f == Family::RieszI || f == Family::RieszII; }
bool is_pearson(Family f) { return f == Family::PearsonIIRieszI || f == Family::PearsonIIRieszII; }
bool is_t_riesz(Family f) { return f == Family::TRieszI || f == Family::TRieszII; }
bool is_beta(Family f) { return f == Family::BetaRiesz2C || f == Family::BetaRiesz2K; }

std::string_view family_name(Family f)
{
    for (const auto& info : kFamilyNames) {
        if (info.family == f) return info.name;
    }
    return "unknown";
}

std::optional<Family> family_from_name(std::string_view name)
{
    for (const auto& info : kFamilyNames) {
        if (info.name == name) return info.family;
    }
    return std::nullopt;
}

bool is_type_one(Family f)
{
    switch (f) {
    case Family::KotzRieszI:
    case Family::RieszI:
    case Family::PearsonIIRieszI:
    case Family::TRieszI:
    case Family::BetaRiesz2C:
        return true;
    default:
        return false;
    }
}

Family counterpart(Family f)
{
    switch (f) {
    case Family::KotzRieszI: return Family::KotzRieszII;
    case Family::KotzRieszII: return Family::KotzRieszI;
    case Family::RieszI: return Family::RieszII;
    case Family::RieszII: return Family::RieszI;
    case Family::PearsonIIRieszI: return Family::PearsonIIRieszII;
    case Family::PearsonIIRieszII: return Family::PearsonIIRieszI;
    case Family::TRieszI: return Family::TRieszII;
    case Family::TRieszII: return Family::TRieszI;
    case Family::BetaRiesz2C: return Family::BetaRiesz2K;
    case Family::BetaRiesz2K: return Family::BetaRiesz2C;
    }
    return f;
}

bool is_matrix_family(Family f) { return is_kotz_riesz(f) || is_pearson(f) || is_t_riesz(f); }
bool uses_tau(Family f) { return is_pearson(f) || is_t_riesz(f) || is_beta(f); }
bool uses_nu(Family f) { return uses_tau(f); }

// Validation --------------------------------------------------------------

std::vector<std::string> validate(const DistributionParams& p)
{
    std::vector<std::string> problems;
    const Family f = p.family;
    if (p.beta != 1 && p.beta != 2 && p.beta != 4) {
        problems.push_back("beta must be 1, 2, or 4");
        return problems;
    }
    if (p.m < 1) problems.push_back("m must be at least 1");
    if (p.n < p.m) problems.push_back("n ≥ m required (got n = " + std::to_string(p.n) + ", m = " + std::to_string(p.m) + ")");
    if (!problems.empty()) return problems;

    const int m = p.m, beta = p.beta;
    const double half_cone = (m - 1) * beta / 2.0;
    const bool one = is_type_one(f);

    const bool kappa_ok = p.kappa.size() == m;
    if (!kappa_ok) problems.push_back("kappa must have length m = " + std::to_string(m));
    bool tau_ok = uses_tau(f);
    if (uses_tau(f)) {
        if (!p.tau) {
            problems.push_back("tau is required for " + std::string(family_name(f)));
            tau_ok = false;
        } else if (p.tau->size() != m) {
            problems.push_back("tau must have length m = " + std::to_string(m));
            tau_ok = false;
        }
    } else if (p.tau) {
        problems.push_back("tau is not a parameter of " + std::string(family_name(f)));
    }
    if (uses_nu(f) && !p.nu) problems.push_back("nu is required for " + std::string(family_name(f)));
    if (!uses_nu(f) && p.nu) problems.push_back("nu is not a parameter of " + std::string(family_name(f)));
    if (is_riesz(f) && !p.a) problems.push_back("a is required for " + std::string(family_name(f)));
    if (!is_riesz(f) && p.a) problems.push_back("a is not a parameter of " + std::string(family_name(f)));
    // Which location/scale matrices each family accepts, and their shapes.
    struct Slot {
        const char* name;
        bool present;
        bool allowed;
        int dim;
        const HermitianMatrix* value;
    };
    const Slot slots[] = {
        {"Sigma", bool(p.Sigma), is_kotz_riesz(f), m, p.Sigma ? &*p.Sigma : nullptr},
        {"Theta", bool(p.Theta), is_kotz_riesz(f) || is_beta(f), is_kotz_riesz(f) ? p.n : m,
         p.Theta ? &*p.Theta : nullptr},
        {"Xi", bool(p.Xi), is_riesz(f), m, p.Xi ? &*p.Xi : nullptr},
        {"Delta", bool(p.Delta), is_t_riesz(f), p.n, p.Delta ? &*p.Delta : nullptr},
        {"Pi", bool(p.Pi), is_t_riesz(f), m, p.Pi ? &*p.Pi : nullptr},
    };
    for (const Slot& s : slots) {
        if (!s.present) continue;
        if (!s.allowed) {
            problems.push_back(std::string(s.name) + " is not a parameter of " + std::string(family_name(f)));
            continue;
        }
        if (s.value->beta() != beta || s.value->dim() != s.dim) {
            problems.push_back(std::string(s.name) + " must be " + std::to_string(s.dim) + "x" + std::to_string(s.dim)
                               + " over beta = " + std::to_string(beta));
        } else if (!is_positive_definite(*s.value)) {
            problems.push_back(std::string(s.name) + " must be positive definite");
        }
    }
    if (p.mu) {
        if (!is_kotz_riesz(f) && !is_t_riesz(f)) {
            problems.push_back("mu is not a parameter of " + std::string(family_name(f)));
        } else if (p.mu->beta() != beta || p.mu->rows() != p.n || p.mu->cols() != m) {
            problems.push_back("mu must be " + std::to_string(p.n) + "x" + std::to_string(m) + " over beta = "
                               + std::to_string(beta));
        }
    }
    // Domain conditions of the normalizing integrals.
    const WeightVector& k = p.kappa;
    auto weight_condition = [&](const std::string& lhs_name, double lhs, const WeightVector& w, const char* wname) {
        const std::size_t before = problems.size();
        if (one) {
            require_greater(problems, "Re(" + lhs_name + ") > (m−1)β/2 − " + wname + "_m", lhs, half_cone - w.last());
        } else {
            require_greater(problems, "Re(" + lhs_name + ") > (m−1)β/2 + " + wname + "_1", lhs, half_cone + w.first());
        }
        return problems.size() == before;
    };
    auto gamma_arguments = [&](const std::string& lhs_name, double a, const WeightVector& w) {
        const GammaArgs args{a, w, beta, m, one ? GammaSign::plus : GammaSign::minus};
        const std::vector<double> xs = weighted_gamma_arguments(args);
        for (int i = 0; i < m; ++i) {
            if (!(xs[i] > 0)) {
                problems.push_back("gamma argument " + lhs_name + (one ? " + k_i − (i−1)β/2" : " − k_i − (m−i)β/2")
                                   + " must be positive at i = " + std::to_string(i + 1) + " (got " + fmt(xs[i]) + ")");
            }
        }
    };
    const double half_n = p.n * beta / 2.0;
    if (is_kotz_riesz(f)) {
        if (kappa_ok && weight_condition("nβ/2", half_n, k, "k")) gamma_arguments("nβ/2", half_n, k);
    } else if (is_riesz(f)) {
        if (p.a && kappa_ok && weight_condition("a", *p.a, k, "k")) gamma_arguments("a", *p.a, k);
    } else if (p.nu) {
        const double half_nu = *p.nu * beta / 2.0;
        const bool k_in = kappa_ok && weight_condition("νβ/2", half_nu, k, "k");
        const bool t_in = tau_ok && weight_condition("nβ/2", half_n, *p.tau, "t");
        if (k_in) gamma_arguments("νβ/2", half_nu, k);
        if (t_in) gamma_arguments("nβ/2", half_n, *p.tau);
        if (k_in && t_in) gamma_arguments("(ν+n)β/2", half_nu + half_n, k + *p.tau);
    }
    return problems;
}

// DistributionSpec --------------------------------------------------------

DistributionSpec::DistributionSpec(DistributionParams p) : p_(std::move(p))
{
    const std::vector<std::string> problems = validate(p_);
    if (!problems.empty()) {
        std::string msg = "invalid " + std::string(family_name(p_.family)) + " parameters:";
        for (const auto& s : problems) msg += " " + s + ";";
        throw DomainError(msg);
    }
    const Family f = p_.family;
    const int m = p_.m, n = p_.n, beta = p_.beta;
    const bool one = is_type_one(f);
    tau_ = p_.tau.value_or(WeightVector::zero(m));
    standard_ = !(p_.mu || p_.Sigma || p_.Theta || p_.Xi || p_.Delta || p_.Pi);
    const double half_n = n * beta / 2.0;
    const double mn_half = m * n * beta / 2.0;
    const GammaSign sign = one ? GammaSign::plus : GammaSign::minus;
    const WeightVector rho = triangular_transpose_weights(m, beta);

    if (is_kotz_riesz(f)) {
        const double ksum = one ? p_.kappa.sum() : -p_.kappa.sum();
        log_base_ = (mn_half + ksum) * std::log(double(beta)) + log_mv_gamma(m, beta, half_n) - mn_half * kLogPi
                    - log_mv_gamma_weighted({half_n, p_.kappa, beta, m, sign});
        if (p_.Sigma) {
            log_scale_ -= half_n * log_det_hermitian_pd(*p_.Sigma);
            right_ = invert_upper_triangular(cholesky_upper(*p_.Sigma)).matrix();
        }
        if (p_.Theta) {
            log_scale_ -= m * beta / 2.0 * log_det_hermitian_pd(*p_.Theta);
            left_ = adjoint(invert_upper_triangular(cholesky_upper(*p_.Theta)).matrix());
        }
    } else if (is_riesz(f)) {
        const double a = *p_.a;
        const double ksum = one ? p_.kappa.sum() : -p_.kappa.sum();
        log_base_ = (a * m + ksum) * std::log(double(beta)) - log_mv_gamma_weighted({a, p_.kappa, beta, m, sign});
        if (p_.Xi) {
            log_scale_ = -a * log_det_hermitian_pd(*p_.Xi)
                         - (one ? log_q_kappa(*p_.Xi, p_.kappa) : log_q_kappa_of_inverse(*p_.Xi, p_.kappa));
            xi_inv_ = inverse_hermitian_pd(*p_.Xi);
        }
    } else {
        const double half_nu = *p_.nu * beta / 2.0;
        const double lbeta = one ? log_c_beta(m, beta, half_nu, p_.kappa, half_n, tau_)
                                 : log_k_beta(m, beta, half_nu, p_.kappa, half_n, tau_);
        if (is_beta(f)) {
            log_base_ = -lbeta;
            if (p_.Theta) {
                log_scale_ = half_nu * log_det_hermitian_pd(*p_.Theta)
                             + (one ? log_q_kappa(*p_.Theta, p_.kappa - rho)
                                    : log_q_kappa_of_inverse(*p_.Theta, p_.kappa - rho));
            }
        } else {
            log_base_ = log_mv_gamma(m, beta, half_n) - mn_half * kLogPi - lbeta;
        }
        if (is_t_riesz(f)) {
            if (p_.Pi) {
                log_scale_ += half_nu * log_det_hermitian_pd(*p_.Pi)
                              + (one ? log_q_kappa(*p_.Pi, p_.kappa - rho)
                                     : log_q_kappa_of_inverse(*p_.Pi, p_.kappa - rho));
                right_ = one ? invert_upper_triangular(cholesky_upper(*p_.Pi)).matrix()
                             : invert_lower_triangular(cholesky_lower(*p_.Pi)).matrix();
            }
            if (p_.Delta) {
                log_scale_ += m * beta / 2.0 * log_det_hermitian_pd(*p_.Delta);
                left_ = cholesky_upper(*p_.Delta).matrix();
            }
        }
    }
}

double classical_log_constant(Family f, int beta, int n, int m, double nu_or_a)
{
    const double mn_half = m * n * beta / 2.0;
    if (is_kotz_riesz(f)) return mn_half * (std::log(double(beta)) - kLogPi);
    if (is_riesz(f)) return nu_or_a * m * std::log(double(beta)) - log_mv_gamma(m, beta, nu_or_a);
    const double half_nu = nu_or_a * beta / 2.0, half_n = n * beta / 2.0;
    const double ratio = log_mv_gamma(m, beta, half_nu + half_n) - log_mv_gamma(m, beta, half_nu);
    if (is_beta(f)) return ratio - log_mv_gamma(m, beta, half_n);
    return ratio - mn_half * kLogPi;
}

// Log-densities -----------------------------------------------------------

double logpdf_kotz_riesz(const DistributionSpec& spec, const Matrix& y)
{
    require_family(spec, is_kotz_riesz(spec.family()), "logpdf_kotz_riesz");
    require_shape(y, spec.n(), spec.m(), spec.beta());
    const HermitianMatrix w = HermitianMatrix::gram(whiten(spec, y));
    const double q = log_power_term(w, 0.0, spec.kappa(), !is_type_one(spec.family()));
    if (q == kNegInf) return kNegInf;
    return spec.log_constant() - spec.beta() * trace_re(w.matrix()) + q;
}

double logpdf_riesz(const DistributionSpec& spec, const HermitianMatrix& v)
{
    require_family(spec, is_riesz(spec.family()), "logpdf_riesz");
    if (v.dim() != spec.m() || v.beta() != spec.beta()) throw DimensionMismatch("Riesz point has the wrong shape");
    const double tr = spec.xi_inverse() ? trace_re(spec.xi_inverse()->matrix() * v.matrix()) : trace_re(v.matrix());
    const double power = spec.a() - p_exponent(spec.m(), spec.beta());
    // Throws NotPositiveDefinite for points off the cone.
    const double q = log_pd_term(v, power, spec.kappa(), !is_type_one(spec.family()));
    return spec.log_constant() - spec.beta() * tr + q;
}

double logpdf_pearson2_riesz(const DistributionSpec& spec, const Matrix& r)
{
    require_family(spec, is_pearson(spec.family()), "logpdf_pearson2_riesz");
    require_shape(r, spec.n(), spec.m(), spec.beta());
    const bool inv = !is_type_one(spec.family());
    const HermitianMatrix s = HermitianMatrix::gram(r);
    const HermitianMatrix d = HermitianMatrix::identity(spec.tag(), spec.m()) - s;
    if (!is_positive_definite(d)) throw SupportError("I − R*R is not positive definite");
    const double e = (spec.nu() - spec.m() + 1) * spec.beta() / 2.0 - 1.0;
    const double dterm = log_pd_term(d, e, spec.kappa(), inv);
    const double sterm = log_power_term(s, 0.0, spec.tau(), inv);
    if (sterm == kNegInf) return kNegInf;
    return spec.log_constant() + dterm + sterm;
}

double logpdf_t_riesz(const DistributionSpec& spec, const Matrix& t)
{
    require_family(spec, is_t_riesz(spec.family()), "logpdf_t_riesz");
    if (!spec.is_standard()) throw DomainError("logpdf_t_riesz needs the standard form; use logpdf_t_riesz_general");
    return logpdf_t_riesz_general(spec, t);
}

double logpdf_t_riesz_general(const DistributionSpec& spec, const Matrix& s)
{
    require_family(spec, is_t_riesz(spec.family()), "logpdf_t_riesz_general");
    require_shape(s, spec.n(), spec.m(), spec.beta());
    const auto& p = spec.params();
    Matrix e = s;
    if (p.mu) e -= *p.mu;
    if (spec.left_whitening()) e = *spec.left_whitening() * e;
    // Q = (S - mu)* Delta (S - mu), H = Pi + Q.
    const HermitianMatrix q = HermitianMatrix::gram(e);
    const HermitianMatrix h = (p.Pi ? *p.Pi : HermitianMatrix::identity(spec.tag(), spec.m())) + q;
    const double k = t_kernel(spec, q, h, 0.0);
    return k == kNegInf ? kNegInf : spec.log_constant() + k;
}

double logpdf_beta_riesz2(const DistributionSpec& spec, const HermitianMatrix& f)
{
    require_family(spec, is_beta(spec.family()), "logpdf_beta_riesz2");
    if (!spec.is_standard()) throw DomainError("logpdf_beta_riesz2 needs the standard form; use logpdf_beta_riesz2_nonstd");
    return logpdf_beta_riesz2_nonstd(spec, f);
}

double logpdf_beta_riesz2_nonstd(const DistributionSpec& spec, const HermitianMatrix& z)
{
    require_family(spec, is_beta(spec.family()), "logpdf_beta_riesz2_nonstd");
    if (z.dim() != spec.m() || z.beta() != spec.beta()) throw DimensionMismatch("beta-Riesz point has the wrong shape");
    if (!is_positive_definite(z)) throw NotPositiveDefinite("beta-Riesz point is not positive definite");
    const auto& p = spec.params();
    const HermitianMatrix h = (p.Theta ? *p.Theta : HermitianMatrix::identity(spec.tag(), spec.m())) + z;
    const double qdet = spec.n() * spec.beta() / 2.0 - p_exponent(spec.m(), spec.beta());
    const double k = t_kernel(spec, z, h, qdet);
    return k == kNegInf ? kNegInf : spec.log_constant() + k;
}

double logpdf(const DistributionSpec& spec, const Matrix& point)
{
    switch (spec.family()) {
    case Family::KotzRieszI:
    case Family::KotzRieszII:
        return logpdf_kotz_riesz(spec, point);
    case Family::RieszI:
    case Family::RieszII:
        return logpdf_riesz(spec, HermitianMatrix(point));
    case Family::PearsonIIRieszI:
    case Family::PearsonIIRieszII:
        return logpdf_pearson2_riesz(spec, point);
    case Family::TRieszI:
    case Family::TRieszII:
        return logpdf_t_riesz_general(spec, point);
    case Family::BetaRiesz2C:
    case Family::BetaRiesz2K:
        return logpdf_beta_riesz2_nonstd(spec, HermitianMatrix(point));
    }
    return kNegInf;
}

bool in_support(const DistributionSpec& spec, const Matrix& point)
{
    if (point.beta() != spec.beta() || point.rows() != spec.point_rows() || point.cols() != spec.point_cols()) {
        return false;
    }
    const Family f = spec.family();
    if (is_pearson(f)) {
        return is_positive_definite(HermitianMatrix::identity(spec.tag(), spec.m()) - HermitianMatrix::gram(point));
    }
    if (is_riesz(f) || is_beta(f)) {
        try {
            return is_positive_definite(HermitianMatrix(point));
        } catch (const DomainError&) {
            return false;
        }
    }
    return true;
}

}  // namespace triesz
