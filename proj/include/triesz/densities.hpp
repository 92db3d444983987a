#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triesz/algebra.hpp"
#include "triesz/hwv.hpp"

namespace triesz {

enum class Family {
    KotzRieszI,
    KotzRieszII,
    RieszI,
    RieszII,
    PearsonIIRieszI,
    PearsonIIRieszII,
    TRieszI,
    TRieszII,
    BetaRiesz2C,
    BetaRiesz2K,
};

inline constexpr Family kAllFamilies[] = {
    Family::KotzRieszI,       Family::KotzRieszII, Family::RieszI,  Family::RieszII,
    Family::PearsonIIRieszI,  Family::PearsonIIRieszII, Family::TRieszI, Family::TRieszII,
    Family::BetaRiesz2C,      Family::BetaRiesz2K,
};

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);
// Type I and the c-variant use direct arguments; type II and the k-variant inverses.
bool is_type_one(Family f);
// Type I <-> type II (c <-> k).
Family counterpart(Family f);
// Points are n x m matrices (otherwise m x m Hermitian matrices).
bool is_matrix_family(Family f);
bool uses_tau(Family f);
bool is_kotz_riesz(Family f);
bool is_riesz(Family f);
bool is_pearson(Family f);
bool is_t_riesz(Family f);
bool is_beta(Family f);
bool uses_nu(Family f);

struct DistributionParams {
    Family family = Family::TRieszI;
    int beta = 1;
    int n = 1;
    int m = 1;
    WeightVector kappa;
    std::optional<WeightVector> tau;
    std::optional<double> nu;
    std::optional<double> a;
    std::optional<Matrix> mu;               // n x m location
    std::optional<HermitianMatrix> Sigma;   // m x m column scale (Kotz-Riesz)
    std::optional<HermitianMatrix> Theta;   // n x n row scale (Kotz-Riesz) or m x m (beta-Riesz)
    std::optional<HermitianMatrix> Xi;      // m x m (Riesz)
    std::optional<HermitianMatrix> Delta;   // n x n (location-scale T-Riesz)
    std::optional<HermitianMatrix> Pi;      // m x m (location-scale T-Riesz)
};

// Every violated constraint, in a fixed order; empty when the parameters are valid.
std::vector<std::string> validate(const DistributionParams& p);

// Validated, immutable parameter record with cached constants.
class DistributionSpec {
public:
    // Throws DomainError listing the violated constraints.
    explicit DistributionSpec(DistributionParams p);

    const DistributionParams& params() const noexcept { return p_; }
    Family family() const noexcept { return p_.family; }
    int beta() const noexcept { return p_.beta; }
    int n() const noexcept { return p_.n; }
    int m() const noexcept { return p_.m; }
    AlgebraTag tag() const { return AlgebraTag(p_.beta); }
    const WeightVector& kappa() const noexcept { return p_.kappa; }
    // Zero vector for families without a second weight.
    const WeightVector& tau() const noexcept { return tau_; }
    double nu() const noexcept { return p_.nu.value_or(0.0); }
    double a() const noexcept { return p_.a.value_or(0.0); }
    // True when no location or scale matrix differs from the standard form.
    bool is_standard() const noexcept { return standard_; }

    // Constant of the standard form (identity scales).
    double log_base_constant() const noexcept { return log_base_; }
    // Contribution of the scale matrices to the constant.
    double log_scale_constant() const noexcept { return log_scale_; }
    double log_constant() const noexcept { return log_base_ + log_scale_; }

    // Maps a point of the location-scale form to the standard variable:
    // x = left * (point - mu) * right. Absent factors are identities.
    const std::optional<Matrix>& left_whitening() const noexcept { return left_; }
    const std::optional<Matrix>& right_whitening() const noexcept { return right_; }
    // Inverse of the Riesz scale matrix, when present.
    const std::optional<HermitianMatrix>& xi_inverse() const noexcept { return xi_inv_; }

    // Point shape expected by logpdf.
    int point_rows() const noexcept { return is_matrix_family(p_.family) ? p_.n : p_.m; }
    int point_cols() const noexcept { return p_.m; }

private:
    DistributionParams p_;
    WeightVector tau_;
    bool standard_ = true;
    double log_base_ = 0;
    double log_scale_ = 0;
    std::optional<Matrix> left_;
    std::optional<Matrix> right_;
    std::optional<HermitianMatrix> xi_inv_;
};

// Constant of the zero-weight (classical) member, from unweighted multivariate
// gammas only; scale matrices excluded.
double classical_log_constant(Family f, int beta, int n, int m, double nu_or_a);

// Log-densities with respect to Lebesgue measure on the point's real coordinates.
double logpdf_kotz_riesz(const DistributionSpec& spec, const Matrix& y);
double logpdf_riesz(const DistributionSpec& spec, const HermitianMatrix& v);
double logpdf_pearson2_riesz(const DistributionSpec& spec, const Matrix& r);
// Standard form only.
double logpdf_t_riesz(const DistributionSpec& spec, const Matrix& t);
// Location-scale form S = u(Delta)^-1 T f(Pi) + mu, with f = u for type I and
// the lower factor for type II.
double logpdf_t_riesz_general(const DistributionSpec& spec, const Matrix& s);
// Standard form only.
double logpdf_beta_riesz2(const DistributionSpec& spec, const HermitianMatrix& f);
// Z = f(Theta)* F f(Theta), f = u for the c-variant, the lower factor for the k-variant.
double logpdf_beta_riesz2_nonstd(const DistributionSpec& spec, const HermitianMatrix& z);

// Dispatch on the family; Hermitian families validate the point first.
double logpdf(const DistributionSpec& spec, const Matrix& point);
// False for points outside the support (e.g. outside the unit matrix ball).
bool in_support(const DistributionSpec& spec, const Matrix& point);

}  // namespace triesz
