#pragma once

#include <cstdint>
#include <random>

#include "triesz/algebra.hpp"
#include "triesz/densities.hpp"
#include "triesz/hwv.hpp"

namespace triesz {

// Deterministic stream: identical (seed, stream) give identical draws.
// Not thread-safe; use one stream per thread.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    // Uniform on the open interval (0, 1).
    double uniform();
    double normal();
    // Gamma(shape, rate 1). Throws DomainError unless shape > 0.
    double gamma(double shape);
    std::uint64_t bits() { return engine_(); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0;
};

// Type I works with u(.) and direct arguments, type II with the lower factor
// and inverse arguments.
enum class RieszVariant { I, II };

RieszVariant variant_of(Family f);

// Riesz(a, kappa) with scale Xi by a Bartlett-type triangular construction.
// Throws DomainError if a gamma shape is not positive.
HermitianMatrix sample_riesz_bartlett(RngStream& rng, int m, int beta, double a, const WeightVector& kappa,
                                      const HermitianMatrix& xi, RieszVariant variant);

// Uniform (Haar) point of the Stiefel manifold: H* H = I_m.
Matrix sample_stiefel_uniform(RngStream& rng, int n, int m, int beta);

Matrix sample_kotz_riesz(RngStream& rng, const DistributionSpec& spec);
HermitianMatrix sample_riesz(RngStream& rng, const DistributionSpec& spec);
Matrix sample_pearson2_riesz(RngStream& rng, const DistributionSpec& spec);
// Location-scale parameters are applied with affine_transform_sample.
Matrix sample_t_riesz(RngStream& rng, const DistributionSpec& spec);
// Theta, when present, is applied as f(Theta)* F f(Theta).
HermitianMatrix sample_beta_riesz2(RngStream& rng, const DistributionSpec& spec);

// Draw in the layout logpdf expects.
Matrix sample(RngStream& rng, const DistributionSpec& spec);

// u(Delta)^-1 T f(Pi) + mu, f = u for type I and the lower factor for type II.
Matrix affine_transform_sample(const Matrix& t, const Matrix& mu, const HermitianMatrix& delta,
                               const HermitianMatrix& pi, RieszVariant variant = RieszVariant::I);

// Shared ingredients of the T-Riesz and Pearson constructions: X standard
// Kotz-Riesz with weight tau, U Riesz(nu beta / 2, kappa).
struct TRieszParts {
    Matrix x;
    HermitianMatrix u;
    // f(U) exactly as drawn, so nearly singular U need no refactorization.
    Matrix u_factor;
};
TRieszParts sample_t_riesz_parts(RngStream& rng, const DistributionSpec& spec);

// T = X f(U)^-1.
Matrix t_from_parts(const TRieszParts& parts, RieszVariant variant);
// R = X f(U + X*X)^-1.
Matrix pearson_from_parts(const TRieszParts& parts, RieszVariant variant);
// T = R f(I - R*R)^-1.
Matrix t_from_pearson(const Matrix& r, RieszVariant variant);

}  // namespace triesz
