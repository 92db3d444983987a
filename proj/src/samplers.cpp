#include "triesz/samplers.hpp"

#include <cmath>
#include <string>

#include "triesz/errors.hpp"

namespace triesz {

namespace {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t state = seed;
    const std::uint64_t a = splitmix64(state);
    state ^= stream * 0xd1342543de82ef95ULL;
    const std::uint64_t b = splitmix64(state);
    const std::uint64_t c = splitmix64(state);
    std::seed_seq seq{std::uint32_t(a), std::uint32_t(a >> 32), std::uint32_t(b), std::uint32_t(b >> 32),
                      std::uint32_t(c), std::uint32_t(c >> 32)};
    return std::mt19937_64(seq);
}

// Each real component N(0, sd^2).
void fill_normal(RngStream& rng, double* x, int beta, double sd)
{
    for (int c = 0; c < beta; ++c) x[c] = sd * rng.normal();
}

Matrix gaussian_matrix(RngStream& rng, int beta, int rows, int cols, double sd)
{
    Matrix z(AlgebraTag(beta), rows, cols);
    for (double& v : z.raw()) v = sd * rng.normal();
    return z;
}

Matrix inverse_factor(const HermitianMatrix& a, RieszVariant variant)
{
    return variant == RieszVariant::I ? invert_upper_triangular(cholesky_upper(a)).matrix()
                                      : invert_lower_triangular(cholesky_lower(a)).matrix();
}

Matrix factor(const HermitianMatrix& a, RieszVariant variant)
{
    return variant == RieszVariant::I ? cholesky_upper(a).matrix() : cholesky_lower(a).matrix();
}

// F with F*F a standard Riesz draw: upper for type I, lower for type II.
Matrix bartlett_factor(RngStream& rng, int m, int beta, double a, const WeightVector& kappa, RieszVariant variant)
{
    const AlgebraTag tag(beta);
    if (kappa.size() != m) throw DimensionMismatch("Riesz sampler: kappa must have length m = " + std::to_string(m));
    std::vector<double> shapes(m);
    for (int i = 0; i < m; ++i) {
        shapes[i] = variant == RieszVariant::I ? a + kappa[i] - i * beta / 2.0 : a - kappa[i] - (m - 1 - i) * beta / 2.0;
        if (!(shapes[i] > 0)) {
            throw DomainError("Riesz sampler: gamma shape " + std::to_string(shapes[i]) + " at i = "
                              + std::to_string(i + 1) + " is not positive");
        }
    }
    const double sd = std::sqrt(1.0 / (2 * beta));
    Matrix t(tag, m, m);
    for (int i = 0; i < m; ++i) {
        t.entry(i, i)[0] = std::sqrt(rng.gamma(shapes[i]) / beta);
        for (int j = i + 1; j < m; ++j) fill_normal(rng, t.entry(i, j), beta, sd);
    }
    // Type I: V = T* T; type II: V = S S* with S upper, which fixes the trailing pivots.
    return variant == RieszVariant::I ? t : adjoint(t);
}

// Standard Kotz-Riesz: X = H F with F*F ~ Riesz(n beta / 2, w) and H Haar on
// the Stiefel manifold; any such square root gives the same law.
Matrix standard_kotz_riesz(RngStream& rng, int n, int m, int beta, const WeightVector& w, RieszVariant variant)
{
    const Matrix f = bartlett_factor(rng, m, beta, n * beta / 2.0, w, variant);
    return sample_stiefel_uniform(rng, n, m, beta) * f;
}

void require(const DistributionSpec& spec, bool ok, const char* fn)
{
    if (!ok) throw DomainError(std::string(fn) + " does not accept family " + std::string(family_name(spec.family())));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(seeded_engine(seed, stream))
{
}

double RngStream::uniform()
{
    return (double(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

// Marsaglia polar method.
double RngStream::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2 * uniform() - 1;
        v = 2 * uniform() - 1;
        s = u * u + v * v;
    } while (s >= 1 || s == 0);
    const double f = std::sqrt(-2 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

// Marsaglia-Tsang; shapes below one are boosted by U^(1/shape).
double RngStream::gamma(double shape)
{
    if (!(shape > 0) || !std::isfinite(shape)) {
        throw DomainError("gamma shape must be positive (got " + std::to_string(shape) + ")");
    }
    if (shape < 1) {
        const double g = gamma(shape + 1);
        return g * std::exp(std::log(uniform()) / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1 / std::sqrt(9 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1 + c * x;
        } while (v <= 0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1 - v + std::log(v))) return d * v;
    }
}

RieszVariant variant_of(Family f) { return is_type_one(f) ? RieszVariant::I : RieszVariant::II; }

HermitianMatrix sample_riesz_bartlett(RngStream& rng, int m, int beta, double a, const WeightVector& kappa,
                                      const HermitianMatrix& xi, RieszVariant variant)
{
    if (xi.dim() != m || xi.beta() != beta) {
        throw DimensionMismatch("Riesz sampler: Xi must be " + std::to_string(m) + "x" + std::to_string(m)
                                + " over beta = " + std::to_string(beta));
    }
    const HermitianMatrix w = HermitianMatrix::gram(bartlett_factor(rng, m, beta, a, kappa, variant));
    return HermitianMatrix::congruence(factor(xi, variant), w);
}

Matrix sample_stiefel_uniform(RngStream& rng, int n, int m, int beta)
{
    if (n < m || m < 1) throw DomainError("Stiefel sampler needs n >= m >= 1");
    // Gram-Schmidt on the columns of a Gaussian matrix (the Q of Z = QR with
    // positive real diag R), each column orthogonalized twice.
    const AlgebraTag tag(beta);
    Matrix h = gaussian_matrix(rng, beta, n, m, 1.0);
    for (int j = 0; j < m; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                Scalar c(tag);
                for (int i = 0; i < n; ++i) c = c + h(i, k).conj() * h(i, j);
                for (int i = 0; i < n; ++i) h.set(i, j, h(i, j) - h(i, k) * c);
            }
        }
        double norm2 = 0;
        for (int i = 0; i < n; ++i) norm2 += h(i, j).norm2();
        if (!(norm2 > 0)) throw SingularMatrix("Stiefel sampler: Gaussian draw has dependent columns");
        const double inv = 1 / std::sqrt(norm2);
        for (int i = 0; i < n; ++i) {
            for (int c = 0; c < beta; ++c) h.entry(i, j)[c] *= inv;
        }
    }
    return h;
}

Matrix sample_kotz_riesz(RngStream& rng, const DistributionSpec& spec)
{
    require(spec, is_kotz_riesz(spec.family()), "sample_kotz_riesz");
    const auto& p = spec.params();
    Matrix x = standard_kotz_riesz(rng, spec.n(), spec.m(), spec.beta(), spec.kappa(), variant_of(spec.family()));
    // Y = u(Theta)* X u(Sigma) + mu.
    if (p.Sigma) x = x * cholesky_upper(*p.Sigma);
    if (p.Theta) x = adjoint(cholesky_upper(*p.Theta).matrix()) * x;
    if (p.mu) x += *p.mu;
    return x;
}

HermitianMatrix sample_riesz(RngStream& rng, const DistributionSpec& spec)
{
    require(spec, is_riesz(spec.family()), "sample_riesz");
    const auto& p = spec.params();
    return sample_riesz_bartlett(rng, spec.m(), spec.beta(), spec.a(), spec.kappa(),
                                 p.Xi ? *p.Xi : HermitianMatrix::identity(spec.tag(), spec.m()),
                                 variant_of(spec.family()));
}

TRieszParts sample_t_riesz_parts(RngStream& rng, const DistributionSpec& spec)
{
    const Family f = spec.family();
    require(spec, is_t_riesz(f) || is_pearson(f) || is_beta(f), "sample_t_riesz_parts");
    const RieszVariant variant = variant_of(f);
    Matrix x = standard_kotz_riesz(rng, spec.n(), spec.m(), spec.beta(), spec.tau(), variant);
    Matrix root = bartlett_factor(rng, spec.m(), spec.beta(), spec.nu() * spec.beta() / 2.0, spec.kappa(), variant);
    HermitianMatrix u = HermitianMatrix::gram(root);
    return {std::move(x), std::move(u), std::move(root)};
}

Matrix t_from_parts(const TRieszParts& parts, RieszVariant variant)
{
    return parts.x * (variant == RieszVariant::I ? invert_upper_triangular(UpperTriangular(parts.u_factor)).matrix()
                                                 : invert_lower_triangular(LowerTriangular(parts.u_factor)).matrix());
}

Matrix pearson_from_parts(const TRieszParts& parts, RieszVariant variant)
{
    return parts.x * inverse_factor(parts.u + HermitianMatrix::gram(parts.x), variant);
}

Matrix t_from_pearson(const Matrix& r, RieszVariant variant)
{
    const HermitianMatrix d = HermitianMatrix::identity(r.tag(), r.cols()) - HermitianMatrix::gram(r);
    return r * inverse_factor(d, variant);
}

Matrix sample_pearson2_riesz(RngStream& rng, const DistributionSpec& spec)
{
    require(spec, is_pearson(spec.family()), "sample_pearson2_riesz");
    return pearson_from_parts(sample_t_riesz_parts(rng, spec), variant_of(spec.family()));
}

Matrix sample_t_riesz(RngStream& rng, const DistributionSpec& spec)
{
    require(spec, is_t_riesz(spec.family()), "sample_t_riesz");
    const RieszVariant variant = variant_of(spec.family());
    Matrix t = t_from_parts(sample_t_riesz_parts(rng, spec), variant);
    if (spec.is_standard()) return t;
    const auto& p = spec.params();
    const AlgebraTag tag = spec.tag();
    return affine_transform_sample(t, p.mu ? *p.mu : Matrix(tag, spec.n(), spec.m()),
                                   p.Delta ? *p.Delta : HermitianMatrix::identity(tag, spec.n()),
                                   p.Pi ? *p.Pi : HermitianMatrix::identity(tag, spec.m()), variant);
}

HermitianMatrix sample_beta_riesz2(RngStream& rng, const DistributionSpec& spec)
{
    require(spec, is_beta(spec.family()), "sample_beta_riesz2");
    const RieszVariant variant = variant_of(spec.family());
    const HermitianMatrix f = HermitianMatrix::gram(t_from_parts(sample_t_riesz_parts(rng, spec), variant));
    const auto& theta = spec.params().Theta;
    return theta ? HermitianMatrix::congruence(factor(*theta, variant), f) : f;
}

Matrix sample(RngStream& rng, const DistributionSpec& spec)
{
    const Family f = spec.family();
    if (is_kotz_riesz(f)) return sample_kotz_riesz(rng, spec);
    if (is_riesz(f)) return sample_riesz(rng, spec).matrix();
    if (is_pearson(f)) return sample_pearson2_riesz(rng, spec);
    if (is_t_riesz(f)) return sample_t_riesz(rng, spec);
    return sample_beta_riesz2(rng, spec).matrix();
}

Matrix affine_transform_sample(const Matrix& t, const Matrix& mu, const HermitianMatrix& delta,
                               const HermitianMatrix& pi, RieszVariant variant)
{
    const int n = t.rows(), m = t.cols();
    if (mu.rows() != n || mu.cols() != m || delta.dim() != n || pi.dim() != m || mu.beta() != t.beta()
        || delta.beta() != t.beta() || pi.beta() != t.beta()) {
        throw DimensionMismatch("affine_transform_sample: shapes of T, mu, Delta, Pi disagree");
    }
    return invert_upper_triangular(cholesky_upper(delta)).matrix() * t * factor(pi, variant) + mu;
}

}  // namespace triesz
