#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "triesz/errors.hpp"
#include "triesz/samplers.hpp"
#include "triesz/verify.hpp"

namespace triesz {

namespace {

using Coords = std::vector<double>;

Matrix gaussian(RngStream& rng, int beta, int rows, int cols)
{
    Matrix x(AlgebraTag(beta), rows, cols);
    for (double& v : x.raw()) v = rng.normal();
    return x;
}

// Gaussian plus a diagonal shift beyond its spectral radius (about
// sqrt(beta n)), so the constant is comfortably invertible.
Matrix well_conditioned(RngStream& rng, int beta, int n)
{
    Matrix a = gaussian(rng, beta, n, n);
    for (int i = 0; i < n; ++i) a.entry(i, i)[0] += 1.0 + 2.0 * std::sqrt(double(beta * n));
    return a;
}

HermitianMatrix random_pd(RngStream& rng, int beta, int m)
{
    Matrix a = HermitianMatrix::gram(gaussian(rng, beta, m + 2, m)).matrix();
    a *= 1.0 / (m + 2);
    for (int i = 0; i < m; ++i) a.entry(i, i)[0] += 0.5;
    return HermitianMatrix(a);
}

int hermitian_dim(int m, int beta) { return m + beta * m * (m - 1) / 2; }

// Real diagonal, then the beta components of each entry above it.
Coords hermitian_coords(const Matrix& a)
{
    const int m = a.rows(), beta = a.beta();
    Coords c;
    c.reserve(hermitian_dim(m, beta));
    for (int i = 0; i < m; ++i) c.push_back(a.entry(i, i)[0]);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) c.insert(c.end(), a.entry(i, j), a.entry(i, j) + beta);
    }
    return c;
}

HermitianMatrix hermitian_from(const double* c, int m, int beta)
{
    Matrix a(AlgebraTag(beta), m, m);
    for (int i = 0; i < m; ++i) a.entry(i, i)[0] = *c++;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            for (int k = 0; k < beta; ++k) {
                a.entry(i, j)[k] = c[k];
                a.entry(j, i)[k] = k == 0 ? c[k] : -c[k];
            }
            c += beta;
        }
    }
    return HermitianMatrix(a);
}

Coords matrix_coords(const Matrix& x) { return Coords(x.raw().begin(), x.raw().end()); }

struct JacobianResult {
    double log_abs_det;
    double condition;
};

// Central differences, h = 1e-6 max(1, |x_j|); determinant through LU.
JacobianResult fd_log_det(const std::function<Coords(const Coords&)>& f, const Coords& x0)
{
    const int d = int(x0.size());
    Eigen::MatrixXd jac(d, d);
    for (int j = 0; j < d; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(x0[j]));
        Coords xp = x0, xm = x0;
        xp[j] += h;
        xm[j] -= h;
        const Coords fp = f(xp), fm = f(xm);
        if (int(fp.size()) != d) throw DimensionMismatch("transform is not square in its real coordinates");
        for (int i = 0; i < d; ++i) jac(i, j) = (fp[i] - fm[i]) / (2 * h);
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    double ld = 0;
    for (int i = 0; i < d; ++i) ld += std::log(std::abs(lu.matrixLU()(i, i)));
    return {ld, 1 / lu.rcond()};
}

struct Setup {
    std::function<Coords(const Coords&)> map;
    Coords point;
    double log_formula;
};

Setup linear_setup(RngStream& rng, int beta, int n, int m)
{
    const Matrix a = well_conditioned(rng, beta, n);
    const Matrix b = well_conditioned(rng, beta, m);
    const Matrix c = gaussian(rng, beta, n, m);
    const Matrix x = gaussian(rng, beta, n, m);
    auto f = [=](const Coords& v) {
        Matrix xv(AlgebraTag(beta), n, m);
        std::copy(v.begin(), v.end(), xv.raw().begin());
        return matrix_coords(a * xv * b + c);
    };
    const double formula = m * beta / 2.0 * log_det_hermitian_pd(HermitianMatrix::gram(a))
                           + n * beta / 2.0 * log_det_hermitian_pd(HermitianMatrix::gram(b));
    return {f, matrix_coords(x), formula};
}

Setup congruence_setup(RngStream& rng, int beta, int m)
{
    const Matrix a = well_conditioned(rng, beta, m);
    const HermitianMatrix c = random_pd(rng, beta, m);
    const HermitianMatrix x = random_pd(rng, beta, m);
    const Matrix a_adj = adjoint(a);
    auto f = [=](const Coords& v) {
        return hermitian_coords((HermitianMatrix::congruence(a_adj, hermitian_from(v.data(), m, beta)) + c).matrix());
    };
    const double formula = ((m - 1) * beta / 2.0 + 1) * log_det_hermitian_pd(HermitianMatrix::gram(a));
    return {f, hermitian_coords(x.matrix()), formula};
}

Setup inverse_setup(RngStream& rng, int beta, int m)
{
    const HermitianMatrix c = random_pd(rng, beta, m);
    const HermitianMatrix s = random_pd(rng, beta, m);
    auto f = [=](const Coords& v) {
        return hermitian_coords((inverse_hermitian_pd(hermitian_from(v.data(), m, beta)) + c).matrix());
    };
    const double formula = (-beta * (m - 1) - 2.0) * log_det_hermitian_pd(s);
    return {f, hermitian_coords(s.matrix()), formula};
}

// Coordinates (S, theta): S Hermitian; theta charts the Stiefel manifold at
// H1 through V = qf(H0 (I + K)) restricted to the first m columns, K
// skew-Hermitian with free entries K_ji (j > i, i < m) and the imaginary parts
// of K_ii. At theta = 0 these are the components of h_j* dh_i.
Setup polar_setup(RngStream& rng, int beta, int n, int m)
{
    const Matrix h0 = sample_stiefel_uniform(rng, n, n, beta);
    const HermitianMatrix s = random_pd(rng, beta, m);
    const int hd = hermitian_dim(m, beta);
    const int chart_dim = m * (beta - 1) + beta * (m * (m - 1) / 2 + m * (n - m));
    const AlgebraTag tag(beta);
    auto f = [=](const Coords& v) {
        const HermitianMatrix sv = hermitian_from(v.data(), m, beta);
        const double* th = v.data() + hd;
        Matrix k(tag, n, m);
        for (int i = 0; i < m; ++i) {
            for (int c = 1; c < beta; ++c) k.entry(i, i)[c] = *th++;
            for (int j = i + 1; j < n; ++j) {
                for (int c = 0; c < beta; ++c) k.entry(j, i)[c] = th[c];
                if (j < m) {
                    for (int c = 0; c < beta; ++c) k.entry(i, j)[c] = c == 0 ? -th[c] : th[c];
                }
                th += beta;
            }
        }
        for (int i = 0; i < m; ++i) k.entry(i, i)[0] += 1.0;
        const Matrix z = h0 * k;
        const Matrix v1 = z * invert_upper_triangular(cholesky_upper(HermitianMatrix::gram(z)));
        return matrix_coords(v1 * cholesky_upper(sv));
    };
    Coords point = hermitian_coords(s.matrix());
    point.resize(hd + chart_dim, 0.0);
    const double formula = -m * std::log(2.0) + (beta * (n - m + 1) / 2.0 - 1) * log_det_hermitian_pd(s);
    return {f, point, formula};
}

std::uint64_t point_seed(std::uint64_t seed, int i) { return seed * 0x9e3779b97f4a7c15ULL + std::uint64_t(i) + 1; }

}  // namespace

const char* transform_name(Transform t)
{
    switch (t) {
    case Transform::linear:
        return "linear";
    case Transform::congruence:
        return "congruence";
    case Transform::inverse:
        return "inverse";
    case Transform::polar_cholesky:
        return "polar_cholesky";
    }
    return "unknown";
}

VerificationReport jacobian_check(const TransformUnderTest& t)
{
    const auto start = std::chrono::steady_clock::now();
    static_cast<void>(AlgebraTag(t.beta));  // rejects unsupported beta
    if (t.m < 1 || t.n < 1) throw DomainError("jacobian_check: dimensions must be positive");
    if (t.kind == Transform::polar_cholesky && t.n < t.m) throw DomainError("jacobian_check: polar form needs n >= m");

    RngStream rng(t.seed, 0);
    Setup setup;
    switch (t.kind) {
    case Transform::linear:
        setup = linear_setup(rng, t.beta, t.n, t.m);
        break;
    case Transform::congruence:
        setup = congruence_setup(rng, t.beta, t.m);
        break;
    case Transform::inverse:
        setup = inverse_setup(rng, t.beta, t.m);
        break;
    case Transform::polar_cholesky:
        setup = polar_setup(rng, t.beta, t.n, t.m);
        break;
    }
    const JacobianResult fd = fd_log_det(setup.map, setup.point);
    if (fd.condition > 1e10) {
        throw IllConditioned("jacobian_check: condition estimate " + std::to_string(fd.condition) + " exceeds 1e10");
    }

    VerificationReport r;
    r.check = std::string("jacobian/") + transform_name(t.kind);
    r.add("beta", t.beta);
    r.add("n", t.n);
    r.add("m", t.m);
    r.add("seed", std::to_string(t.seed));
    r.add("quantity", "log|det J|");
    r.value = fd.log_abs_det;
    r.reference = setup.log_formula;
    r.abs_error = std::abs(fd.log_abs_det - setup.log_formula);
    r.rel_error = std::abs(std::expm1(fd.log_abs_det - setup.log_formula));
    r.measure = "relative";
    r.error = r.rel_error;
    r.tolerance = 1e-5;
    r.evaluations = 2 * (long long)setup.point.size();
    r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.finish();
    return r;
}

VerificationReport jacobian_batch(Transform kind, int beta, int n, int m, std::uint64_t seed, int points)
{
    const auto start = std::chrono::steady_clock::now();
    VerificationReport worst;
    bool have = false;
    long long evaluations = 0;
    for (int i = 0; i < points; ++i) {
        VerificationReport r;
        try {
            r = jacobian_check({kind, beta, n, m, point_seed(seed, i)});
        } catch (const Error& e) {
            r.check = std::string("jacobian/") + transform_name(kind);
            r.add("beta", beta);
            r.add("n", n);
            r.add("m", m);
            r.error = std::numeric_limits<double>::infinity();
            r.tolerance = 1e-5;
            r.message = e.what();
            r.finish();
        }
        evaluations += r.evaluations;
        if (!have || !(r.error <= worst.error)) {
            worst = r;
            have = true;
        }
    }
    worst.parameters.erase(std::remove_if(worst.parameters.begin(), worst.parameters.end(),
                                          [](const auto& p) { return p.first == "seed"; }),
                           worst.parameters.end());
    worst.add("points", points);
    worst.add("seed", std::to_string(seed));
    worst.evaluations = evaluations;
    worst.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (worst.message.empty()) worst.message = "worst of " + std::to_string(points) + " points";
    return worst;
}

}  // namespace triesz
