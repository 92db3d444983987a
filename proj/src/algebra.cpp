#include "triesz/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "algebra_kernels.hpp"
#include "triesz/errors.hpp"

namespace triesz {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kPivotTol = 1e-13;

void require_same_tag(int a, int b)
{
    if (a != b) {
        throw DimensionMismatch("algebra mismatch: beta " + std::to_string(a) + " vs "
                                + std::to_string(b));
    }
}

void require_shape(const Matrix& a, const Matrix& b)
{
    require_same_tag(a.beta(), b.beta());
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("shape mismatch: " + std::to_string(a.rows()) + "x"
                                + std::to_string(a.cols()) + " vs " + std::to_string(b.rows())
                                + "x" + std::to_string(b.cols()));
    }
}

double max_abs_entry(const Matrix& a)
{
    double s = 0;
    for (double v : a.raw()) s = std::max(s, std::abs(v));
    return s;
}

// Upper Cholesky in place on a copy of the stored values; returns false on a
// non-positive pivot instead of throwing so callers can choose the error.
bool try_cholesky(const Matrix& a, Matrix& t)
{
    const int m = a.rows();
    const int beta = a.beta();
    const double threshold = kPivotTol * std::max(frobenius_norm(a), 1e-300);
    t = Matrix(a.tag(), m, m);
    double acc[4];
    for (int i = 0; i < m; ++i) {
        double d = a.entry(i, i)[0];
        for (int k = 0; k < i; ++k) d -= detail::norm2(t.entry(k, i), beta);
        if (!(d > threshold)) return false;
        const double tii = std::sqrt(d);
        t.entry(i, i)[0] = tii;
        for (int j = i + 1; j < m; ++j) {
            std::copy_n(a.entry(i, j), beta, acc);
            double sub[4] = {0, 0, 0, 0};
            for (int k = 0; k < i; ++k) detail::conj_mul_add(t.entry(k, i), t.entry(k, j), sub, beta);
            double* out = t.entry(i, j);
            for (int c = 0; c < beta; ++c) out[c] = (acc[c] - sub[c]) / tii;
        }
    }
    return true;
}

Matrix reverse_both(const Matrix& a)
{
    Matrix r(a.tag(), a.rows(), a.cols());
    const int beta = a.beta();
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            std::copy_n(a.entry(a.rows() - 1 - i, a.cols() - 1 - j), beta, r.entry(i, j));
        }
    }
    return r;
}

bool diagonal_positive_real(const Matrix& t)
{
    for (int i = 0; i < t.rows(); ++i) {
        const double* d = t.entry(i, i);
        if (!(d[0] > 0)) return false;
        for (int c = 1; c < t.beta(); ++c) {
            if (d[c] != 0) return false;
        }
    }
    return true;
}

}  // namespace

AlgebraTag::AlgebraTag(int beta) : beta_(beta)
{
    if (beta != 1 && beta != 2 && beta != 4) {
        throw DomainError("beta must be 1, 2, or 4 (got " + std::to_string(beta) + ")");
    }
}

// Scalar ------------------------------------------------------------------

Scalar::Scalar(AlgebraTag tag) : beta_(tag.beta()) {}

Scalar::Scalar(AlgebraTag tag, std::initializer_list<double> components) : beta_(tag.beta())
{
    if (int(components.size()) != beta_) {
        throw DimensionMismatch("scalar needs " + std::to_string(beta_) + " components");
    }
    std::copy(components.begin(), components.end(), c_.begin());
}

Scalar Scalar::real(AlgebraTag tag, double x)
{
    Scalar s(tag);
    s.c_[0] = x;
    return s;
}

Scalar Scalar::conj() const
{
    Scalar s = *this;
    for (int c = 1; c < beta_; ++c) s.c_[c] = -s.c_[c];
    return s;
}

double Scalar::norm2() const { return detail::norm2(c_.data(), beta_); }

double Scalar::abs() const { return std::sqrt(norm2()); }

Scalar Scalar::inverse() const
{
    const double n2 = norm2();
    if (n2 == 0) throw SingularMatrix("inverse of zero scalar");
    Scalar s = conj();
    for (int c = 0; c < beta_; ++c) s.c_[c] /= n2;
    return s;
}

Scalar operator+(const Scalar& x, const Scalar& y)
{
    require_same_tag(x.beta_, y.beta_);
    Scalar s = x;
    for (int c = 0; c < x.beta_; ++c) s.c_[c] += y.c_[c];
    return s;
}

Scalar operator-(const Scalar& x, const Scalar& y)
{
    require_same_tag(x.beta_, y.beta_);
    Scalar s = x;
    for (int c = 0; c < x.beta_; ++c) s.c_[c] -= y.c_[c];
    return s;
}

Scalar operator-(const Scalar& x)
{
    Scalar s = x;
    for (int c = 0; c < x.beta_; ++c) s.c_[c] = -s.c_[c];
    return s;
}

Scalar scalar_mul(const Scalar& x, const Scalar& y)
{
    require_same_tag(x.beta(), y.beta());
    Scalar s(x.tag());
    double xs[4], ys[4], out[4] = {0, 0, 0, 0};
    for (int c = 0; c < 4; ++c) {
        xs[c] = c < x.beta() ? x[c] : 0.0;
        ys[c] = c < y.beta() ? y[c] : 0.0;
    }
    detail::mul_add(xs, ys, out, x.beta());
    for (int c = 0; c < x.beta(); ++c) s[c] = out[c];
    return s;
}

// Matrix ------------------------------------------------------------------

Matrix::Matrix(AlgebraTag tag, int rows, int cols)
    : beta_(tag.beta()), rows_(rows), cols_(cols)
{
    if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
    data_.assign(std::size_t(rows) * cols * beta_, 0.0);
}

Matrix Matrix::identity(AlgebraTag tag, int n)
{
    Matrix m(tag, n, n);
    for (int i = 0; i < n; ++i) m.entry(i, i)[0] = 1.0;
    return m;
}

Matrix Matrix::from_real(AlgebraTag tag, int rows, int cols, std::span<const double> values)
{
    if (values.size() != std::size_t(rows) * cols) {
        throw DimensionMismatch("from_real: expected " + std::to_string(rows * cols) + " values");
    }
    Matrix m(tag, rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m.entry(i, j)[0] = values[std::size_t(i) * cols + j];
    }
    return m;
}

Scalar Matrix::operator()(int i, int j) const
{
    Scalar s(tag());
    const double* e = entry(i, j);
    for (int c = 0; c < beta_; ++c) s[c] = e[c];
    return s;
}

void Matrix::set(int i, int j, const Scalar& x)
{
    require_same_tag(beta_, x.beta());
    double* e = entry(i, j);
    for (int c = 0; c < beta_; ++c) e[c] = x[c];
}

Matrix& Matrix::operator+=(const Matrix& other)
{
    require_shape(*this, other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other)
{
    require_shape(*this, other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(double s)
{
    for (double& v : data_) v *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix adjoint(const Matrix& x)
{
    Matrix r(x.tag(), x.cols(), x.rows());
    const int beta = x.beta();
    for (int i = 0; i < x.rows(); ++i) {
        for (int j = 0; j < x.cols(); ++j) {
            const double* src = x.entry(i, j);
            double* dst = r.entry(j, i);
            dst[0] = src[0];
            for (int c = 1; c < beta; ++c) dst[c] = -src[c];
        }
    }
    return r;
}

Matrix matmul(const Matrix& x, const Matrix& y)
{
    require_same_tag(x.beta(), y.beta());
    if (x.cols() != y.rows()) {
        throw DimensionMismatch("matmul: inner dimensions " + std::to_string(x.cols()) + " and "
                                + std::to_string(y.rows()));
    }
    Matrix r(x.tag(), x.rows(), y.cols());
    const int beta = x.beta();
    for (int i = 0; i < x.rows(); ++i) {
        for (int k = 0; k < x.cols(); ++k) {
            const double* xik = x.entry(i, k);
            if (detail::norm2(xik, beta) == 0) continue;
            for (int j = 0; j < y.cols(); ++j) detail::mul_add(xik, y.entry(k, j), r.entry(i, j), beta);
        }
    }
    return r;
}

double frobenius_norm(const Matrix& x)
{
    // Scaled to stay finite for entries beyond sqrt(DBL_MAX).
    const double scale = max_abs_entry(x);
    if (scale == 0 || !std::isfinite(scale)) return scale;
    double s = 0;
    for (double v : x.raw()) s += (v / scale) * (v / scale);
    return scale * std::sqrt(s);
}

double max_abs_diff(const Matrix& x, const Matrix& y)
{
    require_shape(x, y);
    double s = 0;
    for (std::size_t k = 0; k < x.raw().size(); ++k) s = std::max(s, std::abs(x.raw()[k] - y.raw()[k]));
    return s;
}

double trace_re(const Matrix& x)
{
    if (!x.is_square()) throw DimensionMismatch("trace of non-square matrix");
    double s = 0;
    for (int i = 0; i < x.rows(); ++i) s += x.entry(i, i)[0];
    return s;
}

// HermitianMatrix ---------------------------------------------------------

HermitianMatrix::HermitianMatrix(Matrix a, Trusted) : a_(std::move(a)) {}

HermitianMatrix::HermitianMatrix(const Matrix& a) : a_(a)
{
    if (!a.is_square()) throw DimensionMismatch("Hermitian matrix must be square");
    const int m = a.rows();
    const int beta = a.beta();
    const double tol = kHermitianTol * std::max(1.0, max_abs_entry(a));
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            const double* x = a.entry(i, j);
            const double* y = a.entry(j, i);
            double* xo = a_.entry(i, j);
            double* yo = a_.entry(j, i);
            if (std::abs(x[0] - y[0]) > tol) throw DomainError("matrix is not Hermitian");
            xo[0] = yo[0] = 0.5 * (x[0] + y[0]);
            for (int c = 1; c < beta; ++c) {
                if (std::abs(x[c] + y[c]) > tol) throw DomainError("matrix is not Hermitian");
                const double v = i == j ? 0.0 : 0.5 * (x[c] - y[c]);
                xo[c] = v;
                yo[c] = -v;
            }
        }
    }
}

HermitianMatrix HermitianMatrix::identity(AlgebraTag tag, int m)
{
    return HermitianMatrix(Matrix::identity(tag, m), Trusted{});
}

HermitianMatrix HermitianMatrix::gram(const Matrix& x)
{
    const int m = x.cols();
    const int beta = x.beta();
    Matrix g(x.tag(), m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            double* out = g.entry(i, j);
            for (int k = 0; k < x.rows(); ++k) detail::conj_mul_add(x.entry(k, i), x.entry(k, j), out, beta);
            double* mirror = g.entry(j, i);
            if (i == j) {
                for (int c = 1; c < beta; ++c) out[c] = 0;
            } else {
                mirror[0] = out[0];
                for (int c = 1; c < beta; ++c) mirror[c] = -out[c];
            }
        }
    }
    return HermitianMatrix(std::move(g), Trusted{});
}

HermitianMatrix HermitianMatrix::congruence(const Matrix& b, const HermitianMatrix& a)
{
    // b* a b = (u b)* (u b) needs a PD; the direct product is used instead and
    // symmetrized, which also covers semidefinite a.
    const Matrix p = adjoint(b) * a.matrix() * b;
    Matrix s(p.tag(), p.rows(), p.cols());
    const int beta = p.beta();
    for (int i = 0; i < p.rows(); ++i) {
        for (int j = i; j < p.cols(); ++j) {
            const double* x = p.entry(i, j);
            const double* y = p.entry(j, i);
            double* xo = s.entry(i, j);
            double* yo = s.entry(j, i);
            xo[0] = yo[0] = 0.5 * (x[0] + y[0]);
            for (int c = 1; c < beta; ++c) {
                const double v = i == j ? 0.0 : 0.5 * (x[c] - y[c]);
                xo[c] = v;
                yo[c] = -v;
            }
        }
    }
    return HermitianMatrix(std::move(s), Trusted{});
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const
{
    return HermitianMatrix(a_ + other.a_, Trusted{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const
{
    return HermitianMatrix(a_ - other.a_, Trusted{});
}

// Triangular --------------------------------------------------------------

UpperTriangular::UpperTriangular(const Matrix& t) : t_(t)
{
    if (!t.is_square()) throw DimensionMismatch("triangular matrix must be square");
    for (int i = 0; i < t.rows(); ++i) {
        for (int j = 0; j < i; ++j) {
            if (detail::norm2(t.entry(i, j), t.beta()) != 0) {
                throw DomainError("matrix is not upper triangular");
            }
        }
    }
    positive_diagonal_ = diagonal_positive_real(t);
}

LowerTriangular::LowerTriangular(const Matrix& l) : l_(l)
{
    if (!l.is_square()) throw DimensionMismatch("triangular matrix must be square");
    for (int i = 0; i < l.rows(); ++i) {
        for (int j = i + 1; j < l.cols(); ++j) {
            if (detail::norm2(l.entry(i, j), l.beta()) != 0) {
                throw DomainError("matrix is not lower triangular");
            }
        }
    }
    positive_diagonal_ = diagonal_positive_real(l);
}

UpperTriangular cholesky_upper(const HermitianMatrix& a)
{
    Matrix t(a.tag(), 0, 0);
    if (!try_cholesky(a.matrix(), t)) throw NotPositiveDefinite("matrix is not positive definite");
    return UpperTriangular(t);
}

LowerTriangular cholesky_lower(const HermitianMatrix& a)
{
    Matrix t(a.tag(), 0, 0);
    if (!try_cholesky(reverse_both(a.matrix()), t)) {
        throw NotPositiveDefinite("matrix is not positive definite");
    }
    return LowerTriangular(reverse_both(t));
}

bool is_positive_definite(const HermitianMatrix& a)
{
    Matrix t(a.tag(), 0, 0);
    return try_cholesky(a.matrix(), t);
}

LdlFactors ldl_decompose(const HermitianMatrix& a)
{
    const UpperTriangular t = cholesky_upper(a);
    const int m = a.dim();
    Matrix unit = t.matrix();
    std::vector<double> pivots(m);
    for (int i = 0; i < m; ++i) {
        const double tii = unit.entry(i, i)[0];
        pivots[i] = tii * tii;
        for (int j = i; j < m; ++j) {
            double* e = unit.entry(i, j);
            for (int c = 0; c < a.beta(); ++c) e[c] /= tii;
        }
    }
    return {UpperTriangular(unit), std::move(pivots)};
}

std::vector<double> log_leading_pivots(const HermitianMatrix& a)
{
    const UpperTriangular t = cholesky_upper(a);
    std::vector<double> out(a.dim());
    for (int i = 0; i < a.dim(); ++i) out[i] = 2.0 * std::log(t.matrix().entry(i, i)[0]);
    return out;
}

std::vector<double> log_trailing_pivots(const HermitianMatrix& a)
{
    const LowerTriangular l = cholesky_lower(a);
    std::vector<double> out(a.dim());
    for (int i = 0; i < a.dim(); ++i) out[i] = 2.0 * std::log(l.matrix().entry(i, i)[0]);
    return out;
}

std::vector<double> leading_principal_minor_dets(const HermitianMatrix& a)
{
    const std::vector<double> lp = log_leading_pivots(a);
    std::vector<double> out(lp.size());
    double acc = 0;
    for (std::size_t i = 0; i < lp.size(); ++i) {
        acc += lp[i];
        out[i] = std::exp(acc);
    }
    return out;
}

double log_det_hermitian_pd(const HermitianMatrix& a)
{
    double s = 0;
    for (double v : log_leading_pivots(a)) s += v;
    return s;
}

double det_hermitian_pd(const HermitianMatrix& a) { return std::exp(log_det_hermitian_pd(a)); }

UpperTriangular invert_upper_triangular(const UpperTriangular& tri)
{
    const Matrix& t = tri.matrix();
    const int m = t.rows();
    const int beta = t.beta();
    std::vector<Scalar> diag_inv;
    diag_inv.reserve(m);
    for (int i = 0; i < m; ++i) {
        const Scalar d = t(i, i);
        if (d.norm2() == 0) throw SingularMatrix("triangular matrix has a zero diagonal entry");
        diag_inv.push_back(d.inverse());
    }
    Matrix x(t.tag(), m, m);
    // Solve T X = I column by column, bottom-up.
    for (int j = 0; j < m; ++j) {
        x.set(j, j, diag_inv[j]);
        for (int i = j - 1; i >= 0; --i) {
            double acc[4] = {0, 0, 0, 0};
            for (int k = i + 1; k <= j; ++k) detail::mul_add(t.entry(i, k), x.entry(k, j), acc, beta);
            double neg[4] = {0, 0, 0, 0};
            for (int c = 0; c < beta; ++c) neg[c] = -acc[c];
            double out[4] = {0, 0, 0, 0};
            double dinv[4] = {0, 0, 0, 0};
            for (int c = 0; c < beta; ++c) dinv[c] = diag_inv[i][c];
            detail::mul_add(dinv, neg, out, beta);
            std::copy_n(out, beta, x.entry(i, j));
        }
    }
    return UpperTriangular(x);
}

LowerTriangular invert_lower_triangular(const LowerTriangular& l)
{
    // adjoint(L^-1) = (L*)^-1, and L* is upper.
    const UpperTriangular u = invert_upper_triangular(UpperTriangular(adjoint(l.matrix())));
    return LowerTriangular(adjoint(u.matrix()));
}

HermitianMatrix inverse_hermitian_pd(const HermitianMatrix& a)
{
    // A^-1 = T^-1 T^-* = gram(T^-*).
    const UpperTriangular tinv = invert_upper_triangular(cholesky_upper(a));
    return HermitianMatrix::gram(adjoint(tinv.matrix()));
}

HermitianMatrix reversed(const HermitianMatrix& a) { return HermitianMatrix(reverse_both(a.matrix())); }

}  // namespace triesz
