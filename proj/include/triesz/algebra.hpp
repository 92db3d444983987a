#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace triesz {

// Real dimension of the division algebra: 1 (reals), 2 (complex), 4 (quaternions).
class AlgebraTag {
public:
    explicit AlgebraTag(int beta);

    int beta() const noexcept { return beta_; }
    friend bool operator==(AlgebraTag, AlgebraTag) = default;

private:
    int beta_;
};

// Algebra element stored as (re, i, j, k); only the first beta components are used.
class Scalar {
public:
    explicit Scalar(AlgebraTag tag);
    Scalar(AlgebraTag tag, std::initializer_list<double> components);
    static Scalar real(AlgebraTag tag, double x);

    AlgebraTag tag() const noexcept { return AlgebraTag(beta_); }
    int beta() const noexcept { return beta_; }
    double operator[](int c) const { return c_[c]; }
    double& operator[](int c) { return c_[c]; }
    double re() const noexcept { return c_[0]; }
    std::span<const double> components() const { return {c_.data(), std::size_t(beta_)}; }

    Scalar conj() const;
    double norm2() const;
    double abs() const;
    Scalar inverse() const;

    friend Scalar operator+(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x);

private:
    int beta_;
    std::array<double, 4> c_{};
};

Scalar scalar_mul(const Scalar& x, const Scalar& y);
inline Scalar operator*(const Scalar& x, const Scalar& y) { return scalar_mul(x, y); }

// Dense rows x cols matrix over the algebra, row-major, beta doubles per entry.
class Matrix {
public:
    Matrix(AlgebraTag tag, int rows, int cols);
    static Matrix identity(AlgebraTag tag, int n);
    // Real-valued entries, row-major.
    static Matrix from_real(AlgebraTag tag, int rows, int cols, std::span<const double> values);

    AlgebraTag tag() const noexcept { return AlgebraTag(beta_); }
    int beta() const noexcept { return beta_; }
    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Scalar operator()(int i, int j) const;
    void set(int i, int j, const Scalar& x);
    double* entry(int i, int j) { return data_.data() + std::size_t(i * cols_ + j) * beta_; }
    const double* entry(int i, int j) const
    {
        return data_.data() + std::size_t(i * cols_ + j) * beta_;
    }

    // All real coordinates, row-major with beta components per entry adjacent.
    std::span<double> raw() { return data_; }
    std::span<const double> raw() const { return data_; }

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

private:
    int beta_;
    int rows_;
    int cols_;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);

Matrix adjoint(const Matrix& x);
Matrix matmul(const Matrix& x, const Matrix& y);
inline Matrix operator*(const Matrix& x, const Matrix& y) { return matmul(x, y); }

double frobenius_norm(const Matrix& x);
double max_abs_diff(const Matrix& x, const Matrix& y);
// Real part of the trace.
double trace_re(const Matrix& x);

// Square matrix equal to its adjoint; the constructor checks this within 1e-12 (scaled)
// and symmetrizes the stored values exactly.
class HermitianMatrix {
public:
    explicit HermitianMatrix(const Matrix& a);
    static HermitianMatrix identity(AlgebraTag tag, int m);
    // x* x, Hermitian by construction.
    static HermitianMatrix gram(const Matrix& x);
    // b* a b.
    static HermitianMatrix congruence(const Matrix& b, const HermitianMatrix& a);

    const Matrix& matrix() const noexcept { return a_; }
    int dim() const noexcept { return a_.rows(); }
    int beta() const noexcept { return a_.beta(); }
    AlgebraTag tag() const noexcept { return a_.tag(); }

    HermitianMatrix operator+(const HermitianMatrix& other) const;
    HermitianMatrix operator-(const HermitianMatrix& other) const;

private:
    struct Trusted {};
    HermitianMatrix(Matrix a, Trusted);
    Matrix a_;
};

// Square matrix with zero strictly-lower part.
class UpperTriangular {
public:
    explicit UpperTriangular(const Matrix& t);

    const Matrix& matrix() const noexcept { return t_; }
    int dim() const noexcept { return t_.rows(); }
    bool positive_diagonal() const noexcept { return positive_diagonal_; }

private:
    Matrix t_;
    bool positive_diagonal_ = false;
};

// Square matrix with zero strictly-upper part.
class LowerTriangular {
public:
    explicit LowerTriangular(const Matrix& l);

    const Matrix& matrix() const noexcept { return l_; }
    int dim() const noexcept { return l_.rows(); }
    bool positive_diagonal() const noexcept { return positive_diagonal_; }

private:
    Matrix l_;
    bool positive_diagonal_ = false;
};

inline Matrix operator*(const Matrix& x, const UpperTriangular& t) { return x * t.matrix(); }
inline Matrix operator*(const Matrix& x, const LowerTriangular& l) { return x * l.matrix(); }

// Upper Cholesky factor u(A): A = u* u with positive real diagonal.
UpperTriangular cholesky_upper(const HermitianMatrix& a);
// Lower factor l(A): A = l* l with positive real diagonal. Pivots run from the
// bottom-right corner, so the squared diagonal gives trailing-minor ratios.
LowerTriangular cholesky_lower(const HermitianMatrix& a);

struct LdlFactors {
    UpperTriangular unit;        // unit diagonal
    std::vector<double> pivots;  // lambda_i = t_ii^2
};
// A = L* diag(D) L.
LdlFactors ldl_decompose(const HermitianMatrix& a);

// |A_1|, ..., |A_m| from the squared Cholesky diagonal.
std::vector<double> leading_principal_minor_dets(const HermitianMatrix& a);
// log t_ii^2, i.e. log(|A_i| / |A_{i-1}|).
std::vector<double> log_leading_pivots(const HermitianMatrix& a);
// Same for the trailing (bottom-right) principal minors, listed top to bottom.
std::vector<double> log_trailing_pivots(const HermitianMatrix& a);

double det_hermitian_pd(const HermitianMatrix& a);
double log_det_hermitian_pd(const HermitianMatrix& a);

UpperTriangular invert_upper_triangular(const UpperTriangular& t);
LowerTriangular invert_lower_triangular(const LowerTriangular& l);
HermitianMatrix inverse_hermitian_pd(const HermitianMatrix& a);

// J A J with J the reversal permutation.
HermitianMatrix reversed(const HermitianMatrix& a);

// True when every leading pivot exceeds the definiteness threshold.
bool is_positive_definite(const HermitianMatrix& a);

}  // namespace triesz
