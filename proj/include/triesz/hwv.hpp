#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "triesz/algebra.hpp"

namespace triesz {

// kappa = (k_1, ..., k_m). No ordering is imposed here.
class WeightVector {
public:
    WeightVector() = default;
    WeightVector(std::initializer_list<double> w) : w_(w) {}
    explicit WeightVector(std::vector<double> w) : w_(std::move(w)) {}
    static WeightVector zero(int m) { return WeightVector(std::vector<double>(m, 0.0)); }
    static WeightVector constant(int m, double p) { return WeightVector(std::vector<double>(m, p)); }

    int size() const noexcept { return int(w_.size()); }
    double operator[](int i) const { return w_[i]; }
    double& operator[](int i) { return w_[i]; }
    std::span<const double> values() const { return w_; }

    double sum() const;
    bool is_zero() const;
    double first() const { return w_.front(); }
    double last() const { return w_.back(); }

    // kappa* = (k_m, ..., k_1)
    WeightVector reversed() const;
    WeightVector operator-() const;
    WeightVector operator+(const WeightVector& o) const;
    WeightVector operator-(const WeightVector& o) const;
    WeightVector plus(double p) const;

    friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
    std::vector<double> w_;
};

// log q_kappa(A) = k_m log|A_m| + sum_{i<m} (k_i - k_{i+1}) log|A_i|.
double log_q_kappa(const HermitianMatrix& a, const WeightVector& kappa);
double q_kappa(const HermitianMatrix& a, const WeightVector& kappa);

// sum k_i log lambda_i with lambda from the L'DL decomposition.
double log_q_kappa_via_ldl(const HermitianMatrix& a, const WeightVector& kappa);
double q_kappa_via_ldl(const HermitianMatrix& a, const WeightVector& kappa);

// q*_kappa(A) = prod lambda*_i^{k_{m-i+1}} with lambda* the pivots of the
// trailing principal minors, i.e. q*_kappa(A) = q_kappa(J A J).
double log_q_star_kappa(const HermitianMatrix& a, const WeightVector& kappa);
double q_star_kappa(const HermitianMatrix& a, const WeightVector& kappa);

// log q_kappa(A^-1) without forming the inverse: -sum k_i log lambda*_i.
double log_q_kappa_of_inverse(const HermitianMatrix& a, const WeightVector& kappa);

// Weighted sum of log pivots: sum k_i * log_pivots[i].
double weighted_log_pivots(std::span<const double> log_pivots, const WeightVector& kappa);

// rho_i = beta (2i - m - 1) / 2. For D = u* u, the map D -> u u* has Jacobian
// q_rho(D) relative to matrix inversion; densities of u-factor constructions carry it.
WeightVector triangular_transpose_weights(int m, int beta);

}  // namespace triesz
