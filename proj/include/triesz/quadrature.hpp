#pragma once

#include <cstddef>
#include <functional>

#include "triesz/algebra.hpp"

namespace triesz {

struct QuadratureResult {
    double value = 0;       // integral
    double error = 0;       // estimated absolute error
    std::size_t evaluations = 0;
};

// Integral of exp(log_f(x)) over (0, inf).
QuadratureResult integrate_half_line(const std::function<double(double)>& log_f, double tol);
// Integral of exp(log_f(x)) over the real line.
QuadratureResult integrate_real_line(const std::function<double(double)>& log_f, double tol);
// Integral of exp(log_f(x)) over (lo, hi).
QuadratureResult integrate_interval(const std::function<double(double)>& log_f, double lo,
                                    double hi, double tol);

// Integral of exp(log_f(S)) (dS) over 2x2 real positive definite S, using the
// Cholesky coordinates S = T'T, T = [[x, y], [0, z]], (dS) = 4 x^2 z dx dy dz.
// log_f may return -inf. With reversed, log_f sees J S J instead (J the
// reversal permutation), which aligns the coordinates with trailing minors.
QuadratureResult integrate_pd_cone_2x2_real(
    const std::function<double(const HermitianMatrix&)>& log_f, double tol, bool reversed = false);

}  // namespace triesz
