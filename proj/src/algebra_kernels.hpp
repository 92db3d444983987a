#pragma once

// Raw-coordinate kernels shared by the matrix routines.

namespace triesz::detail {

// out += x * y
inline void mul_add(const double* x, const double* y, double* out, int beta)
{
    switch (beta) {
    case 1:
        out[0] += x[0] * y[0];
        return;
    case 2:
        out[0] += x[0] * y[0] - x[1] * y[1];
        out[1] += x[0] * y[1] + x[1] * y[0];
        return;
    default:
        out[0] += x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3];
        out[1] += x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2];
        out[2] += x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1];
        out[3] += x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0];
        return;
    }
}

// out += conj(x) * y
inline void conj_mul_add(const double* x, const double* y, double* out, int beta)
{
    double cx[4] = {x[0], 0, 0, 0};
    for (int c = 1; c < beta; ++c) cx[c] = -x[c];
    mul_add(cx, y, out, beta);
}

inline double norm2(const double* x, int beta)
{
    double s = 0;
    for (int c = 0; c < beta; ++c) s += x[c] * x[c];
    return s;
}

}  // namespace triesz::detail
