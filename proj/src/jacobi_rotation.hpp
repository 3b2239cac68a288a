#pragma once

// Complex Jacobi rotation shared by both eigensolvers.
//
// For the Hermitian pivot block [[app, apq], [conj(apq), aqq]] with
// apq = |apq| e^{i phi}, columns transform as
//   col_p' = c col_p - s e^{-i phi} col_q
//   col_q' = s e^{ i phi} col_p + c col_q
// and rows with the conjugate coefficients. This annihilates apq.

#include <cmath>
#include <complex>

#include "anglekit/matrix.hpp"

namespace anglekit::kernels::detail {

struct Rotation {
    std::size_t p = 0, q = 0;
    double c = 1.0, s = 0.0, t = 0.0, mag = 0.0;
    cplx ph{1.0, 0.0};  // e^{i phi}
    bool skip = true;
};

inline Rotation make_rotation(const Matrix& a, std::size_t p, std::size_t q, bool late) {
    Rotation r;
    r.p = p;
    r.q = q;
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return r;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    // Once the matrix is nearly diagonal, an element below the resolution of
    // both diagonal entries is simply dropped.
    if (late && std::abs(app) + 100.0 * mag == std::abs(app) && std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
        r.mag = mag;
        r.skip = true;
        r.c = 1.0;
        r.s = 0.0;
        r.t = 0.0;
        r.ph = apq / mag;
        return r;
    }
    const double theta = (aqq - app) / (2.0 * mag);
    double t;
    if (std::abs(theta) > 1e150)
        t = 0.5 / theta;
    else
        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    r.t = t;
    r.c = 1.0 / std::sqrt(1.0 + t * t);
    r.s = t * r.c;
    r.mag = mag;
    r.ph = apq / mag;
    r.skip = false;
    return r;
}

// x_p, x_q are entries of the same row in columns p, q.
inline void rotate_cols(cplx& xp, cplx& xq, const Rotation& r) {
    const cplx a = xp, b = xq;
    xp = r.c * a - r.s * std::conj(r.ph) * b;
    xq = r.s * r.ph * a + r.c * b;
}

// x_p, x_q are entries of the same column in rows p, q.
inline void rotate_rows(cplx& xp, cplx& xq, const Rotation& r) {
    const cplx a = xp, b = xq;
    xp = r.c * a - r.s * r.ph * b;
    xq = r.s * std::conj(r.ph) * a + r.c * b;
}

inline void finish_pivot(Matrix& a, const Rotation& r, double app, double aqq) {
    a(r.p, r.p) = app - r.t * r.mag;
    a(r.q, r.q) = aqq + r.t * r.mag;
    a(r.p, r.q) = 0.0;
    a(r.q, r.p) = 0.0;
}

inline double offdiag_frobenius(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace anglekit::kernels::detail
