#include <algorithm>
#include <cmath>
#include <string>

#include "anglekit/errors.hpp"
#include "anglekit/kernels.hpp"
#include "jacobi_rotation.hpp"

namespace anglekit::kernels::serial {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw BasisMismatch("matmul: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

JacobiResult jacobi_eig(const Matrix& m, const JacobiOptions& opt) {
    if (!m.square()) throw DomainError("jacobi_eig: matrix not square");
    const std::size_t n = m.rows();
    Matrix a = m;
    Matrix v = Matrix::identity(n);
    const double scale = m.frobenius();
    JacobiResult out;

    int sweep = 0;
    for (;; ++sweep) {
        if (detail::offdiag_frobenius(a) <= opt.rel_tol * scale) break;
        if (sweep >= opt.max_sweeps)
            throw NonConvergence("jacobi_eig: no convergence after " + std::to_string(opt.max_sweeps) + " sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const auto r = detail::make_rotation(a, p, q, sweep > 3);
                if (r.mag == 0.0) continue;
                if (r.skip) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                const double app = a(p, p).real(), aqq = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) detail::rotate_cols(a(k, p), a(k, q), r);
                for (std::size_t k = 0; k < n; ++k) detail::rotate_rows(a(p, k), a(q, k), r);
                detail::finish_pivot(a, r, app, aqq);
                for (std::size_t k = 0; k < n; ++k) detail::rotate_cols(v(k, p), v(k, q), r);
            }
    }

    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i).real();
    out.vectors = std::move(v);
    out.sweeps = sweep;
    return out;
}

Matrix accumulate_lowrank(std::size_t dim, const std::vector<LowRankNode>& nodes) {
    Matrix acc(dim, dim);
    std::vector<double> r(dim * dim);
    for (const auto& nd : nodes) {
        std::fill(r.begin(), r.end(), 0.0);
        for (std::size_t k = 0; k < nd.K; ++k) {
            const double lam = nd.lambda[k];
            for (std::size_t i = 0; i < dim; ++i) {
                const double xi = lam * nd.X[i * nd.K + k];
                for (std::size_t j = 0; j < dim; ++j) r[i * dim + j] += xi * nd.X[j * nd.K + k];
            }
        }
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) acc(i, j) += nd.g[i + dim - 1 - j] * r[i * dim + j];
    }
    return acc;
}

}  // namespace anglekit::kernels::serial
