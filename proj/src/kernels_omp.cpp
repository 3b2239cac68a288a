#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "anglekit/errors.hpp"
#include "anglekit/kernels.hpp"
#include "jacobi_rotation.hpp"

namespace anglekit::kernels {

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
    if (n < 1) throw DomainError("thread count must be >= 1");
    omp_set_num_threads(n);
}

namespace omp {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw BasisMismatch("matmul: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    const auto nr = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nr; ++i) {
        auto crow = c.row(static_cast<std::size_t>(i));
        const auto arow = a.row(static_cast<std::size_t>(i));
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = arow[k];
            if (aik == cplx{}) continue;
            const auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
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

    // Round-robin schedule over an even number of slots; slot n is a bye when n is odd.
    const std::size_t ne = n + (n % 2);
    std::vector<std::size_t> players(ne);
    std::iota(players.begin(), players.end(), std::size_t{0});
    std::vector<detail::Rotation> rots;
    std::vector<double> app(ne / 2), aqq(ne / 2);
    rots.reserve(ne / 2);

    int sweep = 0;
    for (;; ++sweep) {
        if (detail::offdiag_frobenius(a) <= opt.rel_tol * scale) break;
        if (sweep >= opt.max_sweeps)
            throw NonConvergence("jacobi_eig: no convergence after " + std::to_string(opt.max_sweeps) + " sweeps");
        for (std::size_t round = 0; round + 1 < ne; ++round) {
            rots.clear();
            for (std::size_t i = 0; i < ne / 2; ++i) {
                std::size_t p = players[i], q = players[ne - 1 - i];
                if (p >= n || q >= n) continue;
                if (p > q) std::swap(p, q);
                auto r = detail::make_rotation(a, p, q, sweep > 3);
                if (r.mag == 0.0) continue;
                rots.push_back(r);
            }
            const auto nrot = static_cast<std::ptrdiff_t>(rots.size());
            for (std::ptrdiff_t j = 0; j < nrot; ++j) {
                app[j] = a(rots[j].p, rots[j].p).real();
                aqq[j] = a(rots[j].q, rots[j].q).real();
            }
            const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
            {
#pragma omp for schedule(static)
                for (std::ptrdiff_t k = 0; k < nn; ++k) {
                    auto arow = a.row(static_cast<std::size_t>(k));
                    auto vrow = v.row(static_cast<std::size_t>(k));
                    for (const auto& r : rots) {
                        if (r.skip) continue;
                        detail::rotate_cols(arow[r.p], arow[r.q], r);
                        detail::rotate_cols(vrow[r.p], vrow[r.q], r);
                    }
                }
#pragma omp for schedule(static)
                for (std::ptrdiff_t j = 0; j < nrot; ++j) {
                    const auto& r = rots[static_cast<std::size_t>(j)];
                    if (r.skip) continue;
                    auto rp = a.row(r.p);
                    auto rq = a.row(r.q);
                    for (std::size_t k = 0; k < n; ++k) detail::rotate_rows(rp[k], rq[k], r);
                }
            }
            for (std::ptrdiff_t j = 0; j < nrot; ++j) {
                const auto& r = rots[static_cast<std::size_t>(j)];
                if (r.skip) {
                    a(r.p, r.q) = 0.0;
                    a(r.q, r.p) = 0.0;
                } else {
                    detail::finish_pivot(a, r, app[j], aqq[j]);
                }
            }
            std::rotate(players.begin() + 1, players.end() - 1, players.end());
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
    const auto nd = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel
    {
        std::vector<double> y;
#pragma omp for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < nd; ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            auto row = acc.row(i);
            for (const auto& node : nodes) {
                const std::size_t K = node.K;
                y.resize(K);
                for (std::size_t k = 0; k < K; ++k) y[k] = node.lambda[k] * node.X[i * K + k];
                for (std::size_t j = 0; j < dim; ++j) {
                    const double* xj = node.X.data() + j * K;
                    double s = 0.0;
                    for (std::size_t k = 0; k < K; ++k) s += y[k] * xj[k];
                    row[j] += node.g[i + dim - 1 - j] * s;
                }
            }
        }
    }
    return acc;
}

}  // namespace omp
}  // namespace anglekit::kernels
