#pragma once

// Hot loops, in two flavours.
//
// kernels::omp is what the library calls. kernels::serial is a plain
// single-threaded reference kept for the test suite and the benchmark; it uses
// the textbook algorithm (row-cyclic Jacobi, node-outer accumulation) so that
// agreement between the two is a real cross-check and not a copy.
//
// The omp kernels only partition work over independent rows or independent
// rotation pairs, and every output element is produced by the same sequence of
// floating-point operations whatever the thread count. Results are therefore
// bit-identical for any number of threads.

#include <cstddef>
#include <vector>

#include "anglekit/matrix.hpp"

namespace anglekit::kernels {

struct JacobiOptions {
    double rel_tol = 1e-14;  // stop when off-diagonal Frobenius < rel_tol * ||M||_F
    int max_sweeps = 100;
};

/// Unsorted diagonalization M = V diag(values) V†.
struct JacobiResult {
    std::vector<double> values;
    Matrix vectors;
    int sweeps = 0;
};

/// One quadrature node of a band-modulated low-rank sum
///   A(n, n') += g[n - n' + D - 1] * sum_k lambda[k] * X(n, k) * X(n', k),
/// with X stored row-major as D x K. `g` has 2D-1 entries.
struct LowRankNode {
    std::vector<cplx> g;
    std::vector<double> lambda;
    std::vector<double> X;
    std::size_t K = 0;
};

namespace serial {
Matrix matmul(const Matrix& a, const Matrix& b);
/// Cyclic-by-row complex Jacobi. Throws NonConvergence.
JacobiResult jacobi_eig(const Matrix& m, const JacobiOptions& opt = {});
Matrix accumulate_lowrank(std::size_t dim, const std::vector<LowRankNode>& nodes);
}  // namespace serial

namespace omp {
Matrix matmul(const Matrix& a, const Matrix& b);
/// Round-robin (tournament) ordered Jacobi: each round applies dim/2 disjoint
/// rotations at once. Throws NonConvergence.
JacobiResult jacobi_eig(const Matrix& m, const JacobiOptions& opt = {});
Matrix accumulate_lowrank(std::size_t dim, const std::vector<LowRankNode>& nodes);
}  // namespace omp

/// Threads the omp kernels will use (omp_get_max_threads).
int max_threads();
void set_threads(int n);

}  // namespace anglekit::kernels
