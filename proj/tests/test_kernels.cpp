#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>

#include "anglekit/kernels.hpp"
#include "gen.hpp"

using namespace anglekit;

namespace {

Eigen::MatrixXcd to_eigen(const Matrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("property: matmul omp equals serial and Eigen") {
    gen::Rng rng(21);
    for (int c = 0; c < gen::kCases; ++c) {
        INFO("case " << c);
        const auto r = static_cast<std::size_t>(rng.integer(1, 20));
        const auto k = static_cast<std::size_t>(rng.integer(1, 20));
        const auto q = static_cast<std::size_t>(rng.integer(1, 20));
        const auto a = gen::general(rng, r, k), b = gen::general(rng, k, q);
        const auto po = kernels::omp::matmul(a, b);
        const auto ps = kernels::serial::matmul(a, b);
        CHECK((po - ps).max_abs() <= 1e-13);
        const Eigen::MatrixXcd pe = to_eigen(a) * to_eigen(b);
        double d = 0.0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < q; ++j) d = std::max(d, std::abs(po(i, j) - pe(i, j)));
        CHECK(d <= 1e-12);
    }
}

TEST_CASE("property: Jacobi eigenvalues match Eigen, both kernels") {
    gen::Rng rng(22);
    for (int c = 0; c < 20; ++c) {
        INFO("case " << c);
        const auto n = static_cast<std::size_t>(rng.integer(1, 40));
        const auto h = gen::hermitian(rng, n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(h));
        const auto ro = kernels::omp::jacobi_eig(h);
        const auto rs = kernels::serial::jacobi_eig(h);
        const auto vo = sorted(ro.values), vs = sorted(rs.values);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(vo[i] - es.eigenvalues()(static_cast<Eigen::Index>(i))) <= 1e-11);
            CHECK(std::abs(vs[i] - es.eigenvalues()(static_cast<Eigen::Index>(i))) <= 1e-11);
        }
        // H V = V Λ for the omp vectors.
        Matrix lam(n, n);
        for (std::size_t i = 0; i < n; ++i) lam(i, i) = ro.values[i];
        CHECK((h * ro.vectors - ro.vectors * lam).max_abs() <= 1e-11);
    }
}

TEST_CASE("Jacobi handles diagonal and degenerate input") {
    Matrix d(4, 4);
    d(0, 0) = 3.0;
    d(1, 1) = -1.0;
    d(2, 2) = 3.0;
    const auto r = kernels::omp::jacobi_eig(d);
    CHECK(sorted(r.values) == std::vector<double>{-1.0, 0.0, 3.0, 3.0});
    CHECK(r.sweeps <= 1);
}

TEST_CASE("property: low-rank accumulation omp equals serial") {
    gen::Rng rng(23);
    for (int c = 0; c < 10; ++c) {
        const int D = rng.integer(1, 24);
        std::vector<kernels::LowRankNode> nodes(static_cast<std::size_t>(rng.integer(1, 6)));
        for (auto& nd : nodes) {
            nd.K = static_cast<std::size_t>(rng.integer(1, 3));
            for (int i = 0; i < 2 * D - 1; ++i) nd.g.push_back(rng.complex(1.0));
            for (std::size_t k = 0; k < nd.K; ++k) nd.lambda.push_back(rng.uniform());
            for (std::size_t i = 0; i < static_cast<std::size_t>(D) * nd.K; ++i) nd.X.push_back(rng.uniform(-1, 1));
        }
        const auto ao = kernels::omp::accumulate_lowrank(static_cast<std::size_t>(D), nodes);
        const auto as = kernels::serial::accumulate_lowrank(static_cast<std::size_t>(D), nodes);
        CHECK((ao - as).max_abs() <= 1e-13);
        // Direct evaluation of one entry.
        const int n = rng.integer(0, D - 1), m = rng.integer(0, D - 1);
        cplx ref = 0.0;
        for (const auto& nd : nodes)
            for (std::size_t k = 0; k < nd.K; ++k)
                ref += nd.g[static_cast<std::size_t>(n - m + D - 1)] * nd.lambda[k] * nd.X[n * nd.K + k] * nd.X[m * nd.K + k];
        CHECK(std::abs(ao(n, m) - ref) <= 1e-13);
    }
}

TEST_CASE("results do not depend on the thread count") {
    gen::Rng rng(24);
    const auto h = gen::hermitian(rng, 48);
    const int before = kernels::max_threads();
    kernels::set_threads(1);
    const auto r1 = kernels::omp::jacobi_eig(h);
    const auto p1 = kernels::omp::matmul(h, h);
    kernels::set_threads(3);
    const auto r3 = kernels::omp::jacobi_eig(h);
    const auto p3 = kernels::omp::matmul(h, h);
    kernels::set_threads(before);
    CHECK(r1.values == r3.values);
    CHECK(p1 == p3);
    CHECK_THROWS(kernels::set_threads(0));
}
