#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "anglekit/errors.hpp"
#include "anglekit/linalg.hpp"
#include "gen.hpp"

using namespace anglekit;

TEST_CASE("eigenvalues ascending and match Eigen") {
    gen::Rng rng(31);
    const auto h = gen::hermitian_op(rng, 30);
    const auto es = hermitian_eig(h);
    Eigen::MatrixXcd e(30, 30);
    for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j) e(i, j) = h(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(e);
    for (int i = 0; i < 30; ++i) {
        if (i > 0) CHECK(es.eigenvalues[i] >= es.eigenvalues[i - 1]);
        CHECK(std::abs(es.eigenvalues[i] - ref.eigenvalues()(i)) <= 1e-11);
    }
}

TEST_CASE("input validation") {
    Matrix m(3, 3);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig({BasisSpec::one_sided(3), m}), NotHermitian);
    m(1, 0) = 1.0;
    m(2, 2) = std::nan("");
    CHECK_THROWS(hermitian_eig({BasisSpec::one_sided(3), m}));
    CHECK_THROWS_AS(window_restrict(TruncatedOperator::identity(BasisSpec::one_sided(3)), 2, 1), DomainError);
    CHECK_THROWS_AS(anti_hermitian_exp(TruncatedOperator::identity(BasisSpec::one_sided(3))), NotHermitian);
}

TEST_CASE("property: functional calculus") {
    gen::Rng rng(32);
    for (int c = 0; c < 20; ++c) {
        INFO("case " << c);
        const int n = rng.integer(2, 24);
        const auto h = gen::hermitian_op(rng, n);
        const auto es = hermitian_eig(h);
        CHECK(op_norm_max(es.apply([](double x) { return x; }) - h) <= 1e-11);
        const auto sq = spectral_function(h, [](double x) { return x * x; });
        CHECK(op_norm_max(sq - h * h) <= 1e-11);
        const auto P = es.projector([](double x) { return x > 0.0; });
        CHECK(op_norm_max(P * P - P) <= 1e-11);
        const auto s = sign_part(h);
        CHECK(op_norm_max(s * s * s - s) <= 1e-10);
        CHECK(op_norm_max(s * spectral_function(h, [](double x) { return std::abs(x); }) - h) <= 1e-10);
        const auto g = cplx{0.0, 1.0} * h;
        const auto u = anti_hermitian_exp(g);
        CHECK(unitarity_defect(u.entries) <= 1e-11);
        CHECK(op_norm_max(commutator(h, h)) <= 1e-12);
    }
}

TEST_CASE("sign part zeroes the kernel") {
    Matrix m(3, 3);
    m(0, 0) = 2.0;
    m(1, 1) = -0.5;
    const auto s = sign_part({BasisSpec::one_sided(3), m});
    CHECK(std::abs(s(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(s(1, 1) + 1.0) < 1e-14);
    CHECK(std::abs(s(2, 2)) < 1e-14);
}

TEST_CASE("exp of a 2x2 rotation generator") {
    Matrix g(2, 2);
    g(0, 1) = -0.7;
    g(1, 0) = 0.7;
    const auto u = anti_hermitian_exp({BasisSpec::one_sided(2), g});
    CHECK(std::abs(u(0, 0) - std::cos(0.7)) < 1e-14);
    CHECK(std::abs(u(1, 0) - std::sin(0.7)) < 1e-14);
}

TEST_CASE("window restriction by labels") {
    const auto b = BasisSpec::two_sided(6);  // labels −3..2
    Matrix m(6, 6);
    for (int i = 0; i < 6; ++i) m(i, i) = b.label(i);
    const auto w = window_restrict({b, m}, -1, 1);
    CHECK(w.dim() == 3);
    CHECK(w(0, 0) == cplx{-1.0});
    CHECK(w(2, 2) == cplx{1.0});
}
