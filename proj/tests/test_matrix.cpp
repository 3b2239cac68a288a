#include <doctest.h>

#include "anglekit/errors.hpp"
#include "anglekit/matrix.hpp"
#include "gen.hpp"

using namespace anglekit;

TEST_CASE("basis labels and rows") {
    const auto one = BasisSpec::one_sided(3);
    CHECK(one.first_label() == 0);
    CHECK(one.last_label() == 2);
    CHECK(!one.row_of(3).has_value());

    const auto two = BasisSpec::two_sided(4, -2);
    CHECK(two.label(0) == -2);
    CHECK(two.label(3) == 1);
    CHECK(*two.row_of(0) == 2);
    CHECK(!two.row_of(2).has_value());

    const auto cyc = BasisSpec::cyclic(4);
    CHECK(*cyc.row_of(5) == 1);
    CHECK(*cyc.row_of(-1) == 3);

    CHECK(BasisSpec::two_sided(64).offset == -32);
}

TEST_CASE("basis validation and mode parsing") {
    CHECK_THROWS_AS(BasisSpec::one_sided(0), DomainError);
    BasisSpec bad{BasisMode::one_sided, 4, 1};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    CHECK(parse_basis_mode("two-sided") == BasisMode::two_sided);
    CHECK(parse_basis_mode("one_sided") == BasisMode::one_sided);
    CHECK(parse_basis_mode("cyclic") == BasisMode::cyclic);
    CHECK_THROWS_AS(parse_basis_mode("spiral"), DomainError);
    for (auto m : {BasisMode::one_sided, BasisMode::two_sided, BasisMode::cyclic})
        CHECK(parse_basis_mode(to_string(m)) == m);
}

TEST_CASE("truncated operator arithmetic checks bases") {
    const auto a = TruncatedOperator::identity(BasisSpec::one_sided(4));
    const auto b = TruncatedOperator::identity(BasisSpec::two_sided(4));
    CHECK_THROWS_AS(a + b, BasisMismatch);
    CHECK_THROWS_AS(a * b, BasisMismatch);
    CHECK_THROWS_AS(TruncatedOperator(BasisSpec::one_sided(3), Matrix(4, 4)), BasisMismatch);
    const auto two = BasisSpec::two_sided(4, -2);
    Matrix m(4, 4);
    m(2, 3) = 5.0;
    const TruncatedOperator op{two, m};
    CHECK(op.at_labels(0, 1) == cplx{5.0});
    CHECK_THROWS_AS(op.at_labels(7, 0), DomainError);
}

TEST_CASE("block and adjoint") {
    gen::Rng rng(3);
    const auto m = gen::general(rng, 5, 4);
    const auto blk = m.block(1, 1, 3, 2);
    CHECK(blk(0, 0) == m(1, 1));
    CHECK(blk(2, 1) == m(3, 2));
    CHECK_THROWS_AS(m.block(4, 0, 2, 1), DomainError);
    const auto adj = m.adjoint();
    CHECK(adj.rows() == 4);
    CHECK(adj(2, 3) == std::conj(m(3, 2)));
}

TEST_CASE("property: matrix product is associative and distributes over +") {
    gen::Rng rng(11);
    for (int c = 0; c < gen::kCases; ++c) {
        INFO("case " << c << " seed " << rng.seed());
        const auto n = static_cast<std::size_t>(rng.integer(1, 12));
        const auto a = gen::general(rng, n, n), b = gen::general(rng, n, n), d = gen::general(rng, n, n);
        CHECK(((a * b) * d - a * (b * d)).max_abs() <= 1e-12 * static_cast<double>(n * n));
        CHECK((a * (b + d) - (a * b + a * d)).max_abs() <= 1e-12 * static_cast<double>(n));
        CHECK(((a * b).adjoint() - b.adjoint() * a.adjoint()).max_abs() <= 1e-12 * static_cast<double>(n));
    }
}

TEST_CASE("hermiticity defect") {
    gen::Rng rng(5);
    const auto h = gen::hermitian(rng, 7);
    CHECK(hermiticity_defect(h) == 0.0);
    auto g = h;
    g(1, 2) += cplx{0.25, 0.0};
    CHECK(hermiticity_defect(g) == doctest::Approx(0.25));
}
