#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anglekit/errors.hpp"
#include "anglekit/quadrature.hpp"
#include "gen.hpp"

using namespace anglekit;

namespace {
double apply(const GaussRule& r, auto f) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
    return s;
}
}  // namespace

TEST_CASE("Gauss-Laguerre integrates moments exactly") {
    const auto r = gauss_laguerre(20);
    for (int k = 0; k <= 30; ++k)
        CHECK(std::abs(apply(r, [&](double x) { return std::pow(x, k); }) / std::tgamma(k + 1.0) - 1.0) < 1e-12);
    const auto ra = gauss_laguerre(15, 0.5);
    CHECK(std::abs(apply(ra, [](double x) { return x * x; }) - std::tgamma(3.5)) < 1e-12);
    CHECK_THROWS_AS(gauss_laguerre(0), DomainError);
    CHECK_THROWS_AS(gauss_laguerre(5, -1.5), DomainError);
}

TEST_CASE("sqrt-action rule integrates half-integer powers") {
    const auto r = gauss_sqrt_action(40);
    for (int k = 0; k <= 79; ++k) {
        INFO("k=" << k);
        // ∫ e^{−J} J^{k/2} dJ = Γ(k/2 + 1)
        const double v = apply(r, [&](double J) { return std::pow(J, 0.5 * k); });
        CHECK(std::abs(v / std::tgamma(0.5 * k + 1.0) - 1.0) < 1e-11);
    }
    CHECK_THROWS_AS(gauss_sqrt_action(201), DomainError);
}

TEST_CASE("composite Legendre") {
    const auto r = composite_legendre(-1.0, 2.0, 5);
    CHECK(std::abs(apply(r, [](double x) { return std::exp(x); }) - (std::exp(2.0) - std::exp(-1.0))) < 1e-13);
    CHECK_THROWS_AS(composite_legendre(1.0, 1.0, 3), DomainError);
}

TEST_CASE("scheme refinement and validation") {
    const QuadratureScheme q{};
    const auto f = q.refined(1.5);
    CHECK(f.n_J == 144);
    CHECK(f.n_gamma == 192);
    CHECK(q.refined(0.01).n_J == 8);
    CHECK_THROWS_AS((QuadratureScheme{RadialKind::laguerre, 4, 64}).validate(), DomainError);
    const auto rl = QuadratureScheme{RadialKind::laguerre, 30, 16}.radial();
    CHECK(std::abs(apply(rl, [](double x) { return x; }) - 1.0) < 1e-12);
}

TEST_CASE("property: Golub-Welsch reproduces Legendre on [-1,1]") {
    gen::Rng rng(51);
    for (int c = 0; c < 10; ++c) {
        const int n = rng.integer(2, 30);
        std::vector<double> a(n, 0.0), b(n, 0.0);
        for (int k = 1; k < n; ++k) b[k] = k * k / (4.0 * k * k - 1.0);
        const auto r = golub_welsch(a, b, 2.0);
        for (int k = 0; k < 2 * n; k += 2)
            CHECK(std::abs(apply(r, [&](double x) { return std::pow(x, k); }) - 2.0 / (k + 1)) < 1e-12);
    }
}
