// Acceptance criteria 1-12. One line per criterion; exit status is the number
// of failing criteria (capped at 1).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "anglekit/circlecs.hpp"
#include "anglekit/halfcircle.hpp"
#include "anglekit/linalg.hpp"
#include "anglekit/moments.hpp"
#include "anglekit/specfun.hpp"
#include "anglekit/whquant.hpp"

#ifndef ANGLEKIT_CLI_PATH
#error "ANGLEKIT_CLI_PATH must point at the anglekit executable"
#endif

using namespace anglekit;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... v) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, v...);
    return buf;
}

// 1. Half-circle spectral support.
Outcome c1() {
    const auto fam = build_shift_family(BasisSpec::cyclic(64));
    const auto up = hermitian_eig(angle_upper(cos_sin(fam).C)).eigenvalues;
    const auto full = hermitian_eig(full_angle(fam)).eigenvalues;
    const double up_out = std::max({0.0, -up.front(), up.back() - kPi});
    const double full_out = std::max({0.0, -full.front(), full.back() - kTwoPi});
    return {up_out <= 1e-9 && full_out <= 1e-9,
            fmt("upper excursion %.2e, full excursion %.2e (tol 1e-9)", up_out, full_out)};
}

// 2. Series vs spectral ArcCos off the ±1 eigenspaces.
Outcome c2() {
    const auto cs = cos_sin(build_shift_family(BasisSpec::cyclic(32)));
    const double tol = 1e-6;
    const auto series = angle_upper(cs.C, AngleMethod::series, {tol, 200000});
    const auto spectral = angle_upper(cs.C, AngleMethod::spectral);
    const auto P = hermitian_eig(cs.C).projector([](double x) { return std::abs(std::abs(x) - 1.0) > 1e-8; });
    const double d = op_norm_max(P * (series - spectral) * P);
    return {d <= 50.0 * tol, fmt("max deviation %.3e (tol %.1e)", d, 50.0 * tol)};
}

// 3. Σ contract and commutator defect trend.
Outcome c3() {
    const auto cs = cos_sin(build_shift_family(BasisSpec::two_sided(64)));
    const auto sig = sigma_isometry(cs.S);
    const double cube = op_norm_max(sig * sig * sig - sig);
    const double polar = op_norm_max(sig * spectral_function(cs.S, [](double x) { return std::abs(x); }) - cs.S);
    std::vector<double> defects;
    for (int D : {128, 256, 512}) {
        const auto fam = build_shift_family(BasisSpec::two_sided(D));
        const auto c = cos_sin(fam);
        defects.push_back(commutator_defect(fam, angle_upper(c.C), sigma_isometry(c.S), LabelWindow{-32, 32}));
    }
    const bool trend = defects[1] <= 1.5 * defects[0] && defects[2] <= 1.5 * defects[1];
    const bool strict = defects[2] < defects[0];
    return {cube <= 1e-10 && polar <= 1e-10 && trend && strict,
            fmt("|S^3-S| %.1e, |S-Sigma|S|| %.1e, defect D=128/256/512: %.3e %.3e %.3e", cube, polar, defects[0],
                defects[1], defects[2])};
}

// 4. Covariance derivative against −Σ.
Outcome c4() {
    const auto fam = build_shift_family(BasisSpec::two_sided(64));
    const auto c = cos_sin(fam);
    const auto sig = sigma_isometry(c.S);
    const LabelWindow w{-16, 16};
    const double defect = commutator_defect(fam, angle_upper(c.C), sig, w);
    const auto deriv = angle_flow_derivative(fam, 1e-4);
    const double dev = op_norm_max(window_restrict(deriv + sig, w.lo, w.hi));
    const double dev_plus = op_norm_max(window_restrict(deriv - sig, w.lo, w.hi));
    const double tol = 1e-5 + defect;
    return {dev <= tol, fmt("|dA/dtheta + Sigma| %.3e (tol %.3e); |dA/dtheta - Sigma| %.3e", dev, tol, dev_plus)};
}

// 5. Displacement operator cross-checks.
Outcome c5() {
    const int D = 64;
    Matrix a(D, D);
    for (int n = 1; n < D; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    double lag = 0.0;
    for (cplx z : {cplx{2.0, 0.0}, cplx{0.0, -2.0}, cplx{1.2, 1.5}, cplx{-0.7, 0.4}, cplx{-1.41, -1.41}}) {
        const Matrix G = z * a.adjoint() - std::conj(z) * a;
        const auto ex = anti_hermitian_exp({BasisSpec::one_sided(D), G});
        const auto lg = displacement_laguerre(z, D);
        lag = std::max(lag, (ex.entries.block(0, 0, 32, 32) - lg.entries.block(0, 0, 32, 32)).max_abs());
    }
    double add = 0.0, rot = 0.0;
    for (const auto& [z, zp, th] : std::vector<std::tuple<cplx, cplx, double>>{
             {{0.5, 0.0}, {0.0, 0.3}, 1.1}, {{1.0, -0.5}, {-0.4, 0.9}, 2.7}, {{-1.2, 0.3}, {0.8, 0.8}, -0.6}}) {
        const auto rep = covariance_checks(z, zp, th, D);
        add = std::max(add, rep.addition);
        rot = std::max(rot, rep.rotation);
    }
    return {lag <= 1e-8 && add <= 1e-7 && rot <= 1e-7,
            fmt("laguerre vs exp %.2e (1e-8), addition %.2e, rotation %.2e (1e-7)", lag, add, rot)};
}

// 6. Resolution of identity, both quantizations, base and refined quadrature.
Outcome c6() {
    double wh = 0.0;
    for (double t : {0.0, 0.5})
        for (double f : {1.0, 1.5}) {
            const QuadratureScheme q = QuadratureScheme{RadialKind::sqrt_action, 80, 128}.refined(f);
            const auto I = quantize(PhaseFunction::constant(1.0), WeightSpec::thermal(t), q, 64);
            wh = std::max(wh, (I.entries.block(0, 0, 16, 16) - Matrix::identity(16)).max_abs());
        }
    double cyl = 0.0;
    const auto g = DistributionSpec::gaussian(1.0);
    const auto b = BasisSpec::two_sided(64);
    for (double f : {1.0, 1.5}) {
        const CylQuadrature q = CylQuadrature{-64.0 / 3.0, 64.0 / 3.0, 80, 32}.refined(f);
        const auto I = quantize_cyl_general([](double, double) { return cplx{1.0}; }, g, b, q);
        cyl = std::max(cyl, op_norm_max(window_restrict(I - TruncatedOperator::identity(b), -8, 7)));
    }
    return {wh <= 1e-6 && cyl <= 1e-6, fmt("WH block defect %.2e, circle block defect %.2e (tol 1e-6)", wh, cyl)};
}

// 7. WH angle operator entries.
Outcome c7() {
    double diag = 0.0;
    for (double t : {0.0, 0.25, 0.5, 0.75}) {
        const auto A = angle_matrix(t, 48);
        for (std::size_t i = 0; i < A.dim(); ++i) diag = std::max(diag, std::abs(A(i, i) - cplx{kPi}));
    }
    double sym = 0.0;
    for (double t : {0.0, 0.25, 0.5, 0.75})
        for (int n = 0; n <= 40; ++n)
            for (int np = 0; np <= 40; ++np)
                if (n != np) sym = std::max(sym, std::abs(f_coefficient_literal(n, np, t) - f_coefficient_literal(np, n, t)));
    double ratio = 0.0;
    for (int n = 0; n <= 200; ++n)
        for (int np = 0; np <= 200; ++np)
            ratio = std::max(ratio, std::exp(ln_gamma(0.5 * (n + np) + 1.0) - 0.5 * (ln_factorial(n) + ln_factorial(np))));
    const cplx e01 = angle_matrix(0.0, 8)(0, 1);
    const double e01_err = std::abs(e01 - cplx{0.0, std::tgamma(1.5)});
    return {diag == 0.0 && sym <= 1e-10 && ratio <= 1.0 && e01_err <= 1e-10,
            fmt("diag dev %.1e, F asymmetry %.2e, max Gamma ratio %.15f, entry(0,1) err %.2e", diag, sym, ratio, e01_err)};
}

// 8. Semiclassical sawtooth.
Outcome c8() {
    const auto A = angle_matrix(0.0, 160);
    const auto w = WeightSpec::thermal(0.0);
    std::vector<double> gs;
    for (int k = 0; k <= 128; ++k) gs.push_back(0.5 + (kTwoPi - 1.0) * k / 128.0);
    auto err_at = [&](double J) {
        const auto sy = lower_symbol_grid(A, w, J, gs);
        double e = 0.0;
        for (std::size_t i = 0; i < gs.size(); ++i) e = std::max(e, std::abs(sy[i] - cplx{gs[i]}));
        return e;
    };
    const double e100 = err_at(100.0), e25 = err_at(25.0);
    return {e100 <= 0.05 && e25 > e100, fmt("error J=100 %.4f (tol 0.05), J=25 %.4f", e100, e25)};
}

// 9. Canonical commutator recovery.
Outcome c9() {
    const int D = 160;
    const auto C = action_angle_commutator(0.0, D);
    std::vector<double> gs;
    for (int k = 0; k <= 64; ++k) gs.push_back(0.5 + (kTwoPi - 1.0) * k / 64.0);
    const auto sy = lower_symbol_grid(C, WeightSpec::thermal(0.0), 100.0, gs);
    double mag = 0.0, phase = 0.0;
    const cplx ref = sy.front() / std::abs(sy.front());
    for (const auto& s : sy) {
        mag = std::max(mag, std::abs(std::abs(s) - 1.0));
        phase = std::max(phase, std::abs(s / std::abs(s) - ref));
    }
    const bool pm_i = std::abs(std::abs(ref.imag()) - 1.0) < 1e-2;

    const auto g20 = DistributionSpec::gaussian(20.0);
    const auto b = BasisSpec::two_sided(400);
    const auto AJ = quantize_cyl_J([](double J) { return J; }, g20, b);
    const auto Aa = quantize_cyl_phi(sawtooth_coefficients(399), g20, b);
    const cplx circ = lower_symbol_cyl(commutator(AJ, Aa), g20, {0.0, kPi});
    const double cerr = std::abs(circ - cplx{0.0, -1.0});
    return {mag <= 0.05 && pm_i && phase <= 0.05 && cerr <= 0.02,
            fmt("WH |symbol| dev %.4f, phase spread %.2e, phase (%.3f,%.3f); circle symbol err %.2e", mag, phase,
                ref.real(), ref.imag(), cerr)};
}

// 10. Circle coherent-state suite.
Outcome c10() {
    const auto g1 = DistributionSpec::gaussian(1.0);
    const auto b = BasisSpec::two_sided(64);
    const auto AJ = quantize_cyl_J([](double J) { return J; }, g1, b);
    double nd = 0.0;
    for (std::size_t i = 0; i < AJ.dim(); ++i)
        for (std::size_t j = 0; j < AJ.dim(); ++j)
            nd = std::max(nd, std::abs(AJ(i, j) - (i == j ? cplx{static_cast<double>(b.label(i))} : cplx{})));
    const auto h = fourier_harmonic_defect(g1, b, 4);
    const double p10 = std::abs(h.p10_squared - std::exp(-0.25));
    const auto cm = commutator_number_angle(g1, b, 8);
    double theta = 0.0;
    for (double s : {0.2, 0.5, 1.0, 3.0, 10.0})
        for (int k = -8; k <= 8; ++k)
            theta = std::max(theta, std::abs(theta3_normalizer(0.3 * k, s, ThetaForm::direct) -
                                             theta3_normalizer(0.3 * k, s, ThetaForm::poisson)));
    int asserted = 0, failed = 0;
    for (auto which : {LimitCase::small, LimitCase::large})
        for (const auto& row : limit_study({which == LimitCase::small ? 0.05 : 50.0}, which, 0.05))
            if (row.asserted) {
                ++asserted;
                if (!row.pass) ++failed;
            }
    return {nd <= 1e-9 && h.defect <= 1e-10 && p10 <= 1e-10 && cm.interior_defect <= 1e-10 && theta <= 1e-11 &&
                failed == 0,
            fmt("A_J-N %.1e, harmonic %.1e, p10^2 %.1e, commutator %.1e, theta %.1e, limit rows %d/%d", nd, h.defect,
                p10, cm.interior_defect, theta, asserted - failed, asserted)};
}

// 11. Generalized factorial series and the half-factorial bound.
Outcome c11() {
    const auto seq = FactorialSequence::identity();
    double worst = 0.0;
    for (int k = 0; k <= 10; ++k)
        for (double t : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 7.5, 10.0})
            worst = std::max(worst, s_k(seq, k, t) / generalized_exp(seq, t));
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pick(0, 300);
    int bad = 0;
    for (int i = 0; i < 10000; ++i)
        if (!half_factorial_bound_check(seq, pick(rng), pick(rng))) ++bad;
    return {worst <= 1.0 && bad == 0, fmt("max S_k/N %.15f, bound violations %d/10000", worst, bad)};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 12. Determinism of the CLI check report.
Outcome c12() {
    const std::string cli = ANGLEKIT_CLI_PATH;
    const std::string a = "acceptance_check_a.json", b = "acceptance_check_b.json";
    const int ra = std::system(("\"" + cli + "\" check all --format json --output " + a + " > /dev/null").c_str());
    const int rb = std::system(("\"" + cli + "\" check all --format json --output " + b + " > /dev/null").c_str());
    const std::string ja = slurp(a), jb = slurp(b);
    const bool same = !ja.empty() && ja == jb;
    return {ra == 0 && rb == 0 && same,
            fmt("exit codes %d/%d, reports %s (%zu bytes)", ra, rb, same ? "identical" : "differ", ja.size())};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"half-circle spectral support", c1},      {"series/spectral agreement", c2},
        {"sigma contract and commutator trend", c3}, {"covariance derivative", c4},
        {"displacement cross-check", c5},          {"resolution of identity", c6},
        {"WH angle operator", c7},                 {"semiclassical sawtooth", c8},
        {"canonical commutator recovery", c9},     {"circle coherent states", c10},
        {"factorial series bounds", c11},          {"determinism", c12},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failed;
        std::printf("[%s] %2zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
