#include "anglekit/whquant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anglekit/errors.hpp"
#include "anglekit/kernels.hpp"
#include "anglekit/linalg.hpp"
#include "anglekit/specfun.hpp"

namespace anglekit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

void require_dim(int D, int min, const char* where) {
    if (D < min) throw DomainError(std::string(where) + ": dimension must be >= " + std::to_string(min));
}

}  // namespace

// ---------------------------------------------------------------- weights

WeightSpec WeightSpec::thermal(double t) {
    WeightSpec w;
    w.t = t;
    w.validate();
    return w;
}

WeightSpec WeightSpec::from_s(double s) {
    if (!(s <= -1.0)) throw DomainError("WeightSpec::from_s: s must be <= -1 for a density");
    return thermal((s + 1.0) / (s - 1.0));
}

WeightSpec WeightSpec::density(std::vector<double> diag) {
    WeightSpec w;
    w.kind = Kind::density_diagonal;
    w.diag = std::move(diag);
    w.validate();
    return w;
}

void WeightSpec::validate() const {
    if (kind == Kind::cahill_glauber) {
        if (!(t >= 0.0 && t < 1.0)) throw DomainError("WeightSpec: t must lie in [0, 1)");
        return;
    }
    if (diag.empty()) throw DomainError("WeightSpec: empty density diagonal");
    double s = 0.0;
    for (double d : diag) {
        if (!(d >= 0.0)) throw DomainError("WeightSpec: negative density entry");
        s += d;
    }
    if (std::abs(s - 1.0) > 1e-12) throw DomainError("WeightSpec: density diagonal must sum to 1");
}

std::vector<double> WeightSpec::diagonal() const {
    validate();
    if (kind == Kind::density_diagonal) return diag;
    if (t == 0.0) return {1.0};
    const int K = std::min(4000, static_cast<int>(std::ceil(std::log(1e-17) / std::log(t))) + 1);
    std::vector<double> d(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) d[k] = (1.0 - t) * std::pow(t, k);
    return d;
}

void PhaseSpacePoint::validate() const {
    if (!(J >= 0.0)) throw DomainError("PhaseSpacePoint: J must be nonnegative");
    if (!(gamma >= 0.0 && gamma < kTwoPi)) throw DomainError("PhaseSpacePoint: gamma must lie in [0, 2pi)");
}

PhaseSpacePoint PhaseSpacePoint::from_z(cplx z) {
    double g = std::arg(z);
    if (g < 0.0) g += kTwoPi;
    if (g >= kTwoPi) g = 0.0;
    return {std::norm(z), g};
}

// -------------------------------------------------------- phase functions

PhaseFunction PhaseFunction::from_pointwise(std::function<cplx(double, double)> f) {
    PhaseFunction p;
    p.pointwise = std::move(f);
    return p;
}

PhaseFunction PhaseFunction::from_fourier(std::map<int, std::function<cplx(double)>> c) {
    PhaseFunction p;
    p.fourier = std::move(c);
    return p;
}

PhaseFunction PhaseFunction::angle(int max_harmonic) {
    std::map<int, std::function<cplx(double)>> c;
    c[0] = [](double) { return cplx{kPi}; };
    for (int q = 1; q <= max_harmonic; ++q) {
        c[q] = [q](double) { return cplx{0.0, 1.0 / q}; };
        c[-q] = [q](double) { return cplx{0.0, -1.0 / q}; };
    }
    return from_fourier(std::move(c));
}

PhaseFunction PhaseFunction::constant(cplx v) { return from_fourier({{0, [v](double) { return v; }}}); }

PhaseFunction PhaseFunction::z() {
    return from_fourier({{1, [](double J) { return cplx{std::sqrt(J)}; }}});
}

PhaseFunction PhaseFunction::zbar() {
    return from_fourier({{-1, [](double J) { return cplx{std::sqrt(J)}; }}});
}

// ----------------------------------------------------------- displacement

std::vector<double> displacement_real(double J, int rows, int cols) {
    if (rows < 1 || cols < 1) throw DomainError("displacement_real: empty shape");
    std::vector<double> r(static_cast<std::size_t>(rows) * cols, 0.0);
    // Lower bands m = n + α.
    for (int a = 0; a < rows; ++a) {
        const int count = std::min(cols, rows - a);
        if (count <= 0) continue;
        const auto f = displacement_band(a, J, count);
        for (int n = 0; n < count; ++n) r[static_cast<std::size_t>(n + a) * cols + n] = f[n];
    }
    // Upper bands n = m + α: ⟨e_m|D|e_n⟩ = (−1)^α f^{(α)}_m.
    for (int a = 1; a < cols; ++a) {
        const int count = std::min(rows, cols - a);
        if (count <= 0) continue;
        const auto f = displacement_band(a, J, count);
        const double sgn = (a % 2 == 0) ? 1.0 : -1.0;
        for (int m = 0; m < count; ++m) r[static_cast<std::size_t>(m) * cols + m + a] = sgn * f[m];
    }
    return r;
}

TruncatedOperator displacement_laguerre(cplx z, int D) {
    require_dim(D, 2, "displacement_laguerre");
    const auto p = PhaseSpacePoint::from_z(z);
    const auto r = displacement_real(p.J, D, D);
    Matrix m(D, D);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) m(i, j) = r[static_cast<std::size_t>(i) * D + j] * std::polar(1.0, p.gamma * (i - j));
    return {BasisSpec::one_sided(D), std::move(m)};
}

std::vector<cplx> coherent_state(cplx z, int D) {
    require_dim(D, 2, "coherent_state");
    std::vector<cplx> v(static_cast<std::size_t>(D));
    const double J = std::norm(z);
    if (J == 0.0) {
        v[0] = 1.0;
        return v;
    }
    const double lr = 0.5 * std::log(J), g = std::arg(z);
    for (int n = 0; n < D; ++n) v[n] = std::polar(std::exp(-0.5 * J + n * lr - 0.5 * ln_factorial(n)), n * g);
    return v;
}

TruncatedOperator m_s_diagonal(double t, int D) {
    require_dim(D, 1, "m_s_diagonal");
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("m_s_diagonal: t must lie in [0, 1)");
    std::vector<double> d(static_cast<std::size_t>(D));
    for (int n = 0; n < D; ++n) d[n] = (1.0 - t) * std::pow(t, n);
    return {BasisSpec::one_sided(D), Matrix::diagonal(std::span<const double>(d))};
}

double m_s_trace(double t, int D) { return 1.0 - std::pow(t, D); }

namespace {

// ρ(√J) = R Λ Rᵀ, returned as its low-rank factors.
kernels::LowRankNode rho_factors(double J, const std::vector<double>& lam, int D) {
    kernels::LowRankNode nd;
    nd.K = lam.size();
    nd.lambda = lam;
    nd.X = displacement_real(J, D, static_cast<int>(nd.K));
    return nd;
}

}  // namespace

std::vector<double> rho_real(double J, const WeightSpec& w, int D) {
    require_dim(D, 1, "rho_real");
    const auto nd = rho_factors(J, w.diagonal(), D);
    std::vector<double> rho(static_cast<std::size_t>(D) * D, 0.0);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < nd.K; ++k) s += nd.lambda[k] * nd.X[i * nd.K + k] * nd.X[j * nd.K + k];
            rho[static_cast<std::size_t>(i) * D + j] = s;
        }
    return rho;
}

// ------------------------------------------------------------ quantization

namespace {

// g[k + D − 1] = ∫ dγ/2π f(J, γ) e^{ikγ}, k = n − n' ∈ (−D, D).
std::vector<cplx> angular_coefficients(const PhaseFunction& f, double J, int D, int n_gamma) {
    std::vector<cplx> g(static_cast<std::size_t>(2 * D - 1));
    if (!f.fourier.empty()) {
        for (const auto& [q, c] : f.fourier) {
            const int k = -q;
            if (k <= -D || k >= D) continue;
            g[k + D - 1] += c(J);
        }
        return g;
    }
    if (!f.pointwise) throw DomainError("quantize: phase function is empty");
    std::vector<cplx> samples(static_cast<std::size_t>(n_gamma));
    for (int j = 0; j < n_gamma; ++j) samples[j] = f.pointwise(J, kTwoPi * j / n_gamma);
    for (int k = -(D - 1); k < D; ++k) {
        cplx s{};
        for (int j = 0; j < n_gamma; ++j) s += samples[j] * std::polar(1.0, kTwoPi * j * k / n_gamma);
        g[k + D - 1] = s / static_cast<double>(n_gamma);
    }
    return g;
}

std::vector<kernels::LowRankNode> quantize_nodes(const PhaseFunction& f, const WeightSpec& w,
                                                 const QuadratureScheme& quad, int D) {
    require_dim(D, 1, "quantize");
    const auto rule = quad.radial();
    const auto lam = w.diagonal();
    std::vector<kernels::LowRankNode> nodes;
    nodes.reserve(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        if (rule.weights[i] == 0.0) continue;
        const double J = rule.nodes[i];
        // The rule carries e^{−J}; ρ(√J) already contains it.
        const double W = std::exp(std::log(rule.weights[i]) + J);
        auto nd = rho_factors(J, lam, D);
        for (double& l : nd.lambda) l *= W;
        nd.g = angular_coefficients(f, J, D, quad.n_gamma);
        nodes.push_back(std::move(nd));
    }
    return nodes;
}

}  // namespace

TruncatedOperator quantize(const PhaseFunction& f, const WeightSpec& w, const QuadratureScheme& quad, int D) {
    return {BasisSpec::one_sided(D), kernels::omp::accumulate_lowrank(D, quantize_nodes(f, w, quad, D))};
}

TruncatedOperator quantize_serial(const PhaseFunction& f, const WeightSpec& w, const QuadratureScheme& quad, int D) {
    return {BasisSpec::one_sided(D), kernels::serial::accumulate_lowrank(D, quantize_nodes(f, w, quad, D))};
}

QuantizeResult quantize_checked(const PhaseFunction& f, const WeightSpec& w, const QuadratureScheme& quad, int D) {
    QuantizeResult r;
    r.op = quantize(f, w, quad, D);
    const auto fine = quantize(f, w, quad.refined(1.5), D);
    r.refinement_change = (fine.entries - r.op.entries).max_abs();
    r.resolved = r.refinement_change <= 1e-6;
    return r;
}

// -------------------------------------------------------- angle operator

namespace {

double f_formula(int n, int np, double t) {
    const double half = 0.5 * (n + np);
    const double lg = ln_gamma(half + 1.0) - 0.5 * (ln_factorial(n) + ln_factorial(np));
    const double e = 0.5 * (np - n);
    const double pre = std::exp(lg + e * std::log1p(-t));
    if (t == 0.0) return pre;
    return pre * gauss_2f1_terminating(-n, e, -half, t);
}

void check_f_args(int n, int np, double t) {
    if (n < 0 || np < 0) throw DomainError("f_coefficient: negative index");
    if (n == np) throw DomainError("f_coefficient: diagonal index");
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("f_coefficient: t must lie in [0, 1)");
}

}  // namespace

double f_coefficient(int n, int np, double t) {
    check_f_args(n, np, t);
    if (n > np) std::swap(n, np);
    return f_formula(n, np, t);
}

double f_coefficient_literal(int n, int np, double t) {
    check_f_args(n, np, t);
    // With n > n' and n + n' even, the lower parameter −(n+n')/2 reaches zero
    // before the sum terminates; only the partner ordering is defined there.
    if (n > np && (n + np) % 2 == 0) std::swap(n, np);
    return f_formula(n, np, t);
}

TruncatedOperator angle_matrix(double t, int D) {
    require_dim(D, 1, "angle_matrix");
    Matrix a(D, D);
    for (int n = 0; n < D; ++n) {
        a(n, n) = kPi;
        for (int np = n + 1; np < D; ++np) {
            const cplx v = kI * (f_coefficient(n, np, t) / (np - n));
            a(n, np) = v;
            a(np, n) = std::conj(v);
        }
    }
    return {BasisSpec::one_sided(D), std::move(a)};
}

std::vector<cplx> lower_symbol_grid(const TruncatedOperator& A, const WeightSpec& w, double J,
                                    const std::vector<double>& gammas) {
    if (A.basis.mode != BasisMode::one_sided) throw BasisMismatch("lower_symbol: one-sided operator required");
    if (!(J >= 0.0)) throw DomainError("lower_symbol: J must be nonnegative");
    const int D = static_cast<int>(A.dim());
    const auto rho = rho_real(J, w, D);
    // h[k] = Σ_{n−n'=k} ρ_{nn'} A_{n'n}; symbol(γ) = Σ_k h[k] e^{ikγ}.
    std::vector<cplx> h(static_cast<std::size_t>(2 * D - 1));
    for (int n = 0; n < D; ++n)
        for (int np = 0; np < D; ++np) h[n - np + D - 1] += rho[static_cast<std::size_t>(n) * D + np] * A(np, n);
    std::vector<cplx> out;
    out.reserve(gammas.size());
    for (double g : gammas) {
        cplx s{};
        for (int k = -(D - 1); k < D; ++k) s += h[k + D - 1] * std::polar(1.0, k * g);
        out.push_back(s);
    }
    return out;
}

cplx lower_symbol(const TruncatedOperator& A, const WeightSpec& w, const PhaseSpacePoint& p) {
    p.validate();
    return lower_symbol_grid(A, w, p.J, {p.gamma}).front();
}

double truncation_leakage(double J, const WeightSpec& w, int D) {
    const auto lam = w.diagonal();
    const auto nd = rho_factors(J, lam, D);
    double tr = 0.0;
    for (int i = 0; i < D; ++i)
        for (std::size_t k = 0; k < nd.K; ++k) tr += lam[k] * nd.X[i * nd.K + k] * nd.X[i * nd.K + k];
    return std::max(0.0, 1.0 - tr);
}

double d_q_cs(int q, double J) {
    if (q < 1) throw DomainError("d_q_cs: q must be >= 1");
    if (!(J >= 0.0)) throw DomainError("d_q_cs: J must be nonnegative");
    if (J == 0.0) return 0.0;
    const double l = -J + 0.5 * q * std::log(J) + ln_gamma(0.5 * q + 1.0) - ln_gamma(q + 1.0) +
                     ln_kummer_1f1(0.5 * q + 1.0, q + 1.0, J);
    return std::exp(l);
}

double d_q_general(int q, double J, double t) {
    if (q < 1 || q > 12) throw DomainError("d_q_general: q must lie in [1, 12]");
    if (!(J >= 0.0 && J <= 20.0)) throw DomainError("d_q_general: J must lie in [0, 20]");
    if (!(t >= 0.0 && t <= 0.5)) throw DomainError("d_q_general: t must lie in [0, 0.5]");
    constexpr int kRows = 160;
    const auto rho = rho_real(J, WeightSpec::thermal(t), kRows);
    double s = 0.0;
    for (int n = 0; n + q < kRows; ++n) s += f_coefficient(n, n + q, t) * rho[static_cast<std::size_t>(n) * kRows + n + q];
    return s;
}

double angle_symbol_series(const std::vector<double>& d, double gamma) {
    double s = kPi;
    for (std::size_t q = 1; q <= d.size(); ++q) s -= 2.0 * d[q - 1] * std::sin(q * gamma) / static_cast<double>(q);
    return s;
}

TruncatedOperator action_angle_commutator(double t, int D) {
    const auto a = angle_matrix(t, D);
    std::vector<double> nj(static_cast<std::size_t>(D));
    for (int n = 0; n < D; ++n) nj[n] = n + 1.0;
    const TruncatedOperator aj{a.basis, Matrix::diagonal(std::span<const double>(nj))};
    return commutator(a, aj);
}

cplx commutator_symbol(const PhaseSpacePoint& p, double t, int D) {
    return lower_symbol(action_angle_commutator(t, D), WeightSpec::thermal(t), p);
}

// ---------------------------------------------------------- canonical B

TruncatedOperator canonical_angle_B(const BasisSpec& basis, int Q) {
    basis.validate();
    if (basis.mode == BasisMode::one_sided) throw DomainError("canonical_angle_B: two-sided or cyclic basis required");
    if (Q < 0) throw DomainError("canonical_angle_B: Q must be >= 0");
    const auto D = static_cast<std::size_t>(basis.dim);
    Matrix b = Matrix::identity(D);
    b *= kPi;
    for (std::size_t c = 0; c < D; ++c)
        for (int n = 1; n <= Q; ++n)
            for (int sgn : {1, -1}) {
                if (auto r = basis.row_of(basis.label(c) + sgn * n)) b(*r, c) += kI / static_cast<double>(sgn * n);
            }
    return {basis, std::move(b)};
}

std::vector<double> canonical_angle_B_cyclic_spectrum(int D, int Q) {
    std::vector<double> ev(static_cast<std::size_t>(D));
    for (int m = 0; m < D; ++m) {
        double s = kPi;
        for (int n = 1; n <= Q; ++n) s -= 2.0 * std::sin(kTwoPi * m * n / D) / n;
        ev[m] = s;
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

double arcsin_triangle(double theta) { return std::asin(std::clamp(-std::sin(theta), -1.0, 1.0)); }

double arcsin_fourier_partial(double theta, int Q) {
    const cplx u = kI * std::polar(1.0, theta);
    cplx s{};
    for (int k = 0; k <= Q; ++k) {
        const int p = 2 * k + 1;
        s += (std::pow(u, p) + std::pow(std::conj(u), p)) / static_cast<double>(p * p);
    }
    return (2.0 / kPi) * s.real();
}

// ------------------------------------------------------------ covariance

CovarianceReport covariance_checks(cplx z, cplx zp, double theta, int D) {
    require_dim(D, 4, "covariance_checks");
    const std::size_t h = static_cast<std::size_t>(D / 2);
    auto block_defect = [h](const Matrix& a, const Matrix& b) { return (a.block(0, 0, h, h) - b.block(0, 0, h, h)).max_abs(); };
    CovarianceReport rep;

    const auto dz = displacement_laguerre(z, D);
    const auto dzp = displacement_laguerre(zp, D);
    const cplx phase = std::exp(0.5 * (z * std::conj(zp) - std::conj(z) * zp));
    rep.addition = block_defect((dz * dzp).entries, phase * displacement_laguerre(z + zp, D).entries);

    Matrix rot = dz.entries;
    Matrix par = dz.entries;
    for (int m = 0; m < D; ++m)
        for (int n = 0; n < D; ++n) {
            rot(m, n) *= std::polar(1.0, theta * (m - n));
            if ((m + n) % 2) par(m, n) = -par(m, n);
        }
    rep.rotation = block_defect(rot, displacement_laguerre(std::polar(1.0, theta) * z, D).entries);
    rep.parity = block_defect(par, displacement_laguerre(-z, D).entries);

    // A test function without rotational symmetry, translated by z.
    const cplx c0{0.3, -0.2};
    auto f = [c0](cplx w) { return cplx{std::exp(-0.5 * std::norm(w - c0))} * (1.0 + 0.5 * w); };
    const auto pf = PhaseFunction::from_pointwise([&](double J, double g) { return f(std::polar(std::sqrt(J), g)); });
    const auto pft = PhaseFunction::from_pointwise([&](double J, double g) { return f(std::polar(std::sqrt(J), g) - z); });
    const QuadratureScheme quad{RadialKind::sqrt_action, 140, 160};
    const auto w0 = WeightSpec::thermal(0.0);
    const auto af = quantize(pf, w0, quad, D);
    const auto aft = quantize(pft, w0, quad, D);
    rep.translation = block_defect(aft.entries, (dz * af * dz.adjoint()).entries);
    return rep;
}

}  // namespace anglekit
