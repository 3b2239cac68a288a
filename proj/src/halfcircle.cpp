#include "anglekit/halfcircle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anglekit/errors.hpp"

namespace anglekit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSpectrumTol = 1e-10;

// ArcCos has infinite slope at ±1: an eigenvalue one ulp inside the endpoint
// would come out √ε ≈ 1e-8 away from 0 or π. Snap within this distance.
constexpr double kEndpointSnap = 1e-12;

double clamp_unit(double x) {
    if (x >= 1.0 - kEndpointSnap) return 1.0;
    if (x <= -1.0 + kEndpointSnap) return -1.0;
    return x;
}

EigenSystem checked_cos_eig(const TruncatedOperator& C) {
    auto es = hermitian_eig(C);
    if (es.eigenvalues.front() < -1.0 - kSpectrumTol || es.eigenvalues.back() > 1.0 + kSpectrumTol)
        throw DomainError("angle operator: spectrum of C leaves [-1, 1]");
    return es;
}

}  // namespace

ShiftFamily build_shift_family(const BasisSpec& basis) {
    basis.validate();
    if (basis.dim < 4) throw DomainError("build_shift_family: dim must be >= 4");
    const auto n = static_cast<std::size_t>(basis.dim);
    Matrix u(n, n), num(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        num(c, c) = basis.label(c);
        if (auto r = basis.row_of(basis.label(c) + 1)) u(*r, c) = 1.0;
    }
    return {basis, {basis, std::move(u)}, {basis, std::move(num)}};
}

LadderPair ladder_from_shift(const ShiftFamily& fam) {
    if (fam.basis.mode != BasisMode::one_sided) throw DomainError("ladder_from_shift: one-sided basis required");
    const std::size_t n = fam.U.dim();
    Matrix ap(n, n);
    for (std::size_t r = 1; r < n; ++r) ap(r, r - 1) = std::sqrt(static_cast<double>(r));
    TruncatedOperator plus{fam.basis, ap};
    return {plus, plus.adjoint()};
}

CosSinPair cos_sin(const ShiftFamily& fam) {
    const Matrix& u = fam.U.entries;
    const Matrix ud = u.adjoint();
    Matrix c = u + ud;
    c *= 0.5;
    Matrix s = u - ud;
    s *= cplx{0.0, -0.5};
    return {{fam.basis, std::move(c)}, {fam.basis, std::move(s)}};
}

TruncatedOperator angle_upper(const TruncatedOperator& C, AngleMethod method, const SeriesTolerance& tol) {
    tol.validate();
    auto es = checked_cos_eig(C);
    if (method == AngleMethod::spectral) return es.apply([](double x) { return std::acos(clamp_unit(x)); });

    const std::size_t n = C.dim();
    const Matrix c2 = C.entries * C.entries;
    Matrix power = C.entries;  // C^{2k+1}
    Matrix acc = Matrix::identity(n);
    acc *= kPi / 2.0;
    double coef = 1.0;  // arccos_coefficient(k), updated by its ratio
    for (int k = 0; k < tol.max_terms; ++k) {
        if (k > 0) {
            coef *= (2.0 * k - 1.0) * (2.0 * k - 1.0) / (2.0 * k * (2.0 * k + 1.0));
            power = power * c2;
        }
        Matrix term = power;
        term *= coef;
        acc -= term;
        if (term.max_abs() < tol.abs_tol) {
            Matrix sym = acc + acc.adjoint();
            sym *= 0.5;
            return {C.basis, std::move(sym)};
        }
    }
    throw NonConvergence("angle_upper: series budget exhausted");
}

TruncatedOperator angle_lower(const TruncatedOperator& C) {
    return checked_cos_eig(C).apply([](double x) { return std::acos(clamp_unit(x)) + kPi; });
}

TruncatedOperator full_angle(const ShiftFamily& fam) {
    const auto cs = cos_sin(fam);
    const auto es = checked_cos_eig(cs.C);
    const auto upper = es.apply([](double x) { return std::acos(clamp_unit(x)); });
    // Ă − π E_C({−1}): on the −1 eigenspace ArcCos + π = 2π is pulled back to π.
    const auto lower = es.apply([](double x) {
        const double v = std::acos(clamp_unit(x)) + kPi;
        return std::abs(x + 1.0) <= 1e-8 ? v - kPi : v;
    });
    const std::size_t n = cs.C.dim();
    Matrix a(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = upper(i, j);
            a(n + i, n + j) = lower(i, j);
        }
    return {BasisSpec::one_sided(static_cast<int>(2 * n)), std::move(a)};
}

TruncatedOperator sigma_isometry(const TruncatedOperator& S, std::optional<double> zero_tol) {
    return sign_part(S, zero_tol);
}

LabelWindow interior_window(const BasisSpec& b, int margin) {
    if (margin < 0 || 2 * margin >= b.dim) throw DomainError("interior_window: margin leaves an empty window");
    return {b.first_label() + margin, b.last_label() - margin};
}

namespace {

double windowed_defect(const ShiftFamily& fam, const TruncatedOperator& angle, const TruncatedOperator& sigma,
                       LabelWindow w, double orientation) {
    if (fam.basis.mode == BasisMode::one_sided)
        throw DomainError("commutator_defect: two-sided or cyclic basis required");
    require_same_basis(fam.basis, angle.basis, "commutator_defect");
    require_same_basis(fam.basis, sigma.basis, "commutator_defect");
    // [Ǎ, N] is entrywise Ǎ_{jk} (n_k − n_j); no matrix product needed.
    const auto& b = fam.basis;
    auto r0 = b.row_of(w.lo), r1 = b.row_of(w.hi);
    if (!r0 || !r1 || *r1 < *r0) throw DomainError("commutator_defect: window empty");
    double m = 0.0;
    for (std::size_t j = *r0; j <= *r1; ++j)
        for (std::size_t k = *r0; k <= *r1; ++k) {
            const double dn = fam.N(k, k).real() - fam.N(j, j).real();
            const cplx v = orientation * angle(j, k) * dn - cplx{0.0, 1.0} * sigma(j, k);
            m = std::max(m, std::abs(v));
        }
    return m;
}

}  // namespace

double commutator_defect(const ShiftFamily& fam, const TruncatedOperator& angle, const TruncatedOperator& sigma,
                         LabelWindow w) {
    return windowed_defect(fam, angle, sigma, w, 1.0);
}

double commutator_defect(const ShiftFamily& fam, const TruncatedOperator& angle, const TruncatedOperator& sigma,
                         int window_margin) {
    return commutator_defect(fam, angle, sigma, interior_window(fam.basis, window_margin));
}

double commutator_defect_opposite(const ShiftFamily& fam, const TruncatedOperator& angle,
                                  const TruncatedOperator& sigma, LabelWindow w) {
    return windowed_defect(fam, angle, sigma, w, -1.0);
}

TruncatedOperator phase_conjugate(const TruncatedOperator& x, double theta) {
    const std::size_t n = x.dim();
    Matrix r = x.entries;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) r(j, k) *= std::polar(1.0, theta * (x.basis.label(j) - x.basis.label(k)));
    return {x.basis, std::move(r)};
}

CovarianceFlow covariance_flow(const ShiftFamily& fam, double theta) {
    if (fam.basis.mode == BasisMode::one_sided) throw DomainError("covariance_flow: two-sided or cyclic basis required");
    const auto cs = cos_sin(fam);
    CovarianceFlow f;
    f.C_theta = phase_conjugate(cs.C, theta);
    f.S_theta = phase_conjugate(cs.S, theta);
    const double c = std::cos(theta), s = std::sin(theta);
    f.C_closed = cplx{c} * cs.C - cplx{s} * cs.S;
    f.S_closed = cplx{c} * cs.S + cplx{s} * cs.C;
    f.A_theta = angle_upper(f.C_theta, AngleMethod::spectral);
    return f;
}

TruncatedOperator angle_flow_derivative(const ShiftFamily& fam, double h) {
    const auto cs = cos_sin(fam);
    const auto ap = angle_upper(phase_conjugate(cs.C, h), AngleMethod::spectral);
    const auto am = angle_upper(phase_conjugate(cs.C, -h), AngleMethod::spectral);
    return cplx{1.0 / (2.0 * h)} * (ap - am);
}

double power_commutator_defect(const ShiftFamily& fam, int n, LabelWindow w) {
    if (n < 1) throw DomainError("power_commutator_defect: n must be >= 1");
    const auto cs = cos_sin(fam);
    TruncatedOperator cn1 = TruncatedOperator::identity(fam.basis);  // C^{n−1}
    for (int k = 1; k < n; ++k) cn1 = cn1 * cs.C;
    const TruncatedOperator cn = cn1 * cs.C;
    const auto lhs = commutator(fam.N, cn);
    const auto rhs = cplx{0.0, static_cast<double>(n)} * (cn1 * cs.S);
    return op_norm_max(window_restrict(lhs - rhs, w.lo, w.hi));
}

}  // namespace anglekit
