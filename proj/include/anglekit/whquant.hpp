#pragma once

// Weyl-Heisenberg integral quantization with thermal (geometric) densities.
//
// Conventions: z = √J e^{iγ}, ∫ dz/π = ∫_0^∞ dJ ∫_0^{2π} dγ/2π. The density
// ρ_t = (1−t) Σ t^n |e_n⟩⟨e_n| is displaced to ρ(z) = D(z) ρ D(z)†, and by
// rotation covariance ρ(z)_{nn'} = ρ(√J)_{nn'} e^{iγ(n−n')} with ρ(√J) real.

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "anglekit/matrix.hpp"
#include "anglekit/quadrature.hpp"

namespace anglekit {

struct WeightSpec {
    enum class Kind { cahill_glauber, density_diagonal };
    Kind kind = Kind::cahill_glauber;
    double t = 0.0;            // geometric ratio, [0, 1)
    std::vector<double> diag;  // explicit density diagonal (density_diagonal)

    static WeightSpec thermal(double t);
    /// From the Cahill-Glauber parameter s ≤ −1: t = (s+1)/(s−1).
    static WeightSpec from_s(double s);
    static WeightSpec density(std::vector<double> diag);

    void validate() const;
    /// Diagonal of the density, truncated where the geometric tail drops below 1e-17.
    std::vector<double> diagonal() const;
};

struct PhaseSpacePoint {
    double J = 0.0;
    double gamma = 0.0;

    void validate() const;
    cplx z() const { return std::polar(std::sqrt(J), gamma); }
    static PhaseSpacePoint from_z(cplx z);
};

/// A phase-space function, either sampled pointwise or through its Fourier
/// coefficients in γ: f(J, γ) = Σ_q c_q(J) e^{iqγ}.
struct PhaseFunction {
    std::function<cplx(double J, double gamma)> pointwise;
    std::map<int, std::function<cplx(double J)>> fourier;

    static PhaseFunction from_pointwise(std::function<cplx(double, double)> f);
    static PhaseFunction from_fourier(std::map<int, std::function<cplx(double)>> c);
    /// The 2π-periodic sawtooth a(γ) = γ on [0, 2π): c_0 = π, c_q = i/q.
    static PhaseFunction angle(int max_harmonic);
    static PhaseFunction constant(cplx c);
    /// f = z (harmonic +1 with coefficient √J) and its conjugate.
    static PhaseFunction z();
    static PhaseFunction zbar();
};

/// Real displacement matrix R(√J): ⟨e_m|D(√J e^{iγ})|e_n⟩ = e^{iγ(m−n)} R_{mn}.
/// Returned row-major, rows x cols.
std::vector<double> displacement_real(double J, int rows, int cols);

/// D(z) on the first D basis vectors, from the Laguerre closed form.
TruncatedOperator displacement_laguerre(cplx z, int D);

/// e^{−|z|²/2} zⁿ / √n!, n < D.
std::vector<cplx> coherent_state(cplx z, int D);

/// ρ_t = (1−t) Σ_{n<D} tⁿ |e_n⟩⟨e_n|.
TruncatedOperator m_s_diagonal(double t, int D);
/// 1 − t^D, the trace retained by the truncation.
double m_s_trace(double t, int D);

/// ρ(√J) restricted to D x D (real, row-major).
std::vector<double> rho_real(double J, const WeightSpec& w, int D);

/// A_f = ∫ f(z) ρ(z) dz/π by product quadrature.
TruncatedOperator quantize(const PhaseFunction& f, const WeightSpec& w, const QuadratureScheme& quad, int D);

/// Serial reference of the same quadrature sum (tests and benchmark only).
TruncatedOperator quantize_serial(const PhaseFunction& f, const WeightSpec& w, const QuadratureScheme& quad, int D);

struct QuantizeResult {
    TruncatedOperator op;
    double refinement_change = 0.0;  // ‖A(quad) − A(quad·1.5)‖_max
    bool resolved = true;            // change ≤ 1e-6
};
QuantizeResult quantize_checked(const PhaseFunction& f, const WeightSpec& w, const QuadratureScheme& quad, int D);

/// F_{nn'}(t), evaluated with the smaller index first and mirrored.
double f_coefficient(int n, int np, double t);

/// The same closed form taken in the order given (partner ordering only where
/// the given one is undefined). With n > n' the hypergeometric sum cancels
/// heavily and is re-summed in binary128; kept as an independent cross-check.
double f_coefficient_literal(int n, int np, double t);

/// π on the diagonal, i F_{nn'}(t)/(n'−n) off it.
TruncatedOperator angle_matrix(double t, int D);

/// tr(ρ(z) A).
cplx lower_symbol(const TruncatedOperator& A, const WeightSpec& w, const PhaseSpacePoint& p);

/// Lower symbol at fixed J over a list of angles (one ρ(√J) evaluation).
std::vector<cplx> lower_symbol_grid(const TruncatedOperator& A, const WeightSpec& w, double J,
                                    const std::vector<double>& gammas);

/// 1 − tr ρ(z) over the truncation: the probability that leaks past row D−1.
double truncation_leakage(double J, const WeightSpec& w, int D);

/// t = 0 coefficient e^{−J} J^{q/2} Γ(q/2+1)/Γ(q+1) ₁F₁(q/2+1; q+1; J).
double d_q_cs(int q, double J);

/// General-t coefficient Σ_n F_{n,n+q}(t) ρ_t(√J)_{n,n+q}. Domain J ≤ 20,
/// q ≤ 12, t ≤ 0.5.
double d_q_general(int q, double J, double t);

/// π − 2 Σ_{q≤Q} d_q sin(qγ)/q.
double angle_symbol_series(const std::vector<double>& d, double gamma);

/// [A_a, A_J] with A_J = N + 1.
TruncatedOperator action_angle_commutator(double t, int D);
cplx commutator_symbol(const PhaseSpacePoint& p, double t, int D);

/// B = π I + i Σ_{1≤|n|≤Q} Uⁿ/n.
TruncatedOperator canonical_angle_B(const BasisSpec& basis, int Q);
/// Eigenvalues of B for the cyclic basis by DFT diagonalization (ascending).
std::vector<double> canonical_angle_B_cyclic_spectrum(int D, int Q);

/// Triangle wave ArcSin(−sin θ), the function whose Fourier series is
/// (2/π) Σ (u^{2s+1} + ū^{2s+1})/(2s+1)² with u = i e^{iθ}.
double arcsin_triangle(double theta);
double arcsin_fourier_partial(double theta, int Q);

struct CovarianceReport {
    double addition = 0.0;     // D(z)D(z') vs e^{(z z̄' − z̄ z')/2} D(z+z')
    double rotation = 0.0;     // U(θ) D(z) U(θ)† vs D(e^{iθ}z)
    double parity = 0.0;       // P D(z) P vs D(−z)
    double translation = 0.0;  // A_{f(·−z)} vs D(z) A_f D(z)†
};

/// All defects measured on the top-left D/2 block.
CovarianceReport covariance_checks(cplx z, cplx zp, double theta, int D);

}  // namespace anglekit
