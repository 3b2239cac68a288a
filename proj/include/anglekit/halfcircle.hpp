#pragma once

// Shift operators, cosine/sine pair and the arccos angle operators built on
// them. Sign convention throughout: U raises labels (U e_n = e_{n+1}), so
// [N, U] = U, [N, C] = iS, and the half-circle angle satisfies
//   Ǎ N − N Ǎ = iΣ,   Σ = sign(S),
// on the infinite lattice.

#include <optional>

#include "anglekit/linalg.hpp"
#include "anglekit/specfun.hpp"

namespace anglekit {

struct ShiftFamily {
    BasisSpec basis;
    TruncatedOperator U;  // raising shift
    TruncatedOperator N;  // diagonal of basis labels
};

/// Throws DomainError for dim < 4.
ShiftFamily build_shift_family(const BasisSpec& basis);

struct LadderPair {
    TruncatedOperator a_plus;
    TruncatedOperator a_minus;
};

/// a₊ = N^{1/2} V and a₋ = a₊†. One-sided bases only.
LadderPair ladder_from_shift(const ShiftFamily& fam);

struct CosSinPair {
    TruncatedOperator C;  // (U + U†)/2
    TruncatedOperator S;  // (U − U†)/(2i)
};

CosSinPair cos_sin(const ShiftFamily& fam);

enum class AngleMethod { series, spectral };

/// Ǎ = ArcCos(C). Series mode sums π/2 − Σ c_n C^{2n+1} until the term falls
/// below tol.abs_tol (slow when C has eigenvalues at ±1).
TruncatedOperator angle_upper(const TruncatedOperator& C, AngleMethod method = AngleMethod::spectral,
                              const SeriesTolerance& tol = {1e-10, 200000});

/// Ă = ArcCos(C) + π.
TruncatedOperator angle_lower(const TruncatedOperator& C);

/// Ǎ ⊕ (Ă − π E_C({−1})) on a 2D-dimensional direct sum (first copy in rows 0..D-1).
TruncatedOperator full_angle(const ShiftFamily& fam);

/// Sign part of S; S = Σ|S|.
TruncatedOperator sigma_isometry(const TruncatedOperator& S, std::optional<double> zero_tol = std::nullopt);

/// Interior label window [first + margin, last − margin].
struct LabelWindow {
    int lo = 0;
    int hi = 0;
};
LabelWindow interior_window(const BasisSpec& b, int margin);

/// ‖W(Ǎ N − N Ǎ − iΣ)‖_max over the window.
double commutator_defect(const ShiftFamily& fam, const TruncatedOperator& angle, const TruncatedOperator& sigma,
                         LabelWindow w);
double commutator_defect(const ShiftFamily& fam, const TruncatedOperator& angle, const TruncatedOperator& sigma,
                         int window_margin);

/// ‖W(N Ǎ − Ǎ N − iΣ)‖_max: the opposite orientation, kept for reporting.
double commutator_defect_opposite(const ShiftFamily& fam, const TruncatedOperator& angle,
                                  const TruncatedOperator& sigma, LabelWindow w);

struct CovarianceFlow {
    TruncatedOperator C_theta;  // e^{iθN} C e^{−iθN}
    TruncatedOperator S_theta;
    TruncatedOperator C_closed;  // cos θ C − sin θ S
    TruncatedOperator S_closed;  // cos θ S + sin θ C
    TruncatedOperator A_theta;   // ArcCos(C_theta)
};

/// Phase conjugation e^{iθN} X e^{−iθN} (N diagonal, so entrywise).
TruncatedOperator phase_conjugate(const TruncatedOperator& x, double theta);

CovarianceFlow covariance_flow(const ShiftFamily& fam, double theta);

/// Central-difference dA(θ)/dθ at 0 with step h.
TruncatedOperator angle_flow_derivative(const ShiftFamily& fam, double h = 1e-4);

/// ‖W(N Cⁿ − Cⁿ N − n i C^{n−1} S)‖_max.
double power_commutator_defect(const ShiftFamily& fam, int n, LabelWindow w);

}  // namespace anglekit
