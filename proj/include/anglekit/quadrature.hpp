#pragma once

// Gauss rules for phase-space integrals ∫ dz/π = ∫ dJ ∫ dγ/2π.

#include <vector>

namespace anglekit {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// Rule from the three-term recurrence p_{k+1} = (x − a_k) p_k − b_k p_{k−1}
/// (b_0 unused), with total mass mu0.
GaussRule golub_welsch(const std::vector<double>& a, const std::vector<double>& b, double mu0);

/// Generalized Gauss-Laguerre: weight x^α e^{−x} on [0, ∞).
GaussRule gauss_laguerre(int n, double alpha = 0.0);

/// Gauss rule for the weight 2r e^{−r²} on r ≥ 0, returned in the variable
/// J = r². Exact for polynomials in √J of degree ≤ 2n − 1, which is what the
/// coherent-state matrix elements are.
GaussRule gauss_sqrt_action(int n);

/// Composite Gauss-Legendre on [a, b].
GaussRule composite_legendre(double a, double b, int panels);

enum class RadialKind { sqrt_action, laguerre };

/// Product rule: radial nodes for ∫ e^{−J} h(J) dJ and a uniform trapezoid in γ.
struct QuadratureScheme {
    RadialKind kind = RadialKind::sqrt_action;
    int n_J = 96;
    int n_gamma = 128;

    void validate() const;
    /// Nodes J_i and weights w_i with Σ w_i h(J_i) ≈ ∫_0^∞ e^{−J} h(J) dJ.
    GaussRule radial() const;
    /// Scaled by `factor` (rounded, at least 8).
    QuadratureScheme refined(double factor) const;
};

}  // namespace anglekit
