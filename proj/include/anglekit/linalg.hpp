#pragma once

// Hermitian eigendecomposition and the functional calculus built on it.

#include <functional>
#include <optional>
#include <vector>

#include "anglekit/matrix.hpp"

namespace anglekit {

struct EigenSystem {
    BasisSpec basis;
    std::vector<double> eigenvalues;  // ascending
    Matrix eigenvectors;              // columns

    /// V f(Λ) V†, symmetrized.
    TruncatedOperator apply(const std::function<double(double)>& f) const;
    /// Projector onto eigenvectors whose eigenvalue satisfies `pred`.
    TruncatedOperator projector(const std::function<bool(double)>& pred) const;
};

/// Relative Hermiticity tolerance accepted by hermitian_eig.
inline constexpr double kHermitianTol = 1e-12;

/// Throws NotHermitian or NonConvergence.
EigenSystem hermitian_eig(const TruncatedOperator& m);

TruncatedOperator spectral_function(const TruncatedOperator& m, const std::function<double(double)>& f);

/// Sign part of S; eigenvalues with |λ| ≤ zero_tol map to 0. Default tol is 1e-8·‖S‖_max.
TruncatedOperator sign_part(const TruncatedOperator& s, std::optional<double> zero_tol = std::nullopt);

/// exp(G) for anti-Hermitian G, through the eigensystem of −iG.
TruncatedOperator anti_hermitian_exp(const TruncatedOperator& g);

TruncatedOperator commutator(const TruncatedOperator& a, const TruncatedOperator& b);

double op_norm_max(const TruncatedOperator& a);

/// Principal submatrix over basis labels lo..hi (inclusive).
TruncatedOperator window_restrict(const TruncatedOperator& a, int lo, int hi);

/// ‖U†U − I‖_max.
double unitarity_defect(const Matrix& u);

}  // namespace anglekit
