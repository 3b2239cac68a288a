#pragma once

// Scalar special functions. Everything that involves large factorials is
// evaluated in log space.

#include <vector>

namespace anglekit {

struct SeriesTolerance {
    double abs_tol = 1e-16;
    int max_terms = 100000;

    void validate() const;
};

/// ln Γ(x), x > 0.
double ln_gamma(double x);

/// ln n!
double ln_factorial(int n);

/// Terminating ₂F₁(−n, b; c; x), exact (n+1)-term sum. Throws DomainError if
/// a denominator (c)_k vanishes before termination.
double gauss_2f1_terminating(int neg_int_a, double b, double c, double x);

/// ₁F₁(a; b; x) for x ≥ 0.
double kummer_1f1(double a, double b, double x, const SeriesTolerance& tol = {});

/// ln ₁F₁(a; b; x) for a, b > 0 and x ≥ 0, where every term is positive.
double ln_kummer_1f1(double a, double b, double x, const SeriesTolerance& tol = {});

/// L_n^{(α)}(t) by the three-term recurrence in n.
double assoc_laguerre(int n, double alpha, double t);

enum class ThetaForm { direct, poisson };

/// Σ_n p(J − n) for the centred Gaussian of width sigma, in the direct or the
/// Poisson-summed form.
double theta3_normalizer(double J, double sigma, ThetaForm form, const SeriesTolerance& tol = {1e-17, 100000});

/// (2n)! / (4^n (n!)^2 (2n+1)), the Maclaurin coefficients of arcsin.
double arccos_coefficient(int n);

/// f_n = sqrt(n!/(n+α)!) e^{−J/2} J^{α/2} L_n^{(α)}(J) for n = 0..count-1.
///
/// These are the displacement matrix elements ⟨e_{n+α}|D(√J)|e_n⟩. The
/// normalized three-term recurrence is run forward with a running log scale,
/// so neither the Laguerre values nor the prefactor ever overflow.
std::vector<double> displacement_band(int alpha, double J, int count);

}  // namespace anglekit
