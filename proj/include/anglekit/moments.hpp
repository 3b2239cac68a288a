#pragma once

// Generalized factorials x_n! = x_1 x_2 ... x_n for a strictly increasing
// sequence with x_0 = 0, the exponential-type series 𝒩(t) = Σ tⁿ/x_n! and the
// shifted sums 𝒮_k(t) = Σ_n x_{k/2+n}!/(x_n! x_{n+k}!) t^{n+k/2}.

#include <functional>
#include <limits>
#include <memory>
#include <optional>

#include "anglekit/specfun.hpp"

namespace anglekit {

class FactorialSequence {
public:
    /// `x` must be strictly increasing with x(0) = 0. `half_log_factorial`
    /// interpolates ln x_ν! at half-integer ν; without it odd shifts are refused.
    FactorialSequence(std::function<double(int)> x, double radius,
                      std::function<double(double)> half_log_factorial = {});

    /// x_n = n: x_n! = n!, interpolated by Γ(ν+1), radius ∞.
    static FactorialSequence identity();

    double x(int n) const { return x_(n); }
    double radius() const { return radius_; }
    /// ln x_n!, memoized.
    double log_factorial(int n) const;
    /// ln x_ν! for ν integer or half-integer.
    double log_factorial_half(double nu) const;

private:
    std::function<double(int)> x_;
    double radius_;
    std::function<double(double)> half_;
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

/// 𝒩(t). Throws DomainError for t < 0 or t ≥ radius.
double generalized_exp(const FactorialSequence& seq, double t, const SeriesTolerance& tol = {});

/// 𝒮_k(t).
double s_k(const FactorialSequence& seq, int k, double t, const SeriesTolerance& tol = {});

/// ln √(x_{n1}! x_{n2}!) − ln x_{(n1+n2)/2}!; nonnegative when the bound holds.
double half_factorial_margin(const FactorialSequence& seq, int n1, int n2);

/// x_{(n1+n2)/2}! ≤ √(x_{n1}! x_{n2}!), compared in log space with relative slack 1e-13.
bool half_factorial_bound_check(const FactorialSequence& seq, int n1, int n2);

}  // namespace anglekit
