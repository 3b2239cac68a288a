#include "anglekit/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "anglekit/errors.hpp"

namespace anglekit {

namespace {

// Neumaier compensated summation.
struct Accumulator {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Wide type for re-summing alternating sums whose terms dwarf the result.
#if defined(__SIZEOF_FLOAT128__)
using wide_t = __float128;
#else
using wide_t = long double;
#endif

// Condition Σ|T_k| / |Σ T_k| above which the double sum is redone in wide_t.
constexpr double kRecomputeCondition = 1e3;

}  // namespace

void SeriesTolerance::validate() const {
    if (!(abs_tol > 0.0)) throw DomainError("SeriesTolerance: abs_tol must be positive");
    if (max_terms < 1) throw DomainError("SeriesTolerance: max_terms must be >= 1");
}

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be positive, got " + std::to_string(x));
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double ln_factorial(int n) {
    if (n < 0) throw DomainError("ln_factorial: negative argument");
    if (n < 2) return 0.0;
    return ln_gamma(static_cast<double>(n) + 1.0);
}

double gauss_2f1_terminating(int neg_int_a, double b, double c, double x) {
    if (neg_int_a > 0) throw DomainError("gauss_2f1_terminating: first parameter must be a nonpositive integer");
    const int n = -neg_int_a;
    if (n == 0 || x == 0.0) return 1.0;

    // Terms kept as (log|T_k|, sign) so that huge intermediate Pochhammer
    // ratios cannot overflow; summed relative to the largest.
    std::vector<double> logt(static_cast<std::size_t>(n) + 1);
    std::vector<int> sgn(static_cast<std::size_t>(n) + 1);
    logt[0] = 0.0;
    sgn[0] = 1;
    int last = 0;
    for (int k = 0; k < n; ++k) {
        const double num = (neg_int_a + k) * (b + k) * x;
        const double den = (c + k) * (k + 1);
        if (den == 0.0)
            throw DomainError("gauss_2f1_terminating: Pochhammer denominator vanishes at k=" + std::to_string(k));
        if (num == 0.0) break;
        const double r = num / den;
        logt[k + 1] = logt[k] + std::log(std::abs(r));
        sgn[k + 1] = sgn[k] * (r < 0 ? -1 : 1);
        last = k + 1;
    }
    const double lmax = *std::max_element(logt.begin(), logt.begin() + last + 1);
    Accumulator acc;
    double mag = 0.0;
    for (int k = 0; k <= last; ++k) {
        const double v = std::exp(logt[k] - lmax);
        acc.add(sgn[k] * v);
        mag += v;
    }
    if (mag <= kRecomputeCondition * std::abs(acc.value())) return acc.value() * std::exp(lmax);

    // Heavy cancellation: same sum with the term ratios multiplied out in wide_t.
    wide_t term = 1, sum = 1;
    for (int k = 0; k < last; ++k) {
        term *= static_cast<wide_t>(neg_int_a + k) * static_cast<wide_t>(b + k) * static_cast<wide_t>(x) /
                (static_cast<wide_t>(c + k) * static_cast<wide_t>(k + 1));
        sum += term;
    }
    return static_cast<double>(sum);
}

double kummer_1f1(double a, double b, double x, const SeriesTolerance& tol) {
    tol.validate();
    if (b <= 0.0 && b == std::floor(b)) throw DomainError("kummer_1f1: b must not be a nonpositive integer");
    if (x < 0.0) throw DomainError("kummer_1f1: x must be nonnegative");
    if (x == 0.0) return 1.0;
    if (a > 0.0 && b > 0.0) return std::exp(ln_kummer_1f1(a, b, x, tol));

    Accumulator acc;
    double term = 1.0;
    acc.add(term);
    for (int k = 0; k < tol.max_terms; ++k) {
        const double ratio = (a + k) / (b + k) * x / (k + 1);
        term *= ratio;
        acc.add(term);
        if (term == 0.0) return acc.value();
        if (std::abs(ratio) < 1.0 && std::abs(term) < tol.abs_tol * std::abs(acc.value())) return acc.value();
    }
    throw NonConvergence("kummer_1f1: series budget exhausted");
}

double ln_kummer_1f1(double a, double b, double x, const SeriesTolerance& tol) {
    tol.validate();
    if (!(a > 0.0 && b > 0.0) || x < 0.0) throw DomainError("ln_kummer_1f1: requires a, b > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    // Positive series. Keep the running sum scaled by exp(-shift).
    double shift = 0.0, sum = 1.0, term = 1.0;
    for (int k = 0; k < tol.max_terms; ++k) {
        const double ratio = (a + k) / (b + k) * x / (k + 1);
        term *= ratio;
        sum += term;
        if (sum > 1e250) {
            const double s = std::log(sum);
            shift += s;
            term /= sum;
            sum = 1.0;
        }
        if (ratio < 1.0 && term < tol.abs_tol * sum) return shift + std::log(sum);
    }
    throw NonConvergence("ln_kummer_1f1: series budget exhausted");
}

double assoc_laguerre(int n, double alpha, double t) {
    if (n < 0) throw DomainError("assoc_laguerre: negative degree");
    if (n == 0) return 1.0;
    if (alpha >= 0.0) {
        double lm1 = 1.0;
        double l = 1.0 + alpha - t;
        for (int k = 1; k < n; ++k) {
            const double next = ((2.0 * k + 1.0 + alpha - t) * l - (k + alpha) * lm1) / (k + 1.0);
            lm1 = l;
            l = next;
        }
        return l;
    }
    // Negative α: the recurrence cancels catastrophically. Explicit sum
    // Σ_k c_k t^k with c_k = (−1)^k C(n+α, n−k)/k!, built downward from
    // c_n = (−1)^n/n!; for integer α the coefficients below k = −α vanish.
    std::vector<wide_t> c(static_cast<std::size_t>(n) + 1);
    c[n] = (n % 2 ? -1 : 1) / static_cast<wide_t>(std::tgamma(n + 1.0));
    for (int k = n - 1; k >= 0; --k)
        c[k] = -c[k + 1] * static_cast<wide_t>(alpha + k + 1) * static_cast<wide_t>(k + 1) / static_cast<wide_t>(n - k);
    wide_t s = 0, p = 1;
    for (int k = 0; k <= n; ++k) {
        s += c[k] * p;
        p *= static_cast<wide_t>(t);
    }
    return static_cast<double>(s);
}

double theta3_normalizer(double J, double sigma, ThetaForm form, const SeriesTolerance& tol) {
    tol.validate();
    if (!(sigma > 0.0)) throw DomainError("theta3_normalizer: sigma must be positive");
    if (form == ThetaForm::direct) {
        const double inv = 1.0 / (2.0 * sigma * sigma);
        const double n0 = std::round(J);
        auto g = [&](double n) { return std::exp(-(J - n) * (J - n) * inv); };
        Accumulator acc;
        acc.add(g(n0));
        for (int k = 1; k < tol.max_terms; ++k) {
            const double tp = g(n0 + k), tm = g(n0 - k);
            acc.add(tp);
            acc.add(tm);
            // Past the mode both tails decrease monotonically.
            if (tp + tm <= tol.abs_tol * acc.value() || (tp == 0.0 && tm == 0.0)) break;
        }
        return acc.value() / std::sqrt(2.0 * std::numbers::pi * sigma * sigma);
    }
    const double c = 2.0 * sigma * sigma * std::numbers::pi * std::numbers::pi;
    Accumulator acc;
    acc.add(1.0);
    for (int n = 1; n < tol.max_terms; ++n) {
        const double w = std::exp(-c * n * n);
        if (w < tol.abs_tol) break;
        // e^{2πinJ} + e^{−2πinJ}; the imaginary parts cancel pairwise.
        acc.add(2.0 * w * std::cos(2.0 * std::numbers::pi * n * J));
    }
    return acc.value();
}

double arccos_coefficient(int n) {
    if (n < 0) throw DomainError("arccos_coefficient: negative index");
    Accumulator acc;
    for (int k = 1; k <= n; ++k) acc.add(std::log1p(-0.5 / k));
    return std::exp(acc.value()) / (2.0 * n + 1.0);
}

std::vector<double> displacement_band(int alpha, double J, int count) {
    if (alpha < 0 || count < 0) throw DomainError("displacement_band: negative alpha or count");
    if (J < 0.0) throw DomainError("displacement_band: J must be nonnegative");
    std::vector<double> f(static_cast<std::size_t>(count), 0.0);
    if (count == 0) return f;
    if (J == 0.0) {
        if (alpha == 0) std::fill(f.begin(), f.end(), 1.0);
        return f;
    }
    // f_{n+1} sqrt((n+1)(n+1+α)) = (2n+1+α−J) f_n − sqrt(n(n+α)) f_{n−1}
    double logscale = -0.5 * J + 0.5 * alpha * std::log(J) - 0.5 * ln_factorial(alpha);
    std::vector<double> g(f.size());
    std::vector<double> lg(f.size());
    double gm1 = 0.0, g0 = 1.0;
    g[0] = g0;
    lg[0] = logscale;
    for (int n = 0; n + 1 < count; ++n) {
        const double next = ((2.0 * n + 1.0 + alpha - J) * g0 - std::sqrt(double(n) * (n + alpha)) * gm1) /
                            std::sqrt((n + 1.0) * (n + 1.0 + alpha));
        gm1 = g0;
        g0 = next;
        const double mag = std::max(std::abs(g0), std::abs(gm1));
        if (mag > 1e100 || (mag < 1e-100 && mag > 0.0)) {
            const double s = std::log(mag);
            logscale += s;
            g0 /= mag;
            gm1 /= mag;
        }
        g[n + 1] = g0;
        lg[n + 1] = logscale;
    }
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = g[k] * std::exp(lg[k]);
    return f;
}

}  // namespace anglekit
