#include "anglekit/moments.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "anglekit/errors.hpp"

namespace anglekit {

struct FactorialSequence::Cache {
    std::mutex mu;
    std::vector<double> logf{0.0};  // ln x_n!, n = 0..size-1
};

FactorialSequence::FactorialSequence(std::function<double(int)> x, double radius,
                                     std::function<double(double)> half_log_factorial)
    : x_(std::move(x)), radius_(radius), half_(std::move(half_log_factorial)), cache_(std::make_shared<Cache>()) {
    if (!x_) throw DomainError("FactorialSequence: x missing");
    if (!(radius_ > 0.0)) throw DomainError("FactorialSequence: radius must be positive");
    if (x_(0) != 0.0) throw DomainError("FactorialSequence: x_0 must be 0");
    double prev = 0.0;
    for (int n = 1; n <= 64; ++n) {
        const double v = x_(n);
        if (!(v > prev)) throw DomainError("FactorialSequence: x must be strictly increasing");
        prev = v;
    }
}

FactorialSequence FactorialSequence::identity() {
    return {[](int n) { return static_cast<double>(n); }, std::numeric_limits<double>::infinity(),
            [](double nu) { return ln_gamma(nu + 1.0); }};
}

double FactorialSequence::log_factorial(int n) const {
    if (n < 0) throw DomainError("log_factorial: negative index");
    std::lock_guard lock(cache_->mu);
    auto& v = cache_->logf;
    while (static_cast<int>(v.size()) <= n) {
        const int k = static_cast<int>(v.size());
        const double xk = x_(k);
        if (!(xk > 0.0)) throw DomainError("log_factorial: sequence not positive");
        v.push_back(v.back() + std::log(xk));
    }
    return v[static_cast<std::size_t>(n)];
}

double FactorialSequence::log_factorial_half(double nu) const {
    if (nu < 0.0) throw DomainError("log_factorial_half: negative index");
    const double r = std::round(nu);
    if (r == nu) return log_factorial(static_cast<int>(r));
    if (std::round(2.0 * nu) != 2.0 * nu) throw DomainError("log_factorial_half: index is not a half-integer");
    if (!half_) throw DomainError("log_factorial_half: no half-index interpolation supplied");
    return half_(nu);
}

namespace {

void check_t(const FactorialSequence& seq, double t, const char* who) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError(std::string(who) + ": t must be finite and nonnegative");
    if (!(t < seq.radius())) throw DomainError(std::string(who) + ": t at or beyond the radius of convergence");
}

// Σ exp(ln_term(n)) until terms stay below tol relative to the running sum
// after the terms have started to decrease.
template <class F>
double positive_series(F ln_term, const SeriesTolerance& tol, const char* who) {
    double sum = 0.0, prev = -std::numeric_limits<double>::infinity();
    for (int n = 0; n < tol.max_terms; ++n) {
        const double lt = ln_term(n);
        const double term = std::exp(lt);
        sum += term;
        if (lt < prev && term <= tol.abs_tol * sum) return sum;
        prev = lt;
    }
    throw NonConvergence(std::string(who) + ": series budget exhausted");
}

}  // namespace

double generalized_exp(const FactorialSequence& seq, double t, const SeriesTolerance& tol) {
    tol.validate();
    check_t(seq, t, "generalized_exp");
    if (t == 0.0) return 1.0;
    const double lt = std::log(t);
    return positive_series([&](int n) { return n * lt - seq.log_factorial(n); }, tol, "generalized_exp");
}

double s_k(const FactorialSequence& seq, int k, double t, const SeriesTolerance& tol) {
    tol.validate();
    if (k < 0) throw DomainError("s_k: k must be nonnegative");
    check_t(seq, t, "s_k");
    if (t == 0.0) return k == 0 ? 1.0 : 0.0;
    const double lt = std::log(t);
    const double h = 0.5 * k;
    return positive_series(
        [&](int n) {
            return seq.log_factorial_half(h + n) - seq.log_factorial(n) - seq.log_factorial(n + k) + (n + h) * lt;
        },
        tol, "s_k");
}

double half_factorial_margin(const FactorialSequence& seq, int n1, int n2) {
    if (n1 < 0 || n2 < 0) throw DomainError("half_factorial_margin: negative index");
    return 0.5 * (seq.log_factorial(n1) + seq.log_factorial(n2)) - seq.log_factorial_half(0.5 * (n1 + n2));
}

bool half_factorial_bound_check(const FactorialSequence& seq, int n1, int n2) {
    const double scale = 1.0 + 0.5 * (seq.log_factorial(n1) + seq.log_factorial(n2));
    return half_factorial_margin(seq, n1, n2) >= -1e-13 * scale;
}

}  // namespace anglekit
