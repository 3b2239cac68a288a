#include "anglekit/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <map>
#include <mutex>

#include "anglekit/errors.hpp"
#include "anglekit/linalg.hpp"
#include "anglekit/specfun.hpp"

namespace anglekit {

GaussRule golub_welsch(const std::vector<double>& a, const std::vector<double>& b, double mu0) {
    const std::size_t n = a.size();
    if (n == 0 || b.size() < n) throw DomainError("golub_welsch: bad recurrence length");
    Matrix t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        t(i, i) = a[i];
        if (i + 1 < n) {
            if (!(b[i + 1] > 0.0)) throw DomainError("golub_welsch: nonpositive recurrence coefficient");
            const double s = std::sqrt(b[i + 1]);
            t(i, i + 1) = s;
            t(i + 1, i) = s;
        }
    }
    auto es = hermitian_eig(TruncatedOperator{BasisSpec::one_sided(static_cast<int>(n)), t});
    GaussRule r;
    r.nodes = es.eigenvalues;
    r.weights.resize(n);
    // Christoffel numbers 1/Σ p_j(x)^2 from the orthonormal recurrence. Unlike
    // the first eigenvector components these keep full relative accuracy in
    // the exponentially small tail weights. Run with a log scale.
    for (std::size_t k = 0; k < n; ++k) {
        const double x = r.nodes[k];
        double pm1 = 0.0, p = 1.0 / std::sqrt(mu0), sum = p * p, lscale = 0.0;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const double next = ((x - a[j]) * p - (j > 0 ? std::sqrt(b[j]) : 0.0) * pm1) / std::sqrt(b[j + 1]);
            pm1 = p;
            p = next;
            sum += p * p;
            if (sum > 1e200) {
                const double f = std::sqrt(sum);
                p /= f;
                pm1 /= f;
                sum = 1.0;
                lscale += 2.0 * std::log(f);
            }
        }
        r.weights[k] = std::exp(-lscale - std::log(sum));
    }
    return r;
}

GaussRule gauss_laguerre(int n, double alpha) {
    if (n < 1) throw DomainError("gauss_laguerre: need at least one node");
    if (!(alpha > -1.0)) throw DomainError("gauss_laguerre: alpha must exceed -1");
    std::vector<double> a(n), b(n, 0.0);
    for (int k = 0; k < n; ++k) {
        a[k] = 2.0 * k + 1.0 + alpha;
        if (k > 0) b[k] = k * (k + alpha);
    }
    return golub_welsch(a, b, std::exp(ln_gamma(alpha + 1.0)));
}

GaussRule composite_legendre(double lo, double hi, int panels) {
    using Rule = boost::math::quadrature::gauss<double, 40>;
    if (!(hi > lo) || panels < 1) throw DomainError("composite_legendre: bad interval");
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    GaussRule r;
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * h, half = 0.5 * h;
        // Boost stores the nonnegative half of a symmetric rule.
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0.0) {
                r.nodes.push_back(mid);
                r.weights.push_back(half * w[i]);
                continue;
            }
            r.nodes.push_back(mid - half * x[i]);
            r.weights.push_back(half * w[i]);
            r.nodes.push_back(mid + half * x[i]);
            r.weights.push_back(half * w[i]);
        }
    }
    return r;
}

namespace {

// Recurrence coefficients of the measure 2r e^{−r²} dr by Lanczos with full
// reorthogonalization on a fine discretization. The discretized measure has
// far more support points than the polynomial degrees involved.
GaussRule build_sqrt_action(int n) {
    const auto disc = composite_legendre(0.0, 26.0, 48);
    const std::size_t m = disc.size();
    std::vector<double> x(m), sw(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double r = disc.nodes[i];
        x[i] = r;
        sw[i] = std::sqrt(disc.weights[i] * 2.0 * r * std::exp(-r * r));
    }
    double mu0 = 0.0;
    for (double s : sw) mu0 += s * s;

    std::vector<std::vector<double>> q;
    q.reserve(n + 1);
    std::vector<double> v = sw;
    for (double& e : v) e /= std::sqrt(mu0);
    q.push_back(v);
    std::vector<double> a(n), b(n, 0.0);
    for (int k = 0; k < n; ++k) {
        const auto& qk = q[k];
        std::vector<double> w(m);
        for (std::size_t i = 0; i < m; ++i) w[i] = x[i] * qk[i];
        double ak = 0.0;
        for (std::size_t i = 0; i < m; ++i) ak += w[i] * qk[i];
        a[k] = ak;
        if (k + 1 == n) break;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& qj : q) {
                double d = 0.0;
                for (std::size_t i = 0; i < m; ++i) d += w[i] * qj[i];
                for (std::size_t i = 0; i < m; ++i) w[i] -= d * qj[i];
            }
        double nrm = 0.0;
        for (double e : w) nrm += e * e;
        nrm = std::sqrt(nrm);
        b[k + 1] = nrm * nrm;
        for (double& e : w) e /= nrm;
        q.push_back(std::move(w));
    }
    auto rule = golub_welsch(a, b, mu0);
    for (double& r : rule.nodes) r = r * r;
    return rule;
}

}  // namespace

GaussRule gauss_sqrt_action(int n) {
    if (n < 1) throw DomainError("gauss_sqrt_action: need at least one node");
    if (n > 200) throw DomainError("gauss_sqrt_action: at most 200 nodes supported");
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    auto rule = build_sqrt_action(n);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(n, std::move(rule)).first->second;
}

void QuadratureScheme::validate() const {
    if (n_J < 8 || n_gamma < 8) throw DomainError("QuadratureScheme: n_J and n_gamma must be >= 8");
}

GaussRule QuadratureScheme::radial() const {
    validate();
    return kind == RadialKind::sqrt_action ? gauss_sqrt_action(n_J) : gauss_laguerre(n_J);
}

QuadratureScheme QuadratureScheme::refined(double factor) const {
    QuadratureScheme q = *this;
    q.n_J = std::max(8, static_cast<int>(std::lround(n_J * factor)));
    q.n_gamma = std::max(8, static_cast<int>(std::lround(n_gamma * factor)));
    if (kind == RadialKind::sqrt_action) q.n_J = std::min(q.n_J, 200);
    return q;
}

}  // namespace anglekit
