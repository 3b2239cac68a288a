#include "anglekit/circlecs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "anglekit/errors.hpp"
#include "anglekit/halfcircle.hpp"
#include "anglekit/kernels.hpp"
#include "anglekit/linalg.hpp"
#include "anglekit/quadrature.hpp"
#include "anglekit/specfun.hpp"

namespace anglekit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Adaptive Gauss-Kronrod over [a, b] split into panels no wider than `width`.
double integrate(const std::function<double(double)>& f, double a, double b, double width) {
    if (!(b > a)) return 0.0;
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / width)));
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * h, hi = (k + 1 == panels) ? b : a + (k + 1) * h;
        s += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 10, 1e-15);
    }
    return s;
}

double panel_width(const DistributionSpec& d) { return std::min(d.sigma / 2.0, d.support / 8.0); }

double pdf_at(const DistributionSpec& d, double u) { return std::abs(u) > d.support ? 0.0 : d.pdf(u); }

void require_two_sided(const BasisSpec& b, const char* who) {
    b.validate();
    if (b.mode != BasisMode::two_sided) throw DomainError(std::string(who) + ": two-sided basis required");
}

// Labels n with p(J − n) possibly nonzero.
std::pair<long, long> support_labels(const DistributionSpec& d, double J) {
    return {static_cast<long>(std::ceil(J - d.support)), static_cast<long>(std::floor(J + d.support))};
}

}  // namespace

// ------------------------------------------------------------ distributions

DistributionSpec DistributionSpec::gaussian(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("gaussian: sigma must be positive");
    DistributionSpec d;
    d.kind = Kind::gaussian;
    d.sigma = sigma;
    const double norm = 1.0 / std::sqrt(2.0 * kPi * sigma * sigma);
    const double inv = 1.0 / (2.0 * sigma * sigma);
    d.pdf = [norm, inv](double J) { return norm * std::exp(-J * J * inv); };
    d.ft = [sigma](double k) { return std::exp(-0.5 * sigma * sigma * k * k); };
    d.support = 12.0 * sigma;
    return d;
}

DistributionSpec DistributionSpec::custom(std::function<double(double)> pdf, double sigma, double support) {
    if (!pdf) throw DomainError("custom distribution: pdf missing");
    if (!(sigma > 0.0) || !(support > 0.0)) throw DomainError("custom distribution: sigma and support must be positive");
    DistributionSpec d;
    d.kind = Kind::custom;
    d.sigma = sigma;
    d.pdf = std::move(pdf);
    d.support = support;
    return d;
}

DistributionSpec DistributionSpec::from_table(std::vector<double> J, std::vector<double> p, double sigma) {
    if (J.size() != p.size() || J.size() < 2) throw DomainError("from_table: need at least two (J, p) rows");
    for (std::size_t i = 1; i < J.size(); ++i)
        if (!(J[i] > J[i - 1])) throw DomainError("from_table: J column must be strictly increasing");
    const double support = std::max(std::abs(J.front()), std::abs(J.back()));
    auto pdf = [J = std::move(J), p = std::move(p)](double x) {
        if (x < J.front() || x > J.back()) return 0.0;
        const auto it = std::upper_bound(J.begin(), J.end(), x);
        if (it == J.end()) return p.back();
        const auto i = static_cast<std::size_t>(it - J.begin());
        const double s = (x - J[i - 1]) / (J[i] - J[i - 1]);
        return (1.0 - s) * p[i - 1] + s * p[i];
    };
    return custom(std::move(pdf), sigma, support);
}

double DistributionSpec::mass() const {
    return integrate([this](double u) { return pdf_at(*this, u); }, -support, support, panel_width(*this));
}

void DistributionSpec::validate() const {
    if (!pdf) throw DomainError("distribution: pdf missing");
    if (!(sigma > 0.0) || !(support > 0.0)) throw DomainError("distribution: sigma and support must be positive");
    constexpr int kGrid = 400;
    for (int k = 0; k <= kGrid; ++k) {
        const double x = support * k / kGrid;
        const double a = pdf(x), b = pdf(-x);
        if (!(a >= 0.0) || !(b >= 0.0)) throw DomainError("distribution: pdf negative or NaN");
        if (std::abs(a - b) > 1e-10) throw DomainError("distribution: pdf is not even");
    }
    if (std::abs(mass() - 1.0) > 1e-8) throw DomainError("distribution: pdf does not integrate to 1");
}

void CylinderPoint::validate() const {
    if (!std::isfinite(J)) throw DomainError("cylinder point: J not finite");
    if (!(phi >= 0.0 && phi < kTwoPi)) throw DomainError("cylinder point: phi outside [0, 2pi)");
}

// ------------------------------------------------------------ overlaps

double overlap(const DistributionSpec& dist, int m) {
    if (m < 0) throw DomainError("overlap: m must be nonnegative");
    if (m == 0) return 1.0;
    const double lo = m - dist.support, hi = dist.support;
    const double v = integrate([&](double u) { return std::sqrt(pdf_at(dist, u) * pdf_at(dist, u - m)); }, lo, hi,
                               panel_width(dist));
    if (!std::isfinite(v)) throw NonConvergence("overlap: quadrature failed");
    return std::clamp(v, 0.0, 1.0);
}

double overlap_gaussian_closed(double sigma, int m) {
    if (!(sigma > 0.0)) throw DomainError("overlap_gaussian_closed: sigma must be positive");
    return std::exp(-static_cast<double>(m) * m / (8.0 * sigma * sigma));
}

double OverlapMatrix::operator()(int n, int np) const {
    const int m = std::abs(n - np);
    return m > half_bandwidth ? 0.0 : values[static_cast<std::size_t>(m)];
}

OverlapMatrix overlap_matrix(const DistributionSpec& dist, int half_bandwidth) {
    if (half_bandwidth < 0) throw DomainError("overlap_matrix: negative bandwidth");
    OverlapMatrix o;
    o.half_bandwidth = half_bandwidth;
    o.values.resize(static_cast<std::size_t>(half_bandwidth) + 1);
#pragma omp parallel for schedule(dynamic)
    for (int m = 0; m <= half_bandwidth; ++m) o.values[static_cast<std::size_t>(m)] = overlap(dist, m);
    return o;
}

double normalizer(const DistributionSpec& dist, double J) {
    if (dist.kind == DistributionSpec::Kind::gaussian) return theta3_normalizer(J, dist.sigma, ThetaForm::direct);
    const auto [lo, hi] = support_labels(dist, J);
    double s = 0.0;
    for (long n = lo; n <= hi; ++n) s += pdf_at(dist, J - static_cast<double>(n));
    return s;
}

std::vector<cplx> cs_vector(const DistributionSpec& dist, const CylinderPoint& p, const BasisSpec& basis) {
    require_two_sided(basis, "cs_vector");
    const double nrm = normalizer(dist, p.J);
    if (!(nrm > 0.0)) throw DomainError("cs_vector: normalizer vanishes at this J");
    std::vector<cplx> v(static_cast<std::size_t>(basis.dim));
    for (std::size_t r = 0; r < v.size(); ++r) {
        const int n = basis.label(r);
        v[r] = std::sqrt(pdf_at(dist, p.J - n) / nrm) * std::polar(1.0, -n * p.phi);
    }
    return v;
}

std::map<int, cplx> sawtooth_coefficients(int Q) {
    if (Q < 0) throw DomainError("sawtooth_coefficients: negative Q");
    std::map<int, cplx> c{{0, kPi}};
    for (int q = 1; q <= Q; ++q) {
        c[q] = cplx{0.0, 1.0 / q};
        c[-q] = cplx{0.0, -1.0 / q};
    }
    return c;
}

// ------------------------------------------------------------ quantization

TruncatedOperator quantize_cyl_J(const std::function<double(double)>& fJ, const DistributionSpec& dist,
                                 const BasisSpec& basis) {
    require_two_sided(basis, "quantize_cyl");
    const auto n = static_cast<std::size_t>(basis.dim);
    Matrix a(n, n);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t r = 0; r < n; ++r) {
        const double label = basis.label(r);
        a(r, r) = integrate([&](double u) { return pdf_at(dist, u) * fJ(u + label); }, -dist.support, dist.support,
                            panel_width(dist));
    }
    return {basis, std::move(a)};
}

TruncatedOperator quantize_cyl_phi(const std::map<int, cplx>& c, const DistributionSpec& dist, const BasisSpec& basis) {
    require_two_sided(basis, "quantize_cyl");
    const auto n = static_cast<std::size_t>(basis.dim);
    int band = 0;
    for (const auto& [q, v] : c) band = std::max(band, std::abs(q));
    band = std::min(band, basis.dim - 1);
    const auto ov = overlap_matrix(dist, band);
    Matrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
            const int k = static_cast<int>(r) - static_cast<int>(s);
            const auto it = c.find(k);
            if (it != c.end()) a(r, s) = ov(k, 0) * it->second;
        }
    return {basis, std::move(a)};
}

CylQuadrature CylQuadrature::refined(double factor) const {
    CylQuadrature q = *this;
    q.panels = std::max(1, static_cast<int>(std::lround(panels * factor)));
    q.n_phi = std::max(8, static_cast<int>(std::lround(n_phi * factor)));
    return q;
}

namespace {

std::vector<kernels::LowRankNode> cyl_nodes(const std::function<cplx(double, double)>& f,
                                            const DistributionSpec& dist, const BasisSpec& basis,
                                            const CylQuadrature& quad) {
    require_two_sided(basis, "quantize_cyl");
    if (!(quad.J_hi > quad.J_lo) || quad.panels < 1 || quad.n_phi < 8)
        throw DomainError("quantize_cyl: invalid quadrature");
    const int D = basis.dim;
    const auto rule = composite_legendre(quad.J_lo, quad.J_hi, quad.panels);
    std::vector<kernels::LowRankNode> nodes;
    nodes.reserve(rule.size());
    std::vector<cplx> samples(static_cast<std::size_t>(quad.n_phi));
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double J = rule.nodes[i];
        kernels::LowRankNode nd;
        nd.K = 1;
        nd.lambda = {rule.weights[i]};
        nd.X.resize(static_cast<std::size_t>(D));
        bool any = false;
        for (int r = 0; r < D; ++r) {
            nd.X[r] = std::sqrt(pdf_at(dist, J - basis.label(r)));
            any = any || nd.X[r] != 0.0;
        }
        if (!any) continue;
        // g[k + D − 1] = ∫ dφ/2π f(J, φ) e^{−ikφ}, k = n − n'.
        for (int j = 0; j < quad.n_phi; ++j) samples[j] = f(J, kTwoPi * j / quad.n_phi);
        nd.g.assign(static_cast<std::size_t>(2 * D - 1), cplx{});
        for (int k = -(D - 1); k < D; ++k) {
            cplx s{};
            for (int j = 0; j < quad.n_phi; ++j) s += samples[j] * std::polar(1.0, -kTwoPi * j * k / quad.n_phi);
            nd.g[k + D - 1] = s / static_cast<double>(quad.n_phi);
        }
        nodes.push_back(std::move(nd));
    }
    return nodes;
}

}  // namespace

TruncatedOperator quantize_cyl_general(const std::function<cplx(double, double)>& f, const DistributionSpec& dist,
                                       const BasisSpec& basis, const CylQuadrature& quad) {
    const auto nodes = cyl_nodes(f, dist, basis, quad);
    return {basis, kernels::omp::accumulate_lowrank(static_cast<std::size_t>(basis.dim), nodes)};
}

TruncatedOperator quantize_cyl_general_serial(const std::function<cplx(double, double)>& f,
                                              const DistributionSpec& dist, const BasisSpec& basis,
                                              const CylQuadrature& quad) {
    const auto nodes = cyl_nodes(f, dist, basis, quad);
    return {basis, kernels::serial::accumulate_lowrank(static_cast<std::size_t>(basis.dim), nodes)};
}

TruncatedOperator quantize_cyl(const std::optional<std::function<double(double)>>& fJ,
                               const std::optional<std::map<int, cplx>>& fourier, const DistributionSpec& dist,
                               const BasisSpec& basis, const CylQuadrature& quad) {
    if (fJ && !fourier) return quantize_cyl_J(*fJ, dist, basis);
    if (fourier && !fJ) return quantize_cyl_phi(*fourier, dist, basis);
    if (!fJ && !fourier) throw DomainError("quantize_cyl: no function given");
    const auto& g = *fJ;
    const auto& c = *fourier;
    auto f = [&](double J, double phi) {
        cplx s{};
        for (const auto& [q, v] : c) s += v * std::polar(1.0, q * phi);
        return g(J) * s;
    };
    return quantize_cyl_general(f, dist, basis, quad);
}

// ------------------------------------------------------------ checks on operators

HarmonicDefect fourier_harmonic_defect(const DistributionSpec& dist, const BasisSpec& basis, int margin) {
    const auto A = quantize_cyl_phi({{1, cplx{1.0}}}, dist, basis);
    const double p10 = overlap(dist, 1);
    const auto w = interior_window(basis, margin);
    const auto prod = A * A.adjoint();
    const auto diff = window_restrict(prod - cplx{p10 * p10} * TruncatedOperator::identity(basis), w.lo, w.hi);
    return {op_norm_max(diff), p10 * p10};
}

NumberAngleCommutator commutator_number_angle(const DistributionSpec& dist, const BasisSpec& basis, int margin) {
    const auto AJ = quantize_cyl_J([](double J) { return J; }, dist, basis);
    const auto Aa = quantize_cyl_phi(sawtooth_coefficients(basis.dim - 1), dist, basis);
    NumberAngleCommutator out{commutator(AJ, Aa), TruncatedOperator::zero(basis), 0.0};
    const auto ov = overlap_matrix(dist, basis.dim - 1);
    const auto n = static_cast<std::size_t>(basis.dim);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
            if (r != s) out.direct.entries(r, s) = cplx{0.0, ov(static_cast<int>(r), static_cast<int>(s))};
    const auto w = interior_window(basis, margin);
    out.interior_defect = op_norm_max(window_restrict(out.matrix_route - out.direct, w.lo, w.hi));
    return out;
}

cplx lower_symbol_cyl(const TruncatedOperator& A, const DistributionSpec& dist, const CylinderPoint& p) {
    const auto v = cs_vector(dist, p, A.basis);
    const std::size_t n = v.size();
    cplx s{};
    for (std::size_t r = 0; r < n; ++r) {
        if (v[r] == cplx{}) continue;
        cplx row{};
        for (std::size_t c = 0; c < n; ++c) row += A(r, c) * v[c];
        s += std::conj(v[r]) * row;
    }
    return s;
}

double d_m_sigma(const DistributionSpec& dist, int m, double J) {
    m = std::abs(m);
    const double nrm = normalizer(dist, J);
    if (!(nrm > 0.0)) throw DomainError("d_m_sigma: normalizer vanishes at this J");
    const auto [lo, hi] = support_labels(dist, J);
    double s = 0.0;
    for (long r = lo; r <= hi; ++r) {
        const double x = J - static_cast<double>(r);
        s += std::sqrt(pdf_at(dist, x) * pdf_at(dist, x - m));
    }
    return s / nrm;
}

cplx lower_symbol_fourier(const std::map<int, cplx>& c, const DistributionSpec& dist, const CylinderPoint& p) {
    cplx s{};
    int band = 0;
    for (const auto& [q, v] : c) band = std::max(band, std::abs(q));
    const auto ov = overlap_matrix(dist, band);
    for (const auto& [q, v] : c) {
        if (q == 0) {
            s += v;
            continue;
        }
        s += d_m_sigma(dist, q, p.J) * ov(q, 0) * v * std::polar(1.0, q * p.phi);
    }
    return s;
}

cplx overlap_kernel(double sigma, const CylinderPoint& a, const CylinderPoint& b, OverlapForm form) {
    if (!(sigma > 0.0)) throw DomainError("overlap_kernel: sigma must be positive");
    const double delta = a.phi - b.phi;
    const double jbar = 0.5 * (a.J + b.J);
    if (form == OverlapForm::direct) {
        const double nrm = std::sqrt(theta3_normalizer(a.J, sigma, ThetaForm::direct) *
                                     theta3_normalizer(b.J, sigma, ThetaForm::direct));
        const double pref = 1.0 / std::sqrt(2.0 * kPi * sigma * sigma);
        const double inv = 1.0 / (4.0 * sigma * sigma);
        const long c = std::lround(jbar);
        const long K = static_cast<long>(std::ceil(10.0 * sigma)) + std::lround(std::abs(a.J - b.J)) + 2;
        cplx s{};
        for (long n = c - K; n <= c + K; ++n) {
            const double x = static_cast<double>(n);
            const double e = -((a.J - x) * (a.J - x) + (b.J - x) * (b.J - x)) * inv;
            s += std::exp(e) * std::polar(1.0, x * delta);
        }
        return pref * s / nrm;
    }
    const double nrm = std::sqrt(theta3_normalizer(a.J, sigma, ThetaForm::poisson) *
                                 theta3_normalizer(b.J, sigma, ThetaForm::poisson));
    const double dj = a.J - b.J;
    const long c = std::lround(-delta / kTwoPi);
    const long K = static_cast<long>(std::ceil(10.0 / (kTwoPi * sigma))) + 2;
    cplx s{};
    for (long k = c - K; k <= c + K; ++k) {
        const double xi = delta + kTwoPi * static_cast<double>(k);
        s += std::exp(-0.5 * sigma * sigma * xi * xi) * std::polar(1.0, xi * jbar);
    }
    return std::exp(-dj * dj / (8.0 * sigma * sigma)) * s / nrm;
}

std::vector<LimitRow> limit_study(const std::vector<double>& sigmas, LimitCase which, double threshold) {
    struct Case {
        CylinderPoint a, b;
        cplx predicted;
        bool asserted;
    };
    std::vector<Case> cases;
    if (which == LimitCase::small) {
        cases = {
            {{2.0, 0.0}, {3.0, 0.0}, 0.0, true},
            {{2.0, 1.3}, {3.0, 0.0}, 0.0, true},
            {{3.0, 1.0}, {3.0, 0.3}, std::polar(1.0, 3.0 * 0.7), true},
            {{-4.0, 2.5}, {-4.0, 0.5}, std::polar(1.0, -4.0 * 2.0), true},
            {{2.3, 0.0}, {3.0, 0.0}, 0.0, true},
            // Non-integer J whose nearest integer is shared with J': both
            // states collapse onto the same basis vector, so the overlap
            // does not vanish.
            {{2.5, 0.0}, {3.0, 0.0}, 0.0, false},
            {{2.3, 0.0}, {2.0, 0.0}, 0.0, false},
        };
    } else {
        cases = {
            {{2.0, kPi}, {3.0, 0.0}, 0.0, true},
            {{0.0, 1.0}, {10.0, 0.0}, 0.0, true},
            {{1.5, 0.2}, {1.5, 0.0}, 0.0, true},
            {{2.0, 0.4}, {7.0, 0.4}, 1.0, true},
            {{-3.5, 5.0}, {0.5, 5.0}, 1.0, true},
        };
    }
    std::vector<LimitRow> rows;
    for (double s : sigmas)
        for (const auto& c : cases) {
            LimitRow r;
            r.sigma = s;
            r.a = c.a;
            r.b = c.b;
            r.overlap = overlap_kernel(s, c.a, c.b, OverlapForm::direct);
            r.predicted = c.predicted;
            r.asserted = c.asserted;
            r.pass = std::abs(r.overlap - r.predicted) <= threshold;
            rows.push_back(r);
        }
    return rows;
}

}  // namespace anglekit
