#include "anglekit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "anglekit/errors.hpp"
#include "anglekit/kernels.hpp"

namespace anglekit {

namespace {

Matrix symmetrize(const Matrix& m) {
    Matrix r = m + m.adjoint();
    r *= 0.5;
    return r;
}

// V diag(d) V† without forming the diagonal matrix.
Matrix reconstruct(const Matrix& v, const std::vector<cplx>& d) {
    const std::size_t n = v.rows();
    Matrix vd(n, v.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < v.cols(); ++k) vd(i, k) = v(i, k) * d[k];
    return vd * v.adjoint();
}

}  // namespace

EigenSystem hermitian_eig(const TruncatedOperator& m) {
    const double scale = m.entries.max_abs();
    const double defect = hermiticity_defect(m.entries);
    if (defect > kHermitianTol * std::max(scale, 1e-300) && defect > 0.0)
        throw NotHermitian("hermitian_eig: input is not Hermitian (defect " + std::to_string(defect) + ")");
    if (!m.entries.all_finite()) throw DomainError("hermitian_eig: non-finite entries");

    auto raw = kernels::omp::jacobi_eig(symmetrize(m.entries));

    const std::size_t n = raw.values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return raw.values[a] < raw.values[b]; });

    EigenSystem es;
    es.basis = m.basis;
    es.eigenvalues.resize(n);
    es.eigenvectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        es.eigenvalues[k] = raw.values[order[k]];
        for (std::size_t i = 0; i < n; ++i) es.eigenvectors(i, k) = raw.vectors(i, order[k]);
    }
    return es;
}

TruncatedOperator EigenSystem::apply(const std::function<double(double)>& f) const {
    std::vector<cplx> d(eigenvalues.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = f(eigenvalues[k]);
    return {basis, symmetrize(reconstruct(eigenvectors, d))};
}

TruncatedOperator EigenSystem::projector(const std::function<bool(double)>& pred) const {
    return apply([&](double x) { return pred(x) ? 1.0 : 0.0; });
}

TruncatedOperator spectral_function(const TruncatedOperator& m, const std::function<double(double)>& f) {
    return hermitian_eig(m).apply(f);
}

TruncatedOperator sign_part(const TruncatedOperator& s, std::optional<double> zero_tol) {
    const double tol = zero_tol.value_or(1e-8 * s.entries.max_abs());
    return spectral_function(s, [tol](double x) { return std::abs(x) <= tol ? 0.0 : (x > 0 ? 1.0 : -1.0); });
}

TruncatedOperator anti_hermitian_exp(const TruncatedOperator& g) {
    const Matrix& G = g.entries;
    Matrix sum = G + G.adjoint();
    if (sum.max_abs() > 1e-12 * std::max(1.0, G.max_abs()))
        throw NotHermitian("anti_hermitian_exp: input is not anti-Hermitian");
    // H = -iG is Hermitian and exp(G) = exp(iH).
    TruncatedOperator h{g.basis, cplx{0.0, -1.0} * G};
    auto es = hermitian_eig(h);
    std::vector<cplx> d(es.eigenvalues.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = std::polar(1.0, es.eigenvalues[k]);
    return {g.basis, reconstruct(es.eigenvectors, d)};
}

TruncatedOperator commutator(const TruncatedOperator& a, const TruncatedOperator& b) {
    require_same_basis(a.basis, b.basis, "commutator");
    return {a.basis, a.entries * b.entries - b.entries * a.entries};
}

double op_norm_max(const TruncatedOperator& a) { return a.entries.max_abs(); }

TruncatedOperator window_restrict(const TruncatedOperator& a, int lo, int hi) {
    const auto& b = a.basis;
    lo = std::max(lo, b.first_label());
    hi = std::min(hi, b.last_label());
    if (hi < lo) throw DomainError("window_restrict: empty window");
    const auto r0 = static_cast<std::size_t>(lo - b.offset);
    const auto n = static_cast<std::size_t>(hi - lo + 1);
    BasisSpec nb = (b.mode == BasisMode::one_sided && lo == 0) ? BasisSpec::one_sided(static_cast<int>(n))
                                                               : BasisSpec::two_sided(static_cast<int>(n), lo);
    return {nb, a.entries.block(r0, r0, n, n)};
}

double unitarity_defect(const Matrix& u) {
    Matrix p = u.adjoint() * u;
    p -= Matrix::identity(u.cols());
    return p.max_abs();
}

}  // namespace anglekit
