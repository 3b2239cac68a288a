#include "anglekit/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "anglekit/errors.hpp"
#include "anglekit/kernels.hpp"

namespace anglekit {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::diagonal(std::span<const cplx> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DomainError("Matrix::block: out of range");
    Matrix r(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw BasisMismatch("Matrix +=: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw BasisMismatch("Matrix -=: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

double Matrix::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double Matrix::frobenius() const noexcept {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

bool Matrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, cplx s) { return a *= s; }
Matrix operator*(cplx s, Matrix a) { return a *= s; }
Matrix operator*(const Matrix& a, const Matrix& b) { return kernels::omp::matmul(a, b); }

double hermiticity_defect(const Matrix& a) {
    if (!a.square()) throw DomainError("hermiticity_defect: matrix not square");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

std::string to_string(BasisMode m) {
    switch (m) {
        case BasisMode::one_sided: return "one_sided";
        case BasisMode::two_sided: return "two_sided";
        case BasisMode::cyclic: return "cyclic";
    }
    return "?";
}

BasisMode parse_basis_mode(const std::string& s) {
    if (s == "one_sided" || s == "one-sided") return BasisMode::one_sided;
    if (s == "two_sided" || s == "two-sided") return BasisMode::two_sided;
    if (s == "cyclic") return BasisMode::cyclic;
    throw DomainError("unknown basis mode '" + s + "'");
}

BasisSpec BasisSpec::one_sided(int dim) {
    BasisSpec b{BasisMode::one_sided, dim, 0};
    b.validate();
    return b;
}

BasisSpec BasisSpec::two_sided(int dim) { return two_sided(dim, -dim / 2); }

BasisSpec BasisSpec::two_sided(int dim, int offset) {
    BasisSpec b{BasisMode::two_sided, dim, offset};
    b.validate();
    return b;
}

BasisSpec BasisSpec::cyclic(int dim, int offset) {
    BasisSpec b{BasisMode::cyclic, dim, offset};
    b.validate();
    return b;
}

std::optional<std::size_t> BasisSpec::row_of(int lab) const {
    int r = lab - offset;
    if (mode == BasisMode::cyclic) {
        r %= dim;
        if (r < 0) r += dim;
        return static_cast<std::size_t>(r);
    }
    if (r < 0 || r >= dim) return std::nullopt;
    return static_cast<std::size_t>(r);
}

void BasisSpec::validate() const {
    if (dim <= 0) throw DomainError("BasisSpec: dim must be positive");
    if (mode == BasisMode::one_sided && offset != 0) throw DomainError("BasisSpec: one_sided basis requires offset 0");
}

TruncatedOperator::TruncatedOperator(BasisSpec b, Matrix m) : basis(b), entries(std::move(m)) {
    basis.validate();
    if (!entries.square() || entries.rows() != static_cast<std::size_t>(basis.dim))
        throw BasisMismatch("TruncatedOperator: matrix shape does not match basis dim");
}

cplx TruncatedOperator::at_labels(int row_label, int col_label) const {
    auto r = basis.row_of(row_label);
    auto c = basis.row_of(col_label);
    if (!r || !c) throw DomainError("TruncatedOperator::at_labels: label outside basis");
    return entries(*r, *c);
}

TruncatedOperator TruncatedOperator::identity(const BasisSpec& b) {
    return {b, Matrix::identity(static_cast<std::size_t>(b.dim))};
}

TruncatedOperator TruncatedOperator::zero(const BasisSpec& b) {
    auto n = static_cast<std::size_t>(b.dim);
    return {b, Matrix(n, n)};
}

void require_same_basis(const BasisSpec& a, const BasisSpec& b, const char* where) {
    if (!(a == b))
        throw BasisMismatch(std::string(where) + ": basis mismatch (" + to_string(a.mode) + "/" +
                            std::to_string(a.dim) + " vs " + to_string(b.mode) + "/" + std::to_string(b.dim) + ")");
}

TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b) {
    require_same_basis(a.basis, b.basis, "operator+");
    return {a.basis, a.entries + b.entries};
}

TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b) {
    require_same_basis(a.basis, b.basis, "operator-");
    return {a.basis, a.entries - b.entries};
}

TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b) {
    require_same_basis(a.basis, b.basis, "operator*");
    return {a.basis, a.entries * b.entries};
}

TruncatedOperator operator*(cplx s, const TruncatedOperator& a) { return {a.basis, s * a.entries}; }

}  // namespace anglekit
