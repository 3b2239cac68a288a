#pragma once

// Dense complex matrices and the basis metadata that turns them into
// finite-truncation operators.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace anglekit {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> d);
    static Matrix diagonal(std::span<const cplx> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<cplx> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const cplx> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

    cplx* data() noexcept { return data_.data(); }
    const cplx* data() const noexcept { return data_.data(); }

    Matrix adjoint() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cplx s);

    /// Largest entry modulus.
    double max_abs() const noexcept;
    double frobenius() const noexcept;
    bool all_finite() const noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, cplx s);
Matrix operator*(cplx s, Matrix a);
/// Matrix product through the OpenMP kernel.
Matrix operator*(const Matrix& a, const Matrix& b);

/// ‖A − A†‖ max-entry.
double hermiticity_defect(const Matrix& a);

/// How abstract basis labels map to matrix rows.
///
/// one_sided: labels 0..dim-1 (the oscillator basis e_0, e_1, ...).
/// two_sided: labels offset..offset+dim-1, a window of the Z-indexed basis.
/// cyclic:    labels as two_sided but taken mod dim (periodic shift).
enum class BasisMode { one_sided, two_sided, cyclic };

std::string to_string(BasisMode m);
BasisMode parse_basis_mode(const std::string& s);

struct BasisSpec {
    BasisMode mode = BasisMode::one_sided;
    int dim = 0;
    int offset = 0;

    static BasisSpec one_sided(int dim);
    /// Window centred on zero: offset = -dim/2.
    static BasisSpec two_sided(int dim);
    static BasisSpec two_sided(int dim, int offset);
    static BasisSpec cyclic(int dim, int offset = 0);

    int label(std::size_t row) const noexcept { return offset + static_cast<int>(row); }
    int first_label() const noexcept { return offset; }
    int last_label() const noexcept { return offset + dim - 1; }
    /// Row holding `label`; cyclic bases reduce mod dim, others return nullopt outside range.
    std::optional<std::size_t> row_of(int label) const;

    /// Throws DomainError when the invariants are violated.
    void validate() const;

    friend bool operator==(const BasisSpec&, const BasisSpec&) = default;
};

/// A finite-dimensional surrogate of an operator on the full Hilbert space.
struct TruncatedOperator {
    BasisSpec basis;
    Matrix entries;

    TruncatedOperator() = default;
    TruncatedOperator(BasisSpec b, Matrix m);

    std::size_t dim() const noexcept { return entries.rows(); }
    cplx operator()(std::size_t i, std::size_t j) const noexcept { return entries(i, j); }
    /// Entry addressed by basis labels.
    cplx at_labels(int row_label, int col_label) const;

    TruncatedOperator adjoint() const { return {basis, entries.adjoint()}; }

    static TruncatedOperator identity(const BasisSpec& b);
    static TruncatedOperator zero(const BasisSpec& b);
};

TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator operator*(cplx s, const TruncatedOperator& a);

/// Throws BasisMismatch unless the two bases coincide.
void require_same_basis(const BasisSpec& a, const BasisSpec& b, const char* where);

}  // namespace anglekit
