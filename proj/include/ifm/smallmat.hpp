#pragma once

// Dense complex matrices for the small (dimension <= 16) operators used
// throughout the library: arithmetic, Kronecker products, partial traces,
// a cyclic Jacobi Hermitian eigensolver and the trace norm.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ifm {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    // Row-major nested initializer: Matrix{{1, 0}, {0, 1}}.
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t rows, std::size_t cols);
    static Matrix diagonal(std::span<const double> values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> entries() const { return data_; }

    Matrix adjoint() const;
    Vector column(std::size_t j) const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(Complex scalar);

    friend bool operator==(const Matrix&, const Matrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(Complex scalar, Matrix m);
Matrix operator*(Matrix m, Complex scalar);
Vector operator*(const Matrix& m, std::span<const Complex> v);

// Pauli matrices.
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();

// <a|b>, conjugate-linear in the first argument.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double squared_norm(std::span<const Complex> v);
// |a><b|
Matrix outer(std::span<const Complex> a, std::span<const Complex> b);

Complex trace(const Matrix& m);
double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);
bool is_hermitian(const Matrix& m, double tol);
// (M + M^dagger) / 2
Matrix hermitian_part(const Matrix& m);

// kron(A, B)[i*p + k, j*q + l] = A[i, j] * B[k, l] for B of shape p x q.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(std::span<const Complex> a, std::span<const Complex> b);

enum class Subsystem { A, B };

// Partial trace of an operator on C^dim_a (x) C^dim_b, keeping one factor.
Matrix partial_trace(const Matrix& m, std::size_t dim_a, std::size_t dim_b, Subsystem keep);

struct HermitianEigenResult {
    std::vector<double> eigenvalues;  // descending
    Matrix eigenvectors;              // orthonormal columns
};

// Cyclic complex Jacobi. Throws NotHermitian when max|M - M^dagger| > tol and
// NoConvergence after 100 sweeps. Each eigenvector is phase-normalized so its
// first nonzero entry is real and positive.
HermitianEigenResult hermitian_eigen(const Matrix& m, double tol = 1e-10);

// Sum of singular values. Hermitian inputs use |eigenvalues| directly;
// other inputs go through the eigenvalues of M^dagger M.
double trace_norm(const Matrix& m);

}  // namespace ifm
