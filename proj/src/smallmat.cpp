#include "ifm/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ifm/errors.hpp"

namespace ifm {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-13;

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(what) + ": shape mismatch");
    }
}

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) sum += std::norm(a(i, j));
        }
    }
    return std::sqrt(sum);
}

double frobenius_norm(const Matrix& a) {
    double sum = 0.0;
    for (const auto& z : a.entries()) sum += std::norm(z);
    return std::sqrt(sum);
}

// Make the first entry with modulus above the threshold real and positive.
void normalize_phase(Matrix& v, std::size_t col) {
    for (std::size_t i = 0; i < v.rows(); ++i) {
        const double mag = std::abs(v(i, col));
        if (mag > 1e-10) {
            const Complex phase = std::conj(v(i, col)) / mag;
            for (std::size_t k = 0; k < v.rows(); ++k) v(k, col) *= phase;
            v(i, col) = Complex(std::real(v(i, col)), 0.0);
            return;
        }
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionMismatch("Matrix: entry count does not match shape");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionMismatch("Matrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

Matrix Matrix::diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
}

Vector Matrix::column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(Complex scalar) {
    for (auto& z : data_) z *= scalar;
    return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.cols() != rhs.rows()) throw DimensionMismatch("operator*: inner dimensions differ");
    Matrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const Complex aik = lhs(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += aik * rhs(k, j);
        }
    }
    return out;
}

Matrix operator*(Complex scalar, Matrix m) { return m *= scalar; }
Matrix operator*(Matrix m, Complex scalar) { return m *= scalar; }

Vector operator*(const Matrix& m, std::span<const Complex> v) {
    if (m.cols() != v.size()) throw DimensionMismatch("matrix-vector: dimensions differ");
    Vector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

Matrix sigma_x() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
Matrix sigma_y() { return Matrix{{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
Matrix sigma_z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw DimensionMismatch("inner: dimensions differ");
    Complex acc{};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double squared_norm(std::span<const Complex> v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return acc;
}

Matrix outer(std::span<const Complex> a, std::span<const Complex> b) {
    Matrix out(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out(i, j) = a[i] * std::conj(b[j]);
    }
    return out;
}

Complex trace(const Matrix& m) {
    if (!m.is_square()) throw DimensionMismatch("trace: matrix not square");
    Complex acc{};
    for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, i);
    return acc;
}

double max_abs(const Matrix& m) {
    double best = 0.0;
    for (const auto& z : m.entries()) best = std::max(best, std::abs(z));
    return best;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double best = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        best = std::max(best, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return best;
}

bool is_hermitian(const Matrix& m, double tol) {
    return m.is_square() && max_abs_diff(m, m.adjoint()) <= tol;
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t p = b.rows();
    const std::size_t q = b.cols();
    Matrix out(a.rows() * p, a.cols() * q);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < p; ++k) {
                for (std::size_t l = 0; l < q; ++l) out(i * p + k, j * q + l) = aij * b(k, l);
            }
        }
    }
    return out;
}

Vector kron(std::span<const Complex> a, std::span<const Complex> b) {
    Vector out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
    }
    return out;
}

Matrix partial_trace(const Matrix& m, std::size_t dim_a, std::size_t dim_b, Subsystem keep) {
    if (!m.is_square() || m.rows() != dim_a * dim_b) {
        throw DimensionMismatch("partial_trace: operator dimension is not dim_a * dim_b");
    }
    if (keep == Subsystem::A) {
        Matrix out(dim_a, dim_a);
        for (std::size_t i = 0; i < dim_a; ++i) {
            for (std::size_t j = 0; j < dim_a; ++j) {
                Complex acc{};
                for (std::size_t k = 0; k < dim_b; ++k) acc += m(i * dim_b + k, j * dim_b + k);
                out(i, j) = acc;
            }
        }
        return out;
    }
    Matrix out(dim_b, dim_b);
    for (std::size_t k = 0; k < dim_b; ++k) {
        for (std::size_t l = 0; l < dim_b; ++l) {
            Complex acc{};
            for (std::size_t i = 0; i < dim_a; ++i) acc += m(i * dim_b + k, i * dim_b + l);
            out(k, l) = acc;
        }
    }
    return out;
}

HermitianEigenResult hermitian_eigen(const Matrix& m, double tol) {
    if (!m.is_square()) throw DimensionMismatch("hermitian_eigen: matrix not square");
    if (max_abs_diff(m, m.adjoint()) > tol) {
        throw NotHermitian("hermitian_eigen: max|M - M^dagger| exceeds tolerance");
    }
    const std::size_t n = m.rows();
    Matrix a = hermitian_part(m);
    Matrix v = Matrix::identity(n);

    // Off-diagonal mass is measured relative to the input scale so the stopping
    // rule does not depend on how the operator happens to be normalized.
    const double scale = std::max(frobenius_norm(a), 1.0);
    int sweep = 0;
    while (off_diagonal_norm(a) >= kOffDiagonalTol * scale) {
        if (++sweep > kMaxSweeps) throw NoConvergence("hermitian_eigen: sweep limit exceeded");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag < 1e-300) continue;
                // Phase e^{-i phi} on column q makes the (p, q) element real, then
                // a real Givens rotation annihilates it.
                const Complex phase = std::conj(a(p, q)) / mag;
                const double app = std::real(a(p, p));
                const double aqq = std::real(a(q, q));
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex g_pp = c;
                const Complex g_pq = s;
                const Complex g_qp = -s * phase;
                const Complex g_qq = c * phase;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * g_pp + akq * g_qp;
                    a(k, q) = akp * g_pq + akq * g_qq;
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * g_pp + vkq * g_qp;
                    v(k, q) = vkp * g_pq + vkq * g_qq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
                    a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = std::real(a(p, p));
                a(q, q) = std::real(a(q, q));
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::real(a(i, i)) > std::real(a(j, j));
    });

    HermitianEigenResult result{std::vector<double>(n), Matrix(n, n)};
    for (std::size_t col = 0; col < n; ++col) {
        result.eigenvalues[col] = std::real(a(order[col], order[col]));
        for (std::size_t k = 0; k < n; ++k) result.eigenvectors(k, col) = v(k, order[col]);
        normalize_phase(result.eigenvectors, col);
    }
    return result;
}

double trace_norm(const Matrix& m) {
    if (!m.is_square()) throw DimensionMismatch("trace_norm: matrix not square");
    const double scale = std::max(max_abs(m), 1.0);
    if (is_hermitian(m, 1e-12 * scale)) {
        double sum = 0.0;
        for (double lambda : hermitian_eigen(m, 1e-12 * scale).eigenvalues) sum += std::abs(lambda);
        return sum;
    }
    const Matrix gram = m.adjoint() * m;
    double sum = 0.0;
    for (double lambda : hermitian_eigen(gram, 1e-10 * std::max(max_abs(gram), 1.0)).eigenvalues) {
        sum += std::sqrt(std::max(lambda, 0.0));
    }
    return sum;
}

}  // namespace ifm
