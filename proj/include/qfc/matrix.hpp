// matrix.hpp — Dense complex matrices (row-major), the storage type behind
// unitaries, density matrices and biphoton amplitudes, plus the handful of
// dense-matrix operations the rest of the library is built on.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "qfc/errors.hpp"

namespace qfc {

using cx = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cx(0.0, 0.0)) {
        if (rows == 0 || cols == 0) throw DomainError("ComplexMatrix: zero dimension");
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cx> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (rows == 0 || cols == 0) throw DomainError("ComplexMatrix: zero dimension");
        if (a_.size() != rows * cols) throw DomainError("ComplexMatrix: entry count mismatch");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const cx& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    const std::vector<cx>& data() const { return a_; }
    std::vector<cx>& data() { return a_; }

    ComplexMatrix transpose() const {
        ComplexMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix t(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) t.a_[i] = std::conj(a_[i]);
        return t;
    }

    ComplexMatrix dagger() const { return transpose().conjugate(); }

    cx trace() const {
        if (!square()) throw ContractError("trace: matrix not square");
        cx t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cx& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const cx& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        for (const cx& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o, "operator+=");
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o, "operator-=");
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }

    ComplexMatrix& operator*=(cx s) {
        for (cx& v : a_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cx s) { return a *= s; }
    friend ComplexMatrix operator*(cx s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_) throw ContractError("matmul: inner dimension mismatch");
        ComplexMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cx aik = a(i, k);
                if (aik == cx(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

    // max |(A - A†)_{rc}|; 0 for exactly Hermitian storage
    double hermiticity_defect() const {
        if (!square()) throw ContractError("hermiticity_defect: matrix not square");
        double m = 0.0;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = r; c < cols_; ++c)
                m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return m;
    }

    // (A + A†)/2, exact Hermitian storage afterwards
    ComplexMatrix symmetrized() const {
        if (!square()) throw ContractError("symmetrized: matrix not square");
        ComplexMatrix h(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            h(r, r) = cx((*this)(r, r).real(), 0.0);
            for (std::size_t c = r + 1; c < cols_; ++c) {
                const cx v = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
                h(r, c) = v;
                h(c, r) = std::conj(v);
            }
        }
        return h;
    }

private:
    void require_same_shape(const ComplexMatrix& o, const char* who) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw ContractError(std::string(who) + ": shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<cx> a_;
};

// Nonnegative-real matrix (JSI grids, heatmap payloads).
struct RealMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    RealMatrix() = default;
    RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const double& operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    double sum() const {
        double s = 0.0;
        for (double v : a) s += v;
        return s;
    }
    double max_value() const {
        double m = 0.0;
        for (double v : a) m = std::max(m, v);
        return m;
    }
};

// Solve A X = B by LU with partial pivoting. A square; throws ContractError
// when A is singular to working precision.
inline ComplexMatrix solve_linear(ComplexMatrix a, ComplexMatrix b) {
    if (!a.square()) throw ContractError("solve_linear: A not square");
    if (a.rows() != b.rows()) throw ContractError("solve_linear: rhs row mismatch");
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    const double scale = std::max(a.max_abs(), 1e-300);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            const double v = std::abs(a(r, k));
            if (v > best) { best = v; piv = r; }
        }
        if (best <= 1e-14 * scale) throw ContractError("solve_linear: singular matrix");
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
            for (std::size_t c = 0; c < b.cols(); ++c) std::swap(b(k, c), b(piv, c));
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const cx f = a(r, k) / a(k, k);
            if (f == cx(0.0, 0.0)) continue;
            a(r, k) = f;
            for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
            for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) -= f * b(k, c);
        }
    }
    // back substitution
    for (std::size_t kk = n; kk-- > 0;) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            cx s = b(kk, c);
            for (std::size_t j = kk + 1; j < n; ++j) s -= a(kk, j) * b(j, c);
            b(kk, c) = s / a(kk, kk);
        }
    }
    return b;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const cx f = a(ar, ac);
            if (f == cx(0.0, 0.0)) continue;
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    k(ar * b.rows() + br, ac * b.cols() + bc) = f * b(br, bc);
        }
    return k;
}

inline std::vector<cx> kron(const std::vector<cx>& a, const std::vector<cx>& b) {
    std::vector<cx> k(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) k[i * b.size() + j] = a[i] * b[j];
    return k;
}

}  // namespace qfc
