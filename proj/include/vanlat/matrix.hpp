#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "vanlat/int.hpp"

namespace vanlat {

template <class T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    Mat(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != rows_ * cols_) throw std::invalid_argument("Mat: entry count mismatch");
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const T& x : a_)
            if (x != 0) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }
    // row[i] += f * row[j]
    void add_row(std::size_t i, std::size_t j, const T& f) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += f * (*this)(j, c);
    }
    void add_col(std::size_t i, std::size_t j, const T& f) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += f * (*this)(r, j);
    }
    void scale_row(std::size_t i, const T& f) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) *= f;
    }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<T> row(std::size_t i) const {
        std::vector<T> v(cols_);
        for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
        return v;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<T> a_;
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

template <class T>
Mat<T> operator+(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("Mat+: shape");
    Mat<T> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

template <class T>
Mat<T> operator-(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("Mat-: shape");
    Mat<T> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

template <class T>
Mat<T> operator*(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("Mat*: shape");
    Mat<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& f = a(i, k);
            if (f == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += f * b(k, j);
        }
    return c;
}

template <class T>
Mat<T> operator*(const T& f, const Mat<T>& a) {
    Mat<T> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f * a(i, j);
    return c;
}

template <class T>
std::vector<T> operator*(const Mat<T>& a, const std::vector<T>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("Mat*vec: shape");
    std::vector<T> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

// a b^T
template <class T>
Mat<T> outer(const std::vector<T>& a, const std::vector<T>& b) {
    Mat<T> c(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c(i, j) = a[i] * b[j];
    return c;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size");
    T s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

template <class T>
bool is_zero(const std::vector<T>& v) {
    for (const T& x : v)
        if (x != 0) return false;
    return true;
}

template <class T>
std::vector<T> operator+(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec+: size");
    std::vector<T> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

template <class T>
std::vector<T> operator-(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec-: size");
    std::vector<T> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

template <class T>
std::vector<T> operator*(const T& f, const std::vector<T>& a) {
    std::vector<T> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = f * a[i];
    return c;
}

inline QMat to_rational(const IMat& a) {
    QMat q(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) q(i, j) = Rat(a(i, j));
    return q;
}

inline QVec to_rational(const IVec& v) {
    QVec q(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
    return q;
}

inline std::optional<IMat> to_integral(const QMat& a) {
    IMat z(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!is_integer(a(i, j))) return std::nullopt;
            z(i, j) = num(a(i, j));
        }
    return z;
}

inline std::optional<IVec> to_integral(const QVec& v) {
    IVec z(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!is_integer(v[i])) return std::nullopt;
        z[i] = num(v[i]);
    }
    return z;
}

// Gauss-Jordan inverse, exact. Empty optional iff singular.
inline std::optional<QMat> inverse(const QMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
    std::size_t n = a.rows();
    QMat m = a;
    QMat inv = QMat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col) == 0) ++piv;
        if (piv == n) return std::nullopt;
        m.swap_rows(col, piv);
        inv.swap_rows(col, piv);
        Rat f = 1 / m(col, col);
        m.scale_row(col, f);
        inv.scale_row(col, f);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m(r, col) == 0) continue;
            Rat g = -m(r, col);
            m.add_row(r, col, g);
            inv.add_row(r, col, g);
        }
    }
    return inv;
}

// Fraction-free (Bareiss) determinant over Z.
inline Int determinant(const IMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
    std::size_t n = a.rows();
    if (n == 0) return 1;
    IMat m = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

// exponent >= 0
template <class T>
Mat<T> power(Mat<T> base, Int exponent) {
    if (base.rows() != base.cols()) throw std::invalid_argument("power: not square");
    if (exponent < 0) throw std::invalid_argument("power: negative exponent");
    Mat<T> acc = Mat<T>::identity(base.rows());
    while (exponent > 0) {
        if (mpz_odd_p(exponent.get_mpz_t())) acc = acc * base;
        base = base * base;
        exponent /= 2;
    }
    return acc;
}

}  // namespace vanlat
