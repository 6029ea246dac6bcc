#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cubalg/exactnum/rational.hpp"

namespace cubalg {

/// Small dense square matrix; T is Rational or a floating type.
template <class T>
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), a_(n * n, T(0)) {}
    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix diagonal(const std::vector<T>& d) {
        Matrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t size() const { return n_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    friend Matrix operator+(Matrix l, const Matrix& r) { return l += r; }
    friend Matrix operator-(Matrix l, const Matrix& r) { return l -= r; }
    friend Matrix operator*(const Matrix& l, const Matrix& r) {
        Matrix out(l.n_);
        for (std::size_t i = 0; i < l.n_; ++i)
            for (std::size_t k = 0; k < l.n_; ++k) {
                if (l(i, k) == T(0)) continue;
                for (std::size_t j = 0; j < l.n_; ++j) out(i, j) += l(i, k) * r(k, j);
            }
        return out;
    }
    Matrix scaled(const T& c) const {
        Matrix out = *this;
        for (auto& v : out.a_) v *= c;
        return out;
    }
    bool operator==(const Matrix& o) const { return n_ == o.n_ && a_ == o.a_; }

    bool is_zero() const {
        for (const auto& v : a_)
            if (v != T(0)) return false;
        return true;
    }
    double max_abs() const {
        double m = 0;
        for (const auto& v : a_) m = std::max(m, std::fabs(to_double(v)));
        return m;
    }

private:
    static double to_double(const Rational& v) { return v.get_d(); }
    static double to_double(double v) { return v; }
    static double to_double(long double v) { return static_cast<double>(v); }
    std::size_t n_ = 0;
    std::vector<T> a_;
};

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
    return a * b - b * a;
}
template <class T>
Matrix<T> anticommutator(const Matrix<T>& a, const Matrix<T>& b) {
    return a * b + b * a;
}

}  // namespace cubalg
