#pragma once
#include "cinv/errors.hpp"
#include "cinv/ratfunc.hpp"

#include <string>
#include <vector>

namespace cinv {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols, const T& fill = T(0)) : r_(rows), c_(cols), d_(rows * cols, fill) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    T& operator()(size_t i, size_t j) { return d_[i * c_ + j]; }
    const T& operator()(size_t i, size_t j) const { return d_[i * c_ + j]; }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch in product");
        Matrix m(a.r_, b.c_);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (is_zero_entry(x)) continue;
                for (size_t j = 0; j < b.c_; ++j)
                    if (!is_zero_entry(b(k, j))) m(i, j) += x * b(k, j);
            }
        return m;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        check_same(a, b);
        for (size_t i = 0; i < a.d_.size(); ++i) a.d_[i] += b.d_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        check_same(a, b);
        for (size_t i = 0; i < a.d_.size(); ++i) a.d_[i] -= b.d_[i];
        return a;
    }
    friend Matrix operator*(const T& s, Matrix a) {
        for (auto& x : a.d_) x = s * x;
        return a;
    }
    Matrix operator-() const {
        Matrix m = *this;
        for (auto& x : m.d_) x = -x;
        return m;
    }
    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    template <class F>
    auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
        Matrix<decltype(f(std::declval<const T&>()))> m(r_, c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
        return m;
    }

    bool is_square() const { return r_ == c_; }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<T> d_;

    static void check_same(const Matrix& a, const Matrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
    }
    static bool is_zero_entry(const T& x) {
        if constexpr (requires { x.is_zero(); })
            return x.is_zero();
        else
            return x == 0;
    }
};

using QMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<DiffPoly>;
using RFMatrix = Matrix<RatFunc>;

// Dense exact linear algebra over Q.
QMatrix inverse(const QMatrix& m);            // throws SingularMatrix
Rational determinant(const QMatrix& m);
std::vector<std::vector<Rational>> nullspace(const QMatrix& m); // basis vectors
int rank(const QMatrix& m);
// Solves m x = b for a unique x; throws SingularMatrix otherwise.
std::vector<Rational> solve(const QMatrix& m, const std::vector<Rational>& b);

// Fraction-free Gauss-Jordan over the polynomial ring: n * adj = det * I.
struct BareissResult {
    DiffPoly det;
    PolyMatrix adj;
};
BareissResult bareiss_inverse(const PolyMatrix& n); // throws SingularMatrix
DiffPoly bareiss_det(const PolyMatrix& n);

RFMatrix rf_inverse(const RFMatrix& m);             // throws SingularMatrix
RatFunc rf_det(const RFMatrix& m);

RFMatrix to_rf(const PolyMatrix& m);
PolyMatrix to_poly(const RFMatrix& m); // throws if an entry is not polynomial
QMatrix evaluate(const PolyMatrix& m, const std::map<Var, Rational>& at);
QMatrix evaluate(const RFMatrix& m, const std::map<Var, Rational>& at);
PolyMatrix to_poly(const QMatrix& m);

std::string to_string(const QMatrix& m);
std::string to_string(const PolyMatrix& m);

} // namespace cinv
