#include "cinv/matrix.hpp"

#include <sstream>

namespace cinv {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(QMatrix& a) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        size_t p = row;
        while (p < a.rows() && a(p, col) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != row)
            for (size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
        Rational inv = Rational(1) / a(row, col);
        for (size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
        for (size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == 0) continue;
            Rational f = a(i, col);
            for (size_t j = col; j < a.cols(); ++j)
                if (a(row, j) != 0) a(i, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

QMatrix inverse(const QMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix");
    size_t n = m.rows();
    QMatrix a(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
        a(i, n + i) = 1;
    }
    auto piv = rref(a);
    if (piv.size() < n || piv[n - 1] != n - 1) throw SingularMatrix("singular rational matrix");
    QMatrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
    return inv;
}

Rational determinant(const QMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("determinant of non-square matrix");
    QMatrix a = m;
    size_t n = a.rows();
    Rational det = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            for (size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
            det = -det;
        }
        det *= a(k, k);
        for (size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rational f = a(i, k) / a(k, k);
            for (size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

std::vector<std::vector<Rational>> nullspace(const QMatrix& m) {
    QMatrix a = m;
    auto piv = rref(a);
    std::vector<bool> is_piv(a.cols(), false);
    for (size_t c : piv) is_piv[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (size_t f = 0; f < a.cols(); ++f) {
        if (is_piv[f]) continue;
        std::vector<Rational> v(a.cols(), Rational(0));
        v[f] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

int rank(const QMatrix& m) {
    QMatrix a = m;
    return int(rref(a).size());
}

std::vector<Rational> solve(const QMatrix& m, const std::vector<Rational>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: size mismatch");
    QMatrix a(m.rows(), m.cols() + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
        a(i, m.cols()) = b[i];
    }
    auto piv = rref(a);
    if (piv.size() != m.cols() || (!piv.empty() && piv.back() == m.cols()))
        throw SingularMatrix("linear system has no unique solution");
    for (size_t i = piv.size(); i < a.rows(); ++i)
        if (a(i, m.cols()) != 0) throw SingularMatrix("inconsistent linear system");
    std::vector<Rational> x(m.cols());
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = a(r, m.cols());
    return x;
}

BareissResult bareiss_inverse(const PolyMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix");
    size_t n = m.rows();
    PolyMatrix a(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
        a(i, n + i) = DiffPoly(1);
    }
    DiffPoly prev(1);
    bool odd = false;
    for (size_t k = 0; k < n; ++k) {
        size_t p = k;
        // Prefer the sparsest usable pivot to limit swell.
        size_t best = n;
        for (; p < n; ++p)
            if (!a(p, k).is_zero() && (best == n || a(p, k).size() < a(best, k).size())) best = p;
        if (best == n) throw SingularMatrix("singular polynomial matrix");
        if (best != k) {
            for (size_t j = 0; j < 2 * n; ++j) std::swap(a(best, j), a(k, j));
            odd = !odd;
        }
        DiffPoly piv = a(k, k);
        for (size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            DiffPoly f = a(i, k);
            for (size_t j = 0; j < 2 * n; ++j) {
                if (j == k) continue;
                DiffPoly v = piv * a(i, j);
                if (!f.is_zero() && !a(k, j).is_zero()) v -= f * a(k, j);
                a(i, j) = v.divide_exact(prev);
            }
            a(i, k) = DiffPoly();
        }
        prev = piv;
    }
    // Left block is prev * I; right block R satisfies m R = prev I.
    BareissResult res;
    res.det = odd ? -prev : prev;
    res.adj = PolyMatrix(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) res.adj(i, j) = odd ? -a(i, n + j) : a(i, n + j);
    return res;
}

DiffPoly bareiss_det(const PolyMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("determinant of non-square matrix");
    size_t n = m.rows();
    if (n == 0) return DiffPoly(1);
    PolyMatrix a = m;
    DiffPoly prev(1);
    bool odd = false;
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t p = k;
        while (p < n && a(p, k).is_zero()) ++p;
        if (p == n) return DiffPoly();
        if (p != k) {
            for (size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
            odd = !odd;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                DiffPoly v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
                a(i, j) = v.divide_exact(prev);
            }
            a(i, k) = DiffPoly();
        }
        prev = a(k, k);
    }
    return odd ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

namespace {

// Common denominator of all entries (lcm through gcd).
DiffPoly common_denominator(const RFMatrix& m) {
    DiffPoly l(1);
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            const DiffPoly& d = m(i, j).den();
            if (d.is_constant()) continue;
            DiffPoly g = gcd(l, d);
            l = l * d.divide_exact(g);
        }
    return l;
}

PolyMatrix cleared(const RFMatrix& m, const DiffPoly& d) {
    PolyMatrix p(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) p(i, j) = (m(i, j) * RatFunc(d)).as_poly();
    return p;
}

} // namespace

RFMatrix rf_inverse(const RFMatrix& m) {
    DiffPoly d = common_denominator(m);
    BareissResult b = bareiss_inverse(cleared(m, d));
    RFMatrix inv(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) inv(i, j) = RatFunc(b.adj(i, j) * d, b.det);
    return inv;
}

RatFunc rf_det(const RFMatrix& m) {
    DiffPoly d = common_denominator(m);
    DiffPoly det = bareiss_det(cleared(m, d));
    return RatFunc(det, d.pow(int(m.rows())));
}

RFMatrix to_rf(const PolyMatrix& m) {
    return m.map([](const DiffPoly& p) { return RatFunc(p); });
}

PolyMatrix to_poly(const RFMatrix& m) {
    return m.map([](const RatFunc& f) { return f.as_poly(); });
}

PolyMatrix to_poly(const QMatrix& m) {
    return m.map([](const Rational& q) { return DiffPoly(q); });
}

QMatrix evaluate(const PolyMatrix& m, const std::map<Var, Rational>& at) {
    return m.map([&](const DiffPoly& p) { return p.value(at); });
}

QMatrix evaluate(const RFMatrix& m, const std::map<Var, Rational>& at) {
    return m.map([&](const RatFunc& f) { return f.value(at); });
}

std::string to_string(const QMatrix& m) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m(i, j));
        os << "]";
    }
    os << "]";
    return os.str();
}

std::string to_string(const PolyMatrix& m) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

} // namespace cinv
