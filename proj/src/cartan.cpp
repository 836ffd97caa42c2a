#include "cinv/cartan.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

namespace cinv {

CartanType parse_cartan_type(const std::string& s) {
    if (s.size() < 2) throw UnknownAlgebra("unknown algebra '" + s + "'");
    char f = char(std::toupper(static_cast<unsigned char>(s[0])));
    int n = 0;
    for (size_t i = 1; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw UnknownAlgebra("unknown algebra '" + s + "'");
        n = n * 10 + (s[i] - '0');
        if (n > 1000) throw UnknownAlgebra("rank too large in '" + s + "'");
    }
    bool ok = false;
    switch (f) {
    case 'A': ok = n >= 1; break;
    case 'B':
    case 'C': ok = n >= 2; break;
    case 'D': ok = n >= 3; break;
    case 'E': ok = n >= 6 && n <= 8; break;
    case 'F': ok = n == 4; break;
    case 'G': ok = n == 2; break;
    }
    if (!ok) throw UnknownAlgebra("unknown algebra '" + s + "'");
    return {f, n};
}

QMatrix cartan_matrix(const CartanType& t) {
    const int n = t.rank;
    QMatrix a(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = 2;
    auto link = [&](int i, int j) { // 1-based simple edge
        a(i - 1, j - 1) = -1;
        a(j - 1, i - 1) = -1;
    };
    switch (t.family) {
    case 'A':
        for (int i = 1; i < n; ++i) link(i, i + 1);
        break;
    case 'B':
        for (int i = 1; i < n; ++i) link(i, i + 1);
        a(n - 1, n - 2) = -2;
        break;
    case 'C':
        for (int i = 1; i < n; ++i) link(i, i + 1);
        a(n - 2, n - 1) = -2;
        break;
    case 'D':
        for (int i = 1; i < n - 1; ++i) link(i, i + 1);
        link(n - 2, n);
        break;
    case 'E':
        link(1, 3);
        link(2, 4);
        for (int i = 3; i < n; ++i) link(i, i + 1);
        break;
    case 'F':
        link(1, 2);
        link(2, 3);
        link(3, 4);
        a(2, 1) = -2;
        break;
    case 'G':
        a(0, 1) = -3;
        a(1, 0) = -1;
        break;
    default: throw UnknownAlgebra("unknown algebra family");
    }
    return a;
}

bool adjacent(const QMatrix& cartan, int i, int j) { return i != j && cartan(i, j) != 0; }

namespace {

std::vector<Rational> symmetrize(const QMatrix& a) {
    const int n = int(a.rows());
    std::vector<Rational> d(n, Rational(0));
    d[0] = 1;
    std::deque<int> todo{0};
    while (!todo.empty()) {
        int i = todo.front();
        todo.pop_front();
        for (int j = 0; j < n; ++j) {
            if (!adjacent(a, i, j)) continue;
            if (a(j, i) == 0) throw BadCartanData("Cartan matrix has a one-sided edge");
            Rational dj = a(i, j) * d[i] / a(j, i);
            if (d[j] == 0) {
                d[j] = dj;
                todo.push_back(j);
            } else if (d[j] != dj) {
                throw BadCartanData("Cartan matrix is not symmetrizable");
            }
        }
    }
    Rational mx = *std::max_element(d.begin(), d.end());
    for (auto& x : d) {
        if (x == 0) throw BadCartanData("Dynkin diagram is not connected");
        x /= mx;
    }
    return d;
}

} // namespace

RootSystem root_system(const CartanType& t) {
    RootSystem rs;
    rs.type = t;
    rs.cartan = cartan_matrix(t);
    const int n = t.rank;
    rs.half_lengths = symmetrize(rs.cartan);

    std::set<std::vector<int>> known;
    std::vector<std::vector<int>> level;
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        level.push_back(e);
        known.insert(e);
    }
    while (!level.empty()) {
        for (const auto& r : level) rs.positive_roots.push_back(r);
        std::set<std::vector<int>> next;
        for (const auto& beta : level) {
            for (int i = 0; i < n; ++i) {
                int q = 0;
                std::vector<int> down = beta;
                while (true) {
                    down[i] -= 1;
                    if (!known.count(down)) break;
                    ++q;
                }
                Rational pairing = 0;
                for (int j = 0; j < n; ++j) pairing += rs.cartan(i, j) * beta[j];
                Rational p = Rational(q) - pairing;
                if (p > 0) {
                    std::vector<int> up = beta;
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        level.assign(next.begin(), next.end());
        for (const auto& r : level) known.insert(r);
    }

    const auto& theta = rs.positive_roots.back();
    int height = 0;
    Rational dual = 1;
    for (int i = 0; i < n; ++i) {
        height += theta[i];
        dual += theta[i] * rs.half_lengths[i];
    }
    if (dual.get_den() != 1) throw BadCartanData("dual Coxeter number is not an integer");
    rs.coxeter = height + 1;
    rs.dual_coxeter = int(dual.get_num().get_si());

    std::map<int, int> by_height;
    for (const auto& r : rs.positive_roots) {
        int h = 0;
        for (int c : r) h += c;
        by_height[h]++;
    }
    for (int m = 1; m < rs.coxeter; ++m) {
        int k = by_height[m] - (by_height.count(m + 1) ? by_height[m + 1] : 0);
        for (int j = 0; j < k; ++j) rs.exponents.push_back(m);
    }
    if (int(rs.exponents.size()) != n) throw BadCartanData("exponent count differs from the rank");
    return rs;
}

QMatrix RootSystem::coroot_gram() const {
    const int n = type.rank;
    QMatrix g(n, n);
    std::vector<Rational> val(n);
    for (const auto& r : positive_roots) {
        for (int i = 0; i < n; ++i) {
            val[i] = 0;
            for (int j = 0; j < n; ++j) val[i] += cartan(i, j) * r[j];
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) += Rational(2) * val[i] * val[j];
    }
    return g.map([&](const Rational& x) -> Rational { return x / Rational(2 * dual_coxeter); });
}

} // namespace cinv
