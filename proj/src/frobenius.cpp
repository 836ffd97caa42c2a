#include "cinv/frobenius.hpp"

#include <algorithm>
#include <functional>

namespace cinv {

FrobeniusData frobenius_from_fixture(const Fixture& f) {
    FrobeniusData d;
    d.F = f.poly("potential");
    d.euler = f.rationals("euler");
    d.unity = f.rationals("unity");
    if (d.euler.size() != d.unity.size()) throw FixtureError("euler and unity fields differ in length");
    for (size_t i = 0; i < d.euler.size(); ++i) d.t.push_back(tv(int(i + 1)));
    for (Var v : d.F.variables())
        if (v.kind != VarKind::T || v.index < 1 || v.index > d.t.size())
            throw FixtureError("potential depends on " + var_name(v));
    return d;
}

FlatPencil pencil_from_potential(const FrobeniusData& d) {
    const size_t n = d.t.size();
    DiffPoly eF;
    for (size_t i = 0; i < n; ++i)
        if (d.unity[i] != 0) eF += d.unity[i] * d.F.partial(d.t[i]);
    FlatPencil p;
    p.eta = QMatrix(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            DiffPoly e = eF.partial(d.t[i]).partial(d.t[j]);
            if (!e.is_constant()) throw NonConstantEta("eta_" + std::to_string(i + 1) + std::to_string(j + 1) + " = " + e.str());
            p.eta(i, j) = e.constant_term();
        }
    try {
        p.eta_inv = inverse(p.eta);
    } catch (const SingularMatrix&) {
        throw NonConstantEta("eta is singular");
    }
    p.g1 = to_poly(p.eta_inv);

    // Lower c_abm, then raise a and b.
    std::vector<std::vector<DiffPoly>> hess(n, std::vector<DiffPoly>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a; b < n; ++b) hess[a][b] = hess[b][a] = d.F.partial(d.t[a]).partial(d.t[b]);
    p.g2 = PolyMatrix(n, n);
    for (size_t m = 0; m < n; ++m) {
        PolyMatrix low(n, n);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) low(a, b) = hess[a][b].partial(d.t[m]);
        PolyMatrix up = p.g1 * low * p.g1;
        p.c.push_back(up);
        if (d.euler[m] != 0) p.g2 = p.g2 + (DiffPoly(d.t[m]) * d.euler[m]) * up;
    }
    return p;
}

std::optional<Rational> quasi_homogeneity(const FrobeniusData& d) {
    std::optional<Rational> deg;
    for (const auto& [m, c] : d.F.terms()) {
        if (m.degree() < 3) continue;
        Rational w = 0;
        m.for_each([&](Var v, int e) {
            auto it = std::find(d.t.begin(), d.t.end(), v);
            w += e * d.euler[size_t(it - d.t.begin())];
        });
        if (deg && *deg != w) return std::nullopt;
        deg = w;
    }
    return deg;
}

bool c_tensor_symmetric(const FlatPencil& p, const FrobeniusData& d) {
    const size_t n = d.t.size();
    PolyMatrix eta = to_poly(p.eta);
    // c_ijm = eta_ia eta_jb c^ab_m
    std::vector<PolyMatrix> low;
    for (size_t m = 0; m < n; ++m) low.push_back(eta * p.c[m] * eta);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t m = 0; m < n; ++m)
                if (low[m](i, j) != low[j](i, m) || low[m](i, j) != low[m](j, i)) return false;
    return true;
}

DiffPoly strip_quadratic(const DiffPoly& f) {
    DiffPoly out;
    for (const auto& [m, c] : f.terms())
        if (m.degree() > 2) out.add_term(m, c);
    return out;
}

namespace {

// Homotopy integral of the closed 1-form sum_k w_k dt_k: sum_k t_k w_k(s t) ds over [0, 1].
DiffPoly homotopy(const std::vector<DiffPoly>& w, const std::vector<Var>& t) {
    DiffPoly out;
    for (size_t k = 0; k < t.size(); ++k)
        for (const auto& [m, c] : w[k].terms()) out.add_term(m * Monomial::of(t[k]), c / Rational(m.degree() + 1));
    return out;
}

} // namespace

DiffPoly potential_from_metrics(const QMatrix& eta_inv, const PolyMatrix& g2, const std::vector<int>& degrees,
                                const std::vector<Var>& t) {
    const size_t n = t.size();
    const int h = *std::max_element(degrees.begin(), degrees.end());
    PolyMatrix up(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            int den = degrees[i] + degrees[j] - 2;
            if (den == 0) {
                if (!g2(i, j).is_zero()) throw IntegrabilityFailure("degree pair with zero weight carries a metric entry");
                continue;
            }
            up(i, j) = g2(i, j) * make_rational(h, den);
        }
    PolyMatrix eta = to_poly(inverse(eta_inv));
    PolyMatrix hess = eta * up * eta;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            if (hess(a, b) != hess(b, a)) throw IntegrabilityFailure("implied Hessian is not symmetric");
            for (size_t c = 0; c < n; ++c)
                if (hess(a, b).partial(t[c]) != hess(a, c).partial(t[b]))
                    throw IntegrabilityFailure("mixed third derivatives disagree");
        }
    std::vector<DiffPoly> grad;
    for (size_t a = 0; a < n; ++a) {
        std::vector<DiffPoly> row;
        for (size_t b = 0; b < n; ++b) row.push_back(hess(a, b));
        grad.push_back(homotopy(row, t));
    }
    DiffPoly F = homotopy(grad, t);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (F.partial(t[a]).partial(t[b]) != hess(a, b)) throw IntegrabilityFailure("integration check failed");
    return F;
}

namespace {

// Coefficients expressing `target` (a polynomial in z) as a polynomial in the
// y^i(z), using monomials of weighted degree `deg`.
std::vector<std::pair<Monomial, Rational>> express_in(const DiffPoly& target, int deg, const std::vector<DiffPoly>& yz,
                                                      const std::vector<int>& ydeg, const std::vector<Var>& y) {
    std::vector<Monomial> cands;
    std::function<void(size_t, int, Monomial)> rec = [&](size_t i, int left, Monomial m) {
        if (i == y.size()) {
            if (left == 0) cands.push_back(m);
            return;
        }
        for (int e = 0; e * ydeg[i] <= left; ++e) rec(i + 1, left - e * ydeg[i], e ? m * Monomial::of(y[i], e) : m);
    };
    if (deg >= 0) rec(0, deg, Monomial());
    if (cands.empty()) {
        if (!target.is_zero()) throw InvariantViolation("orbit-space entry has no polynomial expression");
        return {};
    }
    std::vector<DiffPoly> expanded;
    std::map<Monomial, size_t, MonoOrder> rows;
    for (const auto& m : cands) {
        DiffPoly e(1);
        m.for_each([&](Var v, int k) { e *= yz[v.index - 1].pow(k); });
        for (const auto& kv : e.terms()) rows.emplace(kv.first, rows.size());
        expanded.push_back(std::move(e));
    }
    for (const auto& kv : target.terms())
        if (!rows.count(kv.first)) throw InvariantViolation("orbit-space entry has no polynomial expression");
    QMatrix a(rows.size(), cands.size());
    std::vector<Rational> b(rows.size(), Rational(0));
    for (size_t k = 0; k < cands.size(); ++k)
        for (const auto& [m, c] : expanded[k].terms()) a(rows.at(m), k) = c;
    for (const auto& [m, c] : target.terms()) b[rows.at(m)] = c;
    auto x = solve(a, b);
    std::vector<std::pair<Monomial, Rational>> out;
    for (size_t k = 0; k < cands.size(); ++k)
        if (x[k] != 0) out.emplace_back(cands[k], x[k]);
    return out;
}

DiffPoly assemble(const std::vector<std::pair<Monomial, Rational>>& terms) {
    DiffPoly p;
    for (const auto& [m, c] : terms) p.add_term(m, c);
    return p;
}

} // namespace

OrbitSpaceData orbit_metrics_a(int n) {
    OrbitSpaceData o;
    o.n = n;
    const Var p = var_of(VarKind::P);
    std::vector<DiffPoly> z;
    DiffPoly last;
    for (int a = 1; a <= n; ++a) {
        z.emplace_back(var_of(VarKind::Z, a));
        last -= z.back();
    }
    z.push_back(last);
    DiffPoly prod(1);
    for (const auto& za : z) prod *= DiffPoly(p) - za;
    auto coeffs = prod.coefficients_in(p);
    std::vector<DiffPoly> yz;
    for (int i = 1; i <= n; ++i) {
        yz.push_back(coeffs.count(i - 1) ? coeffs[i - 1] : DiffPoly());
        o.y.push_back(var_of(VarKind::Y, i));
        o.degrees.push_back(n + 2 - i);
    }
    // Intrinsic coordinates z_1..z_n; the induced Gram matrix is delta - 1/(n+1).
    auto G = [&](int a, int b) -> Rational { return Rational(a == b ? 1 : 0) - Rational(1, n + 1); };
    std::vector<std::vector<DiffPoly>> dy(static_cast<size_t>(n), std::vector<DiffPoly>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) dy[size_t(i)][size_t(a)] = yz[size_t(i)].partial(var_of(VarKind::Z, a + 1));

    o.g2 = PolyMatrix(size_t(n), size_t(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            DiffPoly g;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) g += G(a, b) * (dy[size_t(i)][size_t(a)] * dy[size_t(j)][size_t(b)]);
            DiffPoly e = assemble(express_in(g, o.degrees[size_t(i)] + o.degrees[size_t(j)] - 2, yz, o.degrees, o.y));
            o.g2(size_t(i), size_t(j)) = o.g2(size_t(j), size_t(i)) = e;
        }

    // sum_k Gamma^ij_k(y) d_c y^k = sum_ab G^ab d_a y^i d_b d_c y^j for every c.
    o.gamma2.assign(size_t(n), PolyMatrix(size_t(n), size_t(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<std::pair<int, Monomial>> unknowns;
            for (int k = 0; k < n; ++k) {
                int deg = o.degrees[size_t(i)] + o.degrees[size_t(j)] - o.degrees[size_t(k)] - 2;
                std::function<void(size_t, int, Monomial)> rec = [&](size_t v, int left, Monomial m) {
                    if (v == o.y.size()) {
                        if (left == 0) unknowns.emplace_back(k, m);
                        return;
                    }
                    for (int e = 0; e * o.degrees[v] <= left; ++e)
                        rec(v + 1, left - e * o.degrees[v], e ? m * Monomial::of(o.y[v], e) : m);
                };
                if (deg >= 0) rec(0, deg, Monomial());
            }
            std::map<std::pair<int, Monomial>, size_t, std::function<bool(const std::pair<int, Monomial>&, const std::pair<int, Monomial>&)>>
                rows([](const auto& x, const auto& y) {
                    if (x.first != y.first) return x.first < y.first;
                    return MonoOrder()(x.second, y.second);
                });
            std::vector<std::vector<std::pair<size_t, Rational>>> cols(unknowns.size());
            std::vector<std::pair<size_t, Rational>> rhs;
            for (int c = 0; c < n; ++c) {
                DiffPoly r;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        r += G(a, b) * (dy[size_t(i)][size_t(a)] * dy[size_t(j)][size_t(b)].partial(var_of(VarKind::Z, c + 1)));
                for (size_t u = 0; u < unknowns.size(); ++u) {
                    const auto& [k, m] = unknowns[u];
                    DiffPoly e = dy[size_t(k)][size_t(c)];
                    m.for_each([&](Var v, int pw) { e *= yz[v.index - 1].pow(pw); });
                    for (const auto& [zm, zc] : e.terms())
                        cols[u].emplace_back(rows.emplace(std::make_pair(c, zm), rows.size()).first->second, zc);
                }
                for (const auto& [zm, zc] : r.terms())
                    rhs.emplace_back(rows.emplace(std::make_pair(c, zm), rows.size()).first->second, zc);
            }
            if (unknowns.empty()) {
                if (!rhs.empty()) throw InvariantViolation("Christoffel coefficient has no polynomial expression");
                continue;
            }
            QMatrix a(rows.size(), unknowns.size());
            std::vector<Rational> b(rows.size(), Rational(0));
            for (size_t u = 0; u < unknowns.size(); ++u)
                for (const auto& [r, v] : cols[u]) a(r, u) += v;
            for (const auto& [r, v] : rhs) b[r] += v;
            auto x = solve(a, b);
            for (size_t u = 0; u < unknowns.size(); ++u)
                if (x[u] != 0) {
                    auto& entry = o.gamma2[size_t(unknowns[u].first)](size_t(i), size_t(j));
                    entry.add_term(unknowns[u].second, x[u]);
                }
        }

    o.g1 = o.g2.map([&](const DiffPoly& e) { return e.partial(o.y[0]); });
    for (const auto& gk : o.gamma2) o.gamma1.push_back(gk.map([&](const DiffPoly& e) { return e.partial(o.y[0]); }));
    return o;
}

} // namespace cinv
