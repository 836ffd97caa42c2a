#include "cinv/dirac.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

namespace cinv {

DiracSystem dirac_system(const LieAlgebraData& g, const SliceData& s) {
    DiracSystem d;
    d.n = g.rank;
    d.m = s.f.size();
    const size_t n = size_t(d.n), m = d.m;
    d.P0 = QMatrix(m, m);
    d.Q = QMatrix(m, m);
    d.S = QMatrix(n, m);
    d.Pu.assign(n, QMatrix(m, m));
    d.Ru.assign(n, QMatrix(n, m));
    for (size_t a = 0; a < m; ++a) {
        for (size_t b = a; b < m; ++b) {
            d.Q(a, b) = d.Q(b, a) = g.form(s.f[a], s.f[b]);
            if (a == b) continue;
            LieMat br = commutator(s.f[a], s.f[b]);
            Rational v = -g.form(s.I, br);
            d.P0(a, b) = v;
            d.P0(b, a) = -v;
            for (size_t k = 0; k < n; ++k) {
                Rational w = -g.form(s.gamma[k], br);
                d.Pu[k](a, b) = w;
                d.Pu[k](b, a) = -w;
            }
        }
        for (size_t i = 0; i < n; ++i) {
            d.S(i, a) = g.form(s.gamma_dual[i], s.f[a]);
            LieMat br = commutator(s.gamma_dual[i], s.f[a]);
            for (size_t k = 0; k < n; ++k) d.Ru[k](i, a) = -g.form(s.gamma[k], br);
        }
    }
    return d;
}

namespace {

// X_1, X_2, X_3 of the reduction: with W_k = (P^-1 Q)^k P^-1,
// X_k = R W_k R^T - S W_{k-1} R^T + R W_{k-1} S^T - S W_{k-2} S^T.
template <class T>
std::array<Matrix<T>, 3> reduction_products(const Matrix<T>& Pinv, const Matrix<T>& Q, const Matrix<T>& R,
                                            const Matrix<T>& S) {
    std::vector<Matrix<T>> rw{R * Pinv}, sw{S * Pinv};
    Matrix<T> QP = Q * Pinv;
    for (int k = 1; k <= 3; ++k) {
        rw.push_back(rw.back() * QP);
        sw.push_back(sw.back() * QP);
    }
    Matrix<T> Rt = R.transpose(), St = S.transpose();
    std::array<Matrix<T>, 3> x;
    for (int k = 1; k <= 3; ++k) {
        Matrix<T> v = rw[size_t(k)] * Rt - sw[size_t(k - 1)] * Rt + rw[size_t(k - 1)] * St;
        if (k >= 2) v = v - sw[size_t(k - 2)] * St;
        x[size_t(k - 1)] = v;
    }
    return x;
}

} // namespace

ReducedPencil dirac_reduce(const DiracSystem& d, bool lambda_shift) {
    const size_t n = size_t(d.n), m = d.m;
    const Var lam = var_of(VarKind::Lam);
    ReducedPencil out;
    PolyMatrix L(m, m), R(n, m);
    for (size_t k = 0; k < n; ++k) {
        out.coords.push_back(u(int(k + 1)));
        DiffPoly uk(u(int(k + 1)));
        if (lambda_shift && k + 1 == n) uk += DiffPoly(lam);
        L = L + uk * to_poly(d.Pu[k]);
        R = R + uk * to_poly(d.Ru[k]);
    }
    QMatrix P0inv = inverse(d.P0);
    PolyMatrix pinv0 = to_poly(P0inv);
    PolyMatrix N = -(pinv0 * L);
    PolyMatrix term = pinv0, sum = pinv0;
    bool nilpotent = false;
    for (size_t k = 0; k <= m; ++k) {
        term = N * term;
        bool zero = true;
        for (size_t i = 0; i < m && zero; ++i)
            for (size_t j = 0; j < m && zero; ++j) zero = term(i, j).is_zero();
        if (zero) {
            nilpotent = true;
            break;
        }
        sum = sum + term;
    }

    std::array<PolyMatrix, 3> x;
    if (nilpotent) {
        x = reduction_products<DiffPoly>(sum, to_poly(d.Q), R, to_poly(d.S));
    } else {
        RFMatrix P = to_rf(to_poly(d.P0) + L);
        auto xr = reduction_products<RatFunc>(rf_inverse(P), to_rf(to_poly(d.Q)), to_rf(R), to_rf(to_poly(d.S)));
        for (size_t k = 0; k < 3; ++k) x[k] = to_poly(xr[k]);
    }
    x[1] = -x[1];

    if (!lambda_shift) {
        out.g2 = x[0];
        out.A102 = x[1];
        out.A202 = x[2];
        return out;
    }
    auto split = [&](const PolyMatrix& t, PolyMatrix& c0, PolyMatrix& c1) {
        c0 = PolyMatrix(t.rows(), t.cols());
        c1 = PolyMatrix(t.rows(), t.cols());
        for (size_t i = 0; i < t.rows(); ++i)
            for (size_t j = 0; j < t.cols(); ++j) {
                auto cs = t(i, j).coefficients_in(lam);
                for (const auto& [e, c] : cs) {
                    if (e > 1) throw NonLinearInLambda("reduced tensor has degree " + std::to_string(e) + " in lambda");
                    (e == 0 ? c0 : c1)(i, j) = c;
                }
            }
    };
    split(x[0], out.g2, out.g1);
    split(x[1], out.A102, out.A101);
    split(x[2], out.A202, out.A201);
    out.has_first = true;
    return out;
}

ReducedValues dirac_at(const DiracSystem& d, const std::vector<Rational>& uval) {
    const size_t n = size_t(d.n), m = d.m;
    if (uval.size() != n) throw ConfigError("point has the wrong number of coordinates");
    std::array<std::array<QMatrix, 3>, 3> at;
    for (int l = 0; l < 3; ++l) {
        QMatrix P = d.P0, R(n, m);
        for (size_t k = 0; k < n; ++k) {
            Rational c = uval[k] + (k + 1 == n ? Rational(l) : Rational(0));
            if (c == 0) continue;
            P = P + c * d.Pu[k];
            R = R + c * d.Ru[k];
        }
        at[size_t(l)] = reduction_products<Rational>(inverse(P), d.Q, R, d.S);
        at[size_t(l)][1] = -at[size_t(l)][1];
    }
    ReducedValues v;
    QMatrix* c0[3] = {&v.g2, &v.A102, &v.A202};
    QMatrix* c1[3] = {&v.g1, &v.A101, &v.A201};
    for (size_t k = 0; k < 3; ++k) {
        *c0[k] = at[0][k];
        *c1[k] = at[1][k] - at[0][k];
        if (at[2][k] != at[0][k] + Rational(2) * *c1[k])
            throw NonLinearInLambda("reduced tensor is not linear in lambda at this point");
    }
    return v;
}

DiffPoly char_poly(const ReducedPencil& p) {
    if (!p.has_first) throw InvariantViolation("characteristic polynomial needs the first metric");
    DiffPoly z(var_of(VarKind::Lam));
    PolyMatrix m = p.g2 - p.g1.map([&](const DiffPoly& e) { return z * e; });
    return bareiss_det(m);
}

ReducedPencil change_coordinates(const ReducedPencil& p, const std::vector<DiffPoly>& new_of_old,
                                 const std::vector<Var>& new_vars, const std::vector<DiffPoly>& old_of_new) {
    const size_t n = p.coords.size();
    PolyMatrix J(n, n);
    for (size_t a = 0; a < n; ++a)
        for (size_t i = 0; i < n; ++i) J(a, i) = new_of_old[a].partial(p.coords[i]);
    std::map<Var, DiffPoly> back;
    for (size_t i = 0; i < n; ++i) back[p.coords[i]] = old_of_new[i];
    auto tr = [&](const PolyMatrix& t) {
        if (t.rows() == 0) return t;
        PolyMatrix r = J * t * J.transpose();
        return r.map([&](const DiffPoly& e) { return e.substitute(back); });
    };
    ReducedPencil out;
    out.coords = new_vars;
    out.has_first = p.has_first;
    out.g2 = tr(p.g2);
    out.A102 = tr(p.A102);
    out.A202 = tr(p.A202);
    if (p.has_first) {
        out.g1 = tr(p.g1);
        out.A101 = tr(p.A101);
        out.A201 = tr(p.A201);
    }
    return out;
}

std::vector<DiffPoly> invert_triangular(const std::vector<DiffPoly>& new_of_old, const std::vector<Var>& old_vars,
                                        const std::vector<Var>& new_vars) {
    const size_t n = old_vars.size();
    std::map<Var, DiffPoly> solved;
    std::vector<bool> used(n, false);
    while (solved.size() < n) {
        bool progress = false;
        for (size_t k = 0; k < n; ++k) {
            if (used[k]) continue;
            DiffPoly e = new_of_old[k].substitute(solved);
            std::vector<Var> open;
            for (Var v : e.variables())
                if (std::find(old_vars.begin(), old_vars.end(), v) != old_vars.end()) open.push_back(v);
            if (open.size() != 1 || e.degree_in(open[0]) != 1) continue;
            auto cs = e.coefficients_in(open[0]);
            if (!cs[1].is_constant()) continue;
            Rational c = cs[1].constant_term();
            DiffPoly rest = cs.count(0) ? cs[0] : DiffPoly();
            solved[open[0]] = (DiffPoly(new_vars[k]) - rest) * (Rational(1) / c);
            used[k] = true;
            progress = true;
        }
        if (!progress) throw InvariantViolation("coordinate change is not triangular");
    }
    std::vector<DiffPoly> out;
    for (Var v : old_vars) out.push_back(solved.at(v));
    // Composition check.
    std::map<Var, DiffPoly> sub;
    for (size_t i = 0; i < n; ++i) sub[old_vars[i]] = out[i];
    for (size_t k = 0; k < n; ++k)
        if (new_of_old[k].substitute(sub) != DiffPoly(new_vars[k])) throw InvariantViolation("coordinate inverse check failed");
    return out;
}

Complex evaluate_complex(const DiffPoly& f, const std::map<Var, Complex>& at) {
    Complex s = 0;
    for (const auto& [m, c] : f.terms()) {
        Complex t = to_complex(c);
        m.for_each([&](Var v, int e) {
            auto it = at.find(v);
            if (it == at.end()) throw std::invalid_argument("no value for " + var_name(v));
            t *= pow(it->second, e);
        });
        s += t;
    }
    return s;
}

namespace {

template <class T>
std::vector<std::vector<T>> congruence(const std::vector<std::vector<T>>& J, const QMatrix& t) {
    const size_t n = J.size();
    std::vector<std::vector<T>> out(n, std::vector<T>(n, T(0)));
    if (t.rows() == 0) return out;
    std::vector<std::vector<T>> jt(n, std::vector<T>(n, T(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t b = 0; b < n; ++b)
            for (size_t a = 0; a < n; ++a)
                if (t(a, b) != 0) jt[i][b] += J[i][a] * T(t(a, b));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t b = 0; b < n; ++b) out[i][j] += jt[i][b] * J[j][b];
    return out;
}

template <>
std::vector<std::vector<Complex>> congruence(const std::vector<std::vector<Complex>>& J, const QMatrix& t) {
    const size_t n = J.size();
    std::vector<std::vector<Complex>> out(n, std::vector<Complex>(n, Complex(0)));
    if (t.rows() == 0) return out;
    std::vector<std::vector<Complex>> jt(n, std::vector<Complex>(n, Complex(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t b = 0; b < n; ++b)
            for (size_t a = 0; a < n; ++a)
                if (t(a, b) != 0) jt[i][b] += J[i][a] * to_complex(t(a, b));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t b = 0; b < n; ++b) out[i][j] += jt[i][b] * J[j][b];
    return out;
}

} // namespace

CIResult central_invariants_dirac(const ReducedPencil& p, const std::map<Var, Rational>& point,
                                  const std::string& algebra, const std::vector<Complex>& reference) {
    const size_t n = p.coords.size();
    const Var lam = var_of(VarKind::Lam);
    DiffPoly cp = char_poly(p);
    auto cs = cp.coefficients_in(lam);
    std::vector<Rational> coeffs(n + 1, Rational(0));
    for (const auto& [e, c] : cs) coeffs[size_t(e)] = c.value(point);
    if (coeffs[n] == 0) throw DegeneratePoint("first metric is degenerate at the sample");
    UnivariateRoots roots = univariate_roots(coeffs);
    if (roots.numeric.size() != n) throw DegeneratePoint("characteristic polynomial has the wrong degree");

    // Order: nearest reference root, else the sorted order.
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    if (!reference.empty()) {
        if (reference.size() != n) throw InvariantViolation("reference root count differs");
        std::vector<bool> taken(n, false);
        for (size_t i = 0; i < n; ++i) {
            size_t best = n;
            Complex::value_type bd = 0;
            for (size_t k = 0; k < n; ++k) {
                if (taken[k]) continue;
                auto dist = abs(roots.numeric[k] - reference[i]);
                if (best == n || dist < bd) {
                    best = k;
                    bd = dist;
                }
            }
            if (bd > Complex::value_type(1e-8) * (1 + abs(reference[i])))
                throw InvariantViolation("characteristic roots differ from the stored canonical coordinates");
            taken[best] = true;
            order[i] = best;
        }
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (abs(roots.numeric[i] - roots.numeric[j]) < Complex::value_type(1e-12) * (1 + abs(roots.numeric[i])))
                throw DegeneratePoint("repeated canonical coordinate at the sample");

    std::vector<DiffPoly> dk;
    for (Var v : p.coords) dk.push_back(cp.partial(v));
    DiffPoly dz = cp.partial(lam);

    QMatrix G1 = evaluate(p.g1, point), G2 = evaluate(p.g2, point);
    QMatrix P1 = p.A101.rows() ? evaluate(p.A101, point) : QMatrix(n, n);
    QMatrix P2 = p.A102.rows() ? evaluate(p.A102, point) : QMatrix(n, n);
    QMatrix Q1 = evaluate(p.A201, point), Q2 = evaluate(p.A202, point);

    CIResult r;
    if (roots.exact) {
        // univariate_roots sorts rational roots ascending, numeric ones by (re, im); they agree for real roots.
        std::vector<std::vector<Rational>> J(n, std::vector<Rational>(n));
        CanonicalTensors<Rational> t;
        for (size_t i = 0; i < n; ++i) {
            Rational li = roots.rational[order[i]];
            auto at = point;
            at[lam] = li;
            Rational den = dz.value(at);
            if (den == 0) throw DegeneratePoint("repeated canonical coordinate at the sample");
            for (size_t k = 0; k < n; ++k) J[i][k] = -dk[k].value(at) / den;
            t.lambda.push_back(li);
        }
        t.g1 = congruence(J, G1);
        t.g2 = congruence(J, G2);
        t.P1 = congruence(J, P1);
        t.P2 = congruence(J, P2);
        t.Q1 = congruence(J, Q1);
        t.Q2 = congruence(J, Q2);
        r = central_invariant_formula(t);
    } else {
        std::map<Var, Complex> cpt;
        for (const auto& [v, x] : point) cpt[v] = to_complex(x);
        std::vector<std::vector<Complex>> J(n, std::vector<Complex>(n));
        CanonicalTensors<Complex> t;
        for (size_t i = 0; i < n; ++i) {
            Complex li = roots.numeric[order[i]];
            auto at = cpt;
            at[lam] = li;
            Complex den = evaluate_complex(dz, at);
            for (size_t k = 0; k < n; ++k) J[i][k] = -evaluate_complex(dk[k], at) / den;
            t.lambda.push_back(li);
        }
        t.g1 = congruence(J, G1);
        t.g2 = congruence(J, G2);
        t.P1 = congruence(J, P1);
        t.P2 = congruence(J, P2);
        t.Q1 = congruence(J, Q1);
        t.Q2 = congruence(J, Q2);
        r = central_invariant_formula(t);
    }
    r.algebra = algebra;
    r.method = "dirac";
    return r;
}

ReducedPencil f4_pencil(const Fixture& f4) {
    FrobeniusData fd = frobenius_from_fixture(f4);
    FlatPencil fp = pencil_from_potential(fd);
    const size_t n = fd.t.size();
    ReducedPencil p;
    p.coords = fd.t;
    p.has_first = true;
    p.g1 = fp.g1;
    p.g2 = fp.g2;
    p.A101 = p.A102 = PolyMatrix(n, n);
    p.A202 = PolyMatrix(n, n);
    const auto& list = f4.at("tensors").at("A202");
    for (auto it = list.begin(); it != list.end(); ++it) {
        int i = 0, j = 0;
        if (std::sscanf(it.key().c_str(), "%d,%d", &i, &j) != 2 || i < 1 || j < 1 || size_t(i) > n || size_t(j) > n)
            throw FixtureError("bad tensor index '" + it.key() + "'");
        p.A202(size_t(i - 1), size_t(j - 1)) = p.A202(size_t(j - 1), size_t(i - 1)) = json_poly(it.value());
    }
    p.A201 = p.A202.map([&](const DiffPoly& x) {
        DiffPoly s;
        for (size_t k = 0; k < n; ++k)
            if (fd.unity[k] != 0) s += fd.unity[k] * x.partial(fd.t[k]);
        return s;
    });
    return p;
}

std::vector<Complex> f4_closed_form_roots(const Fixture& f4, const std::map<Var, Rational>& t) {
    const auto& ev = f4.at("eigenvalues");
    Rational center = json_poly(ev.at("center")).value(t), shift = json_poly(ev.at("shift")).value(t);
    Rational rp = json_poly(ev.at("radicand_plus")).value(t), rm = json_poly(ev.at("radicand_minus")).value(t);
    Rational den = json_rational(ev.at("radical_denominator")), under = json_rational(ev.at("radical_sqrt_of"));
    Complex scale = to_complex(den) * sqrt(to_complex(under));
    std::vector<Complex> out;
    for (const auto& o : ev.at("order")) {
        std::string s = o.get<std::string>();
        if (s.size() != 2) throw FixtureError("bad root order label " + s);
        int mu1 = s[0] == '+' ? 1 : -1, mu2 = s[1] == '+' ? 1 : -1;
        Complex r = to_complex(mu1 > 0 ? rp : rm);
        Complex pw = r * sqrt(r);
        out.push_back(to_complex(center) + Complex(mu1) * to_complex(shift) + Complex(mu2) * pw / scale);
    }
    return out;
}

std::map<Var, Rational> f4_rational_sample(const Rational& t1, const Rational& a, const Rational& b, const Rational& w) {
    if (w == 0) throw DegeneratePoint("t4 must be nonzero");
    std::map<Var, Rational> t;
    t[tv(1)] = t1;
    t[tv(2)] = (Rational(57) * (a * a + b * b) / 2 - Rational(2736) * w * w * w * w) / 361;
    t[tv(3)] = Rational(57) * (a * a - b * b) / (Rational(1152) * w);
    t[tv(4)] = w;
    for (auto& [v, x] : t) x.canonicalize();
    return t;
}

CIResult f4_fixture_pipeline(const Fixture& f4, const std::map<Var, Rational>& t) {
    CIResult r = central_invariants_dirac(f4_pencil(f4), t, "F4", f4_closed_form_roots(f4, t));
    r.method = "fixture";
    return r;
}

G2Pipeline g2_pipeline(const Fixture& g2) {
    G2Pipeline p;
    p.g = g2_algebra();
    p.slice = slice_bases(p.g, fixture_gamma(g2));
    p.system = dirac_system(p.g, p.slice);
    p.reduced = dirac_reduce(p.system);
    auto tu = g2.polys("flat_coordinates");
    if (tu.size() != 2) throw FixtureError("G2 flat_coordinates must list two polynomials");
    std::vector<Var> t{tv(1), tv(2)}, uu{u(1), u(2)};
    p.flat = change_coordinates(p.reduced, tu, t, invert_triangular(tu, uu, t));
    p.canonical = g2.polys("canonical");
    return p;
}

CIResult g2_invariants(const G2Pipeline& p, const std::map<Var, Rational>& t) {
    std::vector<Complex> ref;
    for (const auto& c : p.canonical) ref.push_back(to_complex(c.value(t)));
    return central_invariants_dirac(p.flat, t, "G2", ref);
}

} // namespace cinv
