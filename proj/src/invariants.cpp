#include "cinv/invariants.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>

namespace cinv {

namespace mp = boost::multiprecision;
using Real = mp::cpp_bin_float_50;

Complex to_complex(const Rational& r) {
    Real num(r.get_num().get_str()), den(r.get_den().get_str());
    return Complex(num / den);
}

namespace {

// Dense univariate polynomial, ascending coefficients.
using UPoly = std::vector<Rational>;

UPoly product_of_roots(const std::vector<Rational>& roots, const Rational& lead) {
    UPoly p{lead};
    for (const auto& r : roots) {
        UPoly q(p.size() + 1, Rational(0));
        for (size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] -= r * p[i];
        }
        p = q;
    }
    return p;
}

UPoly derivative(const UPoly& p) {
    UPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(long(i)));
    return d;
}

UPoly integral(const UPoly& p, const Rational& c0) {
    UPoly q{c0};
    for (size_t i = 0; i < p.size(); ++i) q.push_back(p[i] / Rational(long(i + 1)));
    return q;
}

template <class T>
T eval(const UPoly& p, const T& x) {
    T r(0);
    for (size_t i = p.size(); i-- > 0;) r = r * x + T(p[i]);
    return r;
}

template <>
Complex eval(const UPoly& p, const Complex& x) {
    Complex r(0);
    for (size_t i = p.size(); i-- > 0;) r = r * x + to_complex(p[i]);
    return r;
}

Real cabs(const Complex& z) { return mp::abs(z); }

// Aberth-Ehrlich iteration followed by Newton polishing.
std::vector<Complex> poly_roots(UPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    const int deg = int(p.size()) - 1;
    if (deg < 1) return {};
    UPoly dp = derivative(p);
    Real bound = 0;
    for (int i = 0; i < deg; ++i) bound = std::max(bound, Real(mp::abs(to_complex(p[i] / p[deg]))));
    bound += 1;
    std::vector<Complex> z(deg);
    const Real two_pi = 2 * mp::acos(Real(-1));
    for (int k = 0; k < deg; ++k) {
        Real ang = two_pi * k / deg + Real(0.4);
        z[k] = Complex(bound * mp::cos(ang), bound * mp::sin(ang));
    }
    const Real tol("1e-45");
    for (int it = 0; it < 2000; ++it) {
        Real worst = 0;
        for (int k = 0; k < deg; ++k) {
            Complex v = eval(p, z[k]), dv = eval(dp, z[k]);
            if (cabs(v) == 0) continue;
            Complex ratio = v / dv;
            Complex sum(0);
            for (int j = 0; j < deg; ++j)
                if (j != k) sum += Complex(1) / (z[k] - z[j]);
            Complex w = ratio / (Complex(1) - ratio * sum);
            z[k] -= w;
            worst = std::max(worst, cabs(w));
        }
        if (worst < tol) break;
    }
    return z;
}

// Continued-fraction recovery of a rational from a numeric value.
std::optional<Rational> rationalize(const Complex& z) {
    Real re = z.real(), im = z.imag();
    if (mp::abs(im) > Real("1e-30") * (1 + mp::abs(re))) return std::nullopt;
    Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    Real x = re;
    for (int it = 0; it < 60; ++it) {
        Real fl = mp::floor(x);
        Integer a(mp::cpp_int(fl).str());
        Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (k1 > Integer("1000000000000000")) break;
        Real frac = x - fl;
        Rational cand(h1, k1);
        cand.canonicalize();
        if (mp::abs(to_complex(cand).real() - re) < Real("1e-35") * (1 + mp::abs(re))) return cand;
        if (frac == 0) break;
        x = 1 / frac;
    }
    return std::nullopt;
}

} // namespace

namespace {

int free_index(Series s) { return s == Series::D ? 2 : 1; }

// Lambda(P) (B, C, D) or lambda(p) (A) as a dense polynomial in the sample u.
UPoly symbol_poly(Series s, int n, const std::vector<Rational>& u) {
    UPoly p(s == Series::A ? n + 2 : n + 1, Rational(0));
    p.back() = 1;
    for (int i = 1; i <= n; ++i) p[i - 1] += u[i - 1];
    return p;
}

bool less_re_im(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

void check_distinct_exact(const std::vector<Rational>& v, const char* what) {
    std::set<Rational> seen(v.begin(), v.end());
    if (seen.size() != v.size()) throw DegeneratePoint(std::string("repeated ") + what);
}

void fill_numeric(CanonicalData& c) {
    c.points_num.clear();
    c.values_num.clear();
    for (const auto& x : c.points) c.points_num.push_back(to_complex(x));
    for (const auto& x : c.values) c.values_num.push_back(to_complex(x));
}

} // namespace

UnivariateRoots univariate_roots(std::vector<Rational> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    UnivariateRoots out;
    out.numeric = poly_roots(coeffs);
    std::sort(out.numeric.begin(), out.numeric.end(), less_re_im);
    out.exact = true;
    for (const auto& z : out.numeric) {
        auto r = rationalize(z);
        if (!r || eval(coeffs, *r) != 0) {
            out.exact = false;
            break;
        }
        out.rational.push_back(*r);
    }
    if (!out.exact) out.rational.clear();
    std::sort(out.rational.begin(), out.rational.end());
    return out;
}

CanonicalData canonical_from_points(Series s, int n, std::vector<Rational> points, const Rational& free_value) {
    LaxSpec{s, n, 0}.validate();
    CanonicalData c;
    c.series = s;
    c.n = n;
    c.u.assign(n, Rational(0));
    check_distinct_exact(points, "critical points");
    if (s == Series::A) {
        if (int(points.size()) != n) throw ConfigError("A_n needs n critical points");
        UPoly lam = integral(product_of_roots(points, Rational(n + 1)), free_value);
        if (lam[n] != 0) throw ConfigError("A_n critical points must sum to zero");
        for (int i = 1; i <= n; ++i) c.u[i - 1] = lam[i - 1];
        std::sort(points.begin(), points.end());
        c.points = points;
        for (const auto& r : points) c.values.push_back(eval(lam, r));
    } else if (s == Series::B || s == Series::C) {
        if (int(points.size()) != n - 1) throw ConfigError("B_n/C_n need n-1 nonzero critical points");
        for (const auto& r : points)
            if (r == 0) throw ConfigError("B_n/C_n critical points must be nonzero");
        UPoly lam = integral(product_of_roots(points, Rational(n)), free_value);
        for (int i = 1; i <= n; ++i) c.u[i - 1] = lam[i - 1];
        std::sort(points.begin(), points.end());
        points.push_back(Rational(0));
        c.points = points;
        c.special = n - 1;
        for (const auto& r : points) c.values.push_back(eval(lam, r));
    } else {
        if (int(points.size()) != n) throw ConfigError("D_n needs n nonzero roots");
        Rational inv = 0;
        for (const auto& r : points) {
            if (r == 0) throw ConfigError("D_n roots must be nonzero");
            inv += 1 / r;
        }
        if (inv != 0) throw ConfigError("D_n roots must satisfy sum 1/R = 0");
        // P Lambda' - Lambda = (n-1) P^n + sum_i (i-2) u_i P^(i-1)
        UPoly num = product_of_roots(points, Rational(n - 1));
        for (int i = 1; i <= n; ++i)
            c.u[i - 1] = i == 2 ? free_value : num[i - 1] / Rational(i - 2);
        UPoly lam = symbol_poly(s, n, c.u);
        c.points = points;
        for (const auto& r : points) c.values.push_back(eval(lam, r) / r);
        std::vector<size_t> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return c.values[a] < c.values[b]; });
        std::vector<Rational> pts, vals;
        for (size_t i : idx) {
            pts.push_back(c.points[i]);
            vals.push_back(c.values[i]);
        }
        c.points = pts;
        c.values = vals;
    }
    check_distinct_exact(c.values, "critical values");
    fill_numeric(c);
    return c;
}

CanonicalData random_sample(Series s, int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto canonical_pick = [&]() {
        int num = std::uniform_int_distribution<int>(-9, 9)(rng);
        int den = std::uniform_int_distribution<int>(1, 3)(rng);
        Rational r(num, den);
        r.canonicalize();
        return r;
    };
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Rational> pts;
        std::set<Rational> seen;
        while (int(pts.size()) < n - 1) {
            Rational r = canonical_pick();
            if (r == 0 || seen.count(r)) continue;
            seen.insert(r);
            pts.push_back(r);
        }
        if (s == Series::A) {
            Rational sum = 0;
            for (const auto& r : pts) sum += r;
            pts.push_back(-sum);
        } else if (s == Series::D) {
            Rational inv = 0;
            for (const auto& r : pts) inv += 1 / r;
            if (inv == 0) continue;
            pts.push_back(-1 / inv);
        }
        Rational free_value = canonical_pick();
        try {
            return canonical_from_points(s, n, pts, free_value);
        } catch (const ConfigError&) {
        } catch (const DegeneratePoint&) {
        }
    }
    throw DegeneratePoint("no generic sample found");
}

CanonicalData canonical_coordinates(Series s, int n, const std::vector<Rational>& u) {
    LaxSpec{s, n, 0}.validate();
    if (int(u.size()) != n) throw ConfigError("sample must have n coordinates");
    UPoly lam = symbol_poly(s, n, u);
    UPoly crit;
    if (s == Series::D) {
        UPoly d = derivative(lam);
        crit.assign(lam.size(), Rational(0));
        for (size_t i = 0; i < d.size(); ++i) crit[i + 1] += d[i];
        for (size_t i = 0; i < lam.size(); ++i) crit[i] -= lam[i];
        if (u[0] == 0) throw DegeneratePoint("u_1 = 0: a root of P Lambda' - Lambda sits at P = 0");
    } else {
        crit = derivative(lam);
    }
    std::vector<Complex> roots = poly_roots(crit);

    std::vector<Rational> exact_roots;
    for (const auto& z : roots) {
        auto r = rationalize(z);
        if (!r || eval(crit, *r) != 0) break;
        exact_roots.push_back(*r);
    }
    if (exact_roots.size() == roots.size()) {
        CanonicalData c = canonical_from_points(s, n, exact_roots, u[free_index(s) - 1]);
        if (c.u != u) throw InvariantViolation("canonical data does not reproduce the sample");
        return c;
    }

    CanonicalData c;
    c.series = s;
    c.n = n;
    c.u = u;
    c.exact = false;
    std::vector<Complex> pts = roots;
    std::sort(pts.begin(), pts.end(), static_cast<bool (*)(const Complex&, const Complex&)>(less_re_im));
    if (s == Series::B || s == Series::C) {
        pts.push_back(Complex(0));
        c.special = n - 1;
    }
    std::vector<Complex> vals;
    for (const auto& z : pts) vals.push_back(s == Series::D ? eval(lam, z) / z : eval(lam, z));
    if (s == Series::D) {
        std::vector<size_t> idx(pts.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return less_re_im(vals[a], vals[b]); });
        std::vector<Complex> p2, v2;
        for (size_t i : idx) {
            p2.push_back(pts[i]);
            v2.push_back(vals[i]);
        }
        pts = p2;
        vals = v2;
    }
    for (size_t i = 0; i < vals.size(); ++i)
        for (size_t j = i + 1; j < vals.size(); ++j)
            if (cabs(vals[i] - vals[j]) < Real("1e-12")) throw DegeneratePoint("critical values coincide");
    c.points_num = pts;
    c.values_num = vals;
    return c;
}

namespace {

// Row i of d lambda^i / d u_k: r^(k-1) for A, B, C and r^(k-2) for D.
template <class T>
std::vector<T> jac_row(Series s, int n, const T& r) {
    std::vector<T> row(n);
    T pw(1);
    int start = s == Series::D ? 1 : 0;
    for (int k = start; k < n; ++k) {
        row[k] = pw;
        pw *= r;
    }
    if (s == Series::D) row[0] = T(1) / r;
    return row;
}

} // namespace

QMatrix CanonicalData::jacobian() const {
    if (!exact) throw ConfigError("exact Jacobian requested for numeric canonical data");
    QMatrix j(n, n);
    for (int i = 0; i < n; ++i) {
        auto row = jac_row<Rational>(series, n, points[i]);
        for (int k = 0; k < n; ++k) j(i, k) = row[k];
    }
    return j;
}

std::vector<std::vector<Complex>> CanonicalData::jacobian_num() const {
    std::vector<std::vector<Complex>> j;
    for (int i = 0; i < n; ++i) j.push_back(jac_row<Complex>(series, n, points_num[i]));
    return j;
}

namespace {

bool negligible(const Rational& x) { return x == 0; }
bool negligible(const Complex& x) { return cabs(x) < Real("1e-25"); }

template <class T>
void store(CIResult& out, const std::vector<T>& lambda, const std::vector<T>& f, const std::vector<T>& q1,
           const std::vector<T>& q2, const typename CanonicalTensors<T>::M& p1, const typename CanonicalTensors<T>::M& p2,
           const std::vector<T>& c) {
    if constexpr (std::is_same_v<T, Rational>) {
        out.exact = true;
        out.lambda = lambda;
        out.f = f;
        out.Q1 = q1;
        out.Q2 = q2;
        out.c = c;
        const size_t n = lambda.size();
        out.P1 = QMatrix(n, n);
        out.P2 = QMatrix(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                out.P1(i, j) = p1[i][j];
                out.P2(i, j) = p2[i][j];
            }
        for (const auto& x : lambda) out.lambda_num.push_back(to_complex(x));
        for (const auto& x : c) out.c_num.push_back(to_complex(x));
    } else {
        out.exact = false;
        out.lambda_num = lambda;
        out.c_num = c;
    }
}

template <class T>
CIResult fc_impl(const CanonicalTensors<T>& t) {
    const size_t n = t.lambda.size();
    auto dim_ok = [&](const typename CanonicalTensors<T>::M& m) {
        if (m.size() != n) return false;
        for (const auto& row : m)
            if (row.size() != n) return false;
        return true;
    };
    if (!dim_ok(t.g1) || !dim_ok(t.g2) || !dim_ok(t.P1) || !dim_ok(t.P2) || !dim_ok(t.Q1) || !dim_ok(t.Q2))
        throw ConfigError("canonical tensors have inconsistent sizes");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i != j && (!negligible(t.g1[i][j]) || !negligible(t.g2[i][j])))
                throw InvariantViolation("metrics are not diagonal in canonical coordinates");
            if (i < j && negligible(t.lambda[i] - t.lambda[j])) throw DegeneratePoint("canonical coordinates coincide");
        }
    std::vector<T> f(n), q1(n), q2(n), c(n);
    for (size_t i = 0; i < n; ++i) {
        f[i] = t.g1[i][i];
        if (negligible(f[i])) throw DegeneratePoint("f^i vanishes at the sample");
        if (!negligible(t.g2[i][i] - t.lambda[i] * f[i]))
            throw InvariantViolation("g2 != lambda g1 on the diagonal");
        q1[i] = t.Q1[i][i];
        q2[i] = t.Q2[i][i];
    }
    for (size_t i = 0; i < n; ++i) {
        T s = q2[i] - t.lambda[i] * q1[i];
        for (size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            T d = t.P2[k][i] - t.lambda[i] * t.P1[k][i];
            s += d * d / (f[k] * (t.lambda[k] - t.lambda[i]));
        }
        c[i] = s / (T(3) * f[i] * f[i]);
    }
    CIResult out;
    store<T>(out, t.lambda, f, q1, q2, t.P1, t.P2, c);
    return out;
}

template <class T>
typename CanonicalTensors<T>::M congruence(const std::vector<std::vector<T>>& J, const QMatrix& C) {
    const size_t n = J.size();
    typename CanonicalTensors<T>::M tmp(n, std::vector<T>(n, T(0))), out(n, std::vector<T>(n, T(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t b = 0; b < n; ++b)
            for (size_t a = 0; a < n; ++a) {
                if (C(a, b) == 0) continue;
                if constexpr (std::is_same_v<T, Rational>)
                    tmp[i][b] += J[i][a] * C(a, b);
                else
                    tmp[i][b] += J[i][a] * to_complex(C(a, b));
            }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t b = 0; b < n; ++b) out[i][j] += tmp[i][b] * J[j][b];
    return out;
}

QMatrix evaluate_block(const BracketCoeffTable& t, int s, const std::map<Var, Rational>& at) {
    const int n = t.spec.n;
    QMatrix m(n, n);
    const auto& C = t.C.at(s);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = C[i][j].value(at);
    return m;
}

} // namespace

CIResult central_invariant_formula(const CanonicalTensors<Rational>& t) { return fc_impl(t); }
CIResult central_invariant_formula(const CanonicalTensors<Complex>& t) { return fc_impl(t); }

CIResult central_invariants(const BracketCoeffTable& first, const BracketCoeffTable& second,
                            const CanonicalData& canon) {
    for (const auto* t : {&first, &second})
        if (t->spec.series != canon.series || t->spec.n != canon.n)
            throw ConfigError("bracket tables and sample belong to different operators");
    if (first.which != 1 || second.which != 2) throw ConfigError("tables must be the first and second brackets");
    std::map<Var, Rational> at;
    for (int i = 1; i <= canon.n; ++i) at[u(i)] = canon.u[i - 1];
    QMatrix blocks[2][3];
    for (int s = 1; s <= 3; ++s) {
        blocks[0][s - 1] = evaluate_block(first, s, at);
        blocks[1][s - 1] = evaluate_block(second, s, at);
    }
    auto build = [&](const auto& J, auto& t) {
        t.g1 = congruence(J, blocks[0][0]);
        t.g2 = congruence(J, blocks[1][0]);
        t.P1 = congruence(J, blocks[0][1]);
        t.P2 = congruence(J, blocks[1][1]);
        t.Q1 = congruence(J, blocks[0][2]);
        t.Q2 = congruence(J, blocks[1][2]);
    };
    CIResult r;
    if (canon.exact) {
        QMatrix Jm = canon.jacobian();
        std::vector<std::vector<Rational>> J(canon.n, std::vector<Rational>(canon.n));
        for (int i = 0; i < canon.n; ++i)
            for (int k = 0; k < canon.n; ++k) J[i][k] = Jm(i, k);
        CanonicalTensors<Rational> t;
        build(J, t);
        t.lambda = canon.values;
        r = fc_impl(t);
    } else {
        CanonicalTensors<Complex> t;
        build(canon.jacobian_num(), t);
        t.lambda = canon.values_num;
        r = fc_impl(t);
    }
    r.algebra = std::string(1, series_letter(canon.series)) + std::to_string(canon.n);
    r.method = "symbol";
    return r;
}

CIResult central_invariants(const LaxSpec& spec, const CanonicalData& canon) {
    return central_invariants(coefficient_table(spec, 1), coefficient_table(spec, 2), canon);
}

Rational residue_sum(const std::vector<Rational>& r, int i) {
    const int n = int(r.size());
    check_distinct_exact(r, "critical points");
    UPoly lam = integral(product_of_roots(r, Rational(n + 1)), Rational(0));
    UPoly l2 = derivative(derivative(lam));
    Rational s = 0;
    for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        Rational d = r[k] - r[i];
        s += (eval(lam, r[k]) - eval(lam, r[i])) / (eval(l2, r[k]) * d * d);
    }
    return s;
}

bool residue_identity(const std::vector<Rational>& r) {
    const int n = int(r.size());
    Rational expect(1 - n, 2 * (n + 1));
    expect.canonicalize();
    for (int i = 0; i < n; ++i)
        if (residue_sum(r, i) != expect) return false;
    return true;
}

CIResult transform_invariants(const CIResult& c, const PencilChange& k) {
    Rational det = k.det();
    if (det == 0) throw SingularChange("pencil change is singular");
    CIResult out = c;
    if (c.exact) {
        for (size_t i = 0; i < c.c.size(); ++i) {
            Rational den = k.k11 + k.k12 * c.lambda[i];
            if (den == 0) throw SingularChange("kappa_11 + kappa_12 lambda vanishes");
            out.lambda[i] = (k.k21 + c.lambda[i] * k.k22) / den;
            out.c[i] = den * c.c[i] / det;
            out.lambda_num[i] = to_complex(out.lambda[i]);
            out.c_num[i] = to_complex(out.c[i]);
        }
    } else {
        for (size_t i = 0; i < c.c_num.size(); ++i) {
            Complex den = to_complex(k.k11) + to_complex(k.k12) * c.lambda_num[i];
            if (negligible(den)) throw SingularChange("kappa_11 + kappa_12 lambda vanishes");
            out.lambda_num[i] = (to_complex(k.k21) + c.lambda_num[i] * to_complex(k.k22)) / den;
            out.c_num[i] = den * c.c_num[i] / to_complex(det);
        }
    }
    return out;
}

CIResult lie_formula(const RootSystem& rs) {
    QMatrix g = rs.coroot_gram();
    CIResult out;
    out.algebra = rs.type.str();
    out.method = "lie";
    for (int i = 0; i < rs.type.rank; ++i) {
        // (alpha^vee, alpha^vee) = 2 / d_i when long roots have length^2 2.
        if (g(i, i) != Rational(2) / rs.half_lengths[i])
            throw InvariantViolation("normalized form disagrees with the root lengths");
        out.c.push_back(g(i, i) / Rational(48));
        out.c_num.push_back(to_complex(out.c.back()));
    }
    return out;
}

Rational normalized_form_scale(Series s) {
    switch (s) {
    case Series::B:
    case Series::D: return Rational(1, 2);
    default: return Rational(1);
    }
}

std::vector<Folding> standard_foldings(int max_rank) {
    std::vector<Folding> out;
    for (int n = 2; n <= max_rank; ++n) {
        Folding f{{'D', n + 1}, {'B', n}, {}};
        for (int i = 0; i < n - 1; ++i) f.orbits.push_back({i});
        f.orbits.push_back({n - 1, n});
        out.push_back(f);
    }
    for (int n = 2; n <= max_rank; ++n) {
        Folding f{{'A', 2 * n - 1}, {'C', n}, {}};
        for (int j = 0; j < n - 1; ++j) f.orbits.push_back({j, 2 * n - 2 - j});
        f.orbits.push_back({n - 1});
        out.push_back(f);
    }
    out.push_back({{'E', 6}, {'F', 4}, {{1}, {3}, {2, 4}, {0, 5}}});
    out.push_back({{'D', 4}, {'G', 2}, {{0, 2, 3}, {1}}});
    out.push_back({{'B', 3}, {'G', 2}, {{0, 2}, {1}}});
    return out;
}

FoldingReport folding_check(const Folding& f) {
    FoldingReport rep;
    RootSystem src = root_system(f.from), dst = root_system(f.to);
    const int m = int(f.orbits.size());
    if (m != f.to.rank) throw ConfigError("folding has the wrong number of orbits");

    rep.orbits_disconnected = true;
    for (const auto& orb : f.orbits)
        for (int a : orb)
            for (int b : orb)
                if (adjacent(src.cartan, a, b)) rep.orbits_disconnected = false;

    // Cartan matrix of the subalgebra generated by the orbit sums.
    bool consistent = true;
    for (int J = 0; J < m; ++J)
        for (int K = 0; K < m; ++K) {
            std::set<Rational> seen;
            for (int k : f.orbits[K]) {
                Rational s = 0;
                for (int j : f.orbits[J]) s += src.cartan(j, k);
                seen.insert(s);
            }
            if (seen.size() != 1 || *seen.begin() != dst.cartan(J, K)) consistent = false;
        }
    rep.cartan_consistent = consistent;

    CIResult cs = lie_formula(src), cd = lie_formula(dst);
    rep.target = cd.c;
    rep.additive = true;
    for (int J = 0; J < m; ++J) {
        Rational s = 0;
        for (int j : f.orbits[J]) s += cs.c[j];
        rep.folded.push_back(s);
        if (s != cd.c[J]) rep.additive = false;
    }
    return rep;
}

} // namespace cinv
