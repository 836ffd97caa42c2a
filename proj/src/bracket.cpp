#include "cinv/bracket.hpp"

#include <sstream>

namespace cinv {

namespace {

const Var kLam = var_of(VarKind::Lam);

DiffPoly mono(Var v, int e) { return DiffPoly::monomial(Monomial::of(v, e)); }

// f + w * sum_{k>=1} eps^k/k! d_p^k d_x^k f
Symbol dressed(const Symbol& f, const Rational& w) {
    Symbol out = f;
    Symbol cur = f;
    Integer fact = 1;
    for (int k = 1; k <= f.order(); ++k) {
        cur = cur.dp(1).dx(1);
        fact *= k;
        if (cur.is_zero()) break;
        out += cur.eps_shift(k).scaled(w / Rational(fact));
    }
    return out;
}

} // namespace

int dual_power(Series s, int i) {
    if (s == Series::A) return i - 1;
    LaxSpec t{s, 3, 0};
    return 2 * i - 1 - t.nu();
}

TestSymbols variational_symbols(Series s, int n, int count, int order) {
    if (count == 0) count = n;
    JetPolicy jp = JetPolicy::fields_constant();
    Symbol f(order, jp), g(order, jp);
    for (int i = 1; i <= count; ++i) {
        int m = -(dual_power(s, i) + 1);
        f.add(m, 0, DiffPoly(var_of(VarKind::A, i)));
        g.add(m, 0, DiffPoly(var_of(VarKind::B, i)));
    }
    Rational w = s == Series::A ? Rational(1) : Rational(1, 2);
    return {dressed(f, w), dressed(g, w), count};
}

Symbol bracket_integrand(const LaxSpec& spec, const Symbol& L, const TestSymbols& xy, int which) {
    const Symbol& X = xy.X;
    const Symbol& Y = xy.Y;
    if (which != 1 && which != 2) throw ConfigError("bracket index must be 1 or 2");
    if (which == 2) {
        Symbol T = star(star(star(L, Y).positive_part(), L), X) - star(star(X, L), star(Y, L).positive_part());
        if (spec.series == Series::A) {
            Symbol gy = gy_correction(L, Y);
            T += star(X, commutator(L, gy)).scaled(Rational(1, spec.n + 1));
        }
        return T;
    }
    Symbol Dop = Symbol::p_power(1, L.order(), L.policy());
    switch (spec.series) {
    case Series::A: return star(Y, star(X, L)) - star(X, star(Y, L));
    case Series::B: return star(L, star(star(Y, Dop), X) - star(star(X, Dop), Y));
    case Series::C: return star(L, star(Y, X) - star(X, Y));
    case Series::D: {
        Symbol Xp = X.positive_part(), Yp = Y.positive_part();
        Symbol Xm = X.negative_part(), Ym = Y.negative_part();
        return star(L, star(star(Xp, Dop), Yp) - star(star(Yp, Dop), Xp) + star(star(Ym, Dop), Xm) -
                           star(star(Xm, Dop), Ym));
    }
    }
    return Symbol();
}

DeltaExpansion delta_normal_form(const DiffPoly& density) {
    DeltaExpansion out;
    for (const auto& [m, c] : density.terms()) {
        int ia = 0, ja = 0, ka = 0, lb = 0, e = 0, na = 0, nb = 0;
        Monomial rest;
        m.for_each([&](Var v, int ex) {
            switch (v.kind) {
            case VarKind::A:
                na += ex;
                ia = v.index;
                ka = v.jet;
                break;
            case VarKind::B:
                nb += ex;
                ja = v.index;
                lb = v.jet;
                break;
            case VarKind::Eps: e = ex; break;
            default:
                if (v.jet != 0) throw InvariantViolation("field jet in a jets-suppressed bracket density");
                rest = rest * Monomial::of(v, ex);
            }
        });
        if (na != 1 || nb != 1) throw InvariantViolation("bracket density is not bilinear in the test coefficients");
        Rational sign = ka % 2 ? Rational(-1) : Rational(1);
        std::array<int, 4> key{ia, ja, ka + lb, e};
        DiffPoly& slot = out[key];
        slot.add_term(rest, c * sign);
        if (slot.is_zero()) out.erase(key);
    }
    return out;
}

DeltaExpansion bracket_expansion(const LaxSpec& spec, const Symbol& L, const TestSymbols& xy, int which) {
    Symbol T = bracket_integrand(spec, L, xy, which);
    DeltaExpansion out;
    for (const auto& [e, r] : T.residue()) {
        DeltaExpansion nf = delta_normal_form(r);
        if (e == 0) {
            if (!nf.empty()) throw InvariantViolation("eps^-1 term survives in the bracket");
            continue;
        }
        for (auto& [k, c] : nf) out[{k[0], k[1], k[2], e - 1}] = c;
    }
    return out;
}

namespace {

BracketCoeffTable table_from_expansion(const LaxSpec& spec, int which, int count, const DeltaExpansion& ex) {
    BracketCoeffTable t;
    t.spec = spec;
    t.which = which;
    t.count = count;
    for (int s = 1; s <= kBracketOrder; ++s)
        t.C[s] = std::vector<std::vector<DiffPoly>>(count, std::vector<DiffPoly>(count));
    for (const auto& [k, c] : ex) {
        int i = k[0], j = k[1], s = k[2], e = k[3];
        if (e != s - 1)
            throw InvariantViolation("bracket term eps^" + std::to_string(e) + " delta^(" + std::to_string(s) +
                                     ") outside the expected grading");
        if (s < 1 || s > kBracketOrder) throw InvariantViolation("delta order outside the computed range");
        t.C[s][i - 1][j - 1] = c;
    }
    for (const auto& [s, mat] : t.C) {
        TwoVarSymbol a;
        for (int i = 1; i <= count; ++i)
            for (int j = 1; j <= count; ++j)
                a.add(dual_power(spec.series, i), dual_power(spec.series, j), 0, mat[i - 1][j - 1]);
        t.A[{0, s}] = a;
    }
    return t;
}

} // namespace

PolyMatrix BracketCoeffTable::matrix(int s) const {
    const int n = spec.n;
    PolyMatrix m(n, n);
    const auto& c = C.at(s);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = c[i][j];
    return m;
}

std::string BracketCoeffTable::serialize() const {
    std::ostringstream os;
    os << "series " << series_letter(spec.series) << "\nrank " << spec.n << "\nbracket " << which << "\n";
    for (const auto& [s, mat] : C)
        for (size_t i = 0; i < mat.size(); ++i)
            for (size_t j = 0; j < mat[i].size(); ++j)
                if (!mat[i][j].is_zero()) os << "C " << s << " " << i + 1 << " " << j + 1 << " " << mat[i][j].str() << "\n";
    return os.str();
}

BracketCoeffTable coefficient_table(const LaxSpec& spec, int which, int count) {
    spec.validate();
    LaxSpec s = spec;
    s.order = kBracketOrder;
    if (count == 0) count = s.n;
    Symbol L = bracket_lax(s);
    TestSymbols xy = variational_symbols(s.series, s.n, count, kBracketOrder);
    return table_from_expansion(s, which, count, bracket_expansion(s, L, xy, which));
}

std::pair<BracketCoeffTable, BracketCoeffTable> shifted_tables(const LaxSpec& spec, int count) {
    spec.validate();
    LaxSpec s = spec;
    s.order = kBracketOrder;
    if (count == 0) count = s.n;
    Symbol L = bracket_lax(s);
    int shift_power = (s.series == Series::B || s.series == Series::D) ? 1 : 0;
    L.add(shift_power, 0, -DiffPoly(kLam));
    TestSymbols xy = variational_symbols(s.series, s.n, count, kBracketOrder);
    DeltaExpansion ex = bracket_expansion(s, L, xy, 2);
    DeltaExpansion e0, e1;
    for (const auto& [k, c] : ex) {
        for (const auto& [d, cd] : c.coefficients_in(kLam)) {
            if (d == 0)
                e0[k] = cd;
            else if (d == 1)
                e1[k] = -cd;
            else
                throw NonLinearInLambda("shifted bracket is not linear in lambda");
        }
    }
    return {table_from_expansion(s, 2, count, e0), table_from_expansion(s, 1, count, e1)};
}

DiffPoly contour_to_capital(const BracketCoeffTable& table, int s) {
    if (table.spec.series == Series::A) throw ConfigError("contour_to_capital applies to B, C, D");
    int nu = table.spec.nu();
    Var P = var_of(VarKind::CapP), Q = var_of(VarKind::CapQ);
    DiffPoly r;
    auto it = table.A.find({0, s});
    if (it == table.A.end()) return r;
    for (const auto& [k, c] : it->second.terms()) {
        if ((k.p + nu) % 2 == 0 || (k.q + nu) % 2 == 0) continue;
        int a = (k.p + nu - 1) / 2, b = (k.q + nu - 1) / 2;
        r += c * mono(P, a) * mono(Q, b);
    }
    return r;
}

DiffPoly generating_a(const BracketCoeffTable& table, int s) {
    auto it = table.A.find({0, s});
    if (it == table.A.end()) return DiffPoly();
    return it->second.to_poly(var_of(VarKind::P), var_of(VarKind::Q));
}

DiffPoly shifted_small_table(const BracketCoeffTable& table, int s, int shift) {
    auto it = table.A.find({0, s});
    if (it == table.A.end()) return DiffPoly();
    TwoVarSymbol t;
    for (const auto& [k, c] : it->second.terms()) t.add(k.p + shift, k.q + shift, k.eps, c);
    return t.to_poly(var_of(VarKind::P), var_of(VarKind::Q));
}

} // namespace cinv
