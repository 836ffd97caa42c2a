#include "cinv/lax.hpp"

namespace cinv {

char series_letter(Series s) { return "ABCD"[int(s)]; }

Series parse_series(const std::string& s) {
    if (s == "A" || s == "a") return Series::A;
    if (s == "B" || s == "b") return Series::B;
    if (s == "C" || s == "c") return Series::C;
    if (s == "D" || s == "d") return Series::D;
    throw ConfigError("unknown series '" + s + "' (expected A, B, C or D)");
}

void LaxSpec::validate() const {
    if (order < 0) throw ConfigError("eps order must be non-negative");
    if (n < 1) throw ConfigError("rank must be at least 1");
    if (series == Series::D && n < 3) throw ConfigError("D series requires rank >= 3");
}

int LaxSpec::nu() const {
    switch (series) {
    case Series::B: return 0;
    case Series::C: return 1;
    case Series::D: return 2;
    default: throw ConfigError("nu is defined only for B, C, D");
    }
}

int LaxSpec::lax_order() const { return series == Series::A ? n + 1 : 2 * n + 1 - nu(); }

Symbol build_lax_a(int n, int order, JetPolicy policy) {
    Symbol L = Symbol::p_power(n + 1, order, policy);
    for (int i = 1; i <= n; ++i) L.add(i - 1, 0, DiffPoly(u(i)));
    return L;
}

namespace {

int symmetry_sign(Series s) { return s == Series::C ? -1 : 1; }

// Power of D multiplying v_i.
int v_power(Series s, int i) {
    switch (s) {
    case Series::B: return 2 * i - 2;
    case Series::C: return 2 * i - 3;
    case Series::D: return 2 * i - 4;
    default: return 0;
    }
}

int first_v(Series s) { return s == Series::B ? 1 : 2; }

} // namespace

Symbol symmetry_defect(const LaxSpec& spec, const Symbol& L) {
    Symbol adj = adjoint(L);
    return symmetry_sign(spec.series) > 0 ? L + adj : L - adj;
}

Symbol build_lax_bcd(const LaxSpec& spec, JetPolicy policy) {
    spec.validate();
    if (spec.series == Series::A) throw ConfigError("build_lax_bcd called for the A series");
    const int n = spec.n, K = spec.order;
    Symbol L = Symbol::p_power(spec.lax_order(), K, policy);
    switch (spec.series) {
    case Series::B:
        for (int i = 1; i <= n; ++i) L.add(2 * i - 1, 0, DiffPoly(u(i)));
        break;
    case Series::C:
        for (int i = 1; i <= n; ++i) L.add(2 * i - 2, 0, DiffPoly(u(i)));
        break;
    case Series::D: {
        for (int i = 2; i <= n; ++i) L.add(2 * i - 3, 0, DiffPoly(u(i)));
        Symbol rho = Symbol::scalar(DiffPoly(var_of(VarKind::Rho)), K, policy);
        L += star(star(rho, Symbol::p_power(-1, K, policy)), rho);
        break;
    }
    default: break;
    }
    for (int i = n; i >= first_v(spec.series); --i) {
        int m = v_power(spec.series, i);
        Symbol defect = symmetry_defect(spec, L);
        Symbol v(K, policy);
        for (int e = 0; e <= K; ++e) v.add(0, e, defect.coeff(m, e) * Rational(-1, 2));
        L += star(v, Symbol::p_power(m, K, policy));
    }
    if (!symmetry_defect(spec, L).is_zero())
        throw InvariantViolation("Lax operator symmetry condition has no solution for " +
                                 std::string(1, series_letter(spec.series)) + std::to_string(n));
    return L;
}

Symbol build_lax(const LaxSpec& spec, JetPolicy policy) {
    spec.validate();
    if (spec.series == Series::A) return build_lax_a(spec.n, spec.order, policy);
    return build_lax_bcd(spec, policy);
}

DiffPoly lax_v_coefficient(const LaxSpec& spec, const Symbol& L, int i) {
    if (spec.series == Series::A || i < first_v(spec.series) || i > spec.n)
        throw std::invalid_argument("no correction coefficient with this index");
    int m = v_power(spec.series, i);
    DiffPoly r;
    Var e = var_of(VarKind::Eps);
    for (int k = 0; k <= L.order(); ++k) r += L.coeff(m, k) * DiffPoly::monomial(Monomial::of(e, k));
    return r;
}

namespace {

bool is_field(VarKind k) { return k == VarKind::U || k == VarKind::Rho || k == VarKind::V; }

DiffPoly drop_field_jets(const DiffPoly& p) {
    DiffPoly out;
    for (const auto& [m, c] : p.terms()) {
        bool keep = true;
        int rho = 0;
        Monomial rest;
        m.for_each([&](Var v, int e) {
            if (is_field(v.kind) && v.jet > 0) keep = false;
            if (v.kind == VarKind::Rho)
                rho = e;
            else
                rest = rest * Monomial::of(v, e);
        });
        if (!keep) continue;
        if (rho % 2 != 0) throw InvariantViolation("odd power of rho survives jet suppression");
        out.add_term(rest * Monomial::of(u(1), rho / 2), c);
    }
    return out;
}

} // namespace

Symbol suppress_jets(const Symbol& s) {
    Symbol out(s.order(), JetPolicy::fields_constant());
    for (const auto& [k, c] : s.terms()) out.add(k.first, k.second, drop_field_jets(c));
    return out;
}

Symbol bracket_lax(const LaxSpec& spec) { return suppress_jets(build_lax(spec)); }

DiffPoly dispersionless_poly(const Symbol& L, int shift) {
    DiffPoly r;
    Var p = var_of(VarKind::P);
    for (const auto& [k, c] : L.terms()) {
        if (k.second != 0) continue;
        if (k.first + shift < 0) throw std::domain_error("negative power in dispersionless symbol");
        r += drop_field_jets(c) * DiffPoly::monomial(Monomial::of(p, k.first + shift));
    }
    return r;
}

DiffPoly lambda_a(int n) {
    return dispersionless_poly(build_lax_a(n, 0, JetPolicy::fields_constant()));
}

LambdaPoly lambda_forms(const LaxSpec& spec) {
    spec.validate();
    if (spec.series == Series::A) throw ConfigError("lambda_forms applies to B, C, D");
    LambdaPoly out;
    out.series = spec.series;
    out.n = spec.n;
    Var P = var_of(VarKind::CapP), p = var_of(VarKind::P);
    out.Lambda = DiffPoly::monomial(Monomial::of(P, spec.n));
    for (int i = 1; i <= spec.n; ++i) out.Lambda += DiffPoly(u(i)) * DiffPoly::monomial(Monomial::of(P, i - 1));
    out.lambda_shift = spec.series == Series::D ? 1 : 0;
    LaxSpec s0 = spec;
    s0.order = 0;
    out.lambda_p = dispersionless_poly(bracket_lax(s0), out.lambda_shift);
    out.tilde = spec.series == Series::D ? RatFunc(out.Lambda, DiffPoly(P)) : RatFunc(out.Lambda);

    DiffPoly sub = out.Lambda.substitute(P, DiffPoly(p) * DiffPoly(p));
    if (spec.series == Series::B) sub = sub * DiffPoly(p);
    if (sub != out.lambda_p)
        throw InvariantViolation("Lambda substitution does not reproduce the Lax symbol");
    return out;
}

} // namespace cinv
