// Closed-form generating functions for the bracket coefficients.
#include "cinv/bracket.hpp"

namespace cinv {

PolyFrac operator+(const PolyFrac& a, const PolyFrac& b) {
    if (a.den == b.den) return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}

PolyFrac operator-(const PolyFrac& a, const PolyFrac& b) {
    if (a.den == b.den) return {a.num - b.num, a.den};
    return {a.num * b.den - b.num * a.den, a.den * b.den};
}

PolyFrac operator*(const PolyFrac& a, const PolyFrac& b) { return {a.num * b.num, a.den * b.den}; }

PolyFrac frac(const DiffPoly& num, const DiffPoly& den) {
    if (den.is_zero()) throw DegeneratePoint("zero denominator in closed form");
    return {num, den};
}

bool frac_equals(const DiffPoly& computed, const PolyFrac& f) { return computed * f.den == f.num; }

namespace {

const Var kp = var_of(VarKind::P), kq = var_of(VarKind::Q);
const Var kP = var_of(VarKind::CapP), kQ = var_of(VarKind::CapQ);
const Var kLam = var_of(VarKind::Lam);

DiffPoly diff(DiffPoly f, Var v, int k) {
    for (int i = 0; i < k; ++i) f = f.partial(v);
    return f;
}

PolyFrac c(const Rational& r) { return {DiffPoly(r), DiffPoly(1)}; }
PolyFrac pf(const DiffPoly& p) { return {p, DiffPoly(1)}; }

// Derivatives of f(z) and f(w) for a polynomial f in z.
struct Pair {
    std::vector<DiffPoly> z, w;
    Pair(const DiffPoly& f, Var zv, Var wv, int kmax) {
        for (int k = 0; k <= kmax; ++k) {
            z.push_back(diff(f, zv, k));
            w.push_back(z.back().substitute(zv, DiffPoly(wv)));
        }
    }
};

PolyFrac a_series(int n, int which, int s) {
    Pair l(lambda_a(n), kp, kq, 3);
    const auto& P = l.z;
    const auto& Q = l.w;
    DiffPoly d = DiffPoly(kq) - DiffPoly(kp); // q - p
    PolyFrac N = c(Rational(1, n + 1));
    if (which == 1) {
        switch (s) {
        case 1: return frac(P[1] - Q[1], -d);
        case 2: return frac(Q[1] - P[1], d.pow(2)) - frac(Q[2] + P[2], Rational(2) * d);
        case 3:
            return frac(Q[1] - P[1], d.pow(3)) - frac(Q[2] + P[2], Rational(2) * d.pow(2)) +
                   frac(Q[3] - P[3], Rational(6) * d);
        }
    } else {
        DiffPoly w1 = Q[1] * P[0] - Q[0] * P[1];
        DiffPoly w2 = Q[2] * P[0] - Rational(2) * Q[1] * P[1] + Q[0] * P[2];
        switch (s) {
        case 1: return frac(P[1] * Q[0] - Q[1] * P[0], -d) + N * pf(P[1] * Q[1]);
        case 2: return frac(w1, d.pow(2)) - frac(w2, Rational(2) * d) - N * frac(Q[2] * P[1] - Q[1] * P[2], DiffPoly(2));
        case 3: {
            DiffPoly w3 = Q[3] * P[0] - Rational(3) * Q[2] * P[1] + Rational(3) * Q[1] * P[2] - Q[0] * P[3];
            DiffPoly z3 = Rational(2) * Q[3] * P[1] - Rational(3) * Q[2] * P[2] + Rational(2) * Q[1] * P[3];
            return frac(w1, d.pow(3)) - frac(w2, Rational(2) * d.pow(2)) + frac(w3, Rational(6) * d) +
                   N * frac(z3, DiffPoly(12));
        }
        }
    }
    throw ConfigError("closed forms exist for s = 1, 2, 3");
}

// k-th derivative of mu(z) / z^h as a fraction with denominator z^(h+k).
PolyFrac laurent_derivative(const DiffPoly& mu, int h, int k, Var z) {
    DiffPoly num;
    for (const auto& [m, cm] : mu.coefficients_in(z)) {
        Rational ff = 1;
        for (int j = 0; j < k; ++j) ff *= Rational(m - h - j);
        num += cm * ff * DiffPoly::monomial(Monomial::of(z, m));
    }
    return {num, DiffPoly::monomial(Monomial::of(z, h + k))};
}

} // namespace

PolyFrac a_closed_form(int n, int which, int s) {
    if (n < 1) throw ConfigError("rank must be at least 1");
    if (which != 1 && which != 2) throw ConfigError("bracket index must be 1 or 2");
    return a_series(n, which, s);
}

PolyFrac bcd_small_closed_form(const LaxSpec& spec, int s, int* shift) {
    LambdaPoly lf = lambda_forms(spec);
    const int h = lf.lambda_shift;
    if (shift) *shift = h;
    if (s == 2) return c(0);
    std::vector<PolyFrac> P, Q;
    for (int k = 0; k <= 3; ++k) {
        P.push_back(laurent_derivative(lf.lambda_p, h, k, kp));
        PolyFrac q = P.back();
        Q.push_back({q.num.substitute(kp, DiffPoly(kq)), q.den.substitute(kp, DiffPoly(kq))});
    }
    DiffPoly d = DiffPoly(kq) - DiffPoly(kp);
    PolyFrac w1 = Q[1] * P[0] - P[1] * Q[0];
    PolyFrac out;
    if (s == 1) {
        out = w1 * frac(DiffPoly(1), d);
    } else if (s == 3) {
        PolyFrac w2 = Q[2] * P[0] - c(2) * Q[1] * P[1] + P[2] * Q[0];
        out = w1 * frac(DiffPoly(1), Rational(2) * d.pow(3)) - w2 * frac(DiffPoly(1), Rational(4) * d.pow(2)) +
              (Q[1] * P[2] - P[1] * Q[2]) * frac(DiffPoly(1), Rational(4) * d) +
              (Q[3] * P[0] - P[3] * Q[0]) * frac(DiffPoly(1), Rational(6) * d);
    } else {
        throw ConfigError("closed forms exist for s = 1, 2, 3");
    }
    DiffPoly pq = (DiffPoly(kp) * DiffPoly(kq)).pow(h);
    return out * pf(pq);
}

DiffPoly dual_projection(const LaxSpec& spec, const PolyFrac& f, int shift) {
    const int nu = spec.nu();
    // Clear Laurent denominators with (pq)^pad before dividing. Terms below
    // the lowest dual power have no test coefficient to pair with.
    const int pad = f.den.degree_in(kp) + f.den.degree_in(kq);
    DiffPoly padded = f.num * (DiffPoly(kp) * DiffPoly(kq)).pow(pad);
    auto odd = [&](int e) { return (e - shift + nu) % 2 != 0; };
    DiffPoly out;
    for (const auto& [a0, ca] : padded.divide_exact(f.den).coefficients_in(kp)) {
        int a = a0 - pad;
        if (!odd(a) || a < 0) continue;
        for (const auto& [b0, cb] : ca.coefficients_in(kq)) {
            int b = b0 - pad;
            if (!odd(b) || b < 0) continue;
            out += cb * DiffPoly::monomial(Monomial::of(kp, a) * Monomial::of(kq, b));
        }
    }
    return out;
}

PolyFrac r_closed_form(const LaxSpec& spec, int which, int s) {
    LambdaPoly lf = lambda_forms(spec);
    if (which != 1 && which != 2) throw ConfigError("bracket index must be 1 or 2");
    if (s == 2) return c(0);
    if (s != 1 && s != 3) throw ConfigError("closed forms exist for s = 1, 2, 3");
    Pair l(lf.Lambda, kP, kQ, 3);
    const auto& A = l.z; // Lambda^(k)(P)
    const auto& B = l.w; // Lambda^(k)(Q)
    DiffPoly P(kP), Q(kQ);
    DiffPoly d = P - Q;
    DiffPoly L0 = lf.Lambda.substitute(kP, DiffPoly(0));
    const bool is_d = spec.series == Series::D;

    if (s == 1) {
        if (which == 2) return frac(Rational(2) * (P * A[1] * B[0] - Q * B[1] * A[0]), d);
        if (is_d) return frac(Rational(2) * (P * Q * (A[1] - B[1]) + P * B[0] - Q * A[0]), d);
        return frac(Rational(2) * (P * A[1] - Q * B[1]), d);
    }

    if (which == 2) {
        DiffPoly w1 = A[1] * B[0] - B[1] * A[0];
        DiffPoly w2 = A[2] * B[0] - Rational(2) * A[1] * B[1] + A[0] * B[2];
        PolyFrac common = frac(Rational(4) * (P * P * A[3] * B[0] - Q * Q * B[3] * A[0]), Rational(3) * d) +
                          frac(Rational(2) * P * Q * (A[1] * B[2] - B[1] * A[2]), d) -
                          frac(Rational(2) * P * Q * w2, d.pow(2));
        if (is_d) {
            return frac(Rational(4) * P * Q * w1, d.pow(3)) + common - pf(A[1] * B[1]) +
                   frac(P * P * A[1] * B[0] - Q * Q * B[1] * A[0], P * Q * d) -
                   frac(L0 * (P * A[1] + Q * B[1]), P * Q);
        }
        const bool b = spec.series == Series::B;
        DiffPoly k2 = b ? DiffPoly(2) : DiffPoly(1);
        DiffPoly k3 = b ? DiffPoly(3) : DiffPoly(1);
        PolyFrac first = b ? frac((P + Q).pow(2) * w1, d.pow(3))
                           : frac((P * P + Rational(6) * P * Q + Q * Q) * w1, Rational(2) * d.pow(3));
        return first + common + frac(k2 * (P * A[2] * B[0] - Q * B[2] * A[0]), d) + pf(k3 * A[1] * B[1]);
    }

    if (is_d) {
        // t = Lambda / P, t' = (P Lambda' - Lambda) / P^2
        PolyFrac tP1 = frac(P * A[1] - A[0], P * P), tQ1 = frac(Q * B[1] - B[0], Q * Q);
        PolyFrac PQ = pf(P * Q);
        return frac(Rational(4) * P * Q * (P * A[3] - Q * B[3]), Rational(3) * d) -
               frac(Rational(2) * P * Q * (P * A[2] + Q * B[2]), d.pow(2)) +
               c(4) * PQ * (pf(P * P) * tP1 - pf(Q * Q) * tQ1) * frac(DiffPoly(1), d.pow(3)) +
               PQ * (tP1 - tQ1) * frac(DiffPoly(1), d) - frac(L0 * (P + Q), P * Q);
    }
    const bool b = spec.series == Series::B;
    DiffPoly k2 = b ? DiffPoly(2) : DiffPoly(1);
    PolyFrac firstb = b ? frac((P + Q).pow(2) * (A[1] - B[1]), d.pow(3))
                        : frac((P * P + Rational(6) * P * Q + Q * Q) * (A[1] - B[1]), Rational(2) * d.pow(3));
    return firstb + frac(Rational(4) * (P * P * A[3] - Q * Q * B[3]), Rational(3) * d) +
           frac(k2 * (P * A[2] - Q * B[2]), d) - frac(Rational(2) * P * Q * (A[2] + B[2]), d.pow(2));
}

namespace {

// Second-bracket pencil of the generating function, then the first bracket as
// minus the lambda-linear part under the shift of `shift_var`.
DispersionlessPencil pencil_from_second(const PolyFrac& dp2, const PolyFrac& dl2, Var shift_var) {
    DispersionlessPencil out;
    out.dprime[1] = dp2;
    out.delta[1] = dl2;
    DiffPoly sub = DiffPoly(shift_var) - DiffPoly(kLam);
    auto first = [&](const PolyFrac& f) {
        auto cs = f.num.substitute(shift_var, sub).coefficients_in(kLam);
        if (cs.size() > 2 || (cs.size() == 2 && !cs.count(1))) throw NonLinearInLambda("pencil is not linear");
        DiffPoly lin = cs.count(1) ? -cs.at(1) : DiffPoly();
        return PolyFrac{lin, f.den};
    };
    out.dprime[0] = first(dp2);
    out.delta[0] = first(dl2);
    return out;
}

} // namespace

DispersionlessPencil dispersionless_pencil(const LaxSpec& spec) {
    spec.validate();
    if (spec.series == Series::A) {
        const int n = spec.n;
        DiffPoly lp = lambda_a(n);
        DiffPoly lxp = lp.dx();
        auto at_q = [](const DiffPoly& f) { return f.substitute(kp, DiffPoly(kq)); };
        DiffPoly lq = at_q(lp), lxq = at_q(lxp);
        DiffPoly l1p = lp.partial(kp), l1q = lq.partial(kq), lx1q = lxq.partial(kq);
        DiffPoly d = DiffPoly(kp) - DiffPoly(kq);
        PolyFrac N = c(Rational(1, n + 1));
        PolyFrac dp2 = frac(l1p * lq - l1q * lp, d) + N * pf(l1p * l1q);
        PolyFrac dl2 = frac(lxp * lq - lxq * lp, d.pow(2)) + frac(lxq * l1p - lx1q * lp, d) + N * pf(l1p * lx1q);
        return pencil_from_second(dp2, dl2, u(1));
    }
    LambdaPoly lf = lambda_forms(spec);
    DiffPoly LP = lf.Lambda, LxP = LP.dx();
    auto at_Q = [](const DiffPoly& f) { return f.substitute(kP, DiffPoly(kQ)); };
    DiffPoly LQ = at_Q(LP), LxQ = at_Q(LxP);
    DiffPoly P(kP), Q(kQ), d = P - Q;
    DiffPoly L1P = LP.partial(kP), L1Q = LQ.partial(kQ), Lx1Q = LxQ.partial(kQ);
    PolyFrac dp2 = frac(Rational(2) * (P * L1P * LQ - Q * L1Q * LP), d);
    PolyFrac dl2 = frac((P + Q) * (LxP * LQ - LxQ * LP), d.pow(2)) +
                   frac(Rational(2) * (P * L1P * LxQ - Q * Lx1Q * LP), d);
    return pencil_from_second(dp2, dl2, spec.series == Series::D ? u(2) : u(1));
}

} // namespace cinv
