#include "doctest.h"

#include "cinv/bracket.hpp"

using namespace cinv;

namespace {

const Var kp = var_of(VarKind::P), kq = var_of(VarKind::Q);
const Var kP = var_of(VarKind::CapP), kQ = var_of(VarKind::CapQ);

std::string label(const LaxSpec& s) { return std::string(1, series_letter(s.series)) + std::to_string(s.n); }

std::vector<LaxSpec> bcd_specs(int nmax) {
    std::vector<LaxSpec> out;
    for (Series s : {Series::B, Series::C})
        for (int n = 1; n <= nmax; ++n) out.push_back({s, n, 3});
    for (int n = 3; n <= nmax; ++n) out.push_back({Series::D, n, 3});
    return out;
}

} // namespace

TEST_CASE("delta normal form moves derivatives onto b") {
    DiffPoly a1x(var_of(VarKind::A, 1, 1)), b2(var_of(VarKind::B, 2)), a1xx(var_of(VarKind::A, 1, 2));
    DiffPoly b2x(var_of(VarKind::B, 2, 1));
    DeltaExpansion e = delta_normal_form(DiffPoly(u(1)) * a1x * b2 + a1xx * b2x);
    CHECK(e.size() == 2);
    CHECK(e.at({1, 2, 1, 0}) == -DiffPoly(u(1)));
    CHECK(e.at({1, 2, 3, 0}) == DiffPoly(1));
    CHECK_THROWS_AS(delta_normal_form(a1x * a1x), InvariantViolation);
}

TEST_CASE("KdV brackets by hand") {
    // L = D^2 + u: {u, u}_2 = 2u delta' + eps^2/2 delta''' and {u, u}_1 = 2 delta'.
    BracketCoeffTable t2 = coefficient_table({Series::A, 1, 3}, 2);
    CHECK(t2.C.at(1)[0][0] == Rational(2) * DiffPoly(u(1)));
    CHECK(t2.C.at(2)[0][0].is_zero());
    CHECK(t2.C.at(3)[0][0] == DiffPoly(Rational(1, 2)));
    BracketCoeffTable t1 = coefficient_table({Series::A, 1, 3}, 1);
    CHECK(t1.C.at(1)[0][0] == DiffPoly(2));
    CHECK(t1.C.at(3)[0][0].is_zero());
}

TEST_CASE("A series tables match the closed forms") {
    for (int n = 1; n <= 4; ++n) {
        for (int which = 1; which <= 2; ++which) {
            BracketCoeffTable t = coefficient_table({Series::A, n, 3}, which);
            for (int s = 1; s <= 3; ++s) {
                INFO("A" << n << " bracket " << which << " s=" << s);
                CHECK(frac_equals(generating_a(t, s), a_closed_form(n, which, s)));
            }
        }
    }
}

TEST_CASE("extra test coefficients beyond the rank do not contribute") {
    for (int n = 1; n <= 3; ++n) {
        BracketCoeffTable t = coefficient_table({Series::A, n, 3}, 2, n + 1);
        for (int s = 1; s <= 3; ++s) {
            INFO("A" << n << " s=" << s);
            for (int i = 0; i <= n; ++i) {
                CHECK(t.C.at(s)[i][n].is_zero());
                CHECK(t.C.at(s)[n][i].is_zero());
            }
            CHECK(frac_equals(generating_a(t, s), a_closed_form(n, 2, s)));
        }
    }
}

TEST_CASE("B, C, D small-variable tables") {
    for (LaxSpec spec : bcd_specs(4)) {
        BracketCoeffTable t = coefficient_table(spec, 2);
        INFO(label(spec));
        CHECK(t.A.at({0, 2}).is_zero());
        if (spec.n <= 3) {
            for (int s : {1, 3}) {
                int shift = 0;
                PolyFrac f = bcd_small_closed_form(spec, s, &shift);
                CHECK(shift == (spec.series == Series::D ? 1 : 0));
                CHECK(shifted_small_table(t, s, shift) == dual_projection(spec, f, shift));
            }
        }
    }
}

TEST_CASE("B, C, D capital-variable blocks") {
    for (LaxSpec spec : bcd_specs(4)) {
        auto [second, first] = shifted_tables(spec);
        const BracketCoeffTable* tabs[2] = {&first, &second};
        for (int which = 1; which <= 2; ++which)
            for (int s = 1; s <= 3; ++s) {
                INFO(label(spec) << " bracket " << which << " s=" << s);
                CHECK(frac_equals(contour_to_capital(*tabs[which - 1], s), r_closed_form(spec, which, s)));
            }
    }
}

TEST_CASE("pencil shift reproduces the first bracket") {
    std::vector<LaxSpec> specs = bcd_specs(3);
    for (int n = 1; n <= 3; ++n) specs.push_back({Series::A, n, 3});
    for (const LaxSpec& spec : specs) {
        INFO(label(spec));
        auto [second, first] = shifted_tables(spec);
        BracketCoeffTable d1 = coefficient_table(spec, 1), d2 = coefficient_table(spec, 2);
        CHECK(first.C == d1.C);
        CHECK(second.C == d2.C);
    }
}

TEST_CASE("jets-suppressed brackets are antisymmetric") {
    std::vector<LaxSpec> specs = bcd_specs(3);
    for (int n = 1; n <= 4; ++n) specs.push_back({Series::A, n, 3});
    for (const LaxSpec& spec : specs)
        for (int which = 1; which <= 2; ++which) {
            BracketCoeffTable t = coefficient_table(spec, which);
            for (const auto& [s, C] : t.C)
                for (int i = 0; i < spec.n; ++i)
                    for (int j = 0; j < spec.n; ++j) {
                        INFO(label(spec) << " " << which << " s=" << s << " " << i << "," << j);
                        Rational sign = s % 2 ? Rational(1) : Rational(-1);
                        CHECK(C[i][j] == sign * C[j][i]);
                    }
        }
}

TEST_CASE("dispersionless pencil matches the delta-prime coefficients") {
    for (int n = 1; n <= 3; ++n) {
        LaxSpec spec{Series::A, n, 3};
        DispersionlessPencil pen = dispersionless_pencil(spec);
        for (int which = 1; which <= 2; ++which) {
            INFO("A" << n << " " << which);
            CHECK(frac_equals(generating_a(coefficient_table(spec, which), 1), pen.dprime[which - 1]));
        }
        // First bracket written out directly.
        DiffPoly lp = lambda_a(n), lq = lp.substitute(kp, DiffPoly(kq));
        DiffPoly lxp = lp.dx(), lxq = lxp.substitute(kp, DiffPoly(kq));
        DiffPoly d = DiffPoly(kp) - DiffPoly(kq);
        DiffPoly num0 = (lxp - lxq) - d * lxq.partial(kq);
        CHECK(pen.dprime[0].num * d == (lp.partial(kp) - lq.partial(kq)) * pen.dprime[0].den);
        CHECK(pen.delta[0].num * d.pow(2) == num0 * pen.delta[0].den);
    }
    for (LaxSpec spec : bcd_specs(3)) {
        INFO(label(spec));
        DispersionlessPencil pen = dispersionless_pencil(spec);
        auto [second, first] = shifted_tables(spec);
        CHECK(frac_equals(contour_to_capital(first, 1), pen.dprime[0]));
        CHECK(frac_equals(contour_to_capital(second, 1), pen.dprime[1]));
        if (spec.series != Series::D) {
            LambdaPoly lf = lambda_forms(spec);
            DiffPoly LP = lf.Lambda, LQ = LP.substitute(kP, DiffPoly(kQ));
            DiffPoly LxP = LP.dx(), LxQ = LxP.substitute(kP, DiffPoly(kQ));
            DiffPoly P(kP), Q(kQ), d = P - Q;
            DiffPoly dp = Rational(2) * (P * LP.partial(kP) - Q * LQ.partial(kQ));
            CHECK(pen.dprime[0].num * d == dp * pen.dprime[0].den);
            DiffPoly dl = (P + Q) * (LxP - LxQ) - Rational(2) * Q * LxQ.partial(kQ) * d;
            CHECK(pen.delta[0].num * d.pow(2) == dl * pen.delta[0].den);
        }
    }
}

TEST_CASE("serialization lists nonzero entries") {
    BracketCoeffTable t = coefficient_table({Series::A, 1, 3}, 2);
    CHECK(t.serialize() == "series A\nrank 1\nbracket 2\nC 1 1 1 2*u1\nC 3 1 1 1/2\n");
}
