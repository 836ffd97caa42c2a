#include "doctest.h"

#include "cinv/lax.hpp"

using namespace cinv;

namespace {

Symbol from_poly_in_p(const DiffPoly& f, int shift = 0) {
    Symbol s(4);
    for (const auto& [i, c] : f.coefficients_in(var_of(VarKind::P))) s.add(i - shift, 0, c);
    return s;
}

// Jet grading: total number of x-derivatives in a monomial.
int jet_degree(const Monomial& m) {
    int d = 0;
    m.for_each([&](Var v, int e) { d += v.jet * e; });
    return d;
}

} // namespace

TEST_CASE("A series Lax symbols") {
    CHECK(build_lax_a(1, 4) == from_poly_in_p(parse_poly("p^2 + u1")));
    CHECK(build_lax_a(2, 4) == from_poly_in_p(parse_poly("p^3 + u2*p + u1")));
    for (int n = 1; n <= 4; ++n) {
        Symbol L = build_lax_a(n, 4);
        Symbol adj = adjoint(L);
        // Dispersionless part of the adjoint is lambda(-p).
        DiffPoly lam = lambda_a(n);
        DiffPoly flipped = lam.substitute(var_of(VarKind::P), -DiffPoly(var_of(VarKind::P)));
        CHECK(dispersionless_poly(adj) == flipped);
        CHECK(adj.coeff(n + 1, 0) == DiffPoly(n % 2 ? 1 : -1));
    }
}

TEST_CASE("B1 correction coefficient") {
    LaxSpec s{Series::B, 1, 4};
    Symbol L = build_lax_bcd(s);
    CHECK(lax_v_coefficient(s, L, 1) == parse_poly("1/2*eps*u1'"));
}

TEST_CASE("symmetry conditions hold for all classical operators") {
    for (Series ser : {Series::B, Series::C, Series::D})
        for (int n = (ser == Series::D ? 3 : 1); n <= 4; ++n) {
            LaxSpec s{ser, n, 4};
            Symbol L = build_lax_bcd(s);
            CHECK(symmetry_defect(s, L).is_zero());
            CHECK(L.top_p_power() == s.lax_order());
            // v_i: eps^k coefficient has jet degree k.
            for (int i = (ser == Series::B ? 1 : 2); i <= n; ++i) {
                DiffPoly v = lax_v_coefficient(s, L, i);
                for (const auto& [k, c] : v.coefficients_in(var_of(VarKind::Eps)))
                    for (const auto& [m, q] : c.terms()) CHECK(jet_degree(m) == k);
                CHECK(v.coefficients_in(var_of(VarKind::Eps)).count(0) == 0);
            }
        }
}

TEST_CASE("C2 operator is self-adjoint") {
    LaxSpec s{Series::C, 2, 4};
    Symbol L = build_lax_bcd(s);
    CHECK((L - adjoint(L)).is_zero());
}

TEST_CASE("dispersionless limits") {
    CHECK(dispersionless_poly(build_lax_bcd({Series::B, 2, 4})) == parse_poly("p^5 + u2*p^3 + u1*p"));
    CHECK(dispersionless_poly(build_lax_bcd({Series::C, 2, 4})) == parse_poly("p^4 + u2*p^2 + u1"));
    Symbol d3 = bracket_lax({Series::D, 3, 4});
    Symbol expect(4, JetPolicy::fields_constant());
    for (const auto& [i, c] : parse_poly("p^5 + u3*p^3 + u2*p").coefficients_in(var_of(VarKind::P)))
        expect.add(i, 0, c);
    expect.add(-1, 0, DiffPoly(u(1)));
    CHECK(d3 == expect);
}

TEST_CASE("Lambda forms") {
    LambdaPoly b2 = lambda_forms({Series::B, 2, 4});
    CHECK(b2.Lambda == parse_poly("P^2 + u2*P + u1"));
    CHECK(b2.lambda_p == parse_poly("p^5 + u2*p^3 + u1*p"));

    LambdaPoly c2 = lambda_forms({Series::C, 2, 4});
    std::map<Var, DiffPoly> zero{{u(1), DiffPoly()}, {u(2), DiffPoly()}};
    CHECK(c2.Lambda.substitute(zero) == parse_poly("P^2"));

    LambdaPoly d3 = lambda_forms({Series::D, 3, 4});
    CHECK(d3.lambda_shift == 1);
    CHECK_FALSE(d3.tilde.is_polynomial());
    CHECK(d3.tilde.substitute({{u(1), DiffPoly()}}).is_polynomial());
}

TEST_CASE("invalid specs") {
    CHECK_THROWS_AS(LaxSpec({Series::D, 2, 4}).validate(), ConfigError);
    CHECK_THROWS_AS(LaxSpec({Series::A, 0, 4}).validate(), ConfigError);
    CHECK_THROWS_AS(parse_series("E"), ConfigError);
}
