#include "doctest.h"

#include "cinv/matrix.hpp"

#include <random>

using namespace cinv;

TEST_CASE("rational parse and print") {
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_string(parse_rational("7")) == "7");
    CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("total derivative of a differential polynomial") {
    DiffPoly p = parse_poly("u1^2 + u2'");
    CHECK(p.dx() == parse_poly("2*u1*u1' + u2''"));
    CHECK(p.dx(JetPolicy::fields_constant()).is_zero());
    CHECK(parse_poly("a1*b2").dx() == parse_poly("a1'*b2 + a1*b2'"));
}

TEST_CASE("partial derivatives commute with dx up to a shift") {
    DiffPoly p = parse_poly("u1''*u2^3 + u1'*u1 - 5*u2''*u1'");
    for (int k = 1; k <= 2; ++k) {
        Var v = u(1, k);
        DiffPoly lhs = p.dx().partial(v) - p.partial(v).dx();
        CHECK(lhs == p.partial(u(1, k - 1)));
    }
}

TEST_CASE("parse and print round trip") {
    for (const char* s : {"u1*u2' - 1/3*t1^2", "lambda + p^3 - 2", "rho^2*eps"}) {
        DiffPoly p = parse_poly(s);
        CHECK(parse_poly(p.str()) == p);
    }
    CHECK_THROWS(parse_poly("u1 / u2"));
    CHECK_THROWS(parse_poly("u1 + "));
}

TEST_CASE("substitute and evaluate") {
    DiffPoly p = parse_poly("t1^2*t2 + t2");
    CHECK(p.substitute(tv(1), parse_poly("t2 + 1")) == parse_poly("t2^3 + 2*t2^2 + 2*t2"));
    CHECK(p.value({{tv(1), 2}, {tv(2), Rational(1, 2)}}) == Rational(5, 2));
}

TEST_CASE("exact division and gcd") {
    DiffPoly a = parse_poly("t1^2 - t2^2");
    DiffPoly b = parse_poly("t1^2 + 2*t1*t2 + t2^2");
    CHECK(a.divide_exact(parse_poly("t1 - t2")) == parse_poly("t1 + t2"));
    CHECK_THROWS_AS(a.divide_exact(parse_poly("t1 + 2")), std::domain_error);
    CHECK(gcd(a, b) == parse_poly("t1 + t2"));
    CHECK(gcd(parse_poly("6*t1^2*t2"), parse_poly("4*t1*t2^3")) == parse_poly("t1*t2"));
    CHECK(gcd(parse_poly("t1 + 1"), parse_poly("t2 + 1")) == DiffPoly(1));
    DiffPoly f = parse_poly("t1*t3 + t2^2 - 1");
    DiffPoly g1 = parse_poly("t1 - t2*t3 + 4");
    DiffPoly g2 = parse_poly("t3^2 + t1");
    CHECK(gcd(f * g1, f * g2) == f.monic());
}

TEST_CASE("rational functions normalize") {
    RatFunc r(parse_poly("t1^2 - 1"), parse_poly("2*t1 - 2"));
    CHECK(r.is_polynomial());
    CHECK(r.as_poly() == parse_poly("1/2*t1 + 1/2"));
    RatFunc s = RatFunc(1) / RatFunc(parse_poly("t1")) + RatFunc(1) / RatFunc(parse_poly("t2"));
    CHECK(s == RatFunc(parse_poly("t1 + t2"), parse_poly("t1*t2")));
    CHECK(s.partial(tv(1)) == RatFunc(DiffPoly(-1), parse_poly("t1^2")));
    CHECK_THROWS_AS(RatFunc(DiffPoly(1), parse_poly("t1")).value({{tv(1), 0}}), DegeneratePoint);
}

TEST_CASE("rational matrix inverse and nullspace") {
    QMatrix m(3, 3);
    int v[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = v[i][j];
    CHECK(m * inverse(m) == QMatrix::identity(3));
    CHECK(determinant(m) == 18);
    QMatrix s(2, 3);
    s(0, 0) = 1; s(0, 1) = 2; s(0, 2) = 3;
    s(1, 0) = 2; s(1, 1) = 4; s(1, 2) = 6;
    auto ns = nullspace(s);
    CHECK(ns.size() == 2);
    CHECK(rank(s) == 1);
    QMatrix z(2, 2);
    CHECK_THROWS_AS(inverse(z), SingularMatrix);
}

TEST_CASE("polynomial matrix inverse round trip") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    const int n = 6;
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            DiffPoly e(coef(rng));
            for (int k = 1; k <= 2; ++k) e += Rational(coef(rng)) * DiffPoly(tv(k));
            if (i == j) e += DiffPoly(5);
            m(i, j) = e;
        }
    BareissResult b = bareiss_inverse(m);
    CHECK(m * b.adj == b.det * PolyMatrix::identity(n));
    CHECK(bareiss_det(m) == b.det);
    std::map<Var, Rational> at{{tv(1), Rational(1, 3)}, {tv(2), -2}};
    CHECK(determinant(evaluate(m, at)) == b.det.value(at));

    RFMatrix r(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = RatFunc(m(i, j));
    r(0, 1) = RatFunc(DiffPoly(tv(1)), parse_poly("t2 + 7"));
    RFMatrix ri = rf_inverse(r);
    CHECK(r * ri == RFMatrix::identity(3));
    CHECK(rf_det(r).value(at) == determinant(evaluate(r, at)));
}
