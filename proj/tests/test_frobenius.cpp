#include "doctest.h"

#include "cinv/bracket.hpp"
#include "cinv/errors.hpp"
#include "cinv/frobenius.hpp"

#include <random>

using namespace cinv;

namespace {

const std::string kData = CINV_TEST_DATA;

Rational q(long a, long b = 1) { return make_rational(a, b); }

QMatrix qm(const std::vector<std::vector<long>>& rows) {
    QMatrix m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

PolyMatrix pm(const std::vector<std::vector<DiffPoly>>& rows) {
    PolyMatrix m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

FrobeniusData load(const std::string& name) { return frobenius_from_fixture(load_fixture(name, kData)); }

std::vector<int> degrees_of(const FrobeniusData& d) {
    Rational lo = d.euler[0];
    for (const auto& e : d.euler) lo = std::min(lo, e);
    std::vector<int> out;
    for (const auto& e : d.euler) {
        Rational deg = e * Rational(2) / lo;
        REQUIRE(deg.get_den() == 1);
        out.push_back(int(deg.get_num().get_si()));
    }
    return out;
}

bool antidiagonal_constant(const QMatrix& m) {
    size_t n = m.rows();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if ((i + j == n - 1) != (m(i, j) != 0)) return false;
    return true;
}

std::map<Var, Rational> random_point(const std::vector<Var>& vars, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    std::map<Var, Rational> at;
    for (const auto& v : vars) at[v] = make_rational(num(rng), den(rng));
    return at;
}

} // namespace

TEST_CASE("frobenius: G2 potential gives the flat pencil") {
    FrobeniusData d = load("G2");
    REQUIRE(d.rank() == 2);
    FlatPencil p = pencil_from_potential(d);
    CHECK(p.eta_inv == qm({{0, 1}, {1, 0}}));
    CHECK(antidiagonal_constant(p.eta));
    const DiffPoly t1(tv(1)), t2(tv(2));
    CHECK(p.g2(0, 0) == Rational(48) * t2.pow(5));
    CHECK(p.g2(0, 1) == t1);
    CHECK(p.g2(1, 0) == t1);
    CHECK(p.g2(1, 1) == q(1, 3) * t2);
    CHECK(to_poly(p.eta_inv) == p.g1);
    CHECK(quasi_homogeneity(d) == q(7, 3));
    CHECK(c_tensor_symmetric(p, d));

    // g1 is the pencil parameter derivative of g2 along the unity field.
    CHECK(p.g2.map([&](const DiffPoly& e) { return e.partial(tv(1)); }) == p.g1);
}

TEST_CASE("frobenius: rank one") {
    FrobeniusData d;
    d.t = {tv(1)};
    d.F = q(1, 6) * DiffPoly(tv(1)).pow(3);
    d.euler = {1};
    d.unity = {1};
    FlatPencil p = pencil_from_potential(d);
    CHECK(p.eta(0, 0) == 1);
    CHECK(p.g2(0, 0) == DiffPoly(tv(1)));
    CHECK(quasi_homogeneity(d) == Rational(3));
    CHECK(potential_from_metrics(p.eta_inv, p.g2, {2}, d.t) == d.F);
}

TEST_CASE("frobenius: non-constant eta is rejected") {
    FrobeniusData d;
    d.t = {tv(1), tv(2)};
    d.F = DiffPoly(tv(1)).pow(2) * DiffPoly(tv(2)).pow(2);
    d.euler = {1, 1};
    d.unity = {1, 0};
    CHECK_THROWS_AS(pencil_from_potential(d), NonConstantEta);
}

TEST_CASE("frobenius: F4 and E6 potentials") {
    for (const char* name : {"F4", "E6"}) {
        CAPTURE(name);
        FrobeniusData d = load(name);
        FlatPencil p = pencil_from_potential(d);
        CHECK(antidiagonal_constant(p.eta));
        CHECK(quasi_homogeneity(d).has_value());
        CHECK(c_tensor_symmetric(p, d));
        // Each g2^ij is weighted-homogeneous of degree deg_i + deg_j - 2.
        std::vector<int> deg = degrees_of(d);
        for (size_t i = 0; i < deg.size(); ++i)
            for (size_t j = 0; j < deg.size(); ++j)
                for (const auto& [m, c] : p.g2(i, j).terms()) {
                    int w = 0;
                    m.for_each([&](Var v, int e) { w += e * deg[v.index - 1]; });
                    CHECK(w == deg[i] + deg[j] - 2);
                }
    }
}

TEST_CASE("frobenius: potential round trip") {
    for (const char* name : {"G2", "F4"}) {
        CAPTURE(name);
        FrobeniusData d = load(name);
        FlatPencil p = pencil_from_potential(d);
        std::vector<int> deg = degrees_of(d);
        DiffPoly F = potential_from_metrics(p.eta_inv, p.g2, deg, d.t);
        CHECK(F == strip_quadratic(d.F));
    }
    FrobeniusData g = load("G2");
    CHECK(degrees_of(g) == std::vector<int>{6, 2});
    CHECK(potential_from_metrics(qm({{0, 1}, {1, 0}}),
                                 pm({{Rational(48) * DiffPoly(tv(2)).pow(5), DiffPoly(tv(1))},
                                                        {DiffPoly(tv(1)), q(1, 3) * DiffPoly(tv(2))}}),
                                 {6, 2}, g.t) == q(1, 2) * DiffPoly(tv(1)).pow(2) * DiffPoly(tv(2)) +
                                                     q(24, 35) * DiffPoly(tv(2)).pow(7));
    CHECK(degrees_of(load("F4")) == std::vector<int>{12, 8, 6, 2});

    // A Hessian that is not symmetric in mixed partials.
    PolyMatrix bad = pm({{DiffPoly(tv(2)), DiffPoly(tv(2))}, {DiffPoly(tv(2)), DiffPoly(tv(1))}});
    CHECK_THROWS_AS(potential_from_metrics(qm({{0, 1}, {1, 0}}), bad, {6, 2}, g.t),
                    IntegrabilityFailure);
}

TEST_CASE("frobenius: A_n orbit space metrics") {
    std::mt19937_64 rng(20261016);
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        OrbitSpaceData o = orbit_metrics_a(n);
        REQUIRE(o.y.size() == size_t(n));

        // Weighted homogeneity of g2 and of the Christoffel symbols.
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                for (const auto& [m, c] : o.g2(i, j).terms()) {
                    int w = 0;
                    m.for_each([&](Var v, int e) { w += e * o.degrees[v.index - 1]; });
                    CHECK(w == o.degrees[i] + o.degrees[j] - 2);
                }
                for (int k = 0; k < n; ++k) {
                    // d_k g^ij = Gamma^ij_k + Gamma^ji_k for both metrics.
                    CHECK(o.g2(i, j).partial(o.y[k]) == o.gamma2[k](i, j) + o.gamma2[k](j, i));
                    CHECK(o.g1(i, j).partial(o.y[k]) == o.gamma1[k](i, j) + o.gamma1[k](j, i));
                }
            }

        // Pencil linearity: the metric and connection of g2 - lambda g1 are
        // the y^1 shift of those of g2.
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    DiffPoly lam(var_of(VarKind::Lam));
                    DiffPoly shifted = o.gamma2[k](i, j).substitute(o.y[0], DiffPoly(o.y[0]) - lam);
                    CHECK(shifted == o.gamma2[k](i, j) - lam * o.gamma1[k](i, j));
                }

        // Comparison with the dispersionless limit of the Lax brackets.
        LaxSpec spec{Series::A, n, 3};
        BracketCoeffTable second = coefficient_table(spec, 2), first = coefficient_table(spec, 1);
        PolyMatrix b2 = second.matrix(1), b1 = first.matrix(1);
        std::map<Var, DiffPoly> rename;
        for (int i = 1; i <= n; ++i) rename[u(i)] = DiffPoly(o.y[size_t(i - 1)]);
        b2 = b2.map([&](const DiffPoly& e) { return e.substitute(rename); });
        b1 = b1.map([&](const DiffPoly& e) { return e.substitute(rename); });

        std::optional<Rational> kappa;
        for (int s = 0; s < 5; ++s) {
            auto at = random_point(o.y, rng);
            QMatrix g = evaluate(o.g2, at), b = evaluate(b2, at);
            QMatrix g1 = evaluate(o.g1, at), c1 = evaluate(b1, at);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (!kappa && b(i, j) != 0) kappa = g(i, j) / b(i, j);
                    REQUIRE(kappa);
                    CHECK(g(i, j) == *kappa * b(i, j));
                    CHECK(g1(i, j) == *kappa * c1(i, j));
                }
        }
        REQUIRE(kappa);
        CHECK(*kappa == -1);
    }
}

TEST_CASE("frobenius: A_1 orbit potential") {
    OrbitSpaceData o = orbit_metrics_a(1);
    CHECK(o.g2(0, 0) == Rational(-2) * DiffPoly(o.y[0]));
    CHECK(o.g1(0, 0) == DiffPoly(-2));
    DiffPoly F = potential_from_metrics(qm({{-2}}), o.g2, o.degrees, o.y);
    CHECK(F == q(-1, 12) * DiffPoly(o.y[0]).pow(3));
}
