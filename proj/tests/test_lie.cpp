#include "doctest.h"

#include "cinv/dirac.hpp"

#include <cstdlib>
#include <fstream>
#include <random>

using namespace cinv;

namespace {

const std::filesystem::path kData = CINV_TEST_DATA;

PolyMatrix fixture_matrix(const Fixture& f, const std::string& group, const std::string& key) {
    return json_poly_matrix(f.at(group).at(key));
}

Rational q(long a, long b = 1) { return make_rational(a, b); }

std::vector<Rational> sorted(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    return v;
}

struct G2Setup {
    Fixture fx = load_fixture("G2", kData);
    LieAlgebraData g = g2_algebra();
    SliceData s = slice_bases(g, fixture_gamma(fx));
    DiracSystem d = dirac_system(g, s);
};

G2Setup& g2() {
    static G2Setup setup;
    return setup;
}

const ReducedPencil& g2_pencil() {
    static ReducedPencil p = dirac_reduce(g2().d);
    return p;
}

const ReducedPencil& g2_flat() {
    static ReducedPencil p = [] {
        auto tu = g2().fx.polys("flat_coordinates");
        std::vector<Var> t{tv(1), tv(2)}, uu{u(1), u(2)};
        return change_coordinates(g2_pencil(), tu, t, invert_triangular(tu, uu, t));
    }();
    return p;
}

} // namespace

TEST_CASE("fixtures: checksums, resolution order and failures") {
    for (const char* name : {"G2", "F4", "E6", "E7", "E8"}) {
        Fixture f = load_fixture(name, kData);
        CHECK(f.algebra == name);
        CHECK(fixture_checksum(f.data).rfind("fnv1a64:", 0) == 0);
    }
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);

    auto tmp = std::filesystem::temp_directory_path() / "cinv_fixture_test";
    std::filesystem::create_directories(tmp);
    {
        std::ifstream in(kData / "g2.json");
        nlohmann::json doc = nlohmann::json::parse(in);
        doc["data"]["rank"] = 3;
        std::ofstream(tmp / "g2.json") << doc.dump();
    }
    CHECK_THROWS_AS(load_fixture("G2", tmp), FixtureError);
    CHECK_THROWS_AS(load_fixture("F4", tmp), FixtureError);
    {
        std::ofstream(tmp / "g2.json") << "{not json";
    }
    CHECK_THROWS_AS(load_fixture("G2", tmp), FixtureError);

    CHECK(fixture_dir(std::string("/x/y")) == std::filesystem::path("/x/y"));
    setenv("CINV_FIXTURES", tmp.c_str(), 1);
    CHECK(fixture_dir() == tmp);
    CHECK(fixture_dir(std::string("/x/y")) == std::filesystem::path("/x/y"));
    unsetenv("CINV_FIXTURES");
    CHECK(std::filesystem::exists(fixture_dir() / "g2.json"));
    std::filesystem::remove_all(tmp);

    CHECK_THROWS_AS(json_rational(nlohmann::json("1/0x")), FixtureError);
    CHECK_THROWS_AS(json_sparse(nlohmann::json::parse("[[0, 1, \"1\"]]"), 3), FixtureError);
}

TEST_CASE("lie: classical realizations satisfy the structure checks") {
    for (CartanType t : {CartanType{'A', 1}, CartanType{'A', 2}, CartanType{'A', 3}, CartanType{'B', 2},
                         CartanType{'B', 3}, CartanType{'C', 2}, CartanType{'C', 3}, CartanType{'D', 3},
                         CartanType{'D', 4}}) {
        CAPTURE(t.str());
        LieAlgebraData g = classical_algebra(t);
        CHECK(g.dimension() == size_t(t.rank) + 2 * root_system(t).positive_roots.size());
        LieChecks c = check_algebra(g, 15, 40);
        CHECK(c.chevalley);
        CHECK(c.antisymmetry);
        CHECK(c.jacobi);
        CHECK(c.invariance);
        CHECK(c.normalized);
    }
    // Normalized form relative to the trace form in these realizations.
    CHECK(classical_algebra({'A', 3}).form_scale == 1);
    CHECK(classical_algebra({'B', 3}).form_scale == q(1, 2));
    CHECK(classical_algebra({'C', 3}).form_scale == 1);
    CHECK(classical_algebra({'D', 4}).form_scale == q(1, 2));
    CHECK_THROWS_AS(load_algebra("H3", kData), UnknownAlgebra);
    CHECK_THROWS_AS(load_algebra("E9", kData), UnknownAlgebra);
}

TEST_CASE("lie: G2 data") {
    const LieAlgebraData& g = g2().g;
    CHECK(g.dimension() == 14);
    CHECK(g.form_scale == q(1, 2));
    CHECK(g.form(g.H[0], g.H[0]) == 6);
    CHECK(g.form(g.H[0], g.H[1]) == -3);
    CHECK(g.form(g.H[1], g.H[1]) == 2);
    CHECK(g.coxeter == 6);
    CHECK(g.dual_coxeter == 4);
    CHECK(g.exponents == std::vector<int>{1, 5});

    LieChecks c = check_algebra(g, 14);
    CHECK(c.triples == 14u * 14u * 14u);
    CHECK(c.ok());
    // Full Killing comparison on a few pairs outside the Cartan subalgebra.
    CHECK(killing_normalized(g, g.Xr.at({3, 2}), g.Yr.at({3, 2})) == g.form(g.Xr.at({3, 2}), g.Yr.at({3, 2})));

    const SliceData& s = g2().s;
    CHECK(s.a == std::vector<Rational>{6, 10});
    CHECK(s.rho == Rational(3) * g.H[0] + Rational(5) * g.H[1]);
    CHECK(s.Iplus == Rational(6) * g.X[0] + Rational(10) * g.X[1]);
    CHECK(commutator(s.Iplus, s.I) == Rational(2) * s.rho);

    CHECK(s.gamma[0] == q(3, 5) * g.X[0] + g.X[1]);
    CHECK(s.gamma[1] == g.Xr.at({3, 2}));
    CHECK(s.gamma_dual[0] == q(5, 14) * (g.Y[0] + g.Y[1]));
    CHECK(s.gamma_dual[1] == g.Yr.at({3, 2}));
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) CHECK(g.form(s.gamma_dual[i], s.gamma[j]) == Rational(i == j));
    CHECK(s.f.size() == 12);
    CHECK(s.degrees == std::vector<int>{1, 5});

    // The computed Ker ad I_+ basis matches the stored one up to scale.
    SliceData auto_s = slice_bases(g);
    for (size_t i = 0; i < 2; ++i) {
        Rational k = s.gamma[i].first_in_rows() / auto_s.gamma[i].first_in_rows();
        CHECK(k * auto_s.gamma[i] == s.gamma[i]);
    }
}

TEST_CASE("dirac: G2 reduced tensors in slice coordinates") {
    const Fixture& fx = g2().fx;
    const ReducedPencil& p = g2_pencil();
    CHECK(p.has_first);
    CHECK(p.g2 == fixture_matrix(fx, "reduced", "g2"));
    CHECK(p.g1 == fixture_matrix(fx, "reduced", "g1"));
    CHECK(p.A202 == fixture_matrix(fx, "reduced", "A202"));
    CHECK(p.A201 == fixture_matrix(fx, "reduced", "A201"));
    CHECK(p.A102 == fixture_matrix(fx, "reduced", "A102"));
    CHECK(p.A101 == fixture_matrix(fx, "reduced", "A101"));

    // g1 is the lambda coefficient of the shifted g2.
    ReducedPencil unshifted = dirac_reduce(g2().d, false);
    CHECK(unshifted.g2 == p.g2);
    CHECK(unshifted.A202 == p.A202);
    DiffPoly lam(var_of(VarKind::Lam));
    PolyMatrix shifted = p.g2.map([&](const DiffPoly& e) { return e.substitute(u(2), DiffPoly(u(2)) + lam); });
    PolyMatrix slope = (shifted - p.g2).map([&](const DiffPoly& e) { return e.coefficients_in(var_of(VarKind::Lam))[1]; });
    CHECK(slope == p.g1);

    // Pointwise reduction agrees with the symbolic one.
    std::vector<Rational> pt{q(3, 2), q(-7, 3)};
    ReducedValues v = dirac_at(g2().d, pt);
    std::map<Var, Rational> at{{u(1), pt[0]}, {u(2), pt[1]}};
    CHECK(v.g2 == evaluate(p.g2, at));
    CHECK(v.g1 == evaluate(p.g1, at));
    CHECK(v.A202 == evaluate(p.A202, at));
    CHECK(v.A201 == evaluate(p.A201, at));

    // P is antisymmetric, Q symmetric, P0 nonsingular.
    CHECK(g2().d.P0.transpose() == -g2().d.P0);
    CHECK(g2().d.Q.transpose() == g2().d.Q);
    CHECK(determinant(g2().d.P0) != 0);
}

TEST_CASE("dirac: G2 flat coordinates, canonical coordinates and invariants") {
    const Fixture& fx = g2().fx;
    const ReducedPencil& f = g2_flat();
    CHECK(f.g2 == fixture_matrix(fx, "flat", "g2"));
    CHECK(f.g1 == fixture_matrix(fx, "flat", "g1"));
    // The stored flat A_{2,0;2} / A_{2,0;1} are interchanged relative to the
    // slice-coordinate data: the stored "A202" is d/dt1 of the stored "A201".
    CHECK(f.A202 == fixture_matrix(fx, "flat", "A201"));
    CHECK(f.A201 == fixture_matrix(fx, "flat", "A202"));
    CHECK(f.A201 == f.A202.map([](const DiffPoly& e) { return e.partial(tv(1)); }));
    CHECK(f.g1 == f.g2.map([](const DiffPoly& e) { return e.partial(tv(1)); }));

    // det(g2 - z g1) = -(z - t1 - 4 t2^3)(z - t1 + 4 t2^3).
    DiffPoly z(var_of(VarKind::Lam));
    auto canon = fx.polys("canonical");
    CHECK(char_poly(f) == Rational(-1) * (z - canon[0]) * (z - canon[1]));

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int k = 0; k < 5; ++k) {
        Rational t1(d(rng), 1 + (d(rng) + 9) % 4), t2(d(rng) == 0 ? 1 : d(rng), 3);
        t1.canonicalize();
        t2.canonicalize();
        if (t2 == 0) t2 = 1;
        std::map<Var, Rational> pt{{tv(1), t1}, {tv(2), t2}};
        std::vector<Complex> ref{to_complex(canon[0].value(pt)), to_complex(canon[1].value(pt))};
        CIResult r = central_invariants_dirac(f, pt, "G2", ref);
        CHECK(r.exact);
        CHECK(r.c == std::vector<Rational>{q(1, 8), q(1, 24)});
        auto cq = fx.at("canonical_quantities");
        for (size_t i = 0; i < 2; ++i) {
            CHECK(r.lambda[i] == canon[i].value(pt));
            CHECK(r.f[i] == json_poly(cq["f"][i]).value(pt));
            CHECK(r.Q1[i] == json_poly(cq["Q1"][i]).value(pt));
            CHECK(r.Q2[i] == json_poly(cq["Q2"][i]).value(pt));
        }
    }
    std::map<Var, Rational> bad{{tv(1), 2}, {tv(2), 0}};
    CHECK_THROWS_AS(central_invariants_dirac(f, bad, "G2"), DegeneratePoint);

    // Slice coordinates give the same values; the numbering is fixed by the stored canonical list.
    auto tu = fx.polys("flat_coordinates");
    std::map<Var, Rational> upt{{u(1), q(2)}, {u(2), q(-1, 3)}};
    std::map<Var, Rational> tpt{{tv(1), tu[0].value(upt)}, {tv(2), tu[1].value(upt)}};
    std::vector<Complex> ref{to_complex(canon[0].value(tpt)), to_complex(canon[1].value(tpt))};
    CIResult r = central_invariants_dirac(g2_pencil(), upt, "G2", ref);
    CHECK(r.c == std::vector<Rational>{q(1, 8), q(1, 24)});
    // Sorted order (no reference) gives the same multiset.
    CHECK(sorted(central_invariants_dirac(g2_pencil(), upt, "G2").c) == sorted(r.c));
}

TEST_CASE("dirac: invariants do not depend on the scale of the gamma basis") {
    SliceData s = rescale_slice(g2().s, {q(-3, 2), q(5)});
    ReducedPencil p = dirac_reduce(dirac_system(g2().g, s));
    CHECK(p.g2 != g2_pencil().g2);
    std::map<Var, Rational> upt{{u(1), q(1)}, {u(2), q(2, 7)}};
    CHECK(sorted(central_invariants_dirac(p, upt, "G2").c) == std::vector<Rational>{q(1, 24), q(1, 8)});
}

TEST_CASE("dirac: classical algebras reproduce the Lie formula") {
    for (CartanType t : {CartanType{'A', 2}, CartanType{'B', 2}, CartanType{'C', 2}, CartanType{'A', 3}}) {
        CAPTURE(t.str());
        LieAlgebraData g = classical_algebra(t);
        DiracSystem d = dirac_system(g, slice_bases(g));
        ReducedPencil p = dirac_reduce(d);
        std::map<Var, Rational> pt;
        for (int i = 1; i <= t.rank; ++i) pt[u(i)] = q(i * i - 3, i + 1);
        CIResult r = central_invariants_dirac(p, pt, t.str());
        if (r.exact) {
            CHECK(sorted(r.c) == sorted(lie_formula(root_system(t)).c));
        } else {
            std::vector<double> got;
            for (const auto& c : r.c_num) got.push_back(double(c.real()));
            std::sort(got.begin(), got.end());
            auto want = sorted(lie_formula(root_system(t)).c);
            for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i].get_d()).epsilon(1e-12));
        }
    }
}

TEST_CASE("dirac: F4 from the bundled data") {
    Fixture fx = load_fixture("F4", kData);
    ReducedPencil p = f4_pencil(fx);
    CHECK(p.g1 == PolyMatrix(json_poly_matrix(nlohmann::json::parse(
                      R"([["0","0","0","1"],["0","0","1","0"],["0","1","0","0"],["1","0","0","0"]])"))));
    CHECK(p.A202(3, 3) == DiffPoly(q(13, 24)));

    for (auto [t1, a, b, w] : {std::array<long, 4>{1, 2, 1, 1}, std::array<long, 4>{-3, 5, 2, 2},
                               std::array<long, 4>{2, -1, 3, -1}}) {
        auto t = f4_rational_sample(t1, a, b, w);
        CIResult r = f4_fixture_pipeline(fx, t);
        CHECK(r.exact);
        CHECK(r.c == std::vector<Rational>{q(1, 24), q(1, 24), q(1, 12), q(1, 12)});
        auto closed = f4_closed_form_roots(fx, t);
        for (size_t i = 0; i < 4; ++i) CHECK(abs(closed[i] - to_complex(r.lambda[i])) < 1e-30);
    }
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(1, 9);
    for (int k = 0; k < 3; ++k) {
        std::map<Var, Rational> t;
        for (int i = 1; i <= 4; ++i) t[tv(i)] = make_rational(d(rng), d(rng));
        CIResult r = f4_fixture_pipeline(fx, t);
        const double want[] = {1.0 / 24, 1.0 / 24, 1.0 / 12, 1.0 / 12};
        REQUIRE(r.size() == 4);
        for (size_t i = 0; i < 4; ++i) {
            Complex c = r.exact ? to_complex(r.c[i]) : r.c_num[i];
            CHECK(abs(c - Complex(want[i])) < 1e-9);
        }
    }
}

TEST_CASE("dirac: F4 generators reproduce the stored flat data pointwise") {
    Fixture fx = load_fixture("F4", kData);
    LieAlgebraData g = load_algebra("F4", kData);
    CHECK(g.matrix_size == 26);
    CHECK(g.form_scale == q(1, 6));
    CHECK(g.bourbaki == std::vector<int>{3, 0, 2, 1});
    LieChecks c = check_algebra(g, 0, 40, 3);
    CHECK(c.ok());
    SliceData s = slice_bases(g, fixture_gamma(fx));
    CHECK(s.a == std::vector<Rational>{16, 22, 30, 42});
    CHECK(s.degrees == std::vector<int>{1, 5, 7, 11});
    CHECK(s.f.size() == 48);
    DiracSystem d = dirac_system(g, s);

    ReducedPencil flat = f4_pencil(fx);
    auto tu = fx.polys("flat_coordinates");
    std::vector<Rational> uval{q(2), q(-1), q(3), q(1, 2)};
    std::map<Var, Rational> upt, tpt;
    for (int i = 0; i < 4; ++i) upt[u(i + 1)] = uval[size_t(i)];
    for (int i = 0; i < 4; ++i) tpt[tv(i + 1)] = tu[size_t(i)].value(upt);
    QMatrix J(4, 4);
    for (size_t a = 0; a < 4; ++a)
        for (size_t i = 0; i < 4; ++i) J(a, i) = tu[a].partial(u(int(i + 1))).value(upt);
    ReducedValues v = dirac_at(d, uval);
    CHECK(J * v.g2 * J.transpose() == evaluate(flat.g2, tpt));
    CHECK(J * v.g1 * J.transpose() == evaluate(flat.g1, tpt));
    CHECK(J * v.A202 * J.transpose() == evaluate(flat.A202, tpt));
    CHECK(J * v.A201 * J.transpose() == evaluate(flat.A201, tpt));
    CHECK(v.A102 == QMatrix(4, 4));
}

TEST_CASE("lie: E-series generators") {
    struct Want {
        const char* name;
        size_t size;
        Rational scale;
    };
    for (const Want& w : {Want{"E6", 27, q(1, 6)}, Want{"E7", 56, q(1, 12)}, Want{"E8", 248, q(1, 60)}}) {
        CAPTURE(w.name);
        LieAlgebraData g = load_algebra(w.name, kData);
        Fixture fx = load_fixture(w.name, kData);
        CHECK(g.matrix_size == w.size);
        CHECK(g.form_scale == w.scale);
        CHECK(g.bourbaki.size() == size_t(g.rank));
        LieChecks c = check_algebra(g, 0, 8, 5);
        CHECK(c.chevalley);
        CHECK(c.jacobi);
        CHECK(c.invariance);
        CHECK(c.normalized);
        SliceData s = principal_sl2(g);
        if (fx.has("sl2_coefficients")) CHECK(s.a == fx.rationals("sl2_coefficients"));
        // Stored gamma elements lie in Ker ad I_+ with the expected degrees.
        auto gam = fixture_gamma(fx);
        REQUIRE(gam.size() == size_t(g.rank));
        std::vector<int> degs;
        for (const auto& el : gam) {
            LieMat x(g.matrix_size);
            for (const auto& [label, coef] : el) x += coef * g.Xr.at(g.parse_root_label(label));
            CHECK(commutator(s.Iplus, x).is_zero());
            degs.push_back(g.height(g.parse_root_label(el[0].first)));
        }
        CHECK(degs == g.exponents);
        CHECK(fx.polys("flat_coordinates").size() == size_t(g.rank));
        CHECK(fx.at("k_tensor").size() > 0);
    }
}
