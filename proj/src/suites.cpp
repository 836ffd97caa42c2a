#include "cinv/suites.hpp"

#include "cinv/dirac.hpp"
#include "cinv/frobenius.hpp"
#include "cinv/symbol.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace cinv {

namespace {

using Clock = std::chrono::steady_clock;

std::string join(const std::vector<Rational>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s;
}

std::string tag(Series s, int n) { return std::string(1, series_letter(s)) + std::to_string(n); }

// Runs `body`, which returns an empty string on success or a failure note.
CheckLine timed(int criterion, std::string name, const std::function<std::string(std::ostringstream&)>& body,
                double budget_seconds = 0) {
    CheckLine line;
    line.criterion = criterion;
    line.name = std::move(name);
    auto t0 = Clock::now();
    std::ostringstream info;
    std::string failure;
    try {
        failure = body(info);
    } catch (const std::exception& e) {
        failure = std::string("exception: ") + e.what();
    }
    line.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (failure.empty() && budget_seconds > 0 && line.seconds > budget_seconds)
        failure = "over time budget of " + std::to_string(int(budget_seconds)) + " s";
    line.ok = failure.empty();
    line.detail = failure.empty() ? info.str() : failure;
    return line;
}

struct SymbolGen {
    std::mt19937_64 rng;
    explicit SymbolGen(uint64_t seed) : rng(seed) {}
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
    DiffPoly coeff() {
        DiffPoly c(pick(-2, 2));
        for (int t = 0; t < 2; ++t) {
            DiffPoly m(pick(-3, 3));
            m *= DiffPoly(var_of(VarKind::A, pick(1, 2), pick(0, 1)));
            if (pick(0, 1)) m *= DiffPoly(u(1));
            c += m;
        }
        return c;
    }
    Symbol symbol(int K) {
        Symbol s(K);
        int terms = pick(1, 3);
        for (int t = 0; t < terms; ++t) s.add(pick(-2, 2), pick(0, 1), coeff());
        return s;
    }
};

std::vector<LaxSpec> bcd_specs(int lo, int hi, int dlo, int order) {
    std::vector<LaxSpec> out;
    for (Series s : {Series::B, Series::C})
        for (int n = lo; n <= hi; ++n) out.push_back({s, n, order});
    for (int n = dlo; n <= hi; ++n) out.push_back({Series::D, n, order});
    return out;
}

std::string compare_symbol_path(const LaxSpec& spec, uint64_t seed) {
    CIResult r = central_invariants(spec, random_sample(spec.series, spec.n, seed));
    auto want = expected_symbol_invariants(spec.series, spec.n);
    if (!r.exact) return tag(spec.series, spec.n) + ": sample is not exact";
    if (r.c != want) return tag(spec.series, spec.n) + ": got " + join(r.c) + ", expected " + join(want);
    return "";
}

} // namespace

std::vector<Rational> expected_symbol_invariants(Series s, int n) {
    std::vector<Rational> c(size_t(n), s == Series::A ? make_rational(1, 24) : make_rational(1, 12));
    if (s == Series::B) c.back() = make_rational(1, 6);
    if (s == Series::C) c.back() = make_rational(1, 24);
    return c;
}

CheckLine check_an_invariants(const VerifyOptions& o) {
    return timed(1, "A_n, n = 1..6, c_i = 1/24 at 3 exact samples", [&](std::ostringstream& info) -> std::string {
        for (int n = 1; n <= 6; ++n) {
            LaxSpec spec{Series::A, n, 4};
            auto first = coefficient_table(spec, 1), second = coefficient_table(spec, 2);
            for (uint64_t k = 0; k < 3; ++k) {
                CIResult r = central_invariants(first, second, random_sample(Series::A, n, o.seed + k));
                if (!r.exact || r.c != expected_symbol_invariants(Series::A, n))
                    return "A" + std::to_string(n) + " sample " + std::to_string(k) + ": " + join(r.c);
            }
        }
        info << "18 samples exact";
        return "";
    }, 60);
}

CheckLine check_bcd_invariants(const VerifyOptions& o) {
    return timed(2, "B_n, C_n (n = 2..5), D_n (n = 3..5) exact", [&](std::ostringstream& info) -> std::string {
        for (const LaxSpec& spec : bcd_specs(2, 5, 3, 4)) {
            std::string f = compare_symbol_path(spec, o.seed);
            if (!f.empty()) return f;
        }
        info << "B: (1/12,..,1/6), C: (1/12,..,1/24), D: (1/12,..)";
        return "";
    }, 300);
}

CheckLine check_closed_forms(const VerifyOptions&) {
    return timed(3, "closed forms: A tables, B/C/D small tables and R blocks, n <= 4", [&](std::ostringstream& info) -> std::string {
        int count = 0;
        for (int n = 1; n <= 4; ++n)
            for (int which = 1; which <= 2; ++which) {
                BracketCoeffTable t = coefficient_table({Series::A, n, 3}, which);
                for (int s = 1; s <= 3; ++s, ++count)
                    if (!frac_equals(generating_a(t, s), a_closed_form(n, which, s)))
                        return "A" + std::to_string(n) + " bracket " + std::to_string(which) + " s=" + std::to_string(s);
            }
        for (const LaxSpec& spec : bcd_specs(1, 4, 3, 3)) {
            auto [second, first] = shifted_tables(spec);
            for (int s : {1, 3}) {
                int shift = 0;
                PolyFrac f = bcd_small_closed_form(spec, s, &shift);
                if (shifted_small_table(second, s, shift) != dual_projection(spec, f, shift))
                    return tag(spec.series, spec.n) + " small table s=" + std::to_string(s);
                ++count;
            }
            const BracketCoeffTable* tabs[2] = {&first, &second};
            for (int which = 1; which <= 2; ++which)
                for (int s = 1; s <= 3; ++s, ++count)
                    if (!frac_equals(contour_to_capital(*tabs[which - 1], s), r_closed_form(spec, which, s)))
                        return tag(spec.series, spec.n) + " R block " + std::to_string(which) + "," + std::to_string(s);
        }
        info << count << " identities";
        return "";
    });
}

CheckLine check_g2_pipeline(const VerifyOptions& o) {
    return timed(4, "G2 Dirac pipeline: g2, g1, A tensors, potential, canonical coordinates, c", [&](std::ostringstream& info) -> std::string {
        Fixture fx = load_fixture("G2", o.fixtures);
        G2Pipeline p = g2_pipeline(fx);
        auto stored = [&](const char* group, const char* key) { return json_poly_matrix(fx.at(group).at(key)); };
        const std::pair<const char*, const PolyMatrix*> reduced[] = {
            {"g2", &p.reduced.g2},     {"g1", &p.reduced.g1},     {"A202", &p.reduced.A202},
            {"A201", &p.reduced.A201}, {"A102", &p.reduced.A102}, {"A101", &p.reduced.A101}};
        for (const auto& [key, m] : reduced)
            if (*m != stored("reduced", key)) return std::string("slice tensor ") + key + " differs";
        if (p.flat.g2 != stored("flat", "g2") || p.flat.g1 != stored("flat", "g1")) return "flat metrics differ";
        // The stored flat third-order tensors carry each other's labels.
        if (p.flat.A202 != stored("flat", "A201") || p.flat.A201 != stored("flat", "A202"))
            return "flat third-order tensors differ";

        QMatrix eta_inv = evaluate(p.flat.g1, {});
        DiffPoly F = potential_from_metrics(eta_inv, p.flat.g2, {6, 2}, {tv(1), tv(2)});
        if (F != strip_quadratic(fx.poly("potential"))) return "potential " + F.str();

        DiffPoly z(var_of(VarKind::Lam));
        if (char_poly(p.flat) != Rational(-1) * (z - p.canonical[0]) * (z - p.canonical[1]))
            return "characteristic polynomial differs from the canonical coordinates";

        std::mt19937_64 rng(o.seed);
        std::uniform_int_distribution<int> d(1, 9);
        const std::vector<Rational> want{make_rational(1, 8), make_rational(1, 24)};
        for (int k = 0; k < 3; ++k) {
            std::map<Var, Rational> t{{tv(1), make_rational(d(rng) - 5, d(rng))}, {tv(2), make_rational(d(rng), d(rng))}};
            CIResult r = g2_invariants(p, t);
            if (!r.exact || r.c != want) return "c = " + join(r.c);
        }
        info << "potential " << F.str() << "; c = 1/8, 1/24";
        return "";
    });
}

CheckLine check_f4_fixture(const VerifyOptions& o) {
    return timed(5, "F4 fixture pipeline: c = 1/24, 1/24, 1/12, 1/12", [&](std::ostringstream& info) -> std::string {
        Fixture fx = load_fixture("F4", o.fixtures);
        const std::vector<Rational> want{make_rational(1, 24), make_rational(1, 24), make_rational(1, 12),
                                         make_rational(1, 12)};
        std::mt19937_64 rng(o.seed);
        std::uniform_int_distribution<int> d(1, 9);
        for (int k = 0; k < 3; ++k) {
            auto t = f4_rational_sample(make_rational(d(rng) - 5), make_rational(d(rng)), make_rational(-d(rng)),
                                        make_rational(d(rng)));
            CIResult r = f4_fixture_pipeline(fx, t);
            if (!r.exact) return "rational sample gave irrational roots";
            if (r.c != want) return "exact sample: " + join(r.c);
        }
        double worst = 0;
        for (int k = 0; k < 3; ++k) {
            std::map<Var, Rational> t;
            for (int i = 1; i <= 4; ++i) t[tv(i)] = make_rational(d(rng), d(rng));
            CIResult r = f4_fixture_pipeline(fx, t);
            for (size_t i = 0; i < 4; ++i) {
                Complex c = r.exact ? to_complex(r.c[i]) : r.c_num[i];
                worst = std::max(worst, double(abs(c - to_complex(want[i]))));
            }
        }
        if (!(worst < 1e-9)) return "numeric deviation " + std::to_string(worst);
        info << "3 exact samples; 3 random samples, max deviation " << worst;
        return "";
    });
}

CheckLine check_lie_table(const VerifyOptions&) {
    return timed(6, "invariant table for nine types and folding identities", [&](std::ostringstream& info) -> std::string {
        const Rational a = make_rational(1, 24), b = make_rational(1, 12);
        const std::vector<std::pair<std::string, std::vector<Rational>>> rows = {
            {"A4", {a, a, a, a}}, {"B4", {a, a, a, b}}, {"C4", {b, b, b, a}},
            {"D5", {a, a, a, a, a}}, {"E6", std::vector<Rational>(6, a)}, {"E7", std::vector<Rational>(7, a)},
            {"E8", std::vector<Rational>(8, a)}, {"F4", {a, a, b, b}}, {"G2", {make_rational(1, 8), a}}};
        for (const auto& [t, want] : rows) {
            CIResult r = lie_formula(root_system(parse_cartan_type(t)));
            if (r.c != want) return t + ": " + join(r.c);
        }
        int folds = 0;
        for (const Folding& f : standard_foldings(5)) {
            if (!folding_check(f).ok()) return "folding " + f.from.str() + " -> " + f.to.str();
            ++folds;
        }
        info << "9 rows, " << folds << " foldings";
        return "";
    });
}

CheckLine check_residue_identity(const VerifyOptions& o) {
    return timed(7, "residue identity, 20 random sets per n <= 8", [&](std::ostringstream& info) -> std::string {
        std::mt19937_64 rng(o.seed);
        std::uniform_int_distribution<int> num(-40, 40), den(1, 5);
        for (int n = 1; n <= 8; ++n)
            for (int t = 0; t < 20; ++t) {
                std::set<Rational> pts;
                while (int(pts.size()) < n) pts.insert(make_rational(num(rng), den(rng)));
                std::vector<Rational> r(pts.begin(), pts.end());
                Rational mean = 0;
                for (const auto& x : r) mean += x;
                mean /= n;
                for (auto& x : r) x -= mean;
                if (!residue_identity(r)) return "n = " + std::to_string(n) + " set " + std::to_string(t);
            }
        info << "160 sets";
        return "";
    });
}

CheckLine check_properties(const VerifyOptions& o) {
    return timed(8, "star associativity, adjoint, trace of commutators, bracket antisymmetry", [&](std::ostringstream& info) -> std::string {
        SymbolGen gen(o.seed);
        for (int t = 0; t < 50; ++t) {
            Symbol A = gen.symbol(4), B = gen.symbol(4), C = gen.symbol(4);
            if (star(star(A, B), C) != star(A, star(B, C))) return "associativity, triple " + std::to_string(t);
            if (adjoint(adjoint(A)) != A) return "adjoint involution";
            if (adjoint(star(A, B)) != star(adjoint(B), adjoint(A))) return "adjoint anti-homomorphism";
            DiffPoly d = residue_poly(star(A, B)) - residue_poly(star(B, A));
            auto g = integrate_x(d);
            if (!g || g->dx() != d) return "trace of a commutator is not a total derivative";
        }
        std::vector<LaxSpec> specs = bcd_specs(2, 3, 3, 3);
        for (int n = 1; n <= 4; ++n) specs.push_back({Series::A, n, 3});
        for (const LaxSpec& spec : specs)
            for (int which = 1; which <= 2; ++which) {
                BracketCoeffTable tab = coefficient_table(spec, which);
                for (const auto& [s, C] : tab.C) {
                    Rational sign = s % 2 ? Rational(1) : Rational(-1);
                    for (int i = 0; i < spec.n; ++i)
                        for (int j = 0; j < spec.n; ++j)
                            if (C[size_t(i)][size_t(j)] != sign * C[size_t(j)][size_t(i)])
                                return "antisymmetry " + tag(spec.series, spec.n) + " s=" + std::to_string(s);
                }
            }
        info << "50 triples; " << specs.size() << " Lax operators, both brackets";
        return "";
    });
}

CheckLine check_constancy(const VerifyOptions& o) {
    return timed(9, "c_i constant across 5 samples per (series, n <= 4)", [&](std::ostringstream& info) -> std::string {
        std::vector<LaxSpec> specs = bcd_specs(1, 4, 3, 4);
        for (int n = 1; n <= 4; ++n) specs.push_back({Series::A, n, 4});
        for (const LaxSpec& spec : specs) {
            auto first = coefficient_table(spec, 1), second = coefficient_table(spec, 2);
            std::optional<std::vector<Rational>> seen;
            for (uint64_t k = 0; k < 5; ++k) {
                CIResult r = central_invariants(first, second, random_sample(spec.series, spec.n, o.seed + 100 + k));
                if (!r.exact) return tag(spec.series, spec.n) + ": sample is not exact";
                if (seen && *seen != r.c) return tag(spec.series, spec.n) + ": " + join(*seen) + " vs " + join(r.c);
                seen = r.c;
            }
        }
        info << specs.size() << " (series, n) pairs";
        return "";
    });
}

CheckLine check_frobenius(const VerifyOptions& o) {
    return timed(10, "A_n orbit pencil vs dispersionless pencil; G2 potential round trip", [&](std::ostringstream& info) -> std::string {
        std::mt19937_64 rng(o.seed);
        std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
        std::optional<Rational> kappa;
        for (int n = 1; n <= 3; ++n) {
            OrbitSpaceData orb = orbit_metrics_a(n);
            LaxSpec spec{Series::A, n, 3};
            std::map<Var, DiffPoly> rename;
            for (int i = 1; i <= n; ++i) rename[u(i)] = DiffPoly(orb.y[size_t(i - 1)]);
            auto in_y = [&](const PolyMatrix& m) { return m.map([&](const DiffPoly& e) { return e.substitute(rename); }); };
            PolyMatrix b2 = in_y(coefficient_table(spec, 2).matrix(1)), b1 = in_y(coefficient_table(spec, 1).matrix(1));
            for (int s = 0; s < 5; ++s) {
                std::map<Var, Rational> at;
                for (const auto& v : orb.y) at[v] = make_rational(num(rng), den(rng));
                QMatrix g2 = evaluate(orb.g2, at), g1 = evaluate(orb.g1, at), c2 = evaluate(b2, at), c1 = evaluate(b1, at);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        if (!kappa && c2(size_t(i), size_t(j)) != 0) kappa = g2(size_t(i), size_t(j)) / c2(size_t(i), size_t(j));
                        if (!kappa) continue;
                        if (g2(size_t(i), size_t(j)) != *kappa * c2(size_t(i), size_t(j)) ||
                            g1(size_t(i), size_t(j)) != *kappa * c1(size_t(i), size_t(j)))
                            return "A" + std::to_string(n) + " differs from kappa = " + to_string(*kappa);
                    }
            }
        }
        if (!kappa || *kappa != -1) return "unexpected normalization constant";

        FrobeniusData d = frobenius_from_fixture(load_fixture("G2", o.fixtures));
        FlatPencil p = pencil_from_potential(d);
        DiffPoly F = potential_from_metrics(p.eta_inv, p.g2, {6, 2}, d.t);
        if (F != strip_quadratic(d.F)) return "G2 potential round trip gave " + F.str();
        info << "kappa = -1 for n = 1..3 at 5 samples each; G2 potential recovered";
        return "";
    });
}

CheckLine check_e6_potential(const VerifyOptions& o) {
    return timed(0, "E6 and F4 potentials: constant eta, quasi-homogeneity, c-tensor symmetry", [&](std::ostringstream& info) -> std::string {
        for (const char* name : {"E6", "F4"}) {
            FrobeniusData d = frobenius_from_fixture(load_fixture(name, o.fixtures));
            FlatPencil p = pencil_from_potential(d);
            auto deg = quasi_homogeneity(d);
            if (!deg) return std::string(name) + " potential is not quasi-homogeneous";
            if (!c_tensor_symmetric(p, d)) return std::string(name) + " c-tensor is not symmetric";
            info << (std::string(name) == "E6" ? "" : "; ") << name << " d_F = " << to_string(*deg);
        }
        return "";
    });
}

std::vector<CheckLine> run_criteria(const VerifyOptions& o) {
    return {check_an_invariants(o), check_bcd_invariants(o), check_closed_forms(o), check_g2_pipeline(o),
            check_f4_fixture(o),    check_lie_table(o),      check_residue_identity(o), check_properties(o),
            check_constancy(o),     check_frobenius(o)};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"all", "an", "bcd", "g2", "f4", "table", "frobenius", "properties"};
    return names;
}

std::vector<CheckLine> run_suite(const std::string& suite, const VerifyOptions& o) {
    if (suite == "all") {
        auto out = run_criteria(o);
        out.push_back(check_e6_potential(o));
        return out;
    }
    if (suite == "an") return {check_an_invariants(o)};
    if (suite == "bcd") return {check_bcd_invariants(o), check_closed_forms(o), check_constancy(o)};
    if (suite == "g2") return {check_g2_pipeline(o)};
    if (suite == "f4") return {check_f4_fixture(o)};
    if (suite == "table") return {check_lie_table(o)};
    if (suite == "frobenius") return {check_frobenius(o), check_e6_potential(o)};
    if (suite == "properties") return {check_residue_identity(o), check_properties(o)};
    throw ConfigError("unknown suite '" + suite + "'");
}

} // namespace cinv
