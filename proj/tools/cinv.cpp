// cinv: central invariants of Drinfeld-Sokolov bihamiltonian structures.
#include "cinv/dirac.hpp"
#include "cinv/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <future>
#include <iostream>
#include <random>
#include <sstream>

using namespace cinv;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kDegenerate = 2, kFixture = 3, kConfig = 4 };

struct Config {
    std::string series, algebra, method, format = "json", sample, fixtures;
    int rank = 0;
    int eps_order = 4;
    int decimal = -1;    // -1: exact "num/den"
    int precision = 20;  // digits for irrational (numeric) results
    uint64_t seed = 1;
    bool verbose = false;
};

void log(const Config& c, const std::string& msg) {
    if (c.verbose) std::cerr << "cinv: " << msg << "\n";
}

std::string fmt_q(const Config& c, const Rational& q) { return c.decimal >= 0 ? to_decimal(q, c.decimal) : to_string(q); }

std::string fmt_complex(const Config& c, const Complex& z) {
    int digits = c.decimal >= 0 ? c.decimal : c.precision;
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << z.real();
    if (abs(z.imag()) > 1e-40) os << (z.imag() < 0 ? " - " : " + ") << std::fixed << std::setprecision(digits)
                                  << abs(z.imag()) << "i";
    return os.str();
}

std::vector<Rational> parse_sample(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        try {
            out.push_back(parse_rational(item));
        } catch (const std::invalid_argument&) {
            throw ConfigError("bad sample value '" + item + "'");
        }
    return out;
}

// Resolves --series/--rank or --algebra to a Cartan type.
CartanType resolve_type(const Config& c) {
    if (!c.algebra.empty()) {
        if (!c.series.empty()) throw ConfigError("give either --algebra or --series, not both");
        return parse_cartan_type(c.algebra);
    }
    if (c.series.empty() || c.rank <= 0) throw ConfigError("need --algebra, or --series with --rank");
    return parse_cartan_type(c.series + std::to_string(c.rank));
}

json report_json(const Config& c, const CIResult& r, json diagnostics) {
    json inv = json::array();
    for (size_t i = 0; i < r.size(); ++i) {
        json e;
        e["index"] = i + 1;
        if (r.exact) {
            e["lambda"] = r.lambda.empty() ? json(nullptr) : json(fmt_q(c, r.lambda[i]));
            e["c"] = fmt_q(c, r.c[i]);
        } else {
            e["lambda"] = r.lambda_num.empty() ? json(nullptr) : json(fmt_complex(c, r.lambda_num[i]));
            e["c"] = fmt_complex(c, r.c_num[i]);
        }
        inv.push_back(e);
    }
    diagnostics["exact"] = r.exact;
    return {{"algebra", r.algebra}, {"method", r.method}, {"invariants", inv}, {"diagnostics", diagnostics}};
}

void emit_report(const Config& c, const json& rep) {
    if (c.format == "json") {
        std::cout << rep.dump(2) << "\n";
    } else if (c.format == "tsv") {
        std::cout << "index\tlambda\tc\n";
        for (const auto& e : rep["invariants"])
            std::cout << e["index"].get<int>() << "\t" << (e["lambda"].is_null() ? "" : e["lambda"].get<std::string>())
                      << "\t" << e["c"].get<std::string>() << "\n";
    } else {
        std::cout << rep["algebra"].get<std::string>() << " (" << rep["method"].get<std::string>() << "): ";
        bool first = true;
        for (const auto& e : rep["invariants"]) {
            std::cout << (first ? "" : ", ") << e["c"].get<std::string>();
            first = false;
        }
        std::cout << "\n";
    }
}

json sample_json(const std::map<Var, Rational>& at) {
    json s = json::object();
    for (const auto& [v, q] : at) s[var_name(v)] = to_string(q);
    return s;
}

std::map<Var, Rational> seeded_point(const std::vector<Var>& vars, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(1, 9), den(1, 4);
    std::map<Var, Rational> at;
    for (size_t i = 0; i < vars.size(); ++i) {
        int sign = i % 2 ? -1 : 1;
        at[vars[i]] = make_rational(sign * num(rng), den(rng));
    }
    return at;
}

std::map<Var, Rational> explicit_point(const std::string& sample, const std::vector<Var>& vars) {
    auto vals = parse_sample(sample);
    if (vals.size() != vars.size())
        throw ConfigError("--sample needs " + std::to_string(vars.size()) + " values");
    std::map<Var, Rational> at;
    for (size_t i = 0; i < vars.size(); ++i) at[vars[i]] = vals[i];
    return at;
}

int cmd_compute(const Config& c) {
    if (c.eps_order < 3) throw ConfigError("--eps-order must be at least 3 (delta''' needs eps^2)");
    CartanType t = resolve_type(c);
    std::string method = c.method;
    const bool classical = t.family >= 'A' && t.family <= 'D';
    if (method.empty()) method = classical ? "symbol" : t.family == 'G' ? "dirac" : t.family == 'F' ? "fixture" : "lie";
    log(c, "compute " + t.str() + " via " + method);

    json diag;
    diag["seed"] = c.seed;
    CIResult r;
    if (method == "lie") {
        if (!c.sample.empty()) throw ConfigError("--sample does not apply to the lie method");
        r = lie_formula(root_system(t));
        r.lambda.clear();
    } else if (method == "symbol") {
        if (!classical) throw ConfigError("the symbol method needs a classical series A, B, C or D");
        Series s = parse_series(std::string(1, t.family));
        LaxSpec spec{s, t.rank, c.eps_order};
        spec.validate();
        CanonicalData canon = c.sample.empty() ? random_sample(s, t.rank, c.seed)
                                               : canonical_coordinates(s, t.rank, parse_sample(c.sample));
        if (int(canon.u.size()) != t.rank) throw ConfigError("--sample needs " + std::to_string(t.rank) + " values");
        r = central_invariants(spec, canon);
        json u = json::array();
        for (const auto& q : canon.u) u.push_back(to_string(q));
        diag["sample"] = {{"u", u}};
        diag["eps_order"] = c.eps_order;
        diag["bracket_truncation"] = 3;
    } else if (method == "dirac") {
        if (t.family == 'G') {
            G2Pipeline p = g2_pipeline(load_fixture("G2", fixture_dir(c.fixtures.empty() ? std::nullopt : std::optional(c.fixtures))));
            std::vector<Var> vars{tv(1), tv(2)};
            auto at = c.sample.empty() ? seeded_point(vars, c.seed) : explicit_point(c.sample, vars);
            r = g2_invariants(p, at);
            diag["sample"] = sample_json(at);
            diag["coordinates"] = "flat";
        } else if (classical) {
            LieAlgebraData g = classical_algebra(t);
            ReducedPencil p = dirac_reduce(dirac_system(g, slice_bases(g)));
            auto at = c.sample.empty() ? seeded_point(p.coords, c.seed) : explicit_point(c.sample, p.coords);
            r = central_invariants_dirac(p, at, t.str());
            diag["sample"] = sample_json(at);
            diag["coordinates"] = "slice";
            diag["ordering"] = "sorted canonical coordinates";
        } else {
            throw ConfigError("the dirac method is available for A-D and G2; use --method fixture for F4");
        }
    } else if (method == "fixture") {
        if (t.family != 'F') throw ConfigError("the fixture method is available for F4 only");
        Fixture fx = load_fixture("F4", fixture_dir(c.fixtures.empty() ? std::nullopt : std::optional(c.fixtures)));
        std::map<Var, Rational> at;
        if (c.sample.empty()) {
            std::mt19937_64 rng(c.seed);
            std::uniform_int_distribution<int> d(1, 9);
            at = f4_rational_sample(make_rational(d(rng)), make_rational(d(rng)), make_rational(-d(rng)), make_rational(d(rng)));
        } else {
            at = explicit_point(c.sample, {tv(1), tv(2), tv(3), tv(4)});
        }
        r = f4_fixture_pipeline(fx, at);
        diag["sample"] = sample_json(at);
    } else {
        throw ConfigError("unknown method '" + method + "'");
    }
    if (r.algebra.empty()) r.algebra = t.str();
    r.method = method;
    emit_report(c, report_json(c, r, diag));
    return kOk;
}

struct TableRow {
    std::string type;
    std::vector<Rational> expected;
};

std::vector<TableRow> table_rows(int n) {
    const Rational a = make_rational(1, 24), b = make_rational(1, 12);
    auto fill = [](int k, Rational x, Rational last) {
        std::vector<Rational> v(size_t(k), x);
        v.back() = last;
        return v;
    };
    int nd = std::max(n, 4);
    return {{"A" + std::to_string(n), fill(n, a, a)},
            {"B" + std::to_string(std::max(n, 2)), fill(std::max(n, 2), a, b)},
            {"C" + std::to_string(std::max(n, 2)), fill(std::max(n, 2), b, a)},
            {"D" + std::to_string(nd), fill(nd, a, a)},
            {"E6", fill(6, a, a)},
            {"E7", fill(7, a, a)},
            {"E8", fill(8, a, a)},
            {"F4", {a, a, b, b}},
            {"G2", {make_rational(1, 8), a}}};
}

int cmd_table(const Config& c, bool check, const std::vector<std::string>& fold) {
    if (!fold.empty()) {
        if (fold.size() != 2) throw ConfigError("--fold takes two types, e.g. --fold B3 G2");
        CartanType from = parse_cartan_type(fold[0]), to = parse_cartan_type(fold[1]);
        std::optional<Folding> found;
        for (const Folding& f : standard_foldings(std::max(from.rank, 5)))
            if (f.from == from && f.to == to) found = f;
        if (!found) throw ConfigError("no folding " + from.str() + " -> " + to.str());
        FoldingReport rep = folding_check(*found);
        json folded = json::array(), target = json::array();
        for (const auto& q : rep.folded) folded.push_back(fmt_q(c, q));
        for (const auto& q : rep.target) target.push_back(fmt_q(c, q));
        json out = {{"algebra", from.str() + "->" + to.str()},
                    {"method", "folding"},
                    {"invariants", target},
                    {"diagnostics",
                     {{"folded", folded},
                      {"orbits", found->orbits},
                      {"orbits_disconnected", rep.orbits_disconnected},
                      {"cartan_consistent", rep.cartan_consistent},
                      {"additive", rep.additive}}}};
        if (c.format == "json") {
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << from.str() << " -> " << to.str() << "\t" << (rep.ok() ? "ok" : "FAILED") << "\n";
        }
        return rep.ok() ? kOk : kMismatch;
    }

    int n = c.rank > 0 ? c.rank : 4;
    json rows = json::array();
    bool all_ok = true;
    std::ostringstream tsv;
    for (const TableRow& row : table_rows(n)) {
        CIResult r = lie_formula(root_system(parse_cartan_type(row.type)));
        json cs = json::array();
        tsv << row.type;
        for (const auto& q : r.c) {
            cs.push_back(fmt_q(c, q));
            tsv << "\t" << fmt_q(c, q);
        }
        tsv << "\n";
        json e = {{"algebra", row.type}, {"c", cs}};
        if (check) {
            bool ok = r.c == row.expected;
            e["match"] = ok;
            if (!ok) {
                all_ok = false;
                std::cerr << "cinv: table mismatch for " << row.type << "\n";
                for (size_t i = 0; i < std::max(r.c.size(), row.expected.size()); ++i)
                    std::cerr << "  c" << i + 1 << ": got " << (i < r.c.size() ? to_string(r.c[i]) : "-") << ", expected "
                              << (i < row.expected.size() ? to_string(row.expected[i]) : "-") << "\n";
            }
        }
        rows.push_back(e);
    }
    if (c.format == "tsv" || c.format == "pretty") {
        std::cout << tsv.str();
    } else {
        json diag = {{"normalization", "tr(ad a ad b) / (2 h^vee)"}};
        if (check) diag["check"] = all_ok;
        std::cout << json{{"algebra", "table"}, {"method", "lie"}, {"invariants", rows}, {"diagnostics", diag}}.dump(2)
                  << "\n";
    }
    return all_ok ? kOk : kMismatch;
}

int cmd_coeffs(const Config& c, bool check, int which) {
    if (c.series.empty() || c.rank <= 0) throw ConfigError("coeffs needs --series and --rank");
    if (which != 1 && which != 2) throw ConfigError("--bracket must be 1 or 2");
    LaxSpec spec{parse_series(c.series), c.rank, c.eps_order};
    spec.validate();
    const std::string name = std::string(1, series_letter(spec.series)) + std::to_string(spec.n);
    std::pair<BracketCoeffTable, BracketCoeffTable> tabs = spec.series == Series::A
        ? std::make_pair(coefficient_table(spec, 2), coefficient_table(spec, 1))
        : shifted_tables(spec);
    const BracketCoeffTable& tab = which == 2 ? tabs.first : tabs.second;

    json checks = json::object();
    bool ok = true;
    auto record = [&](const std::string& key, bool pass) {
        checks[key] = pass;
        if (!pass) {
            ok = false;
            std::cerr << "cinv: " << name << " " << key << " differs from the closed form\n";
        }
    };
    json capital = json::object();
    for (int s = 1; s <= 3; ++s) {
        if (spec.series == Series::A) {
            if (check) record("A" + std::to_string(which) + "0" + std::to_string(s),
                              frac_equals(generating_a(tab, s), a_closed_form(spec.n, which, s)));
        } else {
            capital["R" + std::to_string(which) + std::to_string(s)] = contour_to_capital(tab, s).str();
            if (check) {
                for (int w = 1; w <= 2; ++w) {
                    const BracketCoeffTable& tw = w == 2 ? tabs.first : tabs.second;
                    record("R" + std::to_string(w) + std::to_string(s),
                           frac_equals(contour_to_capital(tw, s), r_closed_form(spec, w, s)));
                }
                if (s != 2) {
                    int shift = 0;
                    PolyFrac f = bcd_small_closed_form(spec, s, &shift);
                    record("A20" + std::to_string(s), shifted_small_table(tabs.first, s, shift) == dual_projection(spec, f, shift));
                }
            }
        }
    }
    if (c.format == "json") {
        json C = json::array();
        for (const auto& [s, mat] : tab.C)
            for (size_t i = 0; i < mat.size(); ++i)
                for (size_t j = 0; j < mat[i].size(); ++j)
                    if (!mat[i][j].is_zero()) C.push_back({{"s", s}, {"i", i + 1}, {"j", j + 1}, {"value", mat[i][j].str()}});
        json diag = {{"bracket", which}, {"eps_order", c.eps_order}, {"bracket_truncation", 3}, {"coefficients", C}};
        if (!capital.empty()) diag["capital"] = capital;
        if (check) diag["check"] = checks;
        std::cout << json{{"algebra", name}, {"method", "coeffs"}, {"invariants", json::array()}, {"diagnostics", diag}}.dump(2)
                  << "\n";
    } else {
        std::cout << tab.serialize();
        for (const auto& [k, v] : capital.items()) std::cout << k << " " << v.get<std::string>() << "\n";
        if (check)
            for (const auto& [k, v] : checks.items()) std::cout << "check " << k << " " << (v.get<bool>() ? "ok" : "FAILED") << "\n";
    }
    return ok ? kOk : kMismatch;
}

int cmd_verify(const Config& c, const std::string& suite) {
    VerifyOptions o;
    o.fixtures = fixture_dir(c.fixtures.empty() ? std::nullopt : std::optional(c.fixtures));
    o.seed = c.seed;
    std::vector<CheckLine> lines;
    if (suite == "all") {
        // Suites are independent and the library keeps no shared mutable state.
        std::vector<std::future<std::vector<CheckLine>>> jobs;
        for (const std::string& s : suite_names())
            if (s != "all") jobs.push_back(std::async(std::launch::async, [s, o] { return run_suite(s, o); }));
        for (auto& j : jobs)
            for (auto& l : j.get()) lines.push_back(std::move(l));
    } else {
        lines = run_suite(suite, o);
    }
    bool ok = true;
    json arr = json::array();
    for (const CheckLine& l : lines) {
        ok = ok && l.ok;
        arr.push_back({{"criterion", l.criterion}, {"name", l.name}, {"ok", l.ok}, {"detail", l.detail}});
        std::cerr << "cinv: " << l.name << " took " << l.seconds << " s\n";
    }
    if (c.format == "json") {
        std::cout << json{{"algebra", "all"}, {"method", "verify"}, {"invariants", json::array()},
                          {"diagnostics", {{"suite", suite}, {"checks", arr}, {"ok", ok}}}}
                         .dump(2)
                  << "\n";
    } else {
        for (const CheckLine& l : lines)
            std::cout << (l.ok ? "PASS" : "FAIL") << "\t" << l.name << "\t" << l.detail << "\n";
    }
    return ok ? kOk : kMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Central invariants of Drinfeld-Sokolov bihamiltonian structures"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--fixtures", cfg.fixtures, "Fixture directory (default: $CINV_FIXTURES, then the bundled data)");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "tsv", "pretty"}));
    app.add_option("--decimal", cfg.decimal, "Print rationals as decimals with this many digits")->check(CLI::Range(0, 200));
    app.add_option("--precision", cfg.precision, "Digits for non-rational results")->check(CLI::Range(1, 45));
    app.add_option("--seed", cfg.seed, "Sample seed");
    app.add_flag("-v,--verbose", cfg.verbose, "Log progress to stderr");

    auto* compute = app.add_subcommand("compute", "Central invariants of one algebra");
    compute->add_option("--series", cfg.series, "Classical series A, B, C or D");
    compute->add_option("--rank", cfg.rank, "Rank");
    compute->add_option("--algebra", cfg.algebra, "Type such as A3, G2, F4, E6");
    compute->add_option("--method", cfg.method, "symbol | dirac | fixture | lie");
    compute->add_option("--sample", cfg.sample, "Comma-separated point (u for symbol/dirac, t for G2/F4)");
    compute->add_option("--eps-order", cfg.eps_order, "Truncation order in eps");

    auto* table = app.add_subcommand("table", "Invariant table from the Lie-theoretic formula");
    bool table_check = false;
    std::vector<std::string> fold;
    table->add_flag("--check", table_check, "Compare with the expected values");
    table->add_option("--fold", fold, "Folding identity report, e.g. --fold B3 G2")->expected(2);
    table->add_option("--rank", cfg.rank, "Rank used for the A-D rows (default 4)");

    auto* coeffs = app.add_subcommand("coeffs", "Bracket coefficient tables");
    bool coeffs_check = false;
    int which = 2;
    coeffs->add_option("--series", cfg.series, "Classical series")->required();
    coeffs->add_option("--rank", cfg.rank, "Rank")->required();
    coeffs->add_option("--bracket", which, "1 or 2");
    coeffs->add_option("--eps-order", cfg.eps_order, "Truncation order in eps");
    coeffs->add_flag("--check", coeffs_check, "Compare with the closed forms");

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    std::string suite = "all";
    verify->add_option("suite", suite, "all | an | bcd | g2 | f4 | table | frobenius | properties");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*compute) return cmd_compute(cfg);
        if (*table) return cmd_table(cfg, table_check, fold);
        if (*coeffs) return cmd_coeffs(cfg, coeffs_check, which);
        if (*verify) return cmd_verify(cfg, suite);
    } catch (const DegeneratePoint& e) {
        std::cerr << "cinv: degenerate sample point: " << e.what() << "\n";
        return kDegenerate;
    } catch (const FixtureError& e) {
        std::cerr << "cinv: fixture error: " << e.what() << "\n";
        return kFixture;
    } catch (const ConfigError& e) {
        std::cerr << "cinv: invalid configuration: " << e.what() << "\n";
        return kConfig;
    } catch (const UnknownAlgebra& e) {
        std::cerr << "cinv: invalid configuration: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "cinv: error: " << e.what() << "\n";
        return kMismatch;
    }
    return kConfig;
}
