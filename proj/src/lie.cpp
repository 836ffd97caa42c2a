#include "cinv/lie.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <numeric>
#include <random>
#include <set>

namespace cinv {

// ---------------------------------------------------------------- LieMat

LieMat LieMat::unit(size_t n, size_t i, size_t j) {
    LieMat m(n);
    m.add(i, j, 1);
    return m;
}

LieMat LieMat::from_dense(const QMatrix& d) {
    LieMat m(d.rows());
    for (size_t i = 0; i < d.rows(); ++i)
        for (size_t j = 0; j < d.cols(); ++j)
            if (d(i, j) != 0) m.rows_[i][j] = d(i, j);
    return m;
}

Rational LieMat::get(size_t i, size_t j) const {
    auto it = rows_[i].find(j);
    return it == rows_[i].end() ? Rational(0) : it->second;
}

void LieMat::add(size_t i, size_t j, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = rows_[i].emplace(j, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) rows_[i].erase(it);
    }
}

bool LieMat::is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); });
}

size_t LieMat::nonzeros() const {
    size_t k = 0;
    for (const auto& r : rows_) k += r.size();
    return k;
}

QMatrix LieMat::dense() const {
    QMatrix d(size(), size());
    for (size_t i = 0; i < size(); ++i)
        for (const auto& [j, v] : rows_[i]) d(i, j) = v;
    return d;
}

Rational LieMat::first_in_rows() const {
    for (const auto& r : rows_)
        if (!r.empty()) return r.begin()->second;
    return 0;
}

Rational LieMat::first_in_cols() const {
    size_t best_col = size(), best_row = 0;
    for (size_t i = 0; i < size(); ++i) {
        if (rows_[i].empty()) continue;
        size_t j = rows_[i].begin()->first;
        if (j < best_col) {
            best_col = j;
            best_row = i;
        }
    }
    return best_col == size() ? Rational(0) : get(best_row, best_col);
}

LieMat& LieMat::operator+=(const LieMat& o) {
    if (rows_.empty()) rows_.resize(o.size());
    for (size_t i = 0; i < o.size(); ++i)
        for (const auto& [j, v] : o.rows_[i]) add(i, j, v);
    return *this;
}

LieMat& LieMat::operator-=(const LieMat& o) {
    if (rows_.empty()) rows_.resize(o.size());
    for (size_t i = 0; i < o.size(); ++i)
        for (const auto& [j, v] : o.rows_[i]) add(i, j, -v);
    return *this;
}

LieMat operator*(const Rational& c, const LieMat& a) {
    LieMat m(a.size());
    if (c == 0) return m;
    for (size_t i = 0; i < a.size(); ++i)
        for (const auto& [j, v] : a.rows_[i]) m.rows_[i][j] = c * v;
    return m;
}

LieMat operator*(const LieMat& a, const LieMat& b) {
    LieMat m(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (const auto& [k, x] : a.rows_[i])
            for (const auto& [j, y] : b.rows_[k]) m.add(i, j, x * y);
    return m;
}

bool LieMat::operator==(const LieMat& o) const {
    if (size() != o.size()) return is_zero() && o.is_zero();
    return rows_ == o.rows_;
}

LieMat commutator(const LieMat& a, const LieMat& b) { return a * b - b * a; }

Rational trace_product(const LieMat& a, const LieMat& b) {
    Rational t = 0;
    for (size_t i = 0; i < a.size(); ++i)
        for (const auto& [k, x] : a.row(i)) {
            auto y = b.row(k).find(i);
            if (y != b.row(k).end()) t += x * y->second;
        }
    return t;
}

// ---------------------------------------------------------------- algebra data

int LieAlgebraData::height(const Root& r) const { return std::accumulate(r.begin(), r.end(), 0); }

std::vector<LieMat> LieAlgebraData::basis() const {
    std::vector<LieMat> b;
    for (const auto& r : positive_roots) b.push_back(Xr.at(r));
    for (const auto& h : H) b.push_back(h);
    for (const auto& r : positive_roots) b.push_back(Yr.at(r));
    return b;
}

Root LieAlgebraData::parse_root_label(const std::string& label) const {
    if (int(label.size()) == rank && rank > 1) {
        Root r;
        for (char c : label) {
            if (c < '0' || c > '9') throw FixtureError("bad root label '" + label + "'");
            r.push_back(c - '0');
        }
        if (!Xr.count(r)) throw FixtureError("'" + label + "' is not a positive root of " + name);
        return r;
    }
    size_t k = 0;
    try {
        k = std::stoul(label);
    } catch (const std::exception&) {
        throw FixtureError("bad root label '" + label + "'");
    }
    if (k < 1 || k > named_roots.size()) throw FixtureError("root index " + label + " out of range for " + name);
    return named_roots[k - 1];
}

namespace {

// Eigenvalue c with [h, x] = c x; nullopt when x is not an eigenvector.
std::optional<Rational> ad_eigenvalue(const LieMat& h, const LieMat& x) {
    LieMat b = commutator(h, x);
    Rational xv = 0, bv = 0;
    for (size_t i = 0; i < x.size() && xv == 0; ++i)
        if (!x.row(i).empty()) {
            auto [j, v] = *x.row(i).begin();
            xv = v;
            bv = b.get(i, j);
        }
    if (xv == 0) return std::nullopt;
    Rational c = bv / xv;
    if (b != c * x) return std::nullopt;
    return c;
}

std::vector<int> match_cartan(const QMatrix& a, const QMatrix& ref) {
    const int n = int(a.rows());
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j) ok = a(i, j) == ref(p[i], p[j]);
        if (ok) return p;
    } while (std::next_permutation(p.begin(), p.end()));
    return {};
}

} // namespace

LieAlgebraData algebra_from_generators(const std::string& name, const CartanType& t, std::vector<LieMat> X,
                                       std::vector<LieMat> Y) {
    const int n = t.rank;
    if (int(X.size()) != n || int(Y.size()) != n) throw BadCartanData(name + ": wrong number of generators");
    LieAlgebraData g;
    g.name = name;
    g.type = t;
    g.rank = n;
    g.matrix_size = X[0].size();
    g.X = std::move(X);
    g.Y = std::move(Y);
    for (int i = 0; i < n; ++i) g.H.push_back(commutator(g.X[i], g.Y[i]));

    g.cartan = QMatrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j && !commutator(g.X[i], g.Y[j]).is_zero())
                throw BadCartanData(name + ": [X_i, Y_j] != 0 for i != j");
            auto c = ad_eigenvalue(g.H[i], g.X[j]);
            auto d = ad_eigenvalue(g.H[i], g.Y[j]);
            if (!c || !d || *d != -*c) throw BadCartanData(name + ": H_i does not act diagonally on the generators");
            g.cartan(i, j) = *c;
        }
    g.bourbaki = match_cartan(g.cartan, cartan_matrix(t));
    if (g.bourbaki.empty()) throw BadCartanData(name + ": Cartan matrix is not of type " + t.str());

    // Root vectors by height; a new root space is spanned by [X_i, X_beta].
    std::vector<Root> level;
    for (int i = 0; i < n; ++i) {
        Root e(n, 0);
        e[i] = 1;
        g.Xr[e] = g.X[i];
        g.Yr[e] = g.Y[i];
        level.push_back(e);
        g.named_roots.push_back(e);
    }
    while (!level.empty()) {
        for (const auto& r : level) g.positive_roots.push_back(r);
        std::vector<Root> next;
        for (const auto& beta : level)
            for (int i = 0; i < n; ++i) {
                Root up = beta;
                up[i] += 1;
                if (g.Xr.count(up)) continue;
                LieMat x = commutator(g.X[i], g.Xr[beta]);
                if (x.is_zero()) continue;
                LieMat y = commutator(g.Y[i], g.Yr[beta]);
                g.Xr[up] = (Rational(1) / x.first_in_rows()) * x;
                g.Yr[up] = (Rational(1) / y.first_in_cols()) * y;
                next.push_back(up);
            }
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }

    RootSystem rs = root_system(t);
    if (g.positive_roots.size() != rs.positive_roots.size())
        throw BadCartanData(name + ": generated " + std::to_string(g.positive_roots.size()) + " positive roots, expected " +
                            std::to_string(rs.positive_roots.size()));
    g.coxeter = rs.coxeter;
    g.dual_coxeter = rs.dual_coxeter;
    g.exponents = rs.exponents;

    // Long-root coroots have the smallest norm; the normalized form gives them 2.
    Rational mn = trace_product(g.H[0], g.H[0]);
    for (const auto& h : g.H) mn = std::min(mn, Rational(trace_product(h, h)));
    if (mn <= 0) throw BadCartanData(name + ": trace form is not positive on the coroots");
    g.form_scale = Rational(2) / mn;
    return g;
}

namespace {

// Rescale X so that [[X, Y], X] = 2 X.
void normalize_pair(LieMat& x, const LieMat& y) {
    auto c = ad_eigenvalue(commutator(x, y), x);
    if (!c || *c == 0) throw BadCartanData("generator pair is not an sl2 triple");
    x = (Rational(2) / *c) * x;
}

LieMat transpose(const LieMat& m) {
    LieMat t(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (const auto& [j, v] : m.row(i)) t.add(j, i, v);
    return t;
}

} // namespace

LieAlgebraData classical_algebra(const CartanType& t) {
    const int n = t.rank;
    size_t N = 0;
    std::vector<LieMat> Y;
    auto E = [&](int i, int j) { return LieMat::unit(N, size_t(i - 1), size_t(j - 1)); }; // 1-based
    switch (t.family) {
    case 'A':
        N = size_t(n + 1);
        for (int i = 1; i <= n; ++i) Y.push_back(E(i + 1, i));
        break;
    case 'B':
        N = size_t(2 * n + 1);
        for (int i = 1; i <= n; ++i) Y.push_back(E(i + 1, i) + E(2 * n + 2 - i, 2 * n + 1 - i));
        break;
    case 'C':
        N = size_t(2 * n);
        for (int i = 1; i < n; ++i) Y.push_back(E(i + 1, i) + E(2 * n + 1 - i, 2 * n - i));
        Y.push_back(E(n + 1, n));
        break;
    case 'D':
        N = size_t(2 * n);
        for (int i = 1; i < n; ++i) Y.push_back(E(i + 1, i) - E(2 * n + 1 - i, 2 * n - i));
        Y.push_back(E(n + 1, n - 1) - E(n + 2, n));
        break;
    default: throw UnknownAlgebra("no built-in realization of " + t.str());
    }
    std::vector<LieMat> X;
    for (auto& y : Y) {
        X.push_back(transpose(y));
        normalize_pair(X.back(), y);
    }
    return algebra_from_generators(t.str(), t, std::move(X), std::move(Y));
}

LieAlgebraData g2_algebra() {
    LieAlgebraData b3 = classical_algebra({'B', 3});
    std::vector<LieMat> X{b3.X[0] + b3.X[2], b3.X[1]};
    std::vector<LieMat> Y{b3.Y[0] + b3.Y[2], b3.Y[1]};
    LieAlgebraData g = algebra_from_generators("G2", {'G', 2}, X, Y);
    if (g.cartan(0, 1) != -3) throw BadCartanData("G2: unexpected generator order");

    // Root vectors fixed by the standard recursion X3 = -[X1,X2], X4 = -[X1,X3]/2,
    // X5 = -[X1,X4]/3, X6 = -[X2,X5] (Y with the opposite sign).
    std::vector<LieMat> xs{X[0], X[1]}, ys{Y[0], Y[1]};
    const int left[] = {0, 0, 0, 1}, prev[] = {1, 2, 3, 4}, div[] = {1, 2, 3, 1};
    for (int k = 0; k < 4; ++k) {
        Rational s(1, div[k]);
        xs.push_back(-s * commutator(xs[size_t(left[k])], xs[size_t(prev[k])]));
        ys.push_back(s * commutator(ys[size_t(left[k])], ys[size_t(prev[k])]));
    }
    g.named_roots = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}};
    for (size_t k = 0; k < 6; ++k) {
        g.Xr[g.named_roots[k]] = xs[k];
        g.Yr[g.named_roots[k]] = ys[k];
    }
    return g;
}

namespace {

std::vector<LieMat> fixture_generators(const nlohmann::json& list, size_t N) {
    std::vector<LieMat> out;
    for (const auto& m : list) out.push_back(LieMat::from_dense(json_sparse(m, N)));
    return out;
}

LieAlgebraData fixture_algebra(const CartanType& t, const std::filesystem::path& dir) {
    Fixture f = load_fixture(t.str(), dir);
    const auto N = f.at("matrix_size").get<size_t>();
    const auto& gen = f.at("generators");
    if (!gen.contains("X")) throw FixtureError(t.str() + " fixture has no X generators");
    std::vector<LieMat> X = fixture_generators(gen["X"], N), Y;
    if (gen.contains("Y")) {
        Y = fixture_generators(gen["Y"], N);
    } else if (gen.contains("Y_transpose_plus")) {
        for (size_t i = 0; i < X.size(); ++i) {
            Y.push_back(transpose(X[i]));
            auto key = std::to_string(i + 1);
            if (gen["Y_transpose_plus"].contains(key))
                Y.back() += LieMat::from_dense(json_sparse(gen["Y_transpose_plus"][key], N));
        }
    } else {
        throw FixtureError(t.str() + " fixture has no Y generators");
    }
    LieAlgebraData g = algebra_from_generators(t.str(), t, std::move(X), std::move(Y));
    if (f.has("form_scale") && f.rational("form_scale") != g.form_scale)
        throw FixtureError(t.str() + " fixture form scale " + to_string(f.rational("form_scale")) +
                           " differs from the normalized value " + to_string(g.form_scale));
    return g;
}

} // namespace

LieAlgebraData load_algebra(const std::string& tag, const std::filesystem::path& fixtures) {
    CartanType t = parse_cartan_type(tag);
    switch (t.family) {
    case 'G': return g2_algebra();
    case 'F':
    case 'E': return fixture_algebra(t, fixtures);
    default: return classical_algebra(t);
    }
}

// ---------------------------------------------------------------- coordinates

BasisCoordinates::BasisCoordinates(const std::vector<LieMat>& basis) : dim_(basis.size()) {
    for (size_t b = 0; b < basis.size(); ++b) {
        std::map<Entry, Rational> v;
        for (size_t i = 0; i < basis[b].size(); ++i)
            for (const auto& [j, x] : basis[b].row(i)) v[{i, j}] = x;
        std::vector<Rational> combo(dim_, Rational(0));
        combo[b] = 1;
        for (size_t r = 0; r < rows_.size(); ++r) {
            auto it = v.find(pivots_[r]);
            if (it == v.end()) continue;
            Rational c = it->second / rows_[r].at(pivots_[r]);
            for (const auto& [e, x] : rows_[r]) {
                Rational& y = v[e];
                y -= c * x;
                if (y == 0) v.erase(e);
            }
            for (size_t k = 0; k < dim_; ++k)
                if (combo_[r][k] != 0) combo[k] -= c * combo_[r][k];
        }
        if (v.empty()) throw InvariantViolation("basis elements are linearly dependent");
        Entry p = v.begin()->first;
        // Clear the new pivot from the existing rows.
        for (size_t r = 0; r < rows_.size(); ++r) {
            auto it = rows_[r].find(p);
            if (it == rows_[r].end()) continue;
            Rational c = it->second / v.at(p);
            for (const auto& [e, x] : v) {
                Rational& y = rows_[r][e];
                y -= c * x;
                if (y == 0) rows_[r].erase(e);
            }
            for (size_t k = 0; k < dim_; ++k)
                if (combo[k] != 0) combo_[r][k] -= c * combo[k];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        combo_.push_back(std::move(combo));
    }
}

std::vector<Rational> BasisCoordinates::operator()(const LieMat& m) const {
    std::vector<Rational> out(dim_, Rational(0));
    std::map<Entry, Rational> rest;
    for (size_t i = 0; i < m.size(); ++i)
        for (const auto& [j, x] : m.row(i)) rest[{i, j}] = x;
    for (size_t r = 0; r < rows_.size(); ++r) {
        auto it = rest.find(pivots_[r]);
        if (it == rest.end()) continue;
        Rational c = it->second / rows_[r].at(pivots_[r]);
        for (const auto& [e, x] : rows_[r]) {
            Rational& y = rest[e];
            y -= c * x;
            if (y == 0) rest.erase(e);
        }
        for (size_t k = 0; k < dim_; ++k)
            if (combo_[r][k] != 0) out[k] += c * combo_[r][k];
    }
    if (!rest.empty()) throw InvariantViolation("matrix is not in the span of the basis");
    return out;
}

// ---------------------------------------------------------------- checks

namespace {

Rational root_value(const LieAlgebraData& g, const Root& beta, int i) {
    Rational v = 0;
    for (int j = 0; j < g.rank; ++j) v += g.cartan(i, j) * beta[size_t(j)];
    return v;
}

} // namespace

Rational killing_normalized(const LieAlgebraData& g, const LieMat& a, const LieMat& b) {
    auto basis = g.basis();
    BasisCoordinates coords(basis);
    Rational tr = 0;
    for (size_t k = 0; k < basis.size(); ++k) tr += coords(commutator(a, commutator(b, basis[k])))[k];
    return tr / Rational(2 * g.dual_coxeter);
}

LieChecks check_algebra(const LieAlgebraData& g, size_t exhaustive_dim, size_t samples, uint64_t seed) {
    LieChecks c;
    const int n = g.rank;
    c.chevalley = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            LieMat xy = commutator(g.X[size_t(i)], g.Y[size_t(j)]);
            if (xy != (i == j ? g.H[size_t(i)] : LieMat(g.matrix_size))) c.chevalley = false;
            if (commutator(g.H[size_t(i)], g.X[size_t(j)]) != g.cartan(i, j) * g.X[size_t(j)]) c.chevalley = false;
            if (commutator(g.H[size_t(i)], g.Y[size_t(j)]) != -g.cartan(i, j) * g.Y[size_t(j)]) c.chevalley = false;
        }

    // On the Cartan subalgebra tr(ad H_i ad H_j) = sum over all roots of beta(H_i) beta(H_j).
    c.normalized = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational k = 0;
            for (const auto& beta : g.positive_roots) k += 2 * root_value(g, beta, i) * root_value(g, beta, j);
            if (k / Rational(2 * g.dual_coxeter) != g.form(g.H[size_t(i)], g.H[size_t(j)])) c.normalized = false;
        }

    auto basis = g.basis();
    const size_t d = basis.size();
    std::vector<std::array<size_t, 3>> triples;
    if (d <= exhaustive_dim) {
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b < d; ++b)
                for (size_t e = 0; e < d; ++e) triples.push_back({a, b, e});
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<size_t> pick(0, d - 1);
        for (size_t s = 0; s < samples; ++s) triples.push_back({pick(rng), pick(rng), pick(rng)});
    }
    c.triples = triples.size();

    std::optional<BasisCoordinates> coords;
    if (d <= exhaustive_dim) coords.emplace(basis);
    std::map<std::pair<size_t, size_t>, LieMat> br;
    auto bracket = [&](size_t a, size_t b) -> const LieMat& {
        auto it = br.find({a, b});
        if (it == br.end()) it = br.emplace(std::make_pair(a, b), commutator(basis[a], basis[b])).first;
        return it->second;
    };

    c.antisymmetry = c.jacobi = c.invariance = true;
    for (const auto& [a, b, e] : triples) {
        if (bracket(a, b) != -bracket(b, a)) c.antisymmetry = false;
        LieMat jac = commutator(basis[a], bracket(b, e)) + commutator(basis[b], bracket(e, a)) +
                     commutator(basis[e], bracket(a, b));
        if (!jac.is_zero()) c.jacobi = false;
        if (g.form(bracket(a, b), basis[e]) + g.form(basis[b], bracket(a, e)) != 0) c.invariance = false;
    }
    if (coords) {
        // Closure of the structure constants and the full Killing comparison.
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b < d; ++b) (void)(*coords)(bracket(a, b));
        for (size_t a = 0; a < d && c.normalized; ++a)
            for (size_t b = a; b < d; ++b) {
                Rational tr = 0;
                for (size_t k = 0; k < d; ++k) tr += (*coords)(commutator(basis[a], bracket(b, k)))[k];
                if (tr / Rational(2 * g.dual_coxeter) != g.form(basis[a], basis[b])) {
                    c.normalized = false;
                    break;
                }
            }
    }
    return c;
}

// ---------------------------------------------------------------- slice

SliceData principal_sl2(const LieAlgebraData& g) {
    const int n = g.rank;
    SliceData s;
    QMatrix at = g.cartan.transpose();
    s.a = solve(at, std::vector<Rational>(size_t(n), Rational(2)));
    s.I = LieMat(g.matrix_size);
    s.Iplus = LieMat(g.matrix_size);
    s.rho = LieMat(g.matrix_size);
    for (int i = 0; i < n; ++i) {
        if (s.a[size_t(i)].get_den() != 1 || s.a[size_t(i)] <= 0)
            throw BadCartanData(g.name + ": principal sl2 coefficients are not positive integers");
        s.I += g.Y[size_t(i)];
        s.Iplus += s.a[size_t(i)] * g.X[size_t(i)];
        s.rho += (s.a[size_t(i)] / 2) * g.H[size_t(i)];
    }
    if (commutator(s.Iplus, s.I) != Rational(2) * s.rho || commutator(s.rho, s.Iplus) != s.Iplus ||
        commutator(s.rho, s.I) != -s.I)
        throw BadCartanData(g.name + ": sl2 relations fail");
    return s;
}

namespace {

// Kernel of x -> [a, x] on span(cand).
std::vector<LieMat> ad_kernel(const LieMat& a, const std::vector<LieMat>& cand) {
    std::vector<LieMat> images;
    std::map<std::pair<size_t, size_t>, size_t> pos;
    for (const auto& c : cand) {
        images.push_back(commutator(a, c));
        for (size_t i = 0; i < images.back().size(); ++i)
            for (const auto& kv : images.back().row(i)) pos.emplace(std::make_pair(i, kv.first), pos.size());
    }
    QMatrix m(std::max<size_t>(pos.size(), 1), cand.size());
    for (size_t k = 0; k < cand.size(); ++k)
        for (size_t i = 0; i < images[k].size(); ++i)
            for (const auto& [j, v] : images[k].row(i)) m(pos.at({i, j}), k) = v;
    std::vector<LieMat> out;
    for (const auto& v : nullspace(m)) {
        LieMat x(a.size());
        for (size_t k = 0; k < cand.size(); ++k)
            if (v[k] != 0) x += v[k] * cand[k];
        out.push_back(x);
    }
    return out;
}

} // namespace

SliceData slice_bases(const LieAlgebraData& g, const std::vector<std::vector<std::pair<std::string, Rational>>>& gamma) {
    SliceData s = principal_sl2(g);
    const int n = g.rank;
    const size_t N = g.matrix_size;

    if (gamma.empty()) {
        std::vector<int> exps = g.exponents;
        exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
        for (int m : exps) {
            std::vector<Root> roots;
            std::vector<LieMat> cand;
            for (const auto& r : g.positive_roots)
                if (g.height(r) == m) {
                    roots.push_back(r);
                    cand.push_back(g.Xr.at(r));
                }
            // Reduced echelon coordinates make "first nonzero coefficient = 1" well defined.
            std::vector<std::vector<Rational>> vecs;
            for (const auto& k : ad_kernel(s.Iplus, cand)) {
                std::vector<Rational> v;
                for (const auto& r : roots) v.push_back(trace_product(k, g.Yr.at(r)) / trace_product(g.Xr.at(r), g.Yr.at(r)));
                vecs.push_back(v);
            }
            QMatrix km(vecs.size(), roots.size());
            for (size_t i = 0; i < vecs.size(); ++i)
                for (size_t j = 0; j < roots.size(); ++j) km(i, j) = vecs[i][j];
            // Row reduce.
            size_t row = 0;
            for (size_t col = 0; col < roots.size() && row < km.rows(); ++col) {
                size_t piv = row;
                while (piv < km.rows() && km(piv, col) == 0) ++piv;
                if (piv == km.rows()) continue;
                for (size_t j = 0; j < km.cols(); ++j) std::swap(km(row, j), km(piv, j));
                Rational p = km(row, col);
                for (size_t j = 0; j < km.cols(); ++j) km(row, j) /= p;
                for (size_t i = 0; i < km.rows(); ++i)
                    if (i != row && km(i, col) != 0) {
                        Rational c = km(i, col);
                        for (size_t j = 0; j < km.cols(); ++j) km(i, j) -= c * km(row, j);
                    }
                ++row;
            }
            for (size_t i = 0; i < km.rows(); ++i) {
                LieMat x(N);
                for (size_t j = 0; j < roots.size(); ++j)
                    if (km(i, j) != 0) x += km(i, j) * g.Xr.at(roots[j]);
                s.gamma.push_back(x);
                s.degrees.push_back(m);
            }
        }
    } else {
        for (const auto& terms : gamma) {
            LieMat x(N);
            int deg = -1;
            for (const auto& [label, c] : terms) {
                Root r = g.parse_root_label(label);
                if (deg >= 0 && g.height(r) != deg) throw DecompositionFailure("gamma element is not homogeneous");
                deg = g.height(r);
                x += c * g.Xr.at(r);
            }
            s.gamma.push_back(x);
            s.degrees.push_back(deg);
        }
    }
    if (int(s.gamma.size()) != n) throw DecompositionFailure(g.name + ": Ker ad I_+ has the wrong dimension");
    for (const auto& x : s.gamma)
        if (x.is_zero() || !commutator(s.Iplus, x).is_zero())
            throw DecompositionFailure(g.name + ": gamma element is not in Ker ad I_+");

    // Dual basis in Ker ad I, degree by degree.
    s.gamma_dual.assign(size_t(n), LieMat(N));
    for (size_t i = 0; i < size_t(n);) {
        size_t j = i;
        while (j < size_t(n) && s.degrees[j] == s.degrees[i]) ++j;
        std::vector<LieMat> cand;
        for (const auto& r : g.positive_roots)
            if (g.height(r) == s.degrees[i]) cand.push_back(g.Yr.at(r));
        auto ker = ad_kernel(s.I, cand);
        if (ker.size() != j - i) throw DecompositionFailure(g.name + ": Ker ad I has the wrong dimension");
        QMatrix gram(j - i, j - i);
        for (size_t a = 0; a < ker.size(); ++a)
            for (size_t l = i; l < j; ++l) gram(a, l - i) = g.form(ker[a], s.gamma[l]);
        QMatrix inv = inverse(gram);
        for (size_t l = i; l < j; ++l)
            for (size_t a = 0; a < ker.size(); ++a) s.gamma_dual[l] += inv(l - i, a) * ker[a];
        i = j;
    }

    // n_dual: annihilator of V in h + n^-.
    std::vector<LieMat> hn = g.H;
    for (const auto& r : g.positive_roots) hn.push_back(g.Yr.at(r));
    QMatrix m(size_t(n), hn.size());
    for (size_t i = 0; i < size_t(n); ++i)
        for (size_t k = 0; k < hn.size(); ++k) m(i, k) = g.form(s.gamma[i], hn[k]);
    for (const auto& v : nullspace(m)) {
        LieMat x(N);
        for (size_t k = 0; k < hn.size(); ++k)
            if (v[k] != 0) x += v[k] * hn[k];
        s.n_dual.push_back(x);
    }
    for (const auto& r : g.positive_roots) s.f.push_back(g.Xr.at(r));
    for (const auto& x : s.n_dual) s.f.push_back(x);

    // g = Ker ad I + n + n_dual.
    std::vector<LieMat> all = s.gamma_dual;
    all.insert(all.end(), s.f.begin(), s.f.end());
    if (all.size() != g.dimension()) throw DecompositionFailure(g.name + ": dimension count fails");
    try {
        BasisCoordinates check(all);
    } catch (const InvariantViolation&) {
        throw DecompositionFailure(g.name + ": Ker ad I, n and n_dual are not independent");
    }
    return s;
}

SliceData rescale_slice(const SliceData& s, const std::vector<Rational>& scale) {
    SliceData r = s;
    for (size_t i = 0; i < scale.size(); ++i) {
        r.gamma[i] = scale[i] * s.gamma[i];
        r.gamma_dual[i] = (Rational(1) / scale[i]) * s.gamma_dual[i];
    }
    return r;
}

std::vector<std::vector<std::pair<std::string, Rational>>> fixture_gamma(const Fixture& f) {
    std::vector<std::vector<std::pair<std::string, Rational>>> out;
    for (const auto& el : f.at("gamma")) {
        out.emplace_back();
        for (const auto& t : el) {
            if (!t.is_array() || t.size() != 2 || !t[0].is_string()) throw FixtureError("bad gamma term " + t.dump());
            out.back().emplace_back(t[0].get<std::string>(), json_rational(t[1]));
        }
    }
    return out;
}

} // namespace cinv
