#include "cinv/poly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cinv {

namespace {

uint32_t pack(uint32_t code, int e) { return (code << 12) | uint32_t(e); }
uint32_t code_of(uint32_t x) { return x >> 12; }
int exp_of(uint32_t x) { return int(x & 0xfff); }

const char* kind_prefix(VarKind k) {
    switch (k) {
    case VarKind::U: return "u";
    case VarKind::Rho: return "rho";
    case VarKind::V: return "v";
    case VarKind::A: return "a";
    case VarKind::B: return "b";
    case VarKind::T: return "t";
    case VarKind::Y: return "y";
    case VarKind::Z: return "z";
    case VarKind::Lam: return "lambda";
    case VarKind::P: return "p";
    case VarKind::Q: return "q";
    case VarKind::CapP: return "P";
    case VarKind::CapQ: return "Q";
    case VarKind::Eps: return "eps";
    case VarKind::X: return "x";
    }
    return "?";
}

bool kind_indexed(VarKind k) {
    switch (k) {
    case VarKind::Rho:
    case VarKind::Lam:
    case VarKind::P:
    case VarKind::Q:
    case VarKind::CapP:
    case VarKind::CapQ:
    case VarKind::Eps: return false;
    default: return true;
    }
}

} // namespace

std::string var_name(const Var& v) {
    std::string s = kind_prefix(v.kind);
    if (kind_indexed(v.kind)) s += std::to_string(v.index);
    s.append(v.jet, '\'');
    return s;
}

Var parse_var(const std::string& s) {
    size_t primes = 0;
    while (primes < s.size() && s[s.size() - 1 - primes] == '\'') ++primes;
    std::string body = s.substr(0, s.size() - primes);
    size_t d = body.size();
    while (d > 0 && std::isdigit(static_cast<unsigned char>(body[d - 1]))) --d;
    std::string prefix = body.substr(0, d), digits = body.substr(d);
    for (int k = 0; k < kVarKinds; ++k) {
        VarKind kind = VarKind(k);
        if (prefix != kind_prefix(kind)) continue;
        if (kind_indexed(kind) == digits.empty()) continue;
        int idx = digits.empty() ? 0 : std::stoi(digits);
        if (idx > 1023 || primes > 31) break;
        return Var{kind, uint16_t(idx), uint16_t(primes)};
    }
    throw std::invalid_argument("unknown variable: " + s);
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Var v, int e) {
    Monomial m;
    if (e > 0) m.e_.push_back(pack(v.code(), e));
    return m;
}

int Monomial::degree() const {
    int d = 0;
    for (uint32_t x : e_) d += exp_of(x);
    return d;
}

int Monomial::exponent(Var v) const {
    uint32_t c = v.code();
    for (uint32_t x : e_)
        if (code_of(x) == c) return exp_of(x);
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.e_.reserve(e_.size() + o.e_.size());
    size_t i = 0, j = 0;
    while (i < e_.size() || j < o.e_.size()) {
        if (j == o.e_.size() || (i < e_.size() && code_of(e_[i]) < code_of(o.e_[j]))) {
            r.e_.push_back(e_[i++]);
        } else if (i == e_.size() || code_of(o.e_[j]) < code_of(e_[i])) {
            r.e_.push_back(o.e_[j++]);
        } else {
            int e = exp_of(e_[i]) + exp_of(o.e_[j]);
            if (e > 0xfff) throw std::overflow_error("monomial exponent overflow");
            r.e_.push_back(pack(code_of(e_[i]), e));
            ++i;
            ++j;
        }
    }
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    size_t j = 0;
    for (uint32_t x : e_) {
        while (j < o.e_.size() && code_of(o.e_[j]) < code_of(x)) ++j;
        if (j == o.e_.size() || code_of(o.e_[j]) != code_of(x) || exp_of(o.e_[j]) < exp_of(x)) return false;
    }
    return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r;
    size_t j = 0;
    for (uint32_t x : e_) {
        int e = exp_of(x);
        if (j < o.e_.size() && code_of(o.e_[j]) == code_of(x)) e -= exp_of(o.e_[j++]);
        if (e < 0) throw std::domain_error("monomial division");
        if (e > 0) r.e_.push_back(pack(code_of(x), e));
    }
    if (j != o.e_.size()) throw std::domain_error("monomial division");
    return r;
}

Monomial Monomial::without(Var v) const { return with_exponent(v, 0); }

Monomial Monomial::with_exponent(Var v, int e) const {
    Monomial r;
    uint32_t c = v.code();
    bool placed = false;
    for (uint32_t x : e_) {
        if (!placed && code_of(x) >= c) {
            if (e > 0) r.e_.push_back(pack(c, e));
            placed = true;
            if (code_of(x) == c) continue;
        }
        r.e_.push_back(x);
    }
    if (!placed && e > 0) r.e_.push_back(pack(c, e));
    return r;
}

bool MonoOrder::operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    const auto& x = a.e_;
    const auto& y = b.e_;
    size_t n = std::min(x.size(), y.size());
    for (size_t i = 0; i < n; ++i) {
        uint32_t ca = code_of(x[i]), cb = code_of(y[i]);
        if (ca != cb) return ca > cb;
        if (x[i] != y[i]) return exp_of(x[i]) < exp_of(y[i]);
    }
    return x.size() < y.size();
}

// ---------------------------------------------------------------- DiffPoly

DiffPoly::DiffPoly(const Rational& c) {
    if (c != 0) t_.emplace(Monomial(), c);
}

DiffPoly::DiffPoly(Var v) { t_.emplace(Monomial::of(v), Rational(1)); }

DiffPoly DiffPoly::monomial(const Monomial& m, const Rational& c) {
    DiffPoly p;
    if (c != 0) p.t_.emplace(m, c);
    return p;
}

bool DiffPoly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }

Rational DiffPoly::constant_term() const { return coefficient(Monomial()); }

Rational DiffPoly::coefficient(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rational(0) : it->second;
}

int DiffPoly::total_degree() const { return t_.empty() ? -1 : t_.rbegin()->first.degree(); }

int DiffPoly::degree_in(Var v) const {
    int d = t_.empty() ? -1 : 0;
    for (const auto& [m, c] : t_) d = std::max(d, m.exponent(v));
    return d;
}

std::vector<Var> DiffPoly::variables() const {
    std::set<uint32_t> codes;
    for (const auto& [m, c] : t_) m.for_each([&](Var v, int) { codes.insert(v.code()); });
    std::vector<Var> out;
    for (uint32_t c : codes) out.push_back(Var::from_code(c));
    return out;
}

bool DiffPoly::depends_on(Var v) const {
    for (const auto& [m, c] : t_)
        if (m.exponent(v) > 0) return true;
    return false;
}

bool DiffPoly::depends_on_kind(VarKind k) const {
    for (const auto& [m, c] : t_) {
        bool hit = false;
        m.for_each([&](Var v, int) { hit = hit || v.kind == k; });
        if (hit) return true;
    }
    return false;
}

void DiffPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = t_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r;
    if (a.t_.empty() || b.t_.empty()) return r;
    Rational prod;
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) {
            prod = ca * cb;
            r.add_term(ma * mb, prod);
        }
    return r;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& o) { return *this = *this * o; }

DiffPoly& DiffPoly::operator*=(const Rational& c) {
    if (c == 0) {
        t_.clear();
        return *this;
    }
    for (auto& [m, v] : t_) v *= c;
    return *this;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r = *this;
    for (auto& [m, v] : r.t_) v = -v;
    return r;
}

DiffPoly DiffPoly::pow(int e) const {
    if (e < 0) throw std::domain_error("negative power of polynomial");
    DiffPoly r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

DiffPoly DiffPoly::dx(const JetPolicy& policy) const {
    DiffPoly r;
    for (const auto& [m, c] : t_) {
        m.for_each([&](Var v, int e) {
            if (policy.is_constant(v.kind)) return;
            Monomial rest = m.with_exponent(v, e - 1);
            r.add_term(rest * Monomial::of(v.derived()), c * e);
        });
    }
    return r;
}

DiffPoly DiffPoly::dx(int k, const JetPolicy& policy) const {
    DiffPoly r = *this;
    for (int i = 0; i < k && !r.is_zero(); ++i) r = r.dx(policy);
    return r;
}

DiffPoly DiffPoly::partial(Var v) const {
    DiffPoly r;
    for (const auto& [m, c] : t_) {
        int e = m.exponent(v);
        if (e > 0) r.add_term(m.with_exponent(v, e - 1), c * e);
    }
    return r;
}

DiffPoly DiffPoly::substitute(Var v, const DiffPoly& value) const {
    std::map<Var, DiffPoly> s{{v, value}};
    return substitute(s);
}

DiffPoly DiffPoly::substitute(const std::map<Var, DiffPoly>& values) const {
    DiffPoly r;
    std::map<std::pair<uint32_t, int>, DiffPoly> powers;
    auto power = [&](Var v, const DiffPoly& base, int e) -> const DiffPoly& {
        auto key = std::make_pair(v.code(), e);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        return powers.emplace(key, base.pow(e)).first->second;
    };
    for (const auto& [m, c] : t_) {
        Monomial kept;
        DiffPoly factor(c);
        m.for_each([&](Var v, int e) {
            auto it = values.find(v);
            if (it == values.end())
                kept = kept * Monomial::of(v, e);
            else
                factor = factor * power(v, it->second, e);
        });
        if (kept.empty())
            r += factor;
        else
            r += factor * DiffPoly::monomial(kept);
    }
    return r;
}

DiffPoly DiffPoly::evaluate(const std::map<Var, Rational>& values) const {
    DiffPoly r;
    for (const auto& [m, c] : t_) {
        Monomial kept;
        Rational coef = c;
        m.for_each([&](Var v, int e) {
            auto it = values.find(v);
            if (it == values.end())
                kept = kept * Monomial::of(v, e);
            else
                coef *= rational_pow(it->second, e);
        });
        r.add_term(kept, coef);
    }
    return r;
}

Rational DiffPoly::value(const std::map<Var, Rational>& values) const {
    DiffPoly r = evaluate(values);
    if (!r.is_constant()) throw std::invalid_argument("unassigned variables in " + r.str());
    return r.constant_term();
}

DiffPoly DiffPoly::map_vars(const std::function<Var(Var)>& f) const {
    DiffPoly r;
    for (const auto& [m, c] : t_) {
        Monomial out;
        m.for_each([&](Var v, int e) { out = out * Monomial::of(f(v), e); });
        r.add_term(out, c);
    }
    return r;
}

std::map<int, DiffPoly> DiffPoly::coefficients_in(Var v) const {
    std::map<int, DiffPoly> out;
    for (const auto& [m, c] : t_) out[m.exponent(v)].add_term(m.without(v), c);
    return out;
}

DiffPoly DiffPoly::from_coefficients(Var v, const std::map<int, DiffPoly>& c) {
    DiffPoly r;
    for (const auto& [k, p] : c) {
        Monomial x = Monomial::of(v, k);
        for (const auto& [m, q] : p.terms()) r.add_term(m * x, q);
    }
    return r;
}

DiffPoly DiffPoly::divide_exact(const DiffPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    if (d.is_constant()) return *this * (Rational(1) / d.constant_term());
    DiffPoly rem = *this, quo;
    const auto& [ld, lc] = d.leading();
    while (!rem.is_zero()) {
        const auto& [lr, rc] = rem.leading();
        if (!ld.divides(lr)) throw std::domain_error("inexact polynomial division");
        Monomial qm = lr / ld;
        Rational qc = rc / lc;
        quo.add_term(qm, qc);
        DiffPoly step = DiffPoly::monomial(qm, qc) * d;
        rem -= step;
    }
    return quo;
}

bool DiffPoly::divides_into(const DiffPoly& num) const {
    try {
        (void)num.divide_exact(*this);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

DiffPoly DiffPoly::monic() const {
    if (t_.empty()) return *this;
    return *this * (Rational(1) / leading().second);
}

std::string DiffPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = a == 1 && !m.empty();
        if (!unit) os << to_string(a);
        bool need_star = !unit;
        m.for_each([&](Var v, int e) {
            if (need_star) os << "*";
            need_star = true;
            os << var_name(v);
            if (e > 1) os << "^" << e;
        });
    }
    return os.str();
}

std::string to_string(const DiffPoly& p) { return p.str(); }

// ---------------------------------------------------------------- gcd

namespace {

DiffPoly content_in(const DiffPoly& p, Var x) {
    DiffPoly g;
    for (const auto& [k, c] : p.coefficients_in(x)) {
        g = gcd(g, c);
        if (g.is_constant() && !g.is_zero()) return DiffPoly(1);
    }
    return g;
}

// Scales to integer coefficients with unit content.
DiffPoly primitive_q(const DiffPoly& p) {
    if (p.is_zero()) return p;
    Integer l = 1, g = 0;
    for (const auto& [m, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& [m, c] : p.terms()) {
        Integer n = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    Rational k(l, g);
    k.canonicalize();
    return p * k;
}

// Pseudo-remainder of a by b as polynomials in x.
DiffPoly prem(DiffPoly a, const DiffPoly& b, Var x) {
    int db = b.degree_in(x);
    auto bc = b.coefficients_in(x);
    DiffPoly lb = bc.rbegin()->second;
    while (!a.is_zero()) {
        int da = a.degree_in(x);
        if (da < db) break;
        DiffPoly la = a.coefficients_in(x).rbegin()->second;
        DiffPoly shift = DiffPoly::monomial(Monomial::of(x, da - db));
        a = primitive_q(lb * a - la * shift * b);
    }
    return a;
}

} // namespace

DiffPoly gcd(const DiffPoly& a, const DiffPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return DiffPoly(1);
    if (a.size() == 1 && b.size() == 1) {
        // Monomial gcd.
        Monomial g;
        const Monomial& ma = a.leading().first;
        const Monomial& mb = b.leading().first;
        ma.for_each([&](Var v, int e) {
            int f = std::min(e, mb.exponent(v));
            if (f > 0) g = g * Monomial::of(v, f);
        });
        return DiffPoly::monomial(g);
    }
    auto va = a.variables(), vb = b.variables();
    for (Var v : va)
        if (!b.depends_on(v)) return gcd(content_in(a, v), b);
    for (Var v : vb)
        if (!a.depends_on(v)) return gcd(a, content_in(b, v));
    // Main variable: the one of smallest degree keeps the PRS short.
    Var x = va.front();
    int best = a.degree_in(x) + b.degree_in(x);
    for (Var v : va) {
        int d = a.degree_in(v) + b.degree_in(v);
        if (d < best) {
            best = d;
            x = v;
        }
    }
    DiffPoly ca = content_in(a, x), cb = content_in(b, x);
    DiffPoly c = gcd(ca, cb);
    DiffPoly p = primitive_q(a.divide_exact(ca)), q = primitive_q(b.divide_exact(cb));
    if (p.degree_in(x) < q.degree_in(x)) std::swap(p, q);
    while (true) {
        DiffPoly r = prem(p, q, x);
        if (r.is_zero()) break;
        if (r.degree_in(x) == 0) {
            q = DiffPoly(1);
            break;
        }
        p = q;
        q = primitive_q(r.divide_exact(content_in(r, x)));
    }
    if (!q.is_constant()) q = q.divide_exact(content_in(q, x));
    return (c * q).monic();
}

// ---------------------------------------------------------------- integration

std::optional<DiffPoly> integrate_x(const DiffPoly& f, const JetPolicy& policy) {
    if (f.is_zero()) return DiffPoly();
    // Split by degree in the x-dependent variables.
    std::map<int, DiffPoly> by_degree;
    for (const auto& [m, c] : f.terms()) {
        int d = 0;
        m.for_each([&](Var v, int e) {
            if (!policy.is_constant(v.kind)) d += e;
        });
        if (d == 0) return std::nullopt;
        by_degree[d].add_term(m, c);
    }
    DiffPoly g;
    for (const auto& [d, fd] : by_degree) {
        DiffPoly gd;
        for (Var v : fd.variables()) {
            if (policy.is_constant(v.kind) || v.jet == 0) continue;
            int k = v.jet;
            DiffPoly dfd = fd.partial(v);
            // sum_{i<k} w^(i) (-D)^{k-1-i} dF/dw^(k)
            for (int i = 0; i < k; ++i) {
                int r = k - 1 - i;
                DiffPoly t = dfd.dx(r, policy);
                if (r % 2) t = -t;
                gd += DiffPoly(Var{v.kind, v.index, uint16_t(i)}) * t;
            }
        }
        g += gd * Rational(1, d);
    }
    if (g.dx(policy) != f) return std::nullopt;
    return g;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    DiffPoly parse() {
        DiffPoly r = expr();
        skip();
        if (i_ != s_.size()) fail("trailing input");
        return r;
    }

private:
    const std::string& s_;
    size_t i_ = 0;

    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("polynomial parse error (" + what + ") at " + std::to_string(i_) + ": " + s_);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    DiffPoly expr() {
        DiffPoly r = term();
        while (true) {
            if (eat('+'))
                r += term();
            else if (eat('-'))
                r -= term();
            else
                return r;
        }
    }
    DiffPoly term() {
        DiffPoly r = factor();
        while (true) {
            if (eat('*')) {
                r *= factor();
            } else if (eat('/')) {
                DiffPoly d = factor();
                if (!d.is_constant() || d.is_zero()) fail("division by non-constant");
                r *= Rational(1) / d.constant_term();
            } else {
                return r;
            }
        }
    }
    DiffPoly factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        DiffPoly b = base();
        if (eat('^')) {
            skip();
            size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (st == i_) fail("exponent");
            b = b.pow(std::stoi(s_.substr(st, i_ - st)));
        }
        return b;
    }
    DiffPoly base() {
        skip();
        if (eat('(')) {
            DiffPoly r = expr();
            if (!eat(')')) fail("missing )");
            return r;
        }
        if (i_ >= s_.size()) fail("unexpected end");
        if (std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return DiffPoly(Rational(Integer(s_.substr(st, i_ - st))));
        }
        if (std::isalpha(static_cast<unsigned char>(s_[i_]))) {
            size_t st = i_;
            while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
            while (i_ < s_.size() && s_[i_] == '\'') ++i_;
            return DiffPoly(parse_var(s_.substr(st, i_ - st)));
        }
        fail("unexpected character");
    }
};

} // namespace

DiffPoly parse_poly(const std::string& s) { return Parser(s).parse(); }

} // namespace cinv
