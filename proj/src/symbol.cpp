#include "cinv/symbol.hpp"

#include <sstream>

namespace cinv {

namespace {

// m (m-1) ... (m-k+1)
Rational falling(int m, int k) {
    Rational r = 1;
    for (int j = 0; j < k; ++j) r *= (m - j);
    return r;
}

Rational inv_factorial(int k) {
    Integer f = 1;
    for (int j = 2; j <= k; ++j) f *= j;
    return Rational(Integer(1), f);
}

} // namespace

Symbol Symbol::p_power(int m, int order, JetPolicy policy) {
    Symbol s(order, policy);
    s.add(m, 0, DiffPoly(1));
    return s;
}

Symbol Symbol::scalar(const DiffPoly& c, int order, JetPolicy policy) {
    Symbol s(order, policy);
    s.add(0, 0, c);
    return s;
}

void Symbol::add(int p, int eps, const DiffPoly& c) {
    if (eps < 0) throw std::invalid_argument("negative eps power in symbol");
    if (eps > K_ || c.is_zero()) return;
    auto it = t_.find({p, eps});
    if (it == t_.end()) {
        t_.emplace(Key{p, eps}, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

DiffPoly Symbol::coeff(int p, int eps) const {
    auto it = t_.find({p, eps});
    return it == t_.end() ? DiffPoly() : it->second;
}

void Symbol::check_compatible(const Symbol& o) const {
    if (K_ != o.K_) throw TruncationMismatch("symbols truncated at different eps orders");
    if (policy_.constant_kinds != o.policy_.constant_kinds)
        throw TruncationMismatch("symbols use different jet policies");
}

Symbol& Symbol::operator+=(const Symbol& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.t_) add(k.first, k.second, c);
    return *this;
}

Symbol& Symbol::operator-=(const Symbol& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.t_) add(k.first, k.second, -c);
    return *this;
}

Symbol Symbol::operator-() const { return scaled(-1); }

Symbol Symbol::scaled(const Rational& c) const {
    Symbol s(K_, policy_);
    if (c == 0) return s;
    for (const auto& [k, v] : t_) s.t_.emplace(k, v * c);
    return s;
}

Symbol Symbol::times(const DiffPoly& c) const {
    Symbol s(K_, policy_);
    for (const auto& [k, v] : t_) s.add(k.first, k.second, v * c);
    return s;
}

Symbol Symbol::dp(int k) const {
    Symbol s(K_, policy_);
    for (const auto& [key, v] : t_) {
        Rational f = falling(key.first, k);
        if (f != 0) s.add(key.first - k, key.second, v * f);
    }
    return s;
}

Symbol Symbol::dx(int k) const {
    Symbol s(K_, policy_);
    for (const auto& [key, v] : t_) s.add(key.first, key.second, v.dx(k, policy_));
    return s;
}

Symbol Symbol::eps_shift(int sh) const {
    Symbol s(K_, policy_);
    for (const auto& [key, v] : t_) s.add(key.first, key.second + sh, v);
    return s;
}

Symbol Symbol::map_coeffs(const std::function<DiffPoly(const DiffPoly&)>& f) const {
    Symbol s(K_, policy_);
    for (const auto& [key, v] : t_) s.add(key.first, key.second, f(v));
    return s;
}

Symbol Symbol::positive_part() const {
    Symbol s(K_, policy_);
    for (const auto& [key, v] : t_)
        if (key.first >= 0) s.t_.emplace(key, v);
    return s;
}

Symbol Symbol::negative_part() const {
    Symbol s(K_, policy_);
    for (const auto& [key, v] : t_)
        if (key.first < 0) s.t_.emplace(key, v);
    return s;
}

std::map<int, DiffPoly> Symbol::residue() const {
    std::map<int, DiffPoly> r;
    for (const auto& [key, v] : t_)
        if (key.first == -1) r[key.second] = v;
    return r;
}

int Symbol::top_p_power() const {
    if (t_.empty()) throw std::logic_error("top power of zero symbol");
    return t_.rbegin()->first.first;
}

std::string Symbol::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [key, v] = *it;
        if (!first) os << " + ";
        first = false;
        os << "(" << v.str() << ")";
        if (key.second) os << "*eps^" << key.second;
        if (key.first) os << "*p^" << key.first;
    }
    return os.str();
}

Symbol star(const Symbol& a, const Symbol& b) {
    a.check_compatible(b);
    const int K = a.K_;
    Symbol out(K, a.policy_);
    Symbol dxb = b;
    Symbol dpa = a;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) {
            dpa = dpa.dp(1);
            dxb = dxb.dx(1);
        }
        if (dpa.is_zero() || dxb.is_zero()) break;
        Rational f = inv_factorial(k);
        for (const auto& [ka, ca] : dpa.t_) {
            if (ka.second + k > K) continue;
            DiffPoly fa = ca * f;
            for (const auto& [kb, cb] : dxb.t_) {
                int e = ka.second + kb.second + k;
                if (e > K) continue;
                out.add(ka.first + kb.first, e, fa * cb);
            }
        }
    }
    return out;
}

Symbol commutator(const Symbol& a, const Symbol& b) { return star(a, b) - star(b, a); }

Symbol adjoint(const Symbol& a) {
    Symbol out(a.order(), a.policy());
    // Group coefficients by p power: a = sum_m c_m(x, eps) p^m.
    std::map<int, Symbol> by_power;
    for (const auto& [key, v] : a.terms()) {
        auto it = by_power.try_emplace(key.first, a.order(), a.policy()).first;
        it->second.add(0, key.second, v);
    }
    for (const auto& [m, c] : by_power) {
        Symbol mp = Symbol::p_power(m, a.order(), a.policy());
        if (m % 2 != 0) mp = -mp;
        out += star(mp, c);
    }
    return out;
}

Symbol gy_correction(const Symbol& L, const Symbol& Y) {
    Symbol out(L.order(), L.policy());
    Symbol dL = L;
    Symbol dY = Y;
    Integer fact = 1;
    for (int k = 1; k <= L.order() + 1; ++k) {
        dL = dL.dp(1);
        if (k > 1) dY = dY.dx(1);
        fact *= k;
        if (dL.is_zero() || dY.is_zero()) break;
        Rational f(Integer(1), fact);
        for (const auto& [kl, cl] : dL.terms())
            for (const auto& [ky, cy] : dY.terms()) {
                if (kl.first + ky.first != -1) continue;
                int e = kl.second + ky.second + k - 1;
                out.add(0, e, cl * cy * f);
            }
    }
    return out;
}

DiffPoly residue_poly(const Symbol& a) {
    DiffPoly r;
    Var e = var_of(VarKind::Eps);
    for (const auto& [k, v] : a.residue()) r += v * DiffPoly::monomial(Monomial::of(e, k));
    return r;
}

void TwoVarSymbol::add(int p, int q, int eps, const DiffPoly& c) {
    if (c.is_zero()) return;
    auto it = t_.find({p, q, eps});
    if (it == t_.end()) {
        t_.emplace(Key{p, q, eps}, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

DiffPoly TwoVarSymbol::coeff(int p, int q, int eps) const {
    auto it = t_.find({p, q, eps});
    return it == t_.end() ? DiffPoly() : it->second;
}

DiffPoly TwoVarSymbol::to_poly(Var pv, Var qv, Var epsv) const {
    DiffPoly r;
    for (const auto& [k, v] : t_) {
        if (k.p < 0 || k.q < 0 || k.eps < 0)
            throw std::domain_error("negative power in two-variable symbol");
        Monomial m = Monomial::of(pv, k.p) * Monomial::of(qv, k.q) * Monomial::of(epsv, k.eps);
        r += v * DiffPoly::monomial(m);
    }
    return r;
}

TwoVarSymbol TwoVarSymbol::from_poly(const DiffPoly& f, Var pv, Var qv, Var epsv) {
    TwoVarSymbol s;
    for (const auto& [i, ci] : f.coefficients_in(pv))
        for (const auto& [j, cj] : ci.coefficients_in(qv))
            for (const auto& [e, ce] : cj.coefficients_in(epsv)) s.add(i, j, e, ce);
    return s;
}

std::string TwoVarSymbol::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.str() << ")*p^" << k.p << "*q^" << k.q;
        if (k.eps) os << "*eps^" << k.eps;
    }
    return os.str();
}

} // namespace cinv
