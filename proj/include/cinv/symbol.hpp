#pragma once
// Symbols of pseudo-differential operators in D = eps d/dx, truncated in eps.
#include "cinv/errors.hpp"
#include "cinv/poly.hpp"

#include <map>
#include <string>

namespace cinv {

class Symbol {
public:
    using Key = std::pair<int, int>; // (power of p, power of eps)
    using Terms = std::map<Key, DiffPoly>;

    explicit Symbol(int order = 4, JetPolicy policy = JetPolicy::all_vary()) : K_(order), policy_(policy) {}

    static Symbol p_power(int m, int order = 4, JetPolicy policy = JetPolicy::all_vary());
    static Symbol scalar(const DiffPoly& c, int order = 4, JetPolicy policy = JetPolicy::all_vary());

    int order() const { return K_; }
    const JetPolicy& policy() const { return policy_; }
    bool jets_suppressed() const { return policy_.constant_kinds != 0; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    // Entries with eps power above the order are dropped silently.
    void add(int p, int eps, const DiffPoly& c);
    DiffPoly coeff(int p, int eps) const;

    Symbol& operator+=(const Symbol& o);
    Symbol& operator-=(const Symbol& o);
    friend Symbol operator+(Symbol a, const Symbol& b) { return a += b; }
    friend Symbol operator-(Symbol a, const Symbol& b) { return a -= b; }
    Symbol operator-() const;
    Symbol scaled(const Rational& c) const;
    // Pointwise multiplication of every coefficient by c (not a star product).
    Symbol times(const DiffPoly& c) const;
    bool operator==(const Symbol& o) const { return t_ == o.t_; }
    bool operator!=(const Symbol& o) const { return !(*this == o); }

    Symbol dp(int k = 1) const;
    Symbol dx(int k = 1) const;
    // Shift every eps power by s; terms pushed below zero throw.
    Symbol eps_shift(int s) const;
    // Apply f to every coefficient.
    Symbol map_coeffs(const std::function<DiffPoly(const DiffPoly&)>& f) const;

    Symbol positive_part() const;
    Symbol negative_part() const;
    // Coefficient of p^-1 at each eps power.
    std::map<int, DiffPoly> residue() const;
    int top_p_power() const; // requires non-zero

    std::string str() const;

private:
    int K_;
    JetPolicy policy_;
    Terms t_;
    void check_compatible(const Symbol& o) const;
    friend Symbol star(const Symbol& a, const Symbol& b);
};

// sum_k eps^k/k! d_p^k a * d_x^k b, truncated at eps^K.
Symbol star(const Symbol& a, const Symbol& b);
inline Symbol operator*(const Symbol& a, const Symbol& b) { return star(a, b); }
Symbol commutator(const Symbol& a, const Symbol& b);

// Symbol of sum_k (-D)^k o a_k.
Symbol adjoint(const Symbol& a);

// g_Y = sum_{k>=1} eps^(k-1)/k! res(d_p^k L . d_x^(k-1) Y), as a p^0 symbol.
Symbol gy_correction(const Symbol& L, const Symbol& Y);

// Residue as a single polynomial in eps (eps appears as VarKind::Eps).
DiffPoly residue_poly(const Symbol& a);

// Coefficients in two spectral variables (p, q) and eps.
class TwoVarSymbol {
public:
    struct Key {
        int p, q, eps;
        auto operator<=>(const Key&) const = default;
    };
    using Terms = std::map<Key, DiffPoly>;

    void add(int p, int q, int eps, const DiffPoly& c);
    DiffPoly coeff(int p, int q, int eps) const;
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool operator==(const TwoVarSymbol& o) const { return t_ == o.t_; }

    // Polynomial in the given variables; negative powers are rejected.
    DiffPoly to_poly(Var pv, Var qv, Var epsv = var_of(VarKind::Eps)) const;
    static TwoVarSymbol from_poly(const DiffPoly& f, Var pv, Var qv, Var epsv = var_of(VarKind::Eps));
    std::string str() const;

private:
    Terms t_;
};

} // namespace cinv
