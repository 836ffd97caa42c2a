#pragma once
// Sparse multivariate polynomials over Q in field variables and their
// x-derivatives (jets). The same type carries jet-free polynomials used by
// RatFunc and the Lie-side tensors.
#include "cinv/rational.hpp"

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cinv {

enum class VarKind : uint8_t {
    U = 0,   // Lax coefficients u_i
    Rho,     // D-series tail field, u_1 = rho^2
    V,       // auxiliary Lax coefficients v_i
    A,       // test coefficients a_i(x)
    B,       // test coefficients b_i(x)
    T,       // flat coordinates t_i
    Y,       // orbit-space invariants y^i
    Z,       // Euclidean coordinates z_a
    Lam,     // pencil parameter lambda
    P,       // symbol variable p
    Q,       // second symbol variable q
    CapP,    // contour variable P
    CapQ,    // contour variable Q
    Eps,     // dispersion parameter used as an ordinary variable
    X,       // generic
};
inline constexpr int kVarKinds = 15;

struct Var {
    VarKind kind = VarKind::X;
    uint16_t index = 0;
    uint16_t jet = 0;

    uint32_t code() const {
        return (uint32_t(kind) << 15) | (uint32_t(index) << 5) | uint32_t(jet);
    }
    static Var from_code(uint32_t c) {
        return Var{VarKind(c >> 15), uint16_t((c >> 5) & 0x3ff), uint16_t(c & 0x1f)};
    }
    Var derived(int k = 1) const { return Var{kind, index, uint16_t(jet + k)}; }
    bool operator==(const Var& o) const { return code() == o.code(); }
    bool operator<(const Var& o) const { return code() < o.code(); }
};

inline Var u(int i, int jet = 0) { return Var{VarKind::U, uint16_t(i), uint16_t(jet)}; }
inline Var tv(int i) { return Var{VarKind::T, uint16_t(i), 0}; }
inline Var var_of(VarKind k, int i = 0, int jet = 0) { return Var{k, uint16_t(i), uint16_t(jet)}; }

std::string var_name(const Var& v);
// Inverse of var_name; throws std::invalid_argument.
Var parse_var(const std::string& s);

// Sorted list of (var code << 12 | exponent).
class Monomial {
public:
    using Storage = boost::container::small_vector<uint32_t, 4>;

    Monomial() = default;
    static Monomial of(Var v, int e = 1);

    int degree() const;
    int exponent(Var v) const;
    bool empty() const { return e_.empty(); }
    const Storage& raw() const { return e_; }

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    Monomial operator/(const Monomial& o) const; // requires divides
    Monomial without(Var v) const;
    Monomial with_exponent(Var v, int e) const;

    template <class F>
    void for_each(F&& f) const {
        for (uint32_t x : e_) f(Var::from_code(x >> 12), int(x & 0xfff));
    }

    bool operator==(const Monomial& o) const { return e_ == o.e_; }

private:
    Storage e_;
    friend struct MonoOrder;
};

// Graded lexicographic, variables ranked by ascending code.
struct MonoOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Set of variable kinds whose total x-derivative is zero.
struct JetPolicy {
    uint32_t constant_kinds = 0;
    static JetPolicy all_vary() { return {}; }
    static JetPolicy fields_constant() {
        return {(1u << int(VarKind::U)) | (1u << int(VarKind::Rho)) | (1u << int(VarKind::V))};
    }
    // Only u, rho, v, a, b and x1.. carry x-dependence; other kinds are parameters.
    static constexpr uint32_t kFieldKinds = (1u << int(VarKind::U)) | (1u << int(VarKind::Rho)) |
                                            (1u << int(VarKind::V)) | (1u << int(VarKind::A)) |
                                            (1u << int(VarKind::B)) | (1u << int(VarKind::X));
    bool is_constant(VarKind k) const {
        return !(kFieldKinds >> int(k) & 1u) || (constant_kinds >> int(k) & 1u);
    }
};

class DiffPoly {
public:
    using Terms = std::map<Monomial, Rational, MonoOrder>;

    DiffPoly() = default;
    DiffPoly(const Rational& c);
    DiffPoly(long c) : DiffPoly(Rational(c)) {}
    DiffPoly(Var v);
    static DiffPoly monomial(const Monomial& m, const Rational& c = 1);

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    Rational coefficient(const Monomial& m) const;
    size_t size() const { return t_.size(); }

    int total_degree() const;
    int degree_in(Var v) const;
    std::vector<Var> variables() const;
    bool depends_on(Var v) const;
    bool depends_on_kind(VarKind k) const;

    // Leading term under MonoOrder; requires non-zero.
    const std::pair<const Monomial, Rational>& leading() const { return *t_.rbegin(); }

    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly& operator*=(const DiffPoly& o);
    DiffPoly& operator*=(const Rational& c);
    void add_term(const Monomial& m, const Rational& c);

    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator*(DiffPoly a, const Rational& c) { return a *= c; }
    friend DiffPoly operator*(const Rational& c, DiffPoly a) { return a *= c; }
    DiffPoly operator-() const;
    bool operator==(const DiffPoly& o) const { return t_ == o.t_; }
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }

    DiffPoly pow(int e) const;

    // Total derivative d/dx; kinds marked constant in the policy are x-independent.
    DiffPoly dx(const JetPolicy& policy = JetPolicy::all_vary()) const;
    DiffPoly dx(int k, const JetPolicy& policy = JetPolicy::all_vary()) const;
    DiffPoly partial(Var v) const;

    DiffPoly substitute(Var v, const DiffPoly& value) const;
    DiffPoly substitute(const std::map<Var, DiffPoly>& values) const;
    DiffPoly evaluate(const std::map<Var, Rational>& values) const;
    // All variables must be assigned.
    Rational value(const std::map<Var, Rational>& values) const;
    // Rename / remap variables monomial-wise.
    DiffPoly map_vars(const std::function<Var(Var)>& f) const;

    // Coefficients as a polynomial in v: result[k] multiplies v^k.
    std::map<int, DiffPoly> coefficients_in(Var v) const;
    static DiffPoly from_coefficients(Var v, const std::map<int, DiffPoly>& c);

    // Exact division; throws std::domain_error when `d` does not divide.
    DiffPoly divide_exact(const DiffPoly& d) const;
    bool divides_into(const DiffPoly& num) const;

    // Scale so that the leading coefficient is 1 (zero stays zero).
    DiffPoly monic() const;
    Rational leading_coefficient() const { return t_.empty() ? Rational(0) : leading().second; }

    std::string str() const;

private:
    Terms t_;
};

std::string to_string(const DiffPoly& p);

// Greatest common divisor over Q, normalized monic (gcd(0,0) = 0).
DiffPoly gcd(const DiffPoly& a, const DiffPoly& b);

// G with dx(G) = f, built with the homotopy operator; nullopt when f is not
// a total x-derivative.
std::optional<DiffPoly> integrate_x(const DiffPoly& f, const JetPolicy& policy = JetPolicy::all_vary());

// Parses "2*u1*u1' + u2'' - 1/3*t1^2*(t2+1)". Throws std::invalid_argument.
DiffPoly parse_poly(const std::string& s);

} // namespace cinv
