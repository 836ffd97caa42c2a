#pragma once
#include "cinv/poly.hpp"

namespace cinv {

// Quotient of jet-free polynomials, kept reduced with a monic denominator.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(const DiffPoly& num) : num_(num), den_(1) {}
    RatFunc(const Rational& c) : num_(c), den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}
    RatFunc(const DiffPoly& num, const DiffPoly& den);

    const DiffPoly& num() const { return num_; }
    const DiffPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    // Requires is_polynomial().
    DiffPoly as_poly() const;

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    RatFunc operator-() const;

    // Cross-multiplication test; valid even for non-reduced operands.
    bool operator==(const RatFunc& o) const;
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc partial(Var v) const;
    RatFunc substitute(const std::map<Var, DiffPoly>& values) const;
    // Throws DegeneratePoint when the denominator vanishes.
    Rational value(const std::map<Var, Rational>& values) const;
    RatFunc evaluate(const std::map<Var, Rational>& values) const;

    std::string str() const;

private:
    DiffPoly num_, den_;
    void canonicalize();
    void normalize_lc();
};

std::string to_string(const RatFunc& f);

} // namespace cinv
