#include "cinv/ratfunc.hpp"

#include "cinv/errors.hpp"

namespace cinv {

RatFunc::RatFunc(const DiffPoly& num, const DiffPoly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    canonicalize();
}

void RatFunc::canonicalize() {
    if (num_.is_zero()) {
        den_ = DiffPoly(1);
        return;
    }
    if (!den_.is_constant()) {
        DiffPoly g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = num_.divide_exact(g);
            den_ = den_.divide_exact(g);
        }
    }
    Rational lc = den_.leading_coefficient();
    if (lc != 1) {
        Rational inv = Rational(1) / lc;
        num_ *= inv;
        den_ *= inv;
    }
}

DiffPoly RatFunc::as_poly() const {
    if (!is_polynomial()) throw std::domain_error("rational function is not a polynomial: " + str());
    return num_ * (Rational(1) / den_.constant_term());
}

void RatFunc::normalize_lc() {
    if (num_.is_zero()) {
        den_ = DiffPoly(1);
        return;
    }
    Rational lc = den_.leading_coefficient();
    if (lc != 1) {
        Rational inv = Rational(1) / lc;
        num_ *= inv;
        den_ *= inv;
    }
}

// Operands are reduced, so only the shared denominator factor can cancel.
RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.num_.is_zero()) return *this;
    if (den_ == o.den_) {
        num_ += o.num_;
        if (den_.is_constant()) {
            normalize_lc();
            return *this;
        }
        canonicalize();
        return *this;
    }
    if (den_.is_constant() || o.den_.is_constant()) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
        normalize_lc();
        return *this;
    }
    DiffPoly g = gcd(den_, o.den_);
    if (g.is_constant()) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
        normalize_lc();
        return *this;
    }
    DiffPoly b = den_.divide_exact(g), d = o.den_.divide_exact(g);
    num_ = num_ * d + o.num_ * b;
    DiffPoly h = num_.is_zero() ? DiffPoly(1) : gcd(num_, g);
    if (!h.is_constant()) {
        num_ = num_.divide_exact(h);
        g = g.divide_exact(h);
    }
    den_ = b * d * g;
    normalize_lc();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (num_.is_zero() || o.num_.is_zero()) {
        num_ = DiffPoly();
        den_ = DiffPoly(1);
        return *this;
    }
    DiffPoly a = num_, c = o.num_, b = den_, d = o.den_;
    if (!d.is_constant()) {
        DiffPoly g = gcd(a, d);
        if (!g.is_constant()) {
            a = a.divide_exact(g);
            d = d.divide_exact(g);
        }
    }
    if (!b.is_constant()) {
        DiffPoly g = gcd(c, b);
        if (!g.is_constant()) {
            c = c.divide_exact(g);
            b = b.divide_exact(g);
        }
    }
    num_ = a * c;
    den_ = b * d;
    normalize_lc();
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational function");
    RatFunc inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    inv.normalize_lc();
    return *this *= inv;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

bool RatFunc::operator==(const RatFunc& o) const { return num_ * o.den_ == o.num_ * den_; }

RatFunc RatFunc::partial(Var v) const {
    return RatFunc(num_.partial(v) * den_ - num_ * den_.partial(v), den_ * den_);
}

RatFunc RatFunc::substitute(const std::map<Var, DiffPoly>& values) const {
    return RatFunc(num_.substitute(values), den_.substitute(values));
}

Rational RatFunc::value(const std::map<Var, Rational>& values) const {
    Rational d = den_.value(values);
    if (d == 0) throw DegeneratePoint("denominator vanishes at evaluation point");
    return num_.value(values) / d;
}

RatFunc RatFunc::evaluate(const std::map<Var, Rational>& values) const {
    DiffPoly d = den_.evaluate(values);
    if (d.is_zero()) throw DegeneratePoint("denominator vanishes at evaluation point");
    return RatFunc(num_.evaluate(values), d);
}

std::string RatFunc::str() const {
    if (den_.is_constant()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::string to_string(const RatFunc& f) { return f.str(); }

} // namespace cinv
