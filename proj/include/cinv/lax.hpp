#pragma once
#include "cinv/ratfunc.hpp"
#include "cinv/symbol.hpp"

#include <string>

namespace cinv {

enum class Series { A, B, C, D };

char series_letter(Series s);
Series parse_series(const std::string& s); // throws ConfigError

struct LaxSpec {
    Series series = Series::A;
    int n = 1;
    int order = 4; // eps truncation

    void validate() const; // throws ConfigError
    int nu() const;        // 0, 1, 2 for B, C, D
    int lax_order() const; // n+1 for A, 2n+1-nu otherwise
};

// D^{n+1} + u_n D^{n-1} + ... + u_1 with fields u_i = u(i).
Symbol build_lax_a(int n, int order, JetPolicy policy = JetPolicy::all_vary());

// B/C/D operators with the correction coefficients v_i solved from the
// (anti)symmetry condition. D keeps rho as its own field (u_1 = rho^2).
Symbol build_lax_bcd(const LaxSpec& spec, JetPolicy policy = JetPolicy::all_vary());

Symbol build_lax(const LaxSpec& spec, JetPolicy policy = JetPolicy::all_vary());

// Drop every term containing a field jet, replace rho^2 by u_1, and switch to
// the fields-constant policy. Odd powers of rho throw InvariantViolation.
Symbol suppress_jets(const Symbol& s);

// The Lax symbol used by the bracket engine (fields constant).
Symbol bracket_lax(const LaxSpec& spec);

// L + L^dagger (B, D) or L - L^dagger (C); zero for a correctly built operator.
Symbol symmetry_defect(const LaxSpec& spec, const Symbol& L);

// The solved correction coefficient v_i as a polynomial in eps and u-jets.
DiffPoly lax_v_coefficient(const LaxSpec& spec, const Symbol& L, int i);

struct LambdaPoly {
    Series series;
    int n;
    DiffPoly Lambda;   // P^n + u_n P^{n-1} + ... + u_1 in CapP
    RatFunc tilde;     // Lambda / P (D only; equals Lambda otherwise)
    DiffPoly lambda_p; // p^lambda_shift * lambda(p), a polynomial in VarKind::P
    int lambda_shift;  // 1 for D, 0 otherwise
};

// Dispersionless forms; checks lambda(p) = p^{1,0,-1} Lambda(p^2) for B, C, D
// and throws InvariantViolation otherwise.
LambdaPoly lambda_forms(const LaxSpec& spec);

// The eps^0, jet-free part of a Lax symbol as a polynomial in p times p^shift.
DiffPoly dispersionless_poly(const Symbol& L, int shift = 0);

// Generating polynomial of the Lax symbol: A gives lambda(p) in VarKind::P.
DiffPoly lambda_a(int n);

} // namespace cinv
