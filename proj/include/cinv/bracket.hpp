#pragma once
// Drinfeld-Sokolov brackets of linear functionals in symbol form, their
// delta-expansion, and closed-form oracles for the coefficients.
#include "cinv/lax.hpp"
#include "cinv/matrix.hpp"

#include <array>
#include <vector>

namespace cinv {

// Default eps order for bracket work: delta''' coefficients need eps^3 in the trace.
inline constexpr int kBracketOrder = 3;

struct TestSymbols {
    Symbol X, Y;
    int count = 0; // test coefficients a_1..a_count, b_1..b_count
};

// Symbols of the variational derivatives of l_X = int sum a_i u_i, l_Y = int sum b_i u_i.
// `count` defaults to the rank when zero.
TestSymbols variational_symbols(Series s, int n, int count = 0, int order = kBracketOrder);

// The operator under the trace for bracket `which` (1 or 2). The shift
// parameter lambda (VarKind::Lam) is not involved here.
Symbol bracket_integrand(const LaxSpec& spec, const Symbol& L, const TestSymbols& xy, int which);

// Normal form of a bilinear density modulo total derivatives:
// a_i^(k) b_j^(l) -> (-1)^k a_i b_j^(k+l). Key (i, j, s, e) holds the
// coefficient of eps^e a_i b_j^(s).
using DeltaExpansion = std::map<std::array<int, 4>, DiffPoly>;
DeltaExpansion delta_normal_form(const DiffPoly& density);

// (1/eps) res(T) in normal form; eps^-1 terms must cancel (InvariantViolation otherwise).
DeltaExpansion bracket_expansion(const LaxSpec& spec, const Symbol& L, const TestSymbols& xy, int which);

struct BracketCoeffTable {
    LaxSpec spec;
    int which = 2;
    int count = 0;
    // s -> C^{ij}_s, the coefficient of delta^(s) in {u_i(x), u_j(y)} (0-based i, j).
    std::map<int, std::vector<std::vector<DiffPoly>>> C;
    // (k, s) -> A_{which,k,s}(p, q). Jets are suppressed, so only k = 0 occurs.
    std::map<std::pair<int, int>, TwoVarSymbol> A;

    PolyMatrix matrix(int s) const; // C_s as an n x n polynomial matrix (first n indices)
    std::string serialize() const;
};

// Exponent of the spectral variable paired with the i-th test coefficient (1-based).
int dual_power(Series s, int i);

// Builds the table for `which` in {1, 2}; any term outside eps^(s-1) delta^(s)
// throws InvariantViolation.
BracketCoeffTable coefficient_table(const LaxSpec& spec, int which, int count = 0);

// Table of the second bracket with the pencil shift applied to L, split into
// the lambda^0 and lambda^1 parts; returns {second, first} where the first
// bracket is minus the lambda^1 part.
std::pair<BracketCoeffTable, BracketCoeffTable> shifted_tables(const LaxSpec& spec, int count = 0);

// Capital-variable coefficients R_{which,s}(P, Q) from the small-variable table:
// p^a -> P^((a+nu-1)/2) when a + nu is odd, dropped otherwise.
DiffPoly contour_to_capital(const BracketCoeffTable& table, int s);

// Generating function sum C^{ij}_s p^{i-1} q^{j-1} (A) in VarKind::P, VarKind::Q.
DiffPoly generating_a(const BracketCoeffTable& table, int s);

// Unreduced fraction used for the closed forms.
struct PolyFrac {
    DiffPoly num;
    DiffPoly den = DiffPoly(1);
};
PolyFrac operator+(const PolyFrac& a, const PolyFrac& b);
PolyFrac operator-(const PolyFrac& a, const PolyFrac& b);
PolyFrac operator*(const PolyFrac& a, const PolyFrac& b);
PolyFrac frac(const DiffPoly& num, const DiffPoly& den = DiffPoly(1));
// computed == f after clearing denominators.
bool frac_equals(const DiffPoly& computed, const PolyFrac& f);

// A series: A_{which,0,s}(p, q) for s = 1, 2, 3.
PolyFrac a_closed_form(int n, int which, int s);
// B/C/D: A_{2,0,s}(p, q) in small variables, s = 1, 2, 3, with lambda(p)
// multiplied by p for D so that all entries are polynomial; `shift` receives
// the power of p (and of q) by which the table must be multiplied.
PolyFrac bcd_small_closed_form(const LaxSpec& spec, int s, int* shift);
// B/C/D: R_{which,s}(P, Q), s = 1, 3.
PolyFrac r_closed_form(const LaxSpec& spec, int which, int s);
// The same as the table entry multiplied by p^shift q^shift, as a polynomial.
DiffPoly shifted_small_table(const BracketCoeffTable& table, int s, int shift);
// The small-variable closed forms agree with the table only on monomials
// p^a q^b (before the shift) with a + nu and b + nu odd; the others do not
// survive the contour pairing. Terms below the lowest dual power are dropped.
DiffPoly dual_projection(const LaxSpec& spec, const PolyFrac& f, int shift);

// Dispersionless brackets of the generating functions: coefficients of
// delta'(x-y) and delta(x-y); jets u_i' appear in the delta part.
struct DispersionlessPencil {
    PolyFrac dprime[2]; // brackets 1, 2
    PolyFrac delta[2];
};
DispersionlessPencil dispersionless_pencil(const LaxSpec& spec);

} // namespace cinv
