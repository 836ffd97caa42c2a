#pragma once
// Canonical coordinates and central invariants of semisimple pencils.
#include "cinv/bracket.hpp"
#include "cinv/cartan.hpp"

#include <boost/multiprecision/cpp_complex.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cinv {

using Complex = boost::multiprecision::cpp_complex_50;

Complex to_complex(const Rational& r);

// Roots of a univariate polynomial (ascending coefficients). `exact` when every
// root is rational; `numeric` is always filled, sorted by real then imaginary part.
struct UnivariateRoots {
    bool exact = false;
    std::vector<Rational> rational; // ascending, with multiplicity
    std::vector<Complex> numeric;
};
UnivariateRoots univariate_roots(std::vector<Rational> coeffs);

struct CanonicalData {
    Series series = Series::A;
    int n = 1;
    std::vector<Rational> u; // u_1..u_n
    bool exact = true;
    // Critical points (p for A, P for B/C, roots of P Lambda' - Lambda for D)
    // and the canonical coordinates lambda^i, ordered per series.
    std::vector<Rational> points, values;
    std::vector<Complex> points_num, values_num; // filled in both modes
    int special = -1; // B/C: index of the point P = 0 (always last)

    QMatrix jacobian() const; // d lambda^i / d u_k, exact mode only
    std::vector<std::vector<Complex>> jacobian_num() const;
};

// Exact data from chosen critical points; `free_value` fixes the coefficient
// the points leave undetermined (u_1 for A, B, C; u_2 for D). A needs n points
// summing to zero, B/C n-1 nonzero points, D n nonzero points with sum 1/R = 0.
CanonicalData canonical_from_points(Series s, int n, std::vector<Rational> points, const Rational& free_value);

// Deterministic generic exact sample for a seed.
CanonicalData random_sample(Series s, int n, uint64_t seed);

// From an arbitrary point u: roots are found numerically and promoted to exact
// rationals when every one of them is rational. Throws DegeneratePoint when two
// critical values agree within 1e-12.
CanonicalData canonical_coordinates(Series s, int n, const std::vector<Rational>& u);

// Tensors of a bihamiltonian pencil in canonical coordinates at one point:
// metrics g_a and the delta'', delta''' coefficients P_a, Q_a (a = 1, 2).
template <class T>
struct CanonicalTensors {
    using M = std::vector<std::vector<T>>;
    M g1, g2, P1, P2, Q1, Q2;
    std::vector<T> lambda;
};

struct CIResult {
    std::string algebra;
    std::string method; // symbol | dirac | lie | fixture
    bool exact = true;
    std::vector<Rational> lambda, f, Q1, Q2, c;
    QMatrix P1, P2;
    std::vector<Complex> lambda_num, c_num;

    size_t size() const { return exact ? c.size() : c_num.size(); }
};

// The central-invariant formula including the full off-diagonal sum. Checks
// that both metrics are diagonal with g2 = lambda g1; throws DegeneratePoint
// for f^i = 0 or repeated lambda.
CIResult central_invariant_formula(const CanonicalTensors<Rational>& t);
CIResult central_invariant_formula(const CanonicalTensors<Complex>& t);

// Brackets given by their coefficient tables, evaluated at canon.u.
CIResult central_invariants(const BracketCoeffTable& first, const BracketCoeffTable& second,
                            const CanonicalData& canon);
CIResult central_invariants(const LaxSpec& spec, const CanonicalData& canon);

// Sum over k != i of (lambda(r_k) - lambda(r_i)) / (lambda''(r_k) (r_k - r_i)^2)
// for lambda' = (n+1) prod (p - r_k), with sum r_k = 0.
Rational residue_sum(const std::vector<Rational>& r, int i);
// residue_sum equals (1 - n) / (2 (n + 1)) for every i.
bool residue_identity(const std::vector<Rational>& r);

struct PencilChange {
    Rational k11 = 1, k12 = 0, k21 = 0, k22 = 1;
    Rational det() const { return k11 * k22 - k12 * k21; }
};

// {,}_1 -> k11 {,}_1 + k12 {,}_2, {,}_2 -> k21 {,}_1 + k22 {,}_2.
CIResult transform_invariants(const CIResult& c, const PencilChange& k);

// c_i = <alpha_i^vee, alpha_i^vee> / 48 in the normalized form.
CIResult lie_formula(const RootSystem& rs);

// Scale of the normalized form relative to tr(ab) for the Lax realizations
// (1/2, 1, 1/2 for B, C, D; 1 for A).
Rational normalized_form_scale(Series s);

struct Folding {
    CartanType from, to;
    std::vector<std::vector<int>> orbits; // 0-based vertices of `from`, one orbit per vertex of `to`
};

struct FoldingReport {
    bool orbits_disconnected = false;
    bool cartan_consistent = false; // orbit sums generate the target's Cartan matrix
    bool additive = false;
    std::vector<Rational> folded, target;
    bool ok() const { return orbits_disconnected && additive && cartan_consistent; }
};

std::vector<Folding> standard_foldings(int max_rank = 5);
FoldingReport folding_check(const Folding& f);

} // namespace cinv
