#pragma once
// Dirac reduction onto the slice q = I + sum u_i gamma_i and the central
// invariants of the reduced pencil.
#include "cinv/frobenius.hpp"
#include "cinv/invariants.hpp"
#include "cinv/lie.hpp"

#include <optional>

namespace cinv {

// Constant pieces of the reduction matrices over the basis f_a (m = |f|):
//   P = P0 + sum_k u_k Pu[k],   P_ab = -<I + q, [f_a, f_b]>
//   R = sum_k u_k Ru[k],        R_ia = -<q, [gamma^i, f_a]>
//   Q_ab = <f_a, f_b>,          S_ia = <gamma^i, f_a>
struct DiracSystem {
    int n = 0;
    size_t m = 0;
    QMatrix P0, Q, S;
    std::vector<QMatrix> Pu, Ru;
};

DiracSystem dirac_system(const LieAlgebraData& g, const SliceData& s);

// g and A_{k,0} for the second bracket (label 2) and, with the shift
// u_n -> u_n + lambda, the lambda-linear parts (label 1).
struct ReducedPencil {
    std::vector<Var> coords;
    PolyMatrix g2, g1, A102, A101, A202, A201;
    bool has_first = false;
};

// Symbolic in u_1..u_n. P^{-1} is a terminating Neumann series when
// P0^{-1}(P - P0) is nilpotent, otherwise it is computed over rational functions.
// Throws NonLinearInLambda when a shifted tensor has degree > 1 in lambda.
ReducedPencil dirac_reduce(const DiracSystem& d, bool lambda_shift = true);

// Values at one rational point u (exact, no symbolic inversion).
struct ReducedValues {
    QMatrix g2, g1, A102, A101, A202, A201;
};
ReducedValues dirac_at(const DiracSystem& d, const std::vector<Rational>& u);

// det(g2 - z g1) with z = VarKind::Lam.
DiffPoly char_poly(const ReducedPencil& p);

// Tensors in new coordinates w = w(u): T -> J T J^T with J = dw/du, then
// expressed in w through `old_of_new`.
ReducedPencil change_coordinates(const ReducedPencil& p, const std::vector<DiffPoly>& new_of_old,
                                 const std::vector<Var>& new_vars, const std::vector<DiffPoly>& old_of_new);

// Inverse of a triangular polynomial change in which each new coordinate is
// linear in one not-yet-solved old coordinate. Throws InvariantViolation otherwise.
std::vector<DiffPoly> invert_triangular(const std::vector<DiffPoly>& new_of_old, const std::vector<Var>& old_vars,
                                        const std::vector<Var>& new_vars);

// Central invariants at a point of p.coords. Roots of the characteristic
// polynomial are matched to `reference` (same order) when given, otherwise sorted.
// Throws DegeneratePoint on repeated roots.
CIResult central_invariants_dirac(const ReducedPencil& p, const std::map<Var, Rational>& point,
                                  const std::string& algebra, const std::vector<Complex>& reference = {});

// Evaluates a polynomial at complex values.
Complex evaluate_complex(const DiffPoly& f, const std::map<Var, Complex>& at);

// F4 from the bundled data: g1, g2 from the potential, A_{2,0;2} stored, A_{2,0;1} = d/dt1 A_{2,0;2}.
ReducedPencil f4_pencil(const Fixture& f4);
// Canonical coordinates lambda_{mu1 mu2} in the stored order, evaluated numerically.
std::vector<Complex> f4_closed_form_roots(const Fixture& f4, const std::map<Var, Rational>& t);
// Sample in which both radicands are 57 times a rational square, so all roots are rational.
std::map<Var, Rational> f4_rational_sample(const Rational& t1, const Rational& a, const Rational& b, const Rational& w);
CIResult f4_fixture_pipeline(const Fixture& f4, const std::map<Var, Rational>& t);

// G2 end to end: slice reduction with the bundled gamma basis, then the
// bundled flat coordinates t(u).
struct G2Pipeline {
    LieAlgebraData g;
    SliceData slice;
    DiracSystem system;
    ReducedPencil reduced, flat;
    std::vector<DiffPoly> canonical; // canonical coordinates in t, stored order
};
G2Pipeline g2_pipeline(const Fixture& g2);
// Invariants at a flat-coordinate point, roots ordered as the stored canonical coordinates.
CIResult g2_invariants(const G2Pipeline& p, const std::map<Var, Rational>& t);

} // namespace cinv
