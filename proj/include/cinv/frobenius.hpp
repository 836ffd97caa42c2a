#pragma once
// Flat pencils from Frobenius potentials and from A_n orbit spaces.
#include "cinv/fixtures.hpp"
#include "cinv/matrix.hpp"

#include <vector>

namespace cinv {

struct FrobeniusData {
    std::vector<Var> t;           // flat coordinates
    DiffPoly F;
    std::vector<Rational> euler;  // E = sum euler[i] t_i d/dt_i
    std::vector<Rational> unity;  // e = sum unity[i] d/dt_i
    int rank() const { return int(t.size()); }
};

// Reads "potential", "euler", "unity" in t_1..t_n.
FrobeniusData frobenius_from_fixture(const Fixture& f);

struct FlatPencil {
    QMatrix eta;       // eta_ij = d_i d_j (e F)
    QMatrix eta_inv;   // the first metric g1
    PolyMatrix g1, g2; // contravariant, g2^ij = E^m c^ij_m
    std::vector<PolyMatrix> c; // c[m](i, j) = c^ij_m
};

// Throws NonConstantEta when d_i d_j (e F) is not a nonsingular constant.
FlatPencil pencil_from_potential(const FrobeniusData& d);

// d_F with E(F) = d_F F up to quadratic terms; nullopt when F is not quasi-homogeneous.
std::optional<Rational> quasi_homogeneity(const FrobeniusData& d);

// Degree-3 symmetry of c_ijk = d_i d_j d_k F is automatic; this checks that
// c^ij_m contracted with eta is symmetric in all three indices.
bool c_tensor_symmetric(const FlatPencil& p, const FrobeniusData& d);

// F up to quadratic terms from the second metric via
// eta^ia eta^jb d_a d_b F = h / (deg_i + deg_j - 2) g2^ij with h = max deg.
// Throws IntegrabilityFailure when the implied Hessian is not one.
DiffPoly potential_from_metrics(const QMatrix& eta_inv, const PolyMatrix& g2, const std::vector<int>& degrees,
                                const std::vector<Var>& t);

// Drops constant, linear and quadratic terms.
DiffPoly strip_quadratic(const DiffPoly& f);

struct OrbitSpaceData {
    int n = 0;
    std::vector<Var> y;          // y^i = coefficient of p^(i-1) in prod (p - z_a), sum z_a = 0
    std::vector<int> degrees;    // deg y^i = n + 2 - i
    PolyMatrix g2, g1;
    std::vector<PolyMatrix> gamma2, gamma1; // gamma[k](i, j) = Gamma^ij_k
};

// Gram matrix of the A_n form pulled back to the invariants, with g1 = d g2 / d y^1.
OrbitSpaceData orbit_metrics_a(int n);

} // namespace cinv
