#pragma once
// Matrix-realized simple Lie algebras: Chevalley generators, root vectors,
// invariant form, principal sl2 and the slice bases used by the Dirac reduction.
#include "cinv/cartan.hpp"
#include "cinv/fixtures.hpp"
#include "cinv/matrix.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace cinv {

// Sparse square matrix over Q; rows are ordered maps column -> value.
class LieMat {
public:
    LieMat() = default;
    explicit LieMat(size_t n) : rows_(n) {}
    static LieMat unit(size_t n, size_t i, size_t j); // E_ij, 0-based
    static LieMat from_dense(const QMatrix& m);

    size_t size() const { return rows_.size(); }
    const std::map<size_t, Rational>& row(size_t i) const { return rows_[i]; }
    Rational get(size_t i, size_t j) const;
    void add(size_t i, size_t j, const Rational& c);
    bool is_zero() const;
    size_t nonzeros() const;
    QMatrix dense() const;
    // First nonzero entry scanning rows (or columns) in order; zero for the zero matrix.
    Rational first_in_rows() const;
    Rational first_in_cols() const;

    LieMat& operator+=(const LieMat& o);
    LieMat& operator-=(const LieMat& o);
    friend LieMat operator+(LieMat a, const LieMat& b) { return a += b; }
    friend LieMat operator-(LieMat a, const LieMat& b) { return a -= b; }
    friend LieMat operator*(const Rational& c, const LieMat& a);
    friend LieMat operator*(const LieMat& a, const LieMat& b);
    LieMat operator-() const { return Rational(-1) * *this; }
    bool operator==(const LieMat& o) const;
    bool operator!=(const LieMat& o) const { return !(*this == o); }

private:
    std::vector<std::map<size_t, Rational>> rows_;
};

LieMat commutator(const LieMat& a, const LieMat& b);
Rational trace_product(const LieMat& a, const LieMat& b);

using Root = std::vector<int>; // coefficients on the simple roots of the realization

struct LieAlgebraData {
    std::string name;
    CartanType type;
    int rank = 0;
    size_t matrix_size = 0;
    Rational form_scale = 1; // <a, b> = form_scale * tr(ab)

    std::vector<LieMat> X, Y, H; // Chevalley generators, realization numbering
    QMatrix cartan;              // [H_i, X_j] = cartan(i, j) X_j
    std::vector<int> bourbaki;   // realization vertex i is Bourbaki vertex bourbaki[i]

    std::vector<Root> positive_roots; // by height; simple roots in index order, then lexicographic per height
    std::map<Root, LieMat> Xr, Yr;
    std::vector<Root> named_roots; // index labels "1", "2", ... used by fixtures

    int coxeter = 0, dual_coxeter = 0;
    std::vector<int> exponents;

    Rational form(const LieMat& a, const LieMat& b) const { return form_scale * trace_product(a, b); }
    int height(const Root& r) const;
    // Root vectors X_beta, then H_i, then Y_beta.
    std::vector<LieMat> basis() const;
    size_t dimension() const { return 2 * positive_roots.size() + size_t(rank); }
    // Root from a fixture label: a digit string of length rank, or an index into named_roots.
    Root parse_root_label(const std::string& label) const;
};

// G2 and B_n/C_n/D_n/A_n are built in; F4, E6, E7, E8 come from fixtures.
LieAlgebraData load_algebra(const std::string& tag, const std::filesystem::path& fixtures);
LieAlgebraData classical_algebra(const CartanType& t);
LieAlgebraData g2_algebra();
// From Chevalley generators in any numbering. Throws BadCartanData when the
// relations fail or the Cartan matrix is not of type `t` up to renumbering.
LieAlgebraData algebra_from_generators(const std::string& name, const CartanType& t, std::vector<LieMat> X,
                                       std::vector<LieMat> Y);

// Coordinates in basis() for matrices inside the algebra; throws InvariantViolation otherwise.
class BasisCoordinates {
public:
    explicit BasisCoordinates(const std::vector<LieMat>& basis);
    std::vector<Rational> operator()(const LieMat& m) const;

    size_t rank() const { return rows_.size(); }

private:
    using Entry = std::pair<size_t, size_t>;
    size_t dim_ = 0;
    // Reduced row echelon form of the flattened basis: each row is zero at the
    // other rows' pivots; combo_ expresses the row in the original basis.
    std::vector<std::map<Entry, Rational>> rows_;
    std::vector<Entry> pivots_;
    std::vector<std::vector<Rational>> combo_;
};

struct LieChecks {
    bool chevalley = false;   // [X_i, Y_j] = delta_ij H_i, [H_i, X_j] = A_ij X_j
    bool antisymmetry = false;
    bool jacobi = false;
    bool invariance = false;  // <[a,b],c> + <b,[a,c]> = 0
    bool normalized = false;  // <a,b> = tr(ad a ad b) / (2 h^vee) on the Cartan subalgebra
    size_t triples = 0;
    bool ok() const { return chevalley && antisymmetry && jacobi && invariance && normalized; }
};
// Exhaustive when the basis has at most `exhaustive_dim` elements, otherwise on
// `samples` seeded random triples.
LieChecks check_algebra(const LieAlgebraData& g, size_t exhaustive_dim = 20, size_t samples = 60, uint64_t seed = 1);

// Normalized Killing form tr(ad a ad b) / (2 h^vee).
Rational killing_normalized(const LieAlgebraData& g, const LieMat& a, const LieMat& b);

struct SliceData {
    std::vector<Rational> a; // I_+ = sum a_i X_i, 2 rho = sum a_i H_i
    LieMat I, Iplus, rho;
    std::vector<LieMat> gamma, gamma_dual; // <gamma^i, gamma_j> = delta
    std::vector<int> degrees;              // exponent of each gamma_i
    std::vector<LieMat> n_dual;
    std::vector<LieMat> f;                 // positive root vectors, then n_dual
};

// a = 2 (A^T)^{-1} (1, ..., 1); BadCartanData when the sl2 relations fail.
SliceData principal_sl2(const LieAlgebraData& g);
// `gamma` as (root label, coefficient) lists; empty means the kernel of ad I_+
// is normalized so that the first nonzero coefficient of each element is 1.
// Throws DecompositionFailure when g != Ker ad I + n + n_dual.
SliceData slice_bases(const LieAlgebraData& g,
                      const std::vector<std::vector<std::pair<std::string, Rational>>>& gamma = {});
// The same with every gamma_i multiplied by scale[i] (gamma^i divided by it).
SliceData rescale_slice(const SliceData& s, const std::vector<Rational>& scale);

std::vector<std::vector<std::pair<std::string, Rational>>> fixture_gamma(const Fixture& f);

} // namespace cinv
