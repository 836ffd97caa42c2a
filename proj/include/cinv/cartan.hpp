#pragma once
// Root-system data of the simple Lie algebras built from Cartan matrices.
#include "cinv/errors.hpp"
#include "cinv/matrix.hpp"

#include <string>
#include <vector>

namespace cinv {

struct CartanType {
    char family = 'A'; // A..G
    int rank = 1;
    std::string str() const { return family + std::to_string(rank); }
    bool operator==(const CartanType&) const = default;
};

// Parses "A3", "b2", "G2", ...; throws UnknownAlgebra for types that do not exist.
CartanType parse_cartan_type(const std::string& s);

// A_ij = <alpha_i^vee, alpha_j>, Bourbaki numbering: B_n has alpha_n short,
// C_n has alpha_n long, G_2 has alpha_1 short, F_4 has alpha_3, alpha_4 short.
QMatrix cartan_matrix(const CartanType& t);

struct RootSystem {
    CartanType type;
    QMatrix cartan;
    std::vector<std::vector<int>> positive_roots; // coefficients in simple roots, by height
    std::vector<Rational> half_lengths;             // d_i = (alpha_i, alpha_i) / 2, long roots 1
    int coxeter = 0;                                // h
    int dual_coxeter = 0;                           // h^vee
    std::vector<int> exponents;                     // ascending

    // Normalized form tr(ad a ad b) / (2 h^vee) on simple coroots, computed
    // from the Killing form as a sum over roots.
    QMatrix coroot_gram() const;
    const std::vector<int>& highest_root() const { return positive_roots.back(); }
};

RootSystem root_system(const CartanType& t);

// Diagram edges i -- j (0-based) with A_ij != 0, i != j.
bool adjacent(const QMatrix& cartan, int i, int j);

} // namespace cinv
