#pragma once
// Verification suites shared by the command-line tool and the acceptance runner.
#include "cinv/invariants.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cinv {

struct CheckLine {
    int criterion = 0; // 1..10, 0 for supplementary checks
    std::string name;
    bool ok = false;
    std::string detail;
    double seconds = 0;
};

struct VerifyOptions {
    std::filesystem::path fixtures;
    uint64_t seed = 1;
};

// Invariants of the Lax (symbol) path: A_n all 1/24, B_n (1/12,..,1/12,1/6),
// C_n (1/12,..,1/12,1/24), D_n all 1/12.
std::vector<Rational> expected_symbol_invariants(Series s, int n);

CheckLine check_an_invariants(const VerifyOptions& o);    // A_1..A_6, 3 samples, < 60 s
CheckLine check_bcd_invariants(const VerifyOptions& o);   // B/C 2..5, D 3..5, < 300 s
CheckLine check_closed_forms(const VerifyOptions& o);     // A tables and B/C/D blocks, n <= 4
CheckLine check_g2_pipeline(const VerifyOptions& o);
CheckLine check_f4_fixture(const VerifyOptions& o);
CheckLine check_lie_table(const VerifyOptions& o);        // nine types and foldings
CheckLine check_residue_identity(const VerifyOptions& o); // 20 sets per n <= 8
CheckLine check_properties(const VerifyOptions& o);       // symbol calculus and bracket antisymmetry
CheckLine check_constancy(const VerifyOptions& o);        // 5 samples per (series, n <= 4)
CheckLine check_frobenius(const VerifyOptions& o);        // orbit pencil and potential round trip
CheckLine check_e6_potential(const VerifyOptions& o);     // supplementary Frobenius-side checks

std::vector<CheckLine> run_criteria(const VerifyOptions& o); // 1..10 in order

// all|an|bcd|g2|f4|table|frobenius|properties; ConfigError for other names.
std::vector<CheckLine> run_suite(const std::string& suite, const VerifyOptions& o);
const std::vector<std::string>& suite_names();

} // namespace cinv
