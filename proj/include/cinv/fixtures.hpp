#pragma once
// Bundled algebra data (Chevalley generators, flat coordinates, potentials).
#include "cinv/matrix.hpp"
#include "cinv/poly.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cinv {

uint64_t fnv1a64(std::string_view bytes);
std::string fixture_checksum(const nlohmann::json& data); // "fnv1a64:<16 hex digits>"

// Resolution order: explicit flag, CINV_FIXTURES, then the directory bundled at
// build time.
std::filesystem::path fixture_dir(const std::optional<std::string>& flag = std::nullopt);

struct Fixture {
    std::string algebra;
    std::filesystem::path path;
    nlohmann::json data;

    const nlohmann::json& at(const std::string& key) const; // FixtureError if absent
    bool has(const std::string& key) const { return data.contains(key); }
    Rational rational(const std::string& key) const;
    DiffPoly poly(const std::string& key) const;
    std::vector<Rational> rationals(const std::string& key) const;
    std::vector<DiffPoly> polys(const std::string& key) const;
};

// Loads <dir>/<lower-case name>.json and validates format and checksum.
Fixture load_fixture(const std::string& algebra, const std::filesystem::path& dir);
Fixture load_fixture_file(const std::filesystem::path& file);

// Element conversions; FixtureError on malformed input.
Rational json_rational(const nlohmann::json& v);
DiffPoly json_poly(const nlohmann::json& v);
PolyMatrix json_poly_matrix(const nlohmann::json& v);
// Sparse 1-based triples [[i, j, "c"], ...] into an N x N matrix.
QMatrix json_sparse(const nlohmann::json& v, size_t n);

} // namespace cinv
