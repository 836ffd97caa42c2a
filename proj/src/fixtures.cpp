#include "cinv/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#ifndef CINV_DATA_DIR
#define CINV_DATA_DIR "data"
#endif

namespace cinv {

using nlohmann::json;

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fixture_checksum(const json& data) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data.dump())));
    return std::string("fnv1a64:") + buf;
}

std::filesystem::path fixture_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return *flag;
    if (const char* env = std::getenv("CINV_FIXTURES"); env && *env) return env;
    return CINV_DATA_DIR;
}

Rational json_rational(const json& v) {
    try {
        if (v.is_number_integer()) return Rational(v.get<long>());
        if (v.is_string()) return parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
        throw FixtureError(std::string("bad rational in fixture: ") + e.what());
    }
    throw FixtureError("expected a rational, got " + v.dump());
}

DiffPoly json_poly(const json& v) {
    if (v.is_number_integer()) return DiffPoly(Rational(v.get<long>()));
    if (!v.is_string()) throw FixtureError("expected a polynomial string, got " + v.dump());
    try {
        return parse_poly(v.get<std::string>());
    } catch (const std::exception& e) {
        throw FixtureError("bad polynomial '" + v.get<std::string>() + "': " + e.what());
    }
}

PolyMatrix json_poly_matrix(const json& v) {
    if (!v.is_array() || v.empty() || !v[0].is_array()) throw FixtureError("expected a matrix");
    PolyMatrix m(v.size(), v[0].size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].size() != m.cols()) throw FixtureError("ragged matrix in fixture");
        for (size_t j = 0; j < m.cols(); ++j) m(i, j) = json_poly(v[i][j]);
    }
    return m;
}

QMatrix json_sparse(const json& v, size_t n) {
    QMatrix m(n, n);
    if (!v.is_array()) throw FixtureError("expected sparse triples");
    for (const auto& t : v) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer())
            throw FixtureError("bad sparse entry " + t.dump());
        long i = t[0].get<long>(), j = t[1].get<long>();
        if (i < 1 || j < 1 || size_t(i) > n || size_t(j) > n) throw FixtureError("sparse index out of range");
        m(i - 1, j - 1) += json_rational(t[2]);
    }
    return m;
}

const json& Fixture::at(const std::string& key) const {
    auto it = data.find(key);
    if (it == data.end()) throw FixtureError(algebra + " fixture has no '" + key + "'");
    return *it;
}

Rational Fixture::rational(const std::string& key) const { return json_rational(at(key)); }
DiffPoly Fixture::poly(const std::string& key) const { return json_poly(at(key)); }

std::vector<Rational> Fixture::rationals(const std::string& key) const {
    std::vector<Rational> out;
    for (const auto& x : at(key)) out.push_back(json_rational(x));
    return out;
}

std::vector<DiffPoly> Fixture::polys(const std::string& key) const {
    std::vector<DiffPoly> out;
    for (const auto& x : at(key)) out.push_back(json_poly(x));
    return out;
}

Fixture load_fixture_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw FixtureError("cannot open fixture " + file.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw FixtureError("fixture " + file.string() + " is not valid JSON: " + e.what());
    }
    for (const char* k : {"algebra", "format", "checksum", "data"})
        if (!doc.contains(k)) throw FixtureError("fixture " + file.string() + " lacks '" + k + "'");
    if (doc["format"] != 1) throw FixtureError("unsupported fixture format in " + file.string());
    Fixture f;
    f.algebra = doc["algebra"].get<std::string>();
    f.path = file;
    f.data = std::move(doc["data"]);
    std::string want = doc["checksum"].get<std::string>();
    if (fixture_checksum(f.data) != want)
        throw FixtureError("checksum mismatch in " + file.string() + " (expected " + want + ")");
    return f;
}

Fixture load_fixture(const std::string& algebra, const std::filesystem::path& dir) {
    std::string name = algebra;
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    Fixture f = load_fixture_file(dir / (name + ".json"));
    std::string got = f.algebra;
    std::transform(got.begin(), got.end(), got.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    if (got != name) throw FixtureError("fixture " + f.path.string() + " describes " + f.algebra);
    return f;
}

} // namespace cinv
