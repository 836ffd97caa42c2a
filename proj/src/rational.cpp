#include "cinv/rational.hpp"

#include <stdexcept>

namespace cinv {

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view s) {
    std::string str(s);
    while (!str.empty() && std::isspace(static_cast<unsigned char>(str.back()))) str.pop_back();
    size_t b = 0;
    while (b < str.size() && std::isspace(static_cast<unsigned char>(str[b]))) ++b;
    str = str.substr(b);
    if (str.empty()) throw std::invalid_argument("empty rational");
    if (str[0] == '+') str = str.substr(1);
    auto slash = str.find('/');
    auto valid_int = [](const std::string& t) {
        size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    std::string num = slash == std::string::npos ? str : str.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : str.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("bad rational: " + std::string(s));
    Rational r{Integer(num), Integer(den)};
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
    r.canonicalize();
    return r;
}

std::string to_decimal(const Rational& q, int digits) {
    Integer scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Integer num = abs(q.get_num()) * scale * 2 + q.get_den();
    Integer den = q.get_den() * 2;
    Integer v = num / den; // floor(|q|*scale + 1/2)
    std::string s = v.get_str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
        s.insert(s.size() - digits, ".");
    }
    if (q < 0 && v != 0) s.insert(0, "-");
    return s;
}

Rational rational_pow(const Rational& q, int e) {
    if (e < 0) {
        if (q == 0) throw std::domain_error("zero to negative power");
        return rational_pow(Rational(1) / q, -e);
    }
    Rational r = 1, b = q;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

} // namespace cinv
