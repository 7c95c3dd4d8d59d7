#include "wb/rational.hpp"

#include <cctype>

namespace wb {

namespace {
bool is_int_token(const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}
}  // namespace

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_int_token(num, true) || !is_int_token(den, false))
        throw ParseError("not a rational: \"" + s + "\"");
    if (num[0] == '+') num = num.substr(1);
    Integer d(den);
    if (d == 0) throw ParseError("zero denominator: \"" + s + "\"");
    Rational r(Integer(num), d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace wb
