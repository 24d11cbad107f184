#include "factdual/numeric.hpp"

namespace factdual {

namespace {

i64 parse_digits(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty number");
    i64 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("Rational: bad digit in '" + s + "'");
        if (v > (std::numeric_limits<i64>::max() - 9) / 10) throw std::invalid_argument("Rational: overflow");
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace

Rational Rational::parse(const std::string& s) {
    const auto slash = s.find('/');
    if (slash != std::string::npos)
        return Rational(parse_digits(s.substr(0, slash)), parse_digits(s.substr(slash + 1)));
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(parse_digits(s), 1);
    const std::string ip = s.substr(0, dot);
    const std::string fp = s.substr(dot + 1);
    if (fp.size() > 9) throw std::invalid_argument("Rational: too many decimal places in '" + s + "'");
    i64 num = ip.empty() ? 0 : parse_digits(ip);
    i64 den = 1;
    for (char c : fp) {
        if (c < '0' || c > '9') throw std::invalid_argument("Rational: bad digit in '" + s + "'");
        num = num * 10 + (c - '0');
        den *= 10;
    }
    return Rational(num, den);
}

}  // namespace factdual
