#include "ecd/scalar.hpp"

#include <cctype>

namespace ecd {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational ten_pow(long e) {
    Rational r(1);
    for (long k = 0; k < e; ++k) r *= 10;
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s = trim(text);
    if (s.empty()) throw ParseError("empty number");
    bool neg = false;
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        pos = 1;
    }
    std::string body = s.substr(pos);

    if (auto slash = body.find('/'); slash != std::string::npos) {
        std::string num = body.substr(0, slash), den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw ParseError("bad fraction '" + s + "'");
        Rational d(den);
        if (d.is_zero()) throw ParseError("zero denominator in '" + s + "'");
        Rational r = Rational(num) / d;
        return neg ? Rational(-r) : r;
    }

    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string::npos) {
        std::string ex = body.substr(e + 1);
        body = body.substr(0, e);
        bool eneg = false;
        if (!ex.empty() && (ex[0] == '+' || ex[0] == '-')) {
            eneg = ex[0] == '-';
            ex = ex.substr(1);
        }
        if (!all_digits(ex) || ex.size() > 4) throw ParseError("bad exponent in '" + s + "'");
        exponent = std::stol(ex);
        if (eneg) exponent = -exponent;
    }

    std::string digits = body;
    if (auto dot = body.find('.'); dot != std::string::npos) {
        std::string frac = body.substr(dot + 1);
        digits = body.substr(0, dot) + frac;
        exponent -= static_cast<long>(frac.size());
        if (dot == 0 && frac.empty()) throw ParseError("bad number '" + s + "'");
    }
    if (!all_digits(digits)) throw ParseError("bad number '" + s + "'");

    Rational r{Rational(digits)};
    if (exponent > 0) r *= ten_pow(exponent);
    if (exponent < 0) r /= ten_pow(-exponent);
    return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace ecd
