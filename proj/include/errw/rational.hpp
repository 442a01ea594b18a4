#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "errw/errors.hpp"

namespace errw {

// Exact arbitrary-precision rational. All exact-probability paths in the
// library are computed with this type; doubles are only used for sampling
// and long-horizon simulation.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    if (den == 0) throw domain_error("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Accepts "p", "p/q", and plain decimals like "0.25" or "-1.5".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw domain_error("parse_rational: empty string");
    auto fail = [&]() -> Rational {
        throw domain_error("parse_rational: cannot parse '" + s + "'");
    };
    std::size_t slash = s.find('/');
    std::size_t dot = s.find('.');
    if (slash != std::string::npos) {
        if (dot != std::string::npos) return fail();
        Rational r;
        if (r.set_str(s, 10) != 0) return fail();
        if (r.get_den() == 0) throw domain_error("parse_rational: zero denominator in '" + s + "'");
        r.canonicalize();
        return r;
    }
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        if (frac_len == 0 || digits.empty()) return fail();
        for (std::size_t i = 0; i < digits.size(); ++i) {
            char c = digits[i];
            if (i == 0 && (c == '+' || c == '-')) continue;
            if (!std::isdigit(static_cast<unsigned char>(c))) return fail();
        }
        mpz_class num;
        if (num.set_str(digits, 10) != 0) return fail();
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    Rational r;
    if (r.set_str(s, 10) != 0) return fail();
    r.canonicalize();
    return r;
}

} // namespace errw
