#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "causalis/errors.hpp"

namespace causalis {

/// Exact arithmetic everywhere; probabilities are never floats.
using Rational = boost::multiprecision::cpp_rational;

/// Canonical "p/q" form ("p" when q == 1).
inline std::string format_rational(const Rational& r) {
    std::string num = numerator(r).str();
    if (denominator(r) == 1) return num;
    return num + "/" + denominator(r).str();
}

/// Accepts "p/q" or "p"; integers may be arbitrarily large.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(boost::multiprecision::cpp_int(text));
        }
        boost::multiprecision::cpp_int num(text.substr(0, slash));
        boost::multiprecision::cpp_int den(text.substr(slash + 1));
        if (den == 0) raise(ErrorCode::SyntaxError, "zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception&) {
        raise(ErrorCode::SyntaxError, "malformed rational '" + text + "'");
    }
}

}  // namespace causalis
