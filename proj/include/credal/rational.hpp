#pragma once

#include <gmpxx.h>

#include <string>

#include "credal/errors.hpp"

namespace credal {

// Exact arbitrary-precision rational. mpq_class keeps values canonical
// (lowest terms, positive denominator) under arithmetic; only the
// two-integer constructor needs an explicit canonicalize, done in rat().
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p/q" or a plain integer string; exact, no floats.
inline Rational rat_from_string(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    for (char c : text) {
        if (c != '/' && c != '-' && c != '+' && !(c >= '0' && c <= '9'))
            throw ParseError("bad rational literal: " + text);
    }
    Rational q;
    if (q.set_str(text, 10) != 0) throw ParseError("bad rational literal: " + text);
    if (q.get_den() == 0) throw ParseError("zero denominator: " + text);
    q.canonicalize();
    return q;
}

// Always "p/q", including "0/1" and "1/1": one canonical spelling per value.
inline std::string rat_to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace credal
