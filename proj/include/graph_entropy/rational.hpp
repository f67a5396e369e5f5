#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace graph_entropy {

// Exact arbitrary-precision fraction. mpq_class keeps values canonical
// (lowest terms, positive denominator) after every arithmetic operation.
using Rational = mpq_class;

/// Renders "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Accepts "p", "-p" and "p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace graph_entropy
