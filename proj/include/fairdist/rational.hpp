#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace fairdist {

/// Exact rational used for vote shares, ratings and targets.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", an integer, or a decimal such as "0.55" or "5e-1" exactly.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Nearest double, for display only.
double to_double(const Rational& value);

}  // namespace fairdist
