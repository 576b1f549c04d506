#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace geuler {

/// Exact rational scalar used throughout the exact-arithmetic pipeline.
using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses "p/q", "p", or a plain decimal like "-0.25" into a canonical rational.
Rat parse_rational(std::string_view text);

/// Lowest-terms "p/q" (or "p" when the denominator is 1).
std::string format_rational(const Rat& value);

inline double to_double(const Rat& value) { return value.convert_to<double>(); }

/// Largest integer k with k <= value.
BigInt rational_floor(const Rat& value);

namespace detail {
[[noreturn]] inline void bad_rational(std::string_view text) {
  throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
}
}  // namespace detail

}  // namespace geuler
