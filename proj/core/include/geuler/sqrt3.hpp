#pragma once

#include "geuler/rational.hpp"

#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>

namespace geuler {

/// Exact element of the field extension of the rationals by sqrt(3),
/// stored as the pair (rat, root3) meaning rat + root3 * sqrt(3).
///
/// Closed under +, -, *, / and totally ordered, so trigonometric path
/// values at multiples of pi/3 can be handled without any floating point.
struct Sqrt3Rat {
  Rat rat{0};
  Rat root3{0};

  Sqrt3Rat() = default;
  Sqrt3Rat(Rat rational_part, Rat root3_part)
      : rat(std::move(rational_part)), root3(std::move(root3_part)) {}
  /*implicit*/ Sqrt3Rat(Rat rational_part) : rat(std::move(rational_part)) {}
  /*implicit*/ Sqrt3Rat(int value) : rat(value) {}

  static Sqrt3Rat sqrt3() { return Sqrt3Rat(Rat(0), Rat(1)); }

  bool is_rational() const { return root3 == 0; }

  /// -1, 0, +1. Compares |rat| against |root3|*sqrt(3) exactly via squares.
  int sign() const {
    int sa = rat.sign();
    int sb = root3.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Rat lhs = rat * rat;
    Rat rhs = 3 * root3 * root3;
    if (lhs == rhs) throw std::logic_error("sqrt(3) is irrational; a^2 == 3 b^2 with b != 0");
    return lhs > rhs ? sa : sb;
  }

  double to_double() const { return geuler::to_double(rat) + geuler::to_double(root3) * std::sqrt(3.0); }

  friend Sqrt3Rat operator+(const Sqrt3Rat& x, const Sqrt3Rat& y) {
    return {x.rat + y.rat, x.root3 + y.root3};
  }
  friend Sqrt3Rat operator-(const Sqrt3Rat& x, const Sqrt3Rat& y) {
    return {x.rat - y.rat, x.root3 - y.root3};
  }
  friend Sqrt3Rat operator-(const Sqrt3Rat& x) { return {-x.rat, -x.root3}; }
  friend Sqrt3Rat operator*(const Sqrt3Rat& x, const Sqrt3Rat& y) {
    return {x.rat * y.rat + 3 * x.root3 * y.root3, x.rat * y.root3 + x.root3 * y.rat};
  }
  friend Sqrt3Rat operator/(const Sqrt3Rat& x, const Sqrt3Rat& y) {
    Rat norm = y.rat * y.rat - 3 * y.root3 * y.root3;
    if (norm == 0) {
      if (y.rat == 0 && y.root3 == 0) throw std::domain_error("division by zero");
      throw std::logic_error("sqrt(3) is irrational; zero norm with nonzero value");
    }
    Sqrt3Rat conj{y.rat, -y.root3};
    Sqrt3Rat num = x * conj;
    return {num.rat / norm, num.root3 / norm};
  }
  Sqrt3Rat& operator+=(const Sqrt3Rat& y) { return *this = *this + y; }
  Sqrt3Rat& operator-=(const Sqrt3Rat& y) { return *this = *this - y; }
  Sqrt3Rat& operator*=(const Sqrt3Rat& y) { return *this = *this * y; }

  friend bool operator==(const Sqrt3Rat& x, const Sqrt3Rat& y) {
    return x.rat == y.rat && x.root3 == y.root3;
  }
  friend bool operator!=(const Sqrt3Rat& x, const Sqrt3Rat& y) { return !(x == y); }
  friend bool operator<(const Sqrt3Rat& x, const Sqrt3Rat& y) { return (x - y).sign() < 0; }
  friend bool operator>(const Sqrt3Rat& x, const Sqrt3Rat& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const Sqrt3Rat& x, const Sqrt3Rat& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const Sqrt3Rat& x, const Sqrt3Rat& y) { return (x - y).sign() >= 0; }
};

inline Sqrt3Rat abs(const Sqrt3Rat& x) { return x.sign() < 0 ? -x : x; }

inline std::string to_string(const Sqrt3Rat& x) {
  return format_rational(x.rat) + " + " + format_rational(x.root3) + "*sqrt(3)";
}

}  // namespace geuler
