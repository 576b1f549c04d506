#pragma once

#include "geuler/rational.hpp"

#include <cmath>
#include <string>

namespace geuler {

/// Arithmetic-mode traits. The exact pipeline instantiates on Rat with zero
/// tolerances; the float pipeline on double with the documented tolerances.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rat> {
  static constexpr bool exact = true;
  static Rat from_rat(const Rat& r) { return r; }
  static Rat abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }
  static bool is_zero(const Rat& x) { return x == 0; }
  /// Atoms below this are pruned (exact mode: only exact zeros).
  static bool negligible_mass(const Rat& x) { return x == 0; }
  static bool mass_sums_to_one(const Rat& total) { return total == 1; }
  static bool feasible_residual(const Rat& r) { return r == 0; }
  static std::string str(const Rat& x) { return format_rational(x); }
  static const char* mode_name() { return "rational"; }
};

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;
  static constexpr double kPruneTol = 1e-12;
  static constexpr double kFeasTol = 1e-9;
  static double from_rat(const Rat& r) { return to_double(r); }
  static double abs(double x) { return std::fabs(x); }
  static bool is_zero(double x) { return std::fabs(x) <= kPruneTol; }
  static bool negligible_mass(double x) { return std::fabs(x) < kPruneTol; }
  static bool mass_sums_to_one(double total) { return std::fabs(total - 1.0) <= kPruneTol; }
  static bool feasible_residual(double r) { return std::fabs(r) <= kFeasTol; }
  static std::string str(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
  }
  static const char* mode_name() { return "float"; }
};

}  // namespace geuler
