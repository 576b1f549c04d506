#pragma once

#include "geuler/lp.hpp"
#include "geuler/measures.hpp"
#include "geuler/sqrt3.hpp"

#include <filesystem>
#include <string>

namespace geuler {

/// Plan document layout:
///   {"grid": ["p/q", ...], "times": ["p/q", ...], "arith": "rational"|"float",
///    "form": "full"|"reduced", "atoms": [{"path": [i, ...], "mass": ...}, ...]}
/// Rational masses serialize as "p/q" strings, float masses as numbers.
/// Atoms appear in the plan's stored (lexicographic) order, so the output is
/// deterministic.
template <class S>
std::string plan_to_json_string(const TransportPlan<S>& plan, int indent = 2);

/// Parses a plan document. The "arith" field must match the requested scalar
/// type; structural problems and mass inconsistencies surface as exceptions
/// with a description of the offending element.
template <class S>
TransportPlan<S> plan_from_json_string(const std::string& text);

template <class S>
void save_plan(const TransportPlan<S>& plan, const std::filesystem::path& path);

template <class S>
TransportPlan<S> load_plan(const std::filesystem::path& path);

/// {"rat": "p/q", "sqrt3": "r/s"} meaning p/q + (r/s)*sqrt(3).
std::string sqrt3_to_json_string(const Sqrt3Rat& value);
Sqrt3Rat sqrt3_from_json_string(const std::string& text);

/// Assembled transport LP with objective, rhs, constraint triplets, and the
/// instance metadata (grid, times, endpoint permutation, cost kind, form).
template <class S>
std::string lp_to_json_string(const MmotLp<S>& lp, int indent = 2);

extern template std::string plan_to_json_string<Rat>(const TransportPlan<Rat>&, int);
extern template std::string plan_to_json_string<double>(const TransportPlan<double>&, int);
extern template TransportPlan<Rat> plan_from_json_string<Rat>(const std::string&);
extern template TransportPlan<double> plan_from_json_string<double>(const std::string&);
extern template void save_plan<Rat>(const TransportPlan<Rat>&, const std::filesystem::path&);
extern template void save_plan<double>(const TransportPlan<double>&,
                                       const std::filesystem::path&);
extern template TransportPlan<Rat> load_plan<Rat>(const std::filesystem::path&);
extern template TransportPlan<double> load_plan<double>(const std::filesystem::path&);
extern template std::string lp_to_json_string<Rat>(const MmotLp<Rat>&, int);
extern template std::string lp_to_json_string<double>(const MmotLp<double>&, int);

}  // namespace geuler
