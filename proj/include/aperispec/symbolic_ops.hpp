#pragma once

#include <cstdint>
#include <utility>

#include "aperispec/alphabet.hpp"
#include "aperispec/circle.hpp"
#include "aperispec/configuration.hpp"
#include "aperispec/subshift.hpp"

namespace aperispec {

/// How a distance limited by the scan radius is reported.
inline constexpr const char* kFeasibilityConvention =
    "infimum of 1/r over feasible radii; feasibility failing just beyond shell n reports 1/n; "
    "feasibility persisting through r_max reports 1/r_max with lower_bound set";

struct ConfigDistance {
  Rational value{1};
  /// True when the scan reached r_max still feasible: the true distance is <= value.
  bool lower_bound = false;
  /// Letters of both configurations coincide on Q_{r_max}.
  bool agree_on_cube = false;
};

struct SubshiftDistance {
  Rational value{1};
  bool lower_bound = false;
  /// Largest shell on which the dictionaries coincide (0 when they already differ at shell 1).
  std::int64_t agreement_radius = 0;
  bool sampled = false;
};

/// (tau^h xi)(x) = xi(x - h).
Configuration shift(const Configuration& xi, const LatticePoint& h);

/// min{inf{1/r : d_A(xi(x), eta(x)) <= 1/r on Q_r}, 1}, scanned exactly up to shell floor(r_max).
ConfigDistance config_distance(const Configuration& xi, const Configuration& eta, double r_max);

/// Hausdorff distance of two subshifts over a discrete alphabet: 1/n for the first shell n at
/// which their pattern dictionaries differ (1 when n = 1).
SubshiftDistance subshift_distance(const Subshift& A, const Subshift& B, double r_max,
                                   const DictionaryOptions& opts = {});

/// Rotation coding with [0, 1-alpha) -> label 0 and [1-alpha, 1) -> label 1 of `alphabet`.
Configuration kohmoto_configuration(const Alpha& alpha, double phase, const Alphabet& alphabet);
Configuration kohmoto_configuration(double alpha, double phase, const Alphabet& alphabet);

/// a -> ab, b -> a on the alphabet {a, b}.
Substitution fibonacci_substitution();
Alphabet fibonacci_alphabet();
/// Two-sided fixed point b.a of the Fibonacci substitution.
Configuration fibonacci_configuration();
/// F_k with F_1 = F_2 = 1.
std::int64_t fibonacci_number(int k);
/// Word of length F_k: sigma^{k-2}(a), with k = 1 giving "b".
Word fibonacci_word(int k);

}  // namespace aperispec
