#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "aperispec/configuration.hpp"

namespace aperispec {

/// Restriction of a configuration to Q_radius, stored in canonical cube order.
struct Pattern {
  std::int64_t radius = 0;
  Word entries;
  bool operator==(const Pattern&) const = default;
  auto operator<=>(const Pattern&) const = default;
};

struct PatternDictionary {
  std::int64_t radius = 0;
  std::set<Word> patterns;
  /// Built from a finite orbit sample rather than a certified enumeration.
  bool sampled = false;

  std::size_t size() const { return patterns.size(); }
  bool contains(const Word& w) const { return patterns.count(w) > 0; }
};

/// Number of points in Q_radius for dimension d.
std::size_t cube_size(int d, std::int64_t radius);

/// Restrict a radius-R pattern to the centered radius-r sub-cube (r <= R).
Word restrict_pattern(int d, std::int64_t big_radius, std::int64_t small_radius, const Word& pattern);

/// The dictionary restricted to a smaller radius.
PatternDictionary restrict_dictionary(int d, const PatternDictionary& dict, std::int64_t radius);

/// Restriction consistency: every pattern of `big` restricts into `small`.
bool restriction_consistent(int d, const PatternDictionary& big, const PatternDictionary& small);

}  // namespace aperispec
