#include "aperispec/pattern.hpp"

#include <vector>

#include "aperispec/errors.hpp"

namespace aperispec {

std::size_t cube_size(int d, std::int64_t radius) {
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(2 * radius + 1);
  return n;
}

Word restrict_pattern(int d, std::int64_t big_radius, std::int64_t small_radius, const Word& pattern) {
  if (small_radius > big_radius || small_radius < 0) throw DomainError("restriction radius must not exceed the pattern radius");
  if (pattern.size() != cube_size(d, big_radius)) throw DomainError("pattern size does not match its radius");
  if (small_radius == big_radius) return pattern;
  const std::int64_t big_side = 2 * big_radius + 1;
  const std::int64_t small_side = 2 * small_radius + 1;
  const std::int64_t shift = big_radius - small_radius;
  Word out;
  out.reserve(cube_size(d, small_radius));
  std::vector<std::int64_t> idx(d, 0);
  while (true) {
    std::int64_t flat = 0;
    for (int i = 0; i < d; ++i) flat = flat * big_side + idx[i] + shift;
    out.push_back(pattern[static_cast<std::size_t>(flat)]);
    int k = d - 1;
    while (k >= 0 && idx[k] == small_side - 1) {
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
    ++idx[k];
  }
  return out;
}

PatternDictionary restrict_dictionary(int d, const PatternDictionary& dict, std::int64_t radius) {
  PatternDictionary out;
  out.radius = radius;
  out.sampled = dict.sampled;
  for (const auto& p : dict.patterns) out.patterns.insert(restrict_pattern(d, dict.radius, radius, p));
  return out;
}

bool restriction_consistent(int d, const PatternDictionary& big, const PatternDictionary& small) {
  if (small.radius > big.radius) return restriction_consistent(d, small, big);
  for (const auto& p : big.patterns)
    if (!small.contains(restrict_pattern(d, big.radius, small.radius, p))) return false;
  return true;
}

}  // namespace aperispec
