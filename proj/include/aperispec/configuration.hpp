#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "aperispec/alphabet.hpp"
#include "aperispec/circle.hpp"
#include "aperispec/lattice.hpp"

namespace aperispec {

/// Label indices stored in a byte string; one byte per lattice point.
using Word = std::string;

/// Primitive substitution with a two-sided fixed point of sigma^power seeded at left.right.
class Substitution {
 public:
  /// rules[c] is the image of label c. Throws DomainError when the rules are not primitive,
  /// never grow, or no power up to 64 fixes the seed.
  Substitution(std::vector<Word> rules, int left, int right);

  const std::vector<Word>& rules() const { return rules_; }
  int left() const { return left_; }
  int right() const { return right_; }
  /// Smallest k >= 1 with sigma^k(left) ending in left and sigma^k(right) starting with right.
  int power() const { return power_; }
  Word apply(const Word& w) const;
  /// sigma^n(word).
  Word iterate(const Word& w, int n) const;
  /// Letter at integer position n of the fixed point (right half starts at 0).
  int letter_at(std::int64_t n) const;
  /// Incidence matrix entry (i,j) = number of i in rules[j].
  std::vector<std::vector<std::int64_t>> incidence() const;

 private:
  int descend(int letter, int level, std::int64_t index) const;

  std::vector<Word> rules_;
  int left_, right_;
  int power_ = 1;
  // lengths_[j][c] = |sigma^j(c)|, saturated at 2^62.
  std::vector<std::vector<std::int64_t>> lengths_;
};

bool is_primitive(const std::vector<std::vector<std::int64_t>>& incidence);

struct PeriodicData {
  std::vector<std::int64_t> periods;
  /// Block over [0,p_1) x ... x [0,p_d), first coordinate slowest.
  Word block;
};

/// A configuration xi : L -> A, optionally shifted: letter_at(x) = base(x - offset).
class Configuration {
 public:
  enum class Kind { Periodic, Substitution, Rotation };

  static Configuration periodic(Lattice lat, Alphabet alphabet, std::vector<std::int64_t> periods, Word block);
  static Configuration substitution(Alphabet alphabet, Substitution sub);
  static Configuration rotation(Alphabet alphabet, CircleCoding coding);

  Kind kind() const { return kind_; }
  const Lattice& lattice() const { return *lattice_; }
  const Alphabet& alphabet() const { return *alphabet_; }
  const LatticePoint& offset() const { return offset_; }
  int dim() const { return lattice_->dim(); }

  int letter_at(const LatticePoint& x) const;
  int letter_at_1d(std::int64_t n) const;

  /// Pattern on center + Q_radius in canonical cube order.
  Word window(const LatticePoint& center, std::int64_t radius) const;

  /// Configuration with letter_at(x) = this->letter_at(x - h).
  Configuration shifted(const LatticePoint& h) const;

  const PeriodicData& periodic_data() const;
  const Substitution& substitution_data() const;
  const CircleCoding& rotation_data() const;
  /// Period vector for periodic configurations and rational rotations; empty otherwise.
  std::vector<std::int64_t> periods() const;
  /// One period of a 1D periodic configuration read from position 0 (offset applied).
  Word period_word() const;

 private:
  Configuration() = default;
  int base_letter(const LatticePoint& x) const;
  int base_letter_1d(std::int64_t n) const;

  Kind kind_ = Kind::Periodic;
  std::shared_ptr<const Lattice> lattice_;
  std::shared_ptr<const Alphabet> alphabet_;
  LatticePoint offset_;
  std::shared_ptr<const PeriodicData> periodic_;
  std::shared_ptr<const Substitution> substitution_;
  std::shared_ptr<const CircleCoding> rotation_;
};

/// Periodic configuration on Z with the given one-period word.
Configuration periodic_word(const Alphabet& alphabet, const Word& word);

}  // namespace aperispec
