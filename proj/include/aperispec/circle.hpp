#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aperispec {

using u128 = unsigned __int128;

struct Fraction {
  std::int64_t p = 0;
  std::int64_t q = 1;
  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
  std::string to_string() const { return std::to_string(p) + "/" + std::to_string(q); }
  bool operator==(const Fraction&) const = default;
};

/// Rotation slope in (0,1). Rationals are kept exactly; everything else is a
/// 128-bit fixed-point fraction, so n*alpha mod 1 is exact modular arithmetic.
class Alpha {
 public:
  static Alpha rational(std::int64_t p, std::int64_t q);
  static Alpha fixed(u128 bits);
  /// "p/q" gives a rational; any other expression (numbers, + - * /, parentheses,
  /// sqrt(...)) is evaluated with 100 significant digits and stored as fixed point.
  static Alpha parse(const std::string& expr);
  /// Small-denominator rationals (q <= 10^4, |x - p/q| < 1e-14) become exact; others fixed point.
  static Alpha from_double(double x);

  bool is_rational() const { return rational_; }
  Fraction fraction() const { return {p_, q_}; }
  /// floor(alpha * 2^128) for fixed point; the rounded value for rationals.
  u128 bits() const { return bits_; }
  double to_double() const;
  std::string to_string() const;

 private:
  bool rational_ = false;
  std::int64_t p_ = 0, q_ = 1;
  u128 bits_ = 0;
};

/// First k_max continued-fraction convergents p/q of alpha (the leading 0/1 omitted).
/// Stops early for rationals and when q would exceed 2^62.
std::vector<Fraction> convergents(const Alpha& alpha, int k_max);

/// A point of the circle described as constant + alpha_coeff * alpha (mod 1).
struct CirclePoint {
  double constant = 0.0;
  int alpha_coeff = 0;
};

/// Coding of the rotation n -> n*alpha + phase (mod 1) by a partition of the circle into
/// half-open intervals [start_i, start_{i+1}), each carrying a label index.
class CircleCoding {
 public:
  CircleCoding(Alpha alpha, double phase, std::vector<CirclePoint> starts, std::vector<int> labels);

  int letter_at(std::int64_t n) const;
  const Alpha& alpha() const { return alpha_; }
  double phase() const { return phase_; }
  const std::vector<CirclePoint>& starts() const { return starts_; }
  const std::vector<int>& labels() const { return labels_; }
  /// Period q for rational slopes, 0 otherwise.
  std::int64_t period() const { return alpha_.is_rational() ? alpha_.fraction().q : 0; }
  /// Two intervals of lengths 1-alpha and alpha (a Sturmian coding for irrational alpha).
  bool is_two_interval_sturmian() const;

 private:
  u128 to_units(const CirclePoint& pt) const;
  u128 reduce(u128 v) const;

  Alpha alpha_;
  double phase_;
  std::vector<CirclePoint> starts_;
  std::vector<int> labels_;
  u128 modulus_ = 0;  // 0 encodes 2^128
  u128 offset_ = 0;
  std::vector<u128> cut_units_;
  std::vector<int> cut_labels_;
};

}  // namespace aperispec
