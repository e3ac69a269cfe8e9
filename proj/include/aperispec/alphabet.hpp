#pragma once

#include <boost/rational.hpp>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace aperispec {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& q);

/// Best rational approximation of x with denominator <= max_den; throws DomainError
/// when no such fraction lies within `tol` of x.
Rational rational_from_double(double x, std::int64_t max_den = 1'000'000, double tol = 1e-12);

/// Finite label set with a metric d_A (stored exactly as rationals) and optional
/// per-label scalar values used by potentials. Labels are addressed by index (< 256).
class Alphabet {
 public:
  using Metric = std::vector<std::vector<Rational>>;

  /// Discrete metric, values 0, 1, 2, ... .
  explicit Alphabet(std::vector<std::string> labels);
  /// Checks every metric invariant exhaustively; throws AlphabetInvariantError naming the failure.
  Alphabet(std::vector<std::string> labels, Metric metric, std::vector<std::complex<double>> values = {});

  std::size_t size() const { return labels_.size(); }
  const std::string& label(int i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;
  const Rational& distance(int a, int b) const { return metric_[a][b]; }
  const Metric& metric() const { return metric_; }
  bool is_discrete() const;
  std::complex<double> value(int i) const { return values_.at(i); }
  const std::vector<std::complex<double>>& values() const { return values_; }
  /// True when every label is a single character, so words print as plain strings.
  bool single_char_labels() const;

  /// Render a label-index string ("\x00\x01...") for humans.
  std::string render(const std::string& indices) const;
  /// Inverse of render; accepts concatenated single-char labels.
  std::string parse_word(const std::string& text) const;

  bool operator==(const Alphabet& o) const { return labels_ == o.labels_ && metric_ == o.metric_; }

 private:
  std::vector<std::string> labels_;
  Metric metric_;
  std::vector<std::complex<double>> values_;
};

/// Exhaustive check of symmetry, zero diagonal, off-diagonal positivity and the triangle inequality.
void validate_metric(const Alphabet::Metric& metric);

}  // namespace aperispec
