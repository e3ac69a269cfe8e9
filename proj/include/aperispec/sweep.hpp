#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aperispec/io.hpp"

namespace aperispec {

struct ExperimentSpec {
  enum class Family { Fibonacci, Kohmoto };

  /// Hamiltonian JSON, parsed on Z over the family's alphabet.
  io::json model;
  Alphabet alphabet = fibonacci_alphabet();
  Family family = Family::Fibonacci;
  int k_min = 0, k_max = 0, k_ref = 0;
  /// Kohmoto only.
  std::string alpha = "sqrt(2)-1";
  double phase = 0.0;
  int grid = 64;
  double tol = 1e-10;
  double r_max = 64.0;
  std::uint64_t seed = 1;
  /// Sampled (pattern, hop) pairs for the self-adjointness check of each generated subshift.
  std::size_t self_adjoint_samples = 256;

  /// Throws DomainError unless k_min < k_max < k_ref, grid >= 64 and r_max >= 8.
  void validate() const;
};

/// {"schema": 1, "model": ..., "alphabet"?: ..., "family": {...}, "spectrum": {"grid", "tol"}, "r_max", "seed"}.
ExperimentSpec parse_experiment(const io::json& j);

struct SweepRow {
  int k = 0;
  /// "p/q" for rotations, "F_k" for Fibonacci words.
  std::string approximant;
  std::int64_t period = 0;
  double d_subshift = 0.0;
  std::string d_subshift_exact;
  bool d_lower_bound = false;
  bool sampled = false;
  std::int64_t agreement_radius = 0;
  double d_spectral = 0.0;
  BoundCertificate certificate;
  double ratio = 0.0;
  bool pass = false;
  double wall_seconds = 0.0;
  /// Non-empty when the row was aborted; the numeric fields are then meaningless.
  std::string error;
  bool aborted() const { return !error.empty(); }
};

struct SweepSummary {
  std::string reference;
  std::int64_t reference_period = 0;
  std::size_t rows = 0, passed = 0, failed = 0, aborted = 0;
  /// Largest d_spectral / d_subshift^beta.
  double max_ratio = 0.0;
  /// Least-squares slope of log d_spectral against log d_subshift over rows with both positive.
  std::optional<double> slope;
  std::size_t slope_points = 0;
  bool d_subshift_nonincreasing = true;
  double wall_seconds = 0.0;
};

struct SweepResult {
  ExperimentSpec spec;
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

using SweepProgress = std::function<void(const SweepRow&)>;

SweepResult sweep_convergents(const ExperimentSpec& spec, const SweepProgress& progress = {});

/// Least-squares slope of y against x; nullopt for fewer than two points or constant x.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Fixed column set, header row first, numbers in %.17g. Contains no timing data.
std::string sweep_csv(const SweepResult& r);
/// Whitespace-separated columns for gnuplot; aborted rows are commented out.
std::string sweep_dat(const SweepResult& r);
io::json sweep_summary_json(const SweepResult& r);

}  // namespace aperispec
