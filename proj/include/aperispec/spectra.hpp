#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aperispec/assemble.hpp"

namespace aperispec {

using Interval = std::pair<double, double>;

/// Finite union of disjoint closed intervals, sorted.
struct SpectrumSet {
  std::vector<Interval> bands;

  struct Meta {
    int grid = 0;
    double tol = 0.0;
    std::string model;
    std::int64_t period = 0;
    /// Per-band intervals before merging.
    std::vector<Interval> raw_bands;
    /// Eigensolves spent on edge refinement beyond the grid.
    std::size_t refinement_solves = 0;
  } meta;

  /// Sorts and merges intervals whose gap is below merge_gap; throws DomainError on a<b violations.
  static SpectrumSet from_intervals(std::vector<Interval> intervals, double merge_gap = 1e-12);
  /// Degenerate intervals at each point.
  static SpectrumSet from_points(const std::vector<double>& points);
  bool contains(double x, double slack = 0.0) const;
  double distance_to(double x) const;
  double min() const { return bands.front().first; }
  double max() const { return bands.back().second; }
};

/// Ascending eigenvalues of a Hermitian matrix. Throws DomainError when the relative
/// Hermiticity defect exceeds 1e-10 and NumericalError on solver failure.
std::vector<double> hermitian_eigenvalues(const CMatrix& A);
std::vector<double> hermitian_eigenvalues(const FiniteOperatorMatrix& A);

struct EigenPairs {
  Eigen::VectorXd values;
  CMatrix vectors;
};
EigenPairs hermitian_eigenpairs(const CMatrix& A);

struct BandStructure {
  SpectrumSet spectrum;
  /// Grid angles actually solved and their ascending eigenvalues (the full grid for complex models).
  std::vector<double> thetas;
  std::vector<std::vector<double>> energies;
};

struct SpectrumOptions {
  int grid = 64;
  double tol = 1e-10;
  int max_refine_iterations = 60;
};

/// Floquet-Bloch band spectrum of a periodic configuration on Z.
BandStructure periodic_band_structure(const Hamiltonian& H, const Configuration& xi, const SpectrumOptions& opts);
SpectrumSet periodic_spectrum(const Hamiltonian& H, const Configuration& xi, int grid, double tol);

/// Exact Hausdorff distance between two interval unions.
double hausdorff_distance_sets(const SpectrumSet& S1, const SpectrumSet& S2);

struct NormDistanceCheck {
  double dH = 0.0;
  double normdiff = 0.0;
  bool holds = true;
};

/// d_H(sigma(A), sigma(B)) against ||A - B||; holds when dH <= normdiff + 1e-10.
NormDistanceCheck norm_distance_spectral_bound(const FiniteOperatorMatrix& A, const FiniteOperatorMatrix& B);
NormDistanceCheck norm_distance_spectral_bound(const CMatrix& A, const CMatrix& B);

/// Largest |eigenvalue| of a Hermitian matrix.
double hermitian_norm(const CMatrix& A);

}  // namespace aperispec
