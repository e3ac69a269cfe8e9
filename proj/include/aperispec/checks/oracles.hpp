#pragma once

#include <cstdint>
#include <vector>

#include "aperispec/alphabet.hpp"
#include "aperispec/configuration.hpp"
#include "aperispec/operators.hpp"
#include "aperispec/spectra.hpp"

// Reference implementations written directly from the definitions, sharing no code path with
// the library routines they check.
namespace aperispec::oracles {

struct DistanceValue {
  Rational value{1};
  bool lower_bound = false;
};

/// Configuration distance on Z by enumerating candidate suprema of the feasible radii
/// (integers and reciprocals of metric values) and testing each one point by point.
DistanceValue config_distance_1d(const Alphabet& alphabet, const Word& xi_period, const Word& eta_period, double r_max);

/// Hausdorff distance of two periodic orbits on Z, taken over every pair of orbit elements
/// with the configuration distance computed by letter comparison.
DistanceValue periodic_subshift_hausdorff(const Alphabet& alphabet, const Word& a_period, const Word& b_period,
                                          std::int64_t r_max);

/// sup-inf distance between two interval unions, each discretized with spacing h.
double hausdorff_sampled(const SpectrumSet& S1, const SpectrumSet& S2, double h);

/// Largest singular value by power iteration on A^* A.
double power_iteration_norm(const CMatrix& A, int iterations = 500);

/// Bands of a 1D periodic operator from a dense theta grid without edge refinement, built
/// from the Dirichlet supercell of length p with the boundary hops closed by e^{-i theta}.
std::vector<Interval> dense_grid_bands(const Hamiltonian& H, const Word& period_word, const Alphabet& alphabet,
                                       int grid);

/// Central finite difference of the partition bump along axis j.
double partition_gradient_fd(const Lattice& lat, const Eigen::VectorXd& x, int j, double h = 1e-7);

}  // namespace aperispec::oracles
