#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "aperispec/kernels.hpp"
#include "aperispec/lattice.hpp"

namespace aperispec {

/// Trapezoid phi(t): 1 for |t| <= 1/2, linear down to 0 at |t| = 2/3.
double trapezoid(double t);
/// One-dimensional normalized factor g(u) = phi(u) / sum_m phi(u - m).
double partition_factor(double u);

/// Normalized bump qp(x) = prod_j g((M^{-1} x)_j), supported in Q_{2/3} and summing to 1 over L.
double partition_bump(const Lattice& lat, const Eigen::VectorXd& x);
/// Sum over z in L of qp(x - z).
double partition_sum(const Lattice& lat, const Eigen::VectorXd& x);
/// Euclidean gradient of qp at x (right-sided derivatives at kinks).
Eigen::VectorXd partition_gradient(const Lattice& lat, const Eigen::VectorXd& x);

struct PartitionOptions {
  double grid_step = 1e-4;
  /// Step used for d >= 3, where the full-resolution grid is out of reach.
  double coarse_step = 1e-2;
  double inflation = 0.01;
  kernels::Path path = kernels::default_path();
};

struct PartitionConstants {
  /// Lipschitz constant used by certificates (analytic, or grid maximum times 1 + inflation).
  double C_L = 0.0;
  /// Grid maximum of |grad qp| before inflation (equal to C_L when analytic).
  double C_L_sampled = 0.0;
  bool analytic = false;
  double grid_step = 0.0;
  std::int64_t Noverlap = 0;
  double plateau = 0.5;
  double support = 2.0 / 3.0;
  std::string description;
};

/// Number of translates z + M(-2/3, 2/3)^d whose support meets a given one.
std::int64_t overlap_count(const Lattice& lat);

/// Grid maximum of the Euclidean gradient norm of qp, including one-sided derivatives at kinks.
double sampled_lipschitz_constant(const Lattice& lat, double step, kernels::Path path = kernels::default_path());

PartitionConstants partition_constants(const Lattice& lat, const PartitionOptions& opts = {});

}  // namespace aperispec
