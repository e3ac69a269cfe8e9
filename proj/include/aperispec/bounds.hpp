#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aperispec/operators.hpp"
#include "aperispec/partition.hpp"

namespace aperispec {

/// 16 * Noverlap * max{||M^{-1}||_max ||M||_max, C_L, 1}.
double cdl_constant(const PartitionConstants& pc, const Lattice& lat);

struct BoundConstants {
  double C_L = 0.0;
  std::int64_t Noverlap = 0;
  double C_dL = 0.0;
  double C_hop = 0.0;
  double schur_beta = 0.0;
  double R_H = 0.0;
  double beta = 0.0;
  std::optional<double> C_H;
};

struct BoundCertificate {
  /// "finite-range", "infinite-range" or "norm-fallback".
  std::string theorem;
  BoundConstants constants;
  double d_subshift = 0.0;
  /// d_subshift is only an upper bound 1/r_max on the true distance.
  bool d_lower_bound = false;
  /// Closed-form value of the theorem's bound.
  double bound = 0.0;
  /// 2 ||H||_beta, valid unconditionally.
  double fallback = 0.0;
  /// min(bound, fallback).
  double effective = 0.0;
  std::string partition;
  std::string feasibility_convention;
  std::string inputs;
  /// FNV-1a digest of the canonical certificate text (all fields above).
  std::string digest;
};

/// Canonical text over which the digest is taken.
std::string certificate_canonical_text(const BoundCertificate& c);
std::string fnv1a_hex(const std::string& text);

/// C_dL * C_hop * ||H||_beta * R_H^beta * d_sub^beta.
BoundCertificate finite_range_bound(const Hamiltonian& H, double d_sub, const PartitionConstants& pc,
                                    bool d_lower_bound = false, const std::string& inputs = "");

/// 2 * C_dL * ||H||_beta * (C_H^beta + C_hop) * d_sub^beta after checking R_{H|s} <= C_H s for every
/// s in `radii` (default: the integers 1 .. max hop + 1). Throws CertificateRefusedError naming s.
BoundCertificate infinite_range_bound(const Hamiltonian& H, double C_H, double d_sub, const PartitionConstants& pc,
                                      bool d_lower_bound = false, const std::string& inputs = "",
                                      std::vector<double> radii = {});

/// 16 Noverlap max{C_L, 1} / (2^beta (r - R~)^beta) * C_hop ||H||_beta with
/// R~ = R_H + ||M^{-1}||_max ||M||_max + 1; requires r > R~.
double resolvent_gap_threshold(const Hamiltonian& H, double r, const PartitionConstants& pc, const Lattice& lat);

/// 2 ||H||_beta.
double norm_fallback_bound(const Hamiltonian& H);

/// Certificate for the unconditional bound alone.
BoundCertificate norm_fallback_certificate(const Hamiltonian& H, double d_sub, const PartitionConstants& pc,
                                           bool d_lower_bound = false, const std::string& inputs = "");

}  // namespace aperispec
