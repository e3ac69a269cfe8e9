#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aperispec/configuration.hpp"
#include "aperispec/lattice.hpp"
#include "aperispec/pattern.hpp"
#include "aperispec/subshift.hpp"

namespace aperispec {

using CMatrix = Eigen::MatrixXcd;

/// Spectral norm (largest singular value); |z| for 1x1.
double op_norm(const CMatrix& m);

struct ConstantCoef {
  CMatrix value;
};

/// Value read from the pattern of radius key_radius around the site, keyed in canonical cube order.
struct LookupCoef {
  std::int64_t key_radius = 0;
  std::map<Word, CMatrix> table;
};

struct CoefficientFn {
  std::variant<ConstantCoef, LookupCoef> kind;
  /// Declared Hölder constant C_t >= 1.
  double C_t = 1.0;
  /// Declared radius of influence R_t >= 1.
  double R_t = 1.0;

  static CoefficientFn constant(CMatrix value, double C_t = 1.0, double R_t = 1.0);
  static CoefficientFn constant(std::complex<double> value, double C_t = 1.0, double R_t = 1.0);
  /// R_t defaults to max(1, key_radius).
  static CoefficientFn lookup(std::int64_t key_radius, std::map<Word, CMatrix> table, double C_t = 1.0, double R_t = 0.0);

  bool is_constant() const { return std::holds_alternative<ConstantCoef>(kind); }
  std::int64_t key_radius() const;
  int N() const;
  /// ||t||_inf: the largest operator norm over all stored values.
  double sup_norm() const;
  /// Value for a key pattern of radius key_radius().
  const CMatrix& at_key(const Word& key) const;
};

/// t evaluated at site x of xi: the table entry for the pattern of xi around x.
CMatrix evaluate_coefficient(const CoefficientFn& c, const Configuration& xi, const LatticePoint& x);

/// t evaluated at `site` of a pattern of radius `rho` centered at the origin.
CMatrix evaluate_coefficient_on_pattern(const CoefficientFn& c, int d, std::int64_t rho, const Word& pattern,
                                        const LatticePoint& site);

struct HopTerm {
  LatticePoint h;
  CoefficientFn coef;
};

/// H_xi psi(x) = sum_h t_h(tau^{-x} xi) psi(x - h) with a common Hölder exponent beta.
class Hamiltonian {
 public:
  Hamiltonian(Lattice lat, int N, double beta, std::vector<HopTerm> terms);

  const Lattice& lattice() const { return lattice_; }
  int N() const { return N_; }
  double beta() const { return beta_; }
  const std::vector<HopTerm>& terms() const { return terms_; }
  /// max(1, max R_t).
  double R_H() const { return R_H_; }
  /// max(1, max C_t).
  double C_hop() const { return C_hop_; }
  /// Largest |h|_max over the range (0 for an empty range).
  std::int64_t max_hop() const;
  /// Pattern radius that resolves every coefficient at every site x - h of the range.
  std::int64_t context_radius() const;
  const HopTerm* find(const LatticePoint& h) const;
  /// (R1): the range is symmetric.
  bool range_symmetric() const;
  Hamiltonian with_beta(double beta) const { return Hamiltonian(lattice_, N_, beta, terms_); }

 private:
  Lattice lattice_;
  int N_;
  double beta_;
  std::vector<HopTerm> terms_;
  double R_H_ = 1.0;
  double C_hop_ = 1.0;
};

/// sum_h ||t_h||_inf (1 + |M h|^2)^{beta/2}; beta_override replaces the model exponent.
double schur_norm(const Hamiltonian& H, std::optional<double> beta_override = std::nullopt);

struct SelfAdjointReport {
  bool r1 = true;
  bool r2 = true;
  std::size_t checked = 0;
  std::vector<std::string> violations;
  bool passed() const { return r1 && r2; }
};

/// Checks (R1) exactly and (R2) on n_samples (pattern, h) pairs drawn from S's dictionary at
/// the context radius; exhaustive when n_samples covers every pair.
SelfAdjointReport verify_self_adjoint(const Hamiltonian& H, const Subshift& S, std::size_t n_samples,
                                      std::uint64_t seed = 1);

/// max(1, max over pattern pairs of ||t(p) - t(p')||_op), divided by (max_y d_A)^beta for
/// non-discrete metrics. `dict` must have radius >= the coefficient's key radius.
double minimal_hoelder_constant(const CoefficientFn& c, const Alphabet& alphabet, const PatternDictionary& dict,
                                double beta = 1.0);

/// Keeps the hops with |h|_max <= s.
Hamiltonian truncate_range(const Hamiltonian& H, double s);

/// Scalar comparison operator with t_{h,beta} = (1 + |h|^2)^{beta/2} ||t_h||_op.
Hamiltonian comparison_operator_beta(const Hamiltonian& H);
/// Scalar constant-coefficient operator with hops ||t_h||_inf.
Hamiltonian comparison_operator_infty(const Hamiltonian& H);

/// Schrödinger operator: unit hops to the 2d nearest neighbours plus on-site lambda * value(label).
Hamiltonian schrodinger_hamiltonian(const Lattice& lat, const Alphabet& alphabet, double lambda, double beta = 1.0);

/// Constant hops t_h = |h|^{-(beta+2)} for 0 < |h| <= h_max on Z, each declared with R_t = |h|.
Hamiltonian synthetic_long_range(double beta, std::int64_t h_max);

}  // namespace aperispec
