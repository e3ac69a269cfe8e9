#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace aperispec {

/// A point of the lattice M Z^d, stored by its integer coordinates n (the point is M n).
struct LatticePoint {
  std::vector<std::int64_t> n;

  LatticePoint() = default;
  explicit LatticePoint(std::vector<std::int64_t> coords) : n(std::move(coords)) {}
  LatticePoint(std::initializer_list<std::int64_t> coords) : n(coords) {}

  static LatticePoint origin(int d) { return LatticePoint(std::vector<std::int64_t>(d, 0)); }

  int dim() const { return static_cast<int>(n.size()); }
  std::int64_t operator[](int i) const { return n[i]; }

  LatticePoint operator+(const LatticePoint& o) const;
  LatticePoint operator-(const LatticePoint& o) const;
  LatticePoint operator-() const;
  auto operator<=>(const LatticePoint&) const = default;
};

/// Integer max-norm |n|_max; Q_r membership is |n|_max <= r.
std::int64_t max_norm(const LatticePoint& p);

/// Operator norm induced by the max-norm: maximum absolute row sum.
double max_operator_norm(const Eigen::MatrixXd& m);

class Lattice {
 public:
  /// Throws DomainError when the basis is not square or |det M| <= 1e-12.
  explicit Lattice(Eigen::MatrixXd basis);
  static Lattice integer(int d);

  int dim() const { return static_cast<int>(basis_.rows()); }
  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::MatrixXd& inverse() const { return inverse_; }
  double basis_norm_max() const { return norm_max_; }
  double inverse_norm_max() const { return inverse_norm_max_; }
  /// ||M^{-1}||_max ||M||_max, always >= 1.
  double distortion() const { return norm_max_ * inverse_norm_max_; }
  bool is_identity() const;

  Eigen::VectorXd embed(const LatticePoint& p) const;
  double euclidean_length(const LatticePoint& p) const { return embed(p).norm(); }

  bool operator==(const Lattice& o) const { return basis_ == o.basis_; }

 private:
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd inverse_;
  double norm_max_ = 1.0;
  double inverse_norm_max_ = 1.0;
};

/// Q_r ∩ L in lexicographic order (first coordinate slowest). Throws DomainError for r <= 0.
std::vector<LatticePoint> cube_points(const Lattice& lat, double r);

/// Points with |n|_max == shell exactly.
std::vector<LatticePoint> shell_points(int d, std::int64_t shell);

/// Radii at which Q_r ∩ L changes: the integers 1..floor(r_max).
std::vector<double> cube_breakpoints(const Lattice& lat, double r_max);

}  // namespace aperispec
