#include "aperispec/lattice.hpp"

#include <cmath>
#include <cstdlib>

#include "aperispec/errors.hpp"

namespace aperispec {

LatticePoint LatticePoint::operator+(const LatticePoint& o) const {
  LatticePoint r = *this;
  for (std::size_t i = 0; i < n.size(); ++i) r.n[i] += o.n[i];
  return r;
}

LatticePoint LatticePoint::operator-(const LatticePoint& o) const {
  LatticePoint r = *this;
  for (std::size_t i = 0; i < n.size(); ++i) r.n[i] -= o.n[i];
  return r;
}

LatticePoint LatticePoint::operator-() const {
  LatticePoint r = *this;
  for (auto& c : r.n) c = -c;
  return r;
}

std::int64_t max_norm(const LatticePoint& p) {
  std::int64_t m = 0;
  for (auto c : p.n) m = std::max<std::int64_t>(m, std::llabs(c));
  return m;
}

double max_operator_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

Lattice::Lattice(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
  if (basis_.rows() == 0 || basis_.rows() != basis_.cols())
    throw DomainError("lattice basis must be a non-empty square matrix");
  if (!basis_.allFinite()) throw DomainError("lattice basis has non-finite entries");
  const double det = basis_.determinant();
  if (!(std::abs(det) > 1e-12)) throw DomainError("lattice basis is singular (|det M| <= 1e-12)");
  inverse_ = basis_.inverse();
  norm_max_ = max_operator_norm(basis_);
  inverse_norm_max_ = max_operator_norm(inverse_);
}

Lattice Lattice::integer(int d) {
  if (d < 1) throw DomainError("lattice dimension must be positive");
  return Lattice(Eigen::MatrixXd::Identity(d, d));
}

bool Lattice::is_identity() const { return basis_.isIdentity(0.0); }

Eigen::VectorXd Lattice::embed(const LatticePoint& p) const {
  Eigen::VectorXd v(p.dim());
  for (int i = 0; i < p.dim(); ++i) v[i] = static_cast<double>(p.n[i]);
  return basis_ * v;
}

namespace {

void enumerate_box(int d, std::int64_t radius, std::vector<LatticePoint>& out) {
  std::vector<std::int64_t> cur(d, -radius);
  while (true) {
    out.emplace_back(cur);
    int k = d - 1;
    while (k >= 0 && cur[k] == radius) {
      cur[k] = -radius;
      --k;
    }
    if (k < 0) break;
    ++cur[k];
  }
}

}  // namespace

std::vector<LatticePoint> cube_points(const Lattice& lat, double r) {
  if (!(r > 0.0)) throw DomainError("cube radius must be positive");
  const auto radius = static_cast<std::int64_t>(std::floor(r));
  std::vector<LatticePoint> out;
  enumerate_box(lat.dim(), radius, out);
  return out;
}

std::vector<LatticePoint> shell_points(int d, std::int64_t shell) {
  std::vector<LatticePoint> box;
  enumerate_box(d, shell, box);
  if (shell == 0) return box;
  std::vector<LatticePoint> out;
  for (auto& p : box)
    if (max_norm(p) == shell) out.push_back(std::move(p));
  return out;
}

std::vector<double> cube_breakpoints(const Lattice&, double r_max) {
  std::vector<double> out;
  for (std::int64_t k = 1; static_cast<double>(k) <= r_max; ++k) out.push_back(static_cast<double>(k));
  return out;
}

}  // namespace aperispec
