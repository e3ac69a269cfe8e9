#pragma once

#include <string>
#include <vector>

#include "aperispec/operators.hpp"

namespace aperispec {

/// Finite Hermitian section of H acting on l^2(sites) (x) C^N.
struct FiniteOperatorMatrix {
  CMatrix matrix;
  int N = 1;
  /// Window description or "bloch p=<period> theta=<value>".
  std::string meta;
  Eigen::Index size() const { return matrix.rows(); }
};

/// Relative Hermiticity defect max|A - A^*| / max(1, max|A|).
double hermiticity_residual(const CMatrix& m);

/// Entry ((x,i),(y,j)) = [t_h at x]_{ij} for y = x - h inside the window; zero boundary conditions.
FiniteOperatorMatrix assemble_dirichlet(const Hamiltonian& H, const Configuration& xi, const std::vector<LatticePoint>& sites);
/// Window Q_radius.
FiniteOperatorMatrix assemble_dirichlet(const Hamiltonian& H, const Configuration& xi, double radius);
/// One-dimensional window {first, ..., first + count - 1}.
FiniteOperatorMatrix assemble_dirichlet_1d(const Hamiltonian& H, const Configuration& xi, std::int64_t first, std::int64_t count);

/// Floquet-Bloch data of a periodic configuration on Z: the hop terms folded into one period
/// with their winding numbers, so each theta costs one pass over the stencil.
class BlochStencil {
 public:
  BlochStencil(const Hamiltonian& H, const Configuration& xi);

  std::int64_t period() const { return p_; }
  int N() const { return N_; }
  /// All folded values are real, so the spectrum at theta equals the spectrum at -theta.
  bool real_coefficients() const { return real_; }
  CMatrix matrix(double theta) const;

 private:
  struct Entry {
    std::int64_t x, y, winding;
    CMatrix value;
  };
  std::int64_t p_;
  int N_;
  bool real_ = true;
  std::vector<Entry> entries_;
};

/// pN x pN matrix with block (x,y) = sum over x - h = y + m p of t_h(x) e^{-i m theta}.
FiniteOperatorMatrix assemble_bloch(const Hamiltonian& H, const Configuration& xi, double theta);

}  // namespace aperispec
