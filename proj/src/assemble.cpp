#include "aperispec/assemble.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "aperispec/errors.hpp"

namespace aperispec {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void assert_hermitian(const CMatrix& m, const std::string& what) {
  const double r = hermiticity_residual(m);
  if (r > 1e-12) {
    std::ostringstream os;
    os << what << " is not Hermitian (relative residual " << r << "); the range or coefficients violate (R1)/(R2)";
    throw NumericalError(os.str());
  }
}

}  // namespace

double hermiticity_residual(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

FiniteOperatorMatrix assemble_dirichlet(const Hamiltonian& H, const Configuration& xi, const std::vector<LatticePoint>& sites) {
  if (!(H.lattice() == xi.lattice())) throw DomainError("Hamiltonian and configuration live on different lattices");
  const int N = H.N();
  std::map<LatticePoint, Eigen::Index> index;
  for (std::size_t i = 0; i < sites.size(); ++i) index.emplace(sites[i], static_cast<Eigen::Index>(i));
  FiniteOperatorMatrix out;
  out.N = N;
  out.matrix = CMatrix::Zero(static_cast<Eigen::Index>(sites.size()) * N, static_cast<Eigen::Index>(sites.size()) * N);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const LatticePoint& x = sites[i];
    for (const auto& t : H.terms()) {
      const auto it = index.find(x - t.h);
      if (it == index.end()) continue;
      out.matrix.block(static_cast<Eigen::Index>(i) * N, it->second * N, N, N) += evaluate_coefficient(t.coef, xi, x);
    }
  }
  std::ostringstream os;
  os << "dirichlet sites=" << sites.size();
  out.meta = os.str();
  assert_hermitian(out.matrix, "Dirichlet section");
  return out;
}

FiniteOperatorMatrix assemble_dirichlet(const Hamiltonian& H, const Configuration& xi, double radius) {
  auto m = assemble_dirichlet(H, xi, cube_points(H.lattice(), radius));
  m.meta = "dirichlet radius=" + std::to_string(static_cast<std::int64_t>(std::floor(radius)));
  return m;
}

FiniteOperatorMatrix assemble_dirichlet_1d(const Hamiltonian& H, const Configuration& xi, std::int64_t first, std::int64_t count) {
  if (H.lattice().dim() != 1 || xi.dim() != 1) throw DomainError("one-dimensional window needs d = 1");
  if (count < 1) throw DomainError("window must contain at least one site");
  const int N = H.N();
  FiniteOperatorMatrix out;
  out.N = N;
  out.matrix = CMatrix::Zero(count * N, count * N);
  // Constant coefficients are evaluated once.
  std::vector<std::optional<CMatrix>> constants;
  for (const auto& t : H.terms())
    constants.push_back(t.coef.is_constant() ? std::optional<CMatrix>(std::get<ConstantCoef>(t.coef.kind).value) : std::nullopt);
  for (std::int64_t i = 0; i < count; ++i) {
    const LatticePoint x{first + i};
    for (std::size_t k = 0; k < H.terms().size(); ++k) {
      const std::int64_t j = i - H.terms()[k].h.n[0];
      if (j < 0 || j >= count) continue;
      out.matrix.block(i * N, j * N, N, N) +=
          constants[k] ? *constants[k] : evaluate_coefficient(H.terms()[k].coef, xi, x);
    }
  }
  out.meta = "dirichlet first=" + std::to_string(first) + " count=" + std::to_string(count);
  assert_hermitian(out.matrix, "Dirichlet section");
  return out;
}

BlochStencil::BlochStencil(const Hamiltonian& H, const Configuration& xi) : N_(H.N()) {
  if (H.lattice().dim() != 1 || xi.dim() != 1) throw DomainError("Bloch reduction is implemented for d = 1 only");
  const auto periods = xi.periods();
  if (periods.empty()) throw DomainError("Bloch reduction needs a periodic configuration");
  p_ = periods[0];
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, CMatrix> folded;
  for (std::int64_t x = 0; x < p_; ++x) {
    for (const auto& t : H.terms()) {
      const std::int64_t y_raw = x - t.h.n[0];
      const std::int64_t m = floor_div(y_raw, p_);
      const std::int64_t y = y_raw - m * p_;
      const CMatrix v = evaluate_coefficient(t.coef, xi, LatticePoint{x});
      auto [it, inserted] = folded.try_emplace({x, y, m}, v);
      if (!inserted) it->second += v;
    }
  }
  // Hermitian for every theta iff the (y, x, -m) entry is the adjoint of the (x, y, m) entry.
  for (const auto& [key, v] : folded) {
    const auto& [x, y, m] = key;
    const auto it = folded.find({y, x, -m});
    const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
    const double resid = it == folded.end() ? v.cwiseAbs().maxCoeff() : (it->second - v.adjoint()).cwiseAbs().maxCoeff();
    if (resid > 1e-12 * scale)
      throw NumericalError("Bloch matrix is not Hermitian: the range or coefficients violate (R1)/(R2)");
  }
  for (auto& [key, v] : folded) {
    const auto& [x, y, m] = key;
    if (v.imag().cwiseAbs().maxCoeff() != 0.0) real_ = false;
    entries_.push_back({x, y, m, std::move(v)});
  }
}

CMatrix BlochStencil::matrix(double theta) const {
  CMatrix out = CMatrix::Zero(p_ * N_, p_ * N_);
  for (const auto& e : entries_) {
    const double phase = -static_cast<double>(e.winding) * theta;
    const std::complex<double> w = e.winding == 0 ? std::complex<double>(1.0, 0.0) : std::polar(1.0, phase);
    out.block(e.x * N_, e.y * N_, N_, N_) += w * e.value;
  }
  return out;
}

FiniteOperatorMatrix assemble_bloch(const Hamiltonian& H, const Configuration& xi, double theta) {
  const BlochStencil st(H, xi);
  FiniteOperatorMatrix out;
  out.N = H.N();
  out.matrix = st.matrix(theta);
  std::ostringstream os;
  os.precision(17);
  os << "bloch p=" << st.period() << " theta=" << theta;
  out.meta = os.str();
  assert_hermitian(out.matrix, "Bloch matrix");
  return out;
}

}  // namespace aperispec
