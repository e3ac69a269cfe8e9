#include "aperispec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "aperispec/errors.hpp"
#include "aperispec/kernels.hpp"
#include "aperispec/parallel.hpp"

namespace aperispec {

SpectrumSet SpectrumSet::from_intervals(std::vector<Interval> intervals, double merge_gap) {
  if (intervals.empty()) throw DomainError("spectrum set must be non-empty");
  for (const auto& [a, b] : intervals)
    if (!std::isfinite(a) || !std::isfinite(b) || a > b) throw DomainError("spectrum intervals need finite a <= b");
  std::sort(intervals.begin(), intervals.end());
  SpectrumSet s;
  for (const auto& iv : intervals) {
    if (!s.bands.empty() && iv.first - s.bands.back().second < merge_gap) {
      s.bands.back().second = std::max(s.bands.back().second, iv.second);
    } else {
      s.bands.push_back(iv);
    }
  }
  s.meta.raw_bands = std::move(intervals);
  return s;
}

SpectrumSet SpectrumSet::from_points(const std::vector<double>& points) {
  std::vector<Interval> iv;
  for (double p : points) iv.emplace_back(p, p);
  return from_intervals(std::move(iv), 0.0);
}

double SpectrumSet::distance_to(double x) const {
  const auto it = std::lower_bound(bands.begin(), bands.end(), x,
                                   [](const Interval& iv, double v) { return iv.second < v; });
  double d = std::numeric_limits<double>::infinity();
  if (it != bands.end()) d = std::min(d, it->first <= x ? 0.0 : it->first - x);
  if (it != bands.begin()) d = std::min(d, x - std::prev(it)->second);
  return d;
}

bool SpectrumSet::contains(double x, double slack) const { return distance_to(x) <= slack; }

std::vector<double> hermitian_eigenvalues(const CMatrix& A) {
  if (A.rows() != A.cols()) throw DomainError("eigenvalue problem needs a square matrix");
  if (A.size() == 0) return {};
  if (!A.allFinite()) throw DomainError("matrix has non-finite entries");
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) throw DomainError("matrix is not Hermitian");
  Eigen::VectorXd vals;
  if (A.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.real(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
    vals = es.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(A, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
    vals = es.eigenvalues();
  }
  std::vector<double> out(vals.data(), vals.data() + vals.size());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> hermitian_eigenvalues(const FiniteOperatorMatrix& A) { return hermitian_eigenvalues(A.matrix); }

EigenPairs hermitian_eigenpairs(const CMatrix& A) {
  if (A.rows() != A.cols()) throw DomainError("eigenvalue problem needs a square matrix");
  const double scale = std::max(1.0, A.size() ? A.cwiseAbs().maxCoeff() : 0.0);
  if (A.size() && (A - A.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) throw DomainError("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(A);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

double hermitian_norm(const CMatrix& A) {
  const auto ev = hermitian_eigenvalues(A);
  if (ev.empty()) return 0.0;
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

namespace {

class ThetaSolver {
 public:
  ThetaSolver(const BlochStencil& st) : st_(st) {}

  const std::vector<double>& at(double theta) {
    auto it = memo_.find(theta);
    if (it != memo_.end()) return it->second;
    ++solves_;
    return memo_.emplace(theta, solve(st_, theta)).first->second;
  }
  std::size_t solves() const { return solves_; }

  static std::vector<double> solve(const BlochStencil& st, double theta) {
    try {
      return hermitian_eigenvalues(st.matrix(theta));
    } catch (const NumericalError& e) {
      std::ostringstream os;
      os.precision(17);
      os << e.what() << " at theta = " << theta;
      throw NumericalError(os.str());
    }
  }

 private:
  const BlochStencil& st_;
  std::map<double, std::vector<double>> memo_;
  std::size_t solves_ = 0;
};

// Minimizes sign * E_band(theta) from the bracket a < b < c (f(b) <= f(a), f(c)) by successive
// parabolic interpolation with golden-section fallback. Returns the best evaluated value; the
// iteration stops once the parabola predicts less than tol further decrease, or once the
// bracket values agree to within eigensolver rounding `noise`.
double refine_edge(ThetaSolver& solver, std::size_t band, double sign, double a, double b, double c, double fa,
                   double fb, double fc, double tol, double noise, int max_iter) {
  constexpr double kGolden = 0.3819660112501051;
  auto f = [&](double t) { return sign * solver.at(t)[band]; };
  for (int it = 0; it < max_iter; ++it) {
    if (std::max(fa, fc) - fb <= noise) return fb;
    const double ba = b - a, bc = b - c;
    const double p = ba * ba * (fb - fc) - bc * bc * (fb - fa);
    const double q = 2.0 * (ba * (fb - fc) - bc * (fb - fa));
    double u;
    bool parabolic = false;
    if (q > 0.0) {
      u = b - p / q;
      // Value of the interpolating parabola at its vertex.
      const double la = (u - b) * (u - c) / ((a - b) * (a - c));
      const double lb = (u - a) * (u - c) / ((b - a) * (b - c));
      const double lc = (u - a) * (u - b) / ((c - a) * (c - b));
      const double predicted = la * fa + lb * fb + lc * fc;
      if (fb - predicted < tol) return fb;
      parabolic = u > a && u < c && std::abs(u - b) > 1e-15 * (1.0 + std::abs(b));
    }
    if (!parabolic) u = (c - b > b - a) ? b + kGolden * (c - b) : b - kGolden * (b - a);
    if (c - a < 1e-13) return fb;
    const double fu = f(u);
    if (fu < fb) {
      if (u < b) {
        c = b, fc = fb;
      } else {
        a = b, fa = fb;
      }
      b = u, fb = fu;
    } else if (u < b) {
      a = u, fa = fu;
    } else {
      c = u, fc = fu;
    }
  }
  return fb;
}

}  // namespace

BandStructure periodic_band_structure(const Hamiltonian& H, const Configuration& xi, const SpectrumOptions& opts) {
  if (opts.grid < 16) throw DomainError("theta grid must have at least 16 points");
  if (!(opts.tol > 0.0)) throw DomainError("refinement tolerance must be positive");
  const BlochStencil st(H, xi);
  const int G = opts.grid;
  const auto n = static_cast<std::size_t>(st.period() * st.N());
  const double step = 2.0 * std::numbers::pi / G;
  BandStructure out;
  out.thetas.resize(G);
  for (int k = 0; k < G; ++k) out.thetas[k] = step * k;
  out.energies.assign(G, {});

  // Real folded coefficients give E(theta) = E(-theta): solve the upper half-circle only.
  const bool mirror = st.real_coefficients();
  const int solved = mirror ? G / 2 + 1 : G;
  parallel_for(static_cast<std::size_t>(solved),
               [&](std::size_t k) { out.energies[k] = ThetaSolver::solve(st, out.thetas[k]); });
  if (mirror)
    for (int k = solved; k < G; ++k) out.energies[k] = out.energies[G - k];

  std::vector<double> rows(static_cast<std::size_t>(G) * n);
  for (int k = 0; k < G; ++k) std::copy(out.energies[k].begin(), out.energies[k].end(), rows.begin() + k * n);
  std::vector<double> lo(n), hi(n);
  std::vector<std::uint32_t> arg_lo(n), arg_hi(n);
  kernels::band_extrema(rows.data(), G, n, lo.data(), hi.data(), arg_lo.data(), arg_hi.data());

  double scale = 1.0;
  for (std::size_t j = 0; j < n; ++j) scale = std::max({scale, std::abs(lo[j]), std::abs(hi[j])});
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * scale;

  ThetaSolver solver(st);
  std::vector<Interval> raw;
  for (std::size_t j = 0; j < n; ++j) {
    auto refine = [&](std::uint32_t k, double sign) {
      const int km = (static_cast<int>(k) + G - 1) % G, kp = (static_cast<int>(k) + 1) % G;
      const double b = out.thetas[k];
      return sign * refine_edge(solver, j, sign, b - step, b, b + step, sign * out.energies[km][j],
                                sign * out.energies[k][j], sign * out.energies[kp][j], opts.tol,
                                noise, opts.max_refine_iterations);
    };
    const double a = refine(arg_lo[j], 1.0);
    const double b = refine(arg_hi[j], -1.0);
    raw.emplace_back(std::min(a, lo[j]), std::max(b, hi[j]));
  }
  out.spectrum = SpectrumSet::from_intervals(raw);
  out.spectrum.meta.grid = G;
  out.spectrum.meta.tol = opts.tol;
  out.spectrum.meta.period = st.period();
  out.spectrum.meta.refinement_solves = solver.solves();
  return out;
}

SpectrumSet periodic_spectrum(const Hamiltonian& H, const Configuration& xi, int grid, double tol) {
  SpectrumOptions o;
  o.grid = grid;
  o.tol = tol;
  return periodic_band_structure(H, xi, o).spectrum;
}

namespace {

// sup over x in S1 of dist(x, S2): on each interval of S1 the distance function is piecewise
// linear with maxima at the interval endpoints or at midpoints of gaps of S2.
double directed_hausdorff(const SpectrumSet& S1, const SpectrumSet& S2) {
  double best = 0.0;
  for (const auto& [a, b] : S1.bands) {
    best = std::max({best, S2.distance_to(a), S2.distance_to(b)});
    for (std::size_t i = 0; i + 1 < S2.bands.size(); ++i) {
      const double mid = 0.5 * (S2.bands[i].second + S2.bands[i + 1].first);
      if (mid > a && mid < b) best = std::max(best, S2.distance_to(mid));
    }
  }
  return best;
}

}  // namespace

double hausdorff_distance_sets(const SpectrumSet& S1, const SpectrumSet& S2) {
  if (S1.bands.empty() || S2.bands.empty()) throw DomainError("Hausdorff distance needs non-empty sets");
  return std::max(directed_hausdorff(S1, S2), directed_hausdorff(S2, S1));
}

NormDistanceCheck norm_distance_spectral_bound(const CMatrix& A, const CMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw DomainError("matrices differ in size");
  NormDistanceCheck r;
  r.dH = hausdorff_distance_sets(SpectrumSet::from_points(hermitian_eigenvalues(A)),
                                 SpectrumSet::from_points(hermitian_eigenvalues(B)));
  r.normdiff = hermitian_norm(A - B);
  r.holds = r.dH <= r.normdiff + 1e-10;
  return r;
}

NormDistanceCheck norm_distance_spectral_bound(const FiniteOperatorMatrix& A, const FiniteOperatorMatrix& B) {
  return norm_distance_spectral_bound(A.matrix, B.matrix);
}

}  // namespace aperispec
