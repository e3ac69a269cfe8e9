#include "aperispec/partition.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "aperispec/errors.hpp"

namespace aperispec {

double trapezoid(double t) {
  const double v = 4.0 - 6.0 * std::fabs(t);
  return v > 1.0 ? 1.0 : (v < 0.0 ? 0.0 : v);
}

double partition_factor(double u) {
  double g, dl, dr;
  kernels::scalar::bump_factor(&u, 1, &g, &dl, &dr);
  return g;
}

double partition_bump(const Lattice& lat, const Eigen::VectorXd& x) {
  const Eigen::VectorXd u = lat.inverse() * x;
  double v = 1.0;
  for (int j = 0; j < u.size(); ++j) v *= partition_factor(u[j]);
  return v;
}

double partition_sum(const Lattice& lat, const Eigen::VectorXd& x) {
  const int d = lat.dim();
  const Eigen::VectorXd u = lat.inverse() * x;
  std::vector<std::int64_t> base(d), off(d, -1);
  for (int j = 0; j < d; ++j) base[j] = static_cast<std::int64_t>(std::floor(u[j]));
  double sum = 0.0;
  while (true) {
    Eigen::VectorXd m(d);
    for (int j = 0; j < d; ++j) m[j] = static_cast<double>(base[j] + off[j]);
    sum += partition_bump(lat, x - lat.basis() * m);
    int k = d - 1;
    while (k >= 0 && off[k] == 2) {
      off[k] = -1;
      --k;
    }
    if (k < 0) break;
    ++off[k];
  }
  return sum;
}

Eigen::VectorXd partition_gradient(const Lattice& lat, const Eigen::VectorXd& x) {
  const int d = lat.dim();
  const Eigen::VectorXd u = lat.inverse() * x;
  std::vector<double> g(d), dl(d), dr(d);
  for (int j = 0; j < d; ++j) kernels::scalar::bump_factor(&u[j], 1, &g[j], &dl[j], &dr[j]);
  Eigen::VectorXd grad_u(d);
  for (int j = 0; j < d; ++j) {
    double v = dr[j];
    for (int i = 0; i < d; ++i)
      if (i != j) v *= g[i];
    grad_u[j] = v;
  }
  return lat.inverse().transpose() * grad_u;
}

std::int64_t overlap_count(const Lattice& lat) {
  // In M^{-1} coordinates the supports are m + (-2/3, 2/3)^d; two meet iff 3|m_j - m'_j| < 4 on every axis.
  const int d = lat.dim();
  std::int64_t count = 0;
  std::vector<std::int64_t> m(d, -2);
  while (true) {
    bool meets = true;
    for (auto c : m) meets = meets && 3 * std::llabs(c) < 4;
    if (meets) ++count;
    int k = d - 1;
    while (k >= 0 && m[k] == 2) {
      m[k] = -2;
      --k;
    }
    if (k < 0) break;
    ++m[k];
  }
  return count;
}

namespace {

struct AxisSamples {
  std::vector<double> g, dg;
};

// Grid over [-2/3, 2/3] plus the kinks of g, each kink carrying both one-sided derivatives.
AxisSamples axis_samples(double step, kernels::Path path) {
  if (!(step > 0.0)) throw DomainError("grid step must be positive");
  std::vector<double> u;
  const double lo = -2.0 / 3.0, hi = 2.0 / 3.0;
  const auto n = static_cast<std::int64_t>(std::floor((hi - lo) / step));
  for (std::int64_t k = 0; k <= n; ++k) u.push_back(lo + static_cast<double>(k) * step);
  for (double k : {-2.0 / 3.0, -0.5, -1.0 / 3.0, 1.0 / 3.0, 0.5, 2.0 / 3.0}) u.push_back(k);
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  std::vector<double> g(u.size()), dl(u.size()), dr(u.size());
  kernels::bump_factor(u.data(), u.size(), g.data(), dl.data(), dr.data(), path);
  AxisSamples s;
  for (std::size_t i = 0; i < u.size(); ++i) {
    s.g.push_back(g[i]);
    s.dg.push_back(dl[i]);
    if (dr[i] != dl[i]) {
      s.g.push_back(g[i]);
      s.dg.push_back(dr[i]);
    }
  }
  return s;
}

double sampled_general(const Eigen::MatrixXd& T, const AxisSamples& ax, int d) {
  const std::size_t n = ax.g.size();
  std::vector<std::size_t> idx(d, 0);
  double best = 0.0;
  Eigen::VectorXd grad(d);
  while (true) {
    for (int j = 0; j < d; ++j) {
      double v = ax.dg[idx[j]];
      for (int i = 0; i < d; ++i)
        if (i != j) v *= ax.g[idx[i]];
      grad[j] = v;
    }
    best = std::max(best, (T * grad).squaredNorm());
    int k = d - 1;
    while (k >= 0 && idx[k] == n - 1) {
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
    ++idx[k];
  }
  return best;
}

}  // namespace

double sampled_lipschitz_constant(const Lattice& lat, double step, kernels::Path path) {
  const int d = lat.dim();
  const AxisSamples ax = axis_samples(step, path);
  const Eigen::MatrixXd T = lat.inverse().transpose();
  if (d == 1) {
    double m = 0.0;
    for (double v : ax.dg) m = std::max(m, std::fabs(v));
    return m * std::fabs(T(0, 0));
  }
  if (d == 2) {
    const double t[4] = {T(0, 0), T(0, 1), T(1, 0), T(1, 1)};
    double best = 0.0;
    for (std::size_t i = 0; i < ax.g.size(); ++i)
      best = std::max(best, kernels::max_grad_norm_sq_row(ax.g[i], ax.dg[i], ax.g.data(), ax.dg.data(), ax.g.size(), t, path));
    return std::sqrt(best);
  }
  return std::sqrt(sampled_general(T, ax, d));
}

PartitionConstants partition_constants(const Lattice& lat, const PartitionOptions& opts) {
  PartitionConstants pc;
  pc.Noverlap = overlap_count(lat);
  pc.description =
      "tensor trapezoid: phi = 1 on |t| <= 1/2, linear to 0 at |t| = 2/3; qp(x) = psi(M^-1 x) / sum_z psi(M^-1 (x - z))";
  pc.grid_step = lat.dim() >= 3 ? opts.coarse_step : opts.grid_step;
  pc.C_L_sampled = sampled_lipschitz_constant(lat, pc.grid_step, opts.path);
  if (lat.dim() == 1 && lat.is_identity()) {
    // On [1/2, 2/3], qp(x) = (4 - 6x)/(5 - 6x) with |qp'| = 6/(5 - 6x)^2, largest (= 6) at x = 2/3.
    pc.C_L = 6.0;
    pc.analytic = true;
  } else {
    pc.C_L = pc.C_L_sampled * (1.0 + opts.inflation);
  }
  return pc;
}

}  // namespace aperispec
