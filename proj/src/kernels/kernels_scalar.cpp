#include <cmath>

#include "aperispec/kernels.hpp"

namespace aperispec::kernels::scalar {

void band_extrema(const double* rows, std::size_t n_rows, std::size_t n_bands, double* lo, double* hi,
                  std::uint32_t* arg_lo, std::uint32_t* arg_hi) {
  for (std::size_t j = 0; j < n_bands; ++j) {
    lo[j] = hi[j] = rows[j];
    arg_lo[j] = arg_hi[j] = 0;
  }
  for (std::size_t r = 1; r < n_rows; ++r) {
    const double* row = rows + r * n_bands;
    for (std::size_t j = 0; j < n_bands; ++j) {
      if (row[j] < lo[j]) {
        lo[j] = row[j];
        arg_lo[j] = static_cast<std::uint32_t>(r);
      }
      if (row[j] > hi[j]) {
        hi[j] = row[j];
        arg_hi[j] = static_cast<std::uint32_t>(r);
      }
    }
  }
}

namespace {

inline double phi(double t) {
  const double a = std::fabs(t);
  const double v = 4.0 - 6.0 * a;
  return v > 1.0 ? 1.0 : (v < 0.0 ? 0.0 : v);
}

constexpr double kHalf = 0.5;
constexpr double kTwoThirds = 2.0 / 3.0;

inline double dphi_right(double t) {
  if (t >= kHalf && t < kTwoThirds) return -6.0;
  if (t >= -kTwoThirds && t < -kHalf) return 6.0;
  return 0.0;
}

inline double dphi_left(double t) {
  if (t > kHalf && t <= kTwoThirds) return -6.0;
  if (t > -kTwoThirds && t <= -kHalf) return 6.0;
  return 0.0;
}

}  // namespace

void bump_factor(const double* u, std::size_t n, double* g, double* dg_left, double* dg_right) {
  for (std::size_t i = 0; i < n; ++i) {
    const double x = u[i];
    const double p = phi(x);
    const double s0 = (phi(x - 1.0) + p) + phi(x + 1.0);
    const double s = s0 == 0.0 ? 1.0 : s0;
    const double sl = (dphi_left(x - 1.0) + dphi_left(x)) + dphi_left(x + 1.0);
    const double sr = (dphi_right(x - 1.0) + dphi_right(x)) + dphi_right(x + 1.0);
    const double s2 = s * s;
    g[i] = p / s;
    dg_left[i] = (dphi_left(x) * s - p * sl) / s2;
    dg_right[i] = (dphi_right(x) * s - p * sr) / s2;
  }
}

double max_grad_norm_sq_row(double g_i, double gp_i, const double* g, const double* gp, std::size_t n, const double* T) {
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double a = gp_i * g[j];
    const double b = g_i * gp[j];
    const double x = T[0] * a + T[1] * b;
    const double y = T[2] * a + T[3] * b;
    const double v = x * x + y * y;
    if (v > best) best = v;
  }
  return best;
}

}  // namespace aperispec::kernels::scalar
