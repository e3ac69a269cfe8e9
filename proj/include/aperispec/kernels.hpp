#pragma once

#include <cstddef>
#include <cstdint>

namespace aperispec::kernels {

enum class Path { Scalar, Avx2 };

/// AVX2 when the CPU supports it and APERISPEC_SIMD is not "scalar".
Path default_path();
bool avx2_available();
const char* path_name(Path p);

/// Per-band extrema over rows of sorted eigenvalues: rows[r * n_bands + j] is band j at sample r.
/// Ties keep the first row. Requires n_rows >= 1.
void band_extrema(const double* rows, std::size_t n_rows, std::size_t n_bands, double* lo, double* hi,
                  std::uint32_t* arg_lo, std::uint32_t* arg_hi, Path path = default_path());

/// Normalized trapezoid factor g(u) = phi(u) / sum_m phi(u - m) with its left and right derivatives.
void bump_factor(const double* u, std::size_t n, double* g, double* dg_left, double* dg_right,
                 Path path = default_path());

/// max_j |T (a_j, b_j)|^2 with a_j = gp_i * g[j], b_j = g_i * gp[j] and T a row-major 2x2 matrix.
double max_grad_norm_sq_row(double g_i, double gp_i, const double* g, const double* gp, std::size_t n, const double* T,
                            Path path = default_path());

namespace scalar {
void band_extrema(const double*, std::size_t, std::size_t, double*, double*, std::uint32_t*, std::uint32_t*);
void bump_factor(const double*, std::size_t, double*, double*, double*);
double max_grad_norm_sq_row(double, double, const double*, const double*, std::size_t, const double*);
}  // namespace scalar

namespace avx2 {
void band_extrema(const double*, std::size_t, std::size_t, double*, double*, std::uint32_t*, std::uint32_t*);
void bump_factor(const double*, std::size_t, double*, double*, double*);
double max_grad_norm_sq_row(double, double, const double*, const double*, std::size_t, const double*);
}  // namespace avx2

}  // namespace aperispec::kernels
