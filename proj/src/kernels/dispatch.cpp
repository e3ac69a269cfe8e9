#include <cstdlib>
#include <cstring>

#include "aperispec/kernels.hpp"

namespace aperispec::kernels {

bool avx2_available() {
#if defined(APERISPEC_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

Path default_path() {
  const char* env = std::getenv("APERISPEC_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Path::Scalar;
  return avx2_available() ? Path::Avx2 : Path::Scalar;
}

const char* path_name(Path p) { return p == Path::Avx2 ? "avx2" : "scalar"; }

void band_extrema(const double* rows, std::size_t n_rows, std::size_t n_bands, double* lo, double* hi,
                  std::uint32_t* arg_lo, std::uint32_t* arg_hi, Path path) {
#if defined(APERISPEC_HAVE_AVX2)
  if (path == Path::Avx2 && avx2_available()) return avx2::band_extrema(rows, n_rows, n_bands, lo, hi, arg_lo, arg_hi);
#endif
  (void)path;
  scalar::band_extrema(rows, n_rows, n_bands, lo, hi, arg_lo, arg_hi);
}

void bump_factor(const double* u, std::size_t n, double* g, double* dg_left, double* dg_right, Path path) {
#if defined(APERISPEC_HAVE_AVX2)
  if (path == Path::Avx2 && avx2_available()) return avx2::bump_factor(u, n, g, dg_left, dg_right);
#endif
  (void)path;
  scalar::bump_factor(u, n, g, dg_left, dg_right);
}

double max_grad_norm_sq_row(double g_i, double gp_i, const double* g, const double* gp, std::size_t n, const double* T,
                            Path path) {
#if defined(APERISPEC_HAVE_AVX2)
  if (path == Path::Avx2 && avx2_available()) return avx2::max_grad_norm_sq_row(g_i, gp_i, g, gp, n, T);
#endif
  (void)path;
  return scalar::max_grad_norm_sq_row(g_i, gp_i, g, gp, n, T);
}

}  // namespace aperispec::kernels
