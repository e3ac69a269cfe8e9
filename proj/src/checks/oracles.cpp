#include "aperispec/checks/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "aperispec/errors.hpp"

namespace aperispec::oracles {

namespace {

int at(const Word& period, std::int64_t n) {
  const auto p = static_cast<std::int64_t>(period.size());
  return static_cast<unsigned char>(period[static_cast<std::size_t>(((n % p) + p) % p)]);
}

std::int64_t floor_rational(const Rational& c) {
  std::int64_t q = c.numerator() / c.denominator();
  if (c.numerator() < 0 && q * c.denominator() != c.numerator()) --q;
  return q;
}

// Largest d_A over |n| <= radius.
Rational window_max(const Alphabet& A, const Word& x, const Word& y, std::int64_t radius) {
  Rational m(0);
  for (std::int64_t n = -radius; n <= radius; ++n) {
    const Rational& v = A.distance(at(x, n), at(y, n));
    if (v > m) m = v;
  }
  return m;
}

}  // namespace

DistanceValue config_distance_1d(const Alphabet& alphabet, const Word& xi, const Word& eta, double r_max) {
  const auto R = static_cast<std::int64_t>(std::floor(r_max));
  if (R < 1) throw DomainError("r_max must be >= 1");
  std::set<Rational> candidates;
  for (std::int64_t n = 1; n <= R; ++n) candidates.insert(Rational(n));
  for (std::size_t a = 0; a < alphabet.size(); ++a)
    for (std::size_t b = 0; b < alphabet.size(); ++b) {
      const Rational& v = alphabet.distance(static_cast<int>(a), static_cast<int>(b));
      if (v > Rational(0) && Rational(1) / v <= Rational(R)) candidates.insert(Rational(1) / v);
    }
  // The feasible radii form an initial segment of (0, R]; its supremum is the largest candidate c
  // feasible at c itself or on radii just below c.
  Rational sup(0);
  bool attained_at_R = false;
  for (const Rational& c : candidates) {
    const std::int64_t fc = floor_rational(c);
    const bool at_c = window_max(alphabet, xi, eta, fc) * c <= Rational(1);
    const std::int64_t below = Rational(fc) == c ? fc - 1 : fc;
    const bool left = window_max(alphabet, xi, eta, below) * c <= Rational(1);
    if (at_c || left) sup = std::max(sup, c);
    if (c == Rational(R)) attained_at_R = at_c;
  }
  DistanceValue out;
  if (sup == Rational(0)) {
    out.value = Rational(1);
    return out;
  }
  out.value = Rational(1) / sup;
  if (out.value > Rational(1)) out.value = Rational(1);
  if (sup == Rational(R)) out.lower_bound = attained_at_R;
  return out;
}

DistanceValue periodic_subshift_hausdorff(const Alphabet& alphabet, const Word& a, const Word& b, std::int64_t r_max) {
  if (!alphabet.is_discrete()) throw DomainError("oracle covers the discrete metric only");
  auto pair_distance = [&](const Word& x, std::int64_t sx, const Word& y, std::int64_t sy) {
    for (std::int64_t m = 0; m <= r_max; ++m) {
      const bool differ = at(x, m + sx) != at(y, m + sy) || at(x, -m + sx) != at(y, -m + sy);
      if (differ) return DistanceValue{m == 0 ? Rational(1) : Rational(1, m), false};
    }
    return DistanceValue{Rational(1, r_max), true};
  };
  auto directed = [&](const Word& x, const Word& y) {
    DistanceValue worst{Rational(0), false};
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(x.size()); ++i) {
      DistanceValue best{Rational(2), false};
      for (std::int64_t j = 0; j < static_cast<std::int64_t>(y.size()); ++j) {
        const DistanceValue d = pair_distance(x, i, y, j);
        if (d.value < best.value || (d.value == best.value && d.lower_bound)) best = d;
      }
      if (best.value > worst.value || (best.value == worst.value && best.lower_bound)) worst = best;
    }
    return worst;
  };
  const DistanceValue ab = directed(a, b), ba = directed(b, a);
  if (ab.value > ba.value) return ab;
  if (ba.value > ab.value) return ba;
  return {ab.value, ab.lower_bound || ba.lower_bound};
}

double hausdorff_sampled(const SpectrumSet& S1, const SpectrumSet& S2, double h) {
  auto dist = [](const SpectrumSet& S, double x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : S.bands) best = std::min(best, x < a ? a - x : (x > b ? x - b : 0.0));
    return best;
  };
  auto directed = [&](const SpectrumSet& X, const SpectrumSet& Y) {
    double worst = 0.0;
    for (const auto& [a, b] : X.bands) {
      const auto steps = static_cast<std::int64_t>(std::ceil((b - a) / h));
      for (std::int64_t k = 0; k <= steps; ++k) worst = std::max(worst, dist(Y, std::min(b, a + static_cast<double>(k) * h)));
    }
    return worst;
  };
  return std::max(directed(S1, S2), directed(S2, S1));
}

double power_iteration_norm(const CMatrix& A, int iterations) {
  if (A.size() == 0) return 0.0;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v(A.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = {nd(rng), nd(rng)};
  v.normalize();
  double sigma = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXcd w = A.adjoint() * (A * v);
    const double n = w.norm();
    if (n == 0.0) return 0.0;
    sigma = std::sqrt(n);
    v = w / n;
  }
  return sigma;
}

std::vector<Interval> dense_grid_bands(const Hamiltonian& H, const Word& period_word, const Alphabet& alphabet,
                                       int grid) {
  if (H.lattice().dim() != 1) throw DomainError("dense grid oracle is one-dimensional");
  const Configuration cfg = periodic_word(alphabet, period_word);
  const auto p = static_cast<std::int64_t>(period_word.size());
  const int N = H.N();
  std::vector<std::vector<CMatrix>> t(H.terms().size());
  for (std::size_t k = 0; k < H.terms().size(); ++k)
    for (std::int64_t x = 0; x < p; ++x) t[k].push_back(evaluate_coefficient(H.terms()[k].coef, cfg, LatticePoint{x}));
  std::vector<double> lo(static_cast<std::size_t>(p * N), std::numeric_limits<double>::infinity());
  std::vector<double> hi(lo.size(), -std::numeric_limits<double>::infinity());
  for (int g = 0; g < grid; ++g) {
    const double theta = 2.0 * std::numbers::pi * g / grid;
    CMatrix M = CMatrix::Zero(p * N, p * N);
    for (std::size_t k = 0; k < H.terms().size(); ++k) {
      const std::int64_t h = H.terms()[k].h[0];
      for (std::int64_t x = 0; x < p; ++x) {
        const std::int64_t y = x - h;
        const std::int64_t wrap = y >= 0 ? y / p : -((-y + p - 1) / p);
        const std::int64_t yy = y - wrap * p;
        M.block(x * N, yy * N, N, N) += t[k][x] * std::polar(1.0, -static_cast<double>(wrap) * theta);
      }
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(M, Eigen::EigenvaluesOnly);
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
      lo[j] = std::min(lo[j], es.eigenvalues()[j]);
      hi[j] = std::max(hi[j], es.eigenvalues()[j]);
    }
  }
  std::vector<Interval> out;
  for (std::size_t j = 0; j < lo.size(); ++j) out.emplace_back(lo[j], hi[j]);
  return out;
}

double partition_gradient_fd(const Lattice& lat, const Eigen::VectorXd& x, int j, double h) {
  Eigen::VectorXd xp = x, xm = x;
  xp[j] += h;
  xm[j] -= h;
  // qp(x) = prod_i phi(u_i) / sum_m phi(u_i - m) with u = M^{-1} x; only m near u_i contribute.
  auto phi = [](double t) { return std::clamp(4.0 - 6.0 * std::abs(t), 0.0, 1.0); };
  auto qp = [&](const Eigen::VectorXd& y) {
    const Eigen::VectorXd u = lat.inverse() * y;
    double v = 1.0;
    for (int i = 0; i < u.size(); ++i) {
      const double f = std::floor(u[i]);
      double s = 0.0;
      for (int m = -1; m <= 2; ++m) s += phi(u[i] - (f + m));
      v *= phi(u[i]) / s;
    }
    return v;
  };
  return (qp(xp) - qp(xm)) / (2.0 * h);
}

}  // namespace aperispec::oracles
