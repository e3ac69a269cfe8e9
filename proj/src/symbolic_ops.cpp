#include "aperispec/symbolic_ops.hpp"

#include <cmath>
#include <map>

#include "aperispec/errors.hpp"

namespace aperispec {

Configuration shift(const Configuration& xi, const LatticePoint& h) { return xi.shifted(h); }

namespace {

Rational shell_max(const Configuration& xi, const Configuration& eta, std::int64_t n) {
  const Alphabet& A = xi.alphabet();
  Rational m(0);
  if (xi.dim() == 1) {
    for (std::int64_t x : {n, -n}) {
      const Rational& v = A.distance(xi.letter_at_1d(x), eta.letter_at_1d(x));
      if (v > m) m = v;
      if (n == 0) break;
    }
    return m;
  }
  for (const auto& p : shell_points(xi.dim(), n)) {
    const Rational& v = A.distance(xi.letter_at(p), eta.letter_at(p));
    if (v > m) m = v;
  }
  return m;
}

std::int64_t scan_radius(double r_max) {
  if (!(r_max >= 1.0) || !std::isfinite(r_max)) throw DomainError("r_max must be a finite value >= 1");
  return static_cast<std::int64_t>(std::floor(r_max));
}

}  // namespace

ConfigDistance config_distance(const Configuration& xi, const Configuration& eta, double r_max) {
  if (!(xi.lattice() == eta.lattice())) throw DomainError("configurations live on different lattices");
  if (!(xi.alphabet() == eta.alphabet())) throw DomainError("configurations use different alphabets");
  const std::int64_t R = scan_radius(r_max);
  ConfigDistance out;
  // f is the running max of d_A over Q_n. On radii r in [n, n+1) (or (0,1) for n = 0) the cube is
  // Q_n, so feasibility there means f_n <= 1/r.
  Rational f(0);
  for (std::int64_t n = 0; n < R; ++n) {
    const Rational s = shell_max(xi, eta, n);
    if (s > f) f = s;
    if (f * Rational(n + 1) > 1) {
      // Feasible radii inside this interval end at 1/f (if >= n); before it they end at n.
      const Rational cap = n == 0 ? Rational(1) : Rational(1, n);
      out.value = f < cap ? f : cap;
      if (out.value > 1) out.value = 1;
      return out;
    }
  }
  const Rational s = shell_max(xi, eta, R);
  if (s > f) f = s;
  out.value = Rational(1, R);
  out.lower_bound = f * Rational(R) <= 1;
  out.agree_on_cube = f == Rational(0);
  return out;
}

SubshiftDistance subshift_distance(const Subshift& A, const Subshift& B, double r_max, const DictionaryOptions& opts) {
  if (!(A.lattice() == B.lattice())) throw DomainError("subshifts live on different lattices");
  if (!(A.alphabet() == B.alphabet())) throw DomainError("subshifts use different alphabets");
  if (!A.alphabet().is_discrete())
    throw DomainError("subshift distance is only available for the discrete alphabet metric");
  const std::int64_t R = scan_radius(r_max);
  SubshiftDistance out;
  std::map<std::int64_t, bool> memo;
  auto equal_at = [&](std::int64_t r) {
    auto it = memo.find(r);
    if (it != memo.end()) return it->second;
    const auto da = pattern_dictionary(A, r, opts);
    const auto db = pattern_dictionary(B, r, opts);
    out.sampled = out.sampled || da.sampled || db.sampled;
    const bool eq = da.patterns == db.patterns;
    memo.emplace(r, eq);
    return eq;
  };
  // Dictionary equality is inherited by smaller radii, so the agreement radius is found by bisection.
  if (equal_at(R)) {
    out.value = Rational(1, R);
    out.lower_bound = true;
    out.agreement_radius = R;
    return out;
  }
  std::int64_t lo = 0, hi = R;  // equal at lo (vacuous for 0), different at hi
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (equal_at(mid)) lo = mid;
    else hi = mid;
  }
  out.agreement_radius = lo;
  out.value = Rational(1, hi);
  return out;
}

Configuration kohmoto_configuration(const Alpha& alpha, double phase, const Alphabet& alphabet) {
  if (alphabet.size() < 2) throw DomainError("Kohmoto coding needs two labels");
  CircleCoding coding(alpha, phase, {CirclePoint{0.0, 0}, CirclePoint{1.0, -1}}, {0, 1});
  return Configuration::rotation(alphabet, std::move(coding));
}

Configuration kohmoto_configuration(double alpha, double phase, const Alphabet& alphabet) {
  return kohmoto_configuration(Alpha::from_double(alpha), phase, alphabet);
}

Substitution fibonacci_substitution() { return Substitution({Word("\x00\x01", 2), Word(1, 0)}, 1, 0); }

Alphabet fibonacci_alphabet() { return Alphabet({"a", "b"}); }

Configuration fibonacci_configuration() {
  return Configuration::substitution(fibonacci_alphabet(), fibonacci_substitution());
}

std::int64_t fibonacci_number(int k) {
  if (k < 1 || k > 90) throw DomainError("Fibonacci index must lie in [1, 90]");
  std::int64_t a = 1, b = 1;
  for (int i = 2; i < k; ++i) {
    const std::int64_t c = a + b;
    a = b;
    b = c;
  }
  return b;
}

Word fibonacci_word(int k) {
  if (k < 1 || k > 40) throw DomainError("Fibonacci word index must lie in [1, 40]");
  if (k == 1) return Word(1, 1);
  return fibonacci_substitution().iterate(Word(1, 0), k - 2);
}

}  // namespace aperispec
