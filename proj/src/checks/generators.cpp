#include "aperispec/checks/generators.hpp"

#include <string>

namespace aperispec::gen {

Alphabet::Metric random_metric(std::size_t n, Rng& rng, std::int64_t den) {
  std::uniform_int_distribution<std::int64_t> w(1, den);
  Alphabet::Metric m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) m[a][b] = m[b][a] = Rational(w(rng), den);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (m[a][k] + m[k][b] < m[a][b]) m[a][b] = m[a][k] + m[k][b];
  return m;
}

Alphabet random_alphabet(std::size_t n, Rng& rng) {
  std::vector<std::string> labels;
  std::vector<std::complex<double>> values;
  std::uniform_int_distribution<int> v(-3, 3);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::string(1, static_cast<char>('a' + i)));
    values.emplace_back(v(rng), 0.0);
  }
  return Alphabet(labels, random_metric(n, rng), values);
}

Word random_word(std::size_t length, int n_labels, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, n_labels - 1);
  Word w(length, '\0');
  for (auto& c : w) c = static_cast<char>(pick(rng));
  return w;
}

CMatrix random_hermitian(int n, Rng& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = {u(rng), 0.0};
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = {u(rng), u(rng)};
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

Hamiltonian random_model(Rng& rng, int max_hop) {
  std::uniform_int_distribution<int> pick_N(1, 2), pick_range(1, max_hop);
  std::uniform_real_distribution<double> u(-1.0, 1.0), beta(0.05, 1.0);
  std::bernoulli_distribution keep(0.7);
  const int N = pick_N(rng);
  const int range = pick_range(rng);
  std::vector<HopTerm> terms;
  terms.push_back({LatticePoint{0}, CoefficientFn::constant(random_hermitian(N, rng))});
  for (int h = 1; h <= range; ++h) {
    if (h > 1 && !keep(rng)) continue;
    CMatrix t(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) t(i, j) = {u(rng), u(rng)};
    terms.push_back({LatticePoint{h}, CoefficientFn::constant(t, 1.0, h)});
    terms.push_back({LatticePoint{-h}, CoefficientFn::constant(CMatrix(t.adjoint()), 1.0, h)});
  }
  return Hamiltonian(Lattice::integer(1), N, beta(rng), std::move(terms));
}

}  // namespace aperispec::gen
