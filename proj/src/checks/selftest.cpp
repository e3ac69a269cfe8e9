#include "aperispec/checks/selftest.hpp"

#include <cmath>
#include <sstream>

#include "aperispec/checks/generators.hpp"
#include "aperispec/checks/oracles.hpp"
#include "aperispec/errors.hpp"
#include "aperispec/kernels.hpp"
#include "aperispec/partition.hpp"
#include "aperispec/sweep.hpp"

namespace aperispec {

namespace {

class Group {
 public:
  Group(std::string name, std::uint64_t seed) : rng(seed) {
    g_.name = std::move(name);
    g_.seed = seed;
  }
  void check(bool ok, const std::string& what) {
    ++g_.checks;
    if (!ok && g_.failures.size() < 20) g_.failures.push_back(what);
  }
  SelftestGroup done() { return std::move(g_); }
  gen::Rng rng;

 private:
  SelftestGroup g_;
};

std::string str(double v) { return io::format_double(v); }

void alphabet_group(Group& g, const SelftestOptions& opts) {
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + trial % 4;
    auto metric = gen::random_metric(n, g.rng);
    if (opts.inject_fault == "metric" && trial == 0) {
      metric[0][2] = metric[0][1] + metric[1][2] + Rational(1);
      metric[2][0] = metric[0][2];
    }
    try {
      validate_metric(metric);
      g.check(true, "");
    } catch (const AlphabetInvariantError& e) {
      g.check(false, e.invariant() + ": " + e.what());
    }
  }
  // Each invariant must reject a matrix built to break it.
  const Alphabet::Metric broken[] = {
      {{Rational(0), Rational(1)}, {Rational(2), Rational(0)}},
      {{Rational(1), Rational(1)}, {Rational(1), Rational(0)}},
      {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}},
      {{Rational(0), Rational(1), Rational(3)}, {Rational(1), Rational(0), Rational(1)}, {Rational(3), Rational(1), Rational(0)}}};
  const char* names[] = {"symmetry", "zero-diagonal", "positivity", "triangle-inequality"};
  for (int i = 0; i < 4; ++i) {
    std::string got = "accepted";
    try {
      validate_metric(broken[i]);
    } catch (const AlphabetInvariantError& e) {
      got = e.invariant();
    }
    g.check(got == names[i], std::string("negative control for ") + names[i] + " reported " + got);
  }
}

void metric_axioms_group(Group& g) {
  const Alphabet A = gen::random_alphabet(3, g.rng);
  std::uniform_int_distribution<int> period(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    Word w[3];
    Configuration c[3] = {periodic_word(A, w[0] = gen::random_word(period(g.rng), 3, g.rng)),
                          periodic_word(A, w[1] = gen::random_word(period(g.rng), 3, g.rng)),
                          periodic_word(A, w[2] = gen::random_word(period(g.rng), 3, g.rng))};
    const auto ab = config_distance(c[0], c[1], 32), ba = config_distance(c[1], c[0], 32);
    const auto bc = config_distance(c[1], c[2], 32), ac = config_distance(c[0], c[2], 32);
    g.check(ab.value == ba.value && ab.lower_bound == ba.lower_bound, "symmetry");
    g.check(ac.value <= ab.value + bc.value, "triangle inequality");
    const auto o = oracles::config_distance_1d(A, w[0], w[1], 32);
    g.check(o.value == ab.value && o.lower_bound == ab.lower_bound, "oracle mismatch on trial " + std::to_string(trial));
    const auto aa = config_distance(c[0], c[0], 32);
    g.check(aa.agree_on_cube && aa.lower_bound, "identity");
  }
}

void subshift_distance_group(Group& g) {
  const Alphabet A = fibonacci_alphabet();
  std::vector<Word> words;
  for (int p = 1; p <= 3; ++p)
    for (int bits = 0; bits < (1 << p); ++bits) {
      Word w(p, '\0');
      for (int i = 0; i < p; ++i) w[i] = static_cast<char>((bits >> i) & 1);
      words.push_back(w);
    }
  for (const auto& a : words)
    for (const auto& b : words) {
      const auto d = subshift_distance(Subshift::periodic_orbit(periodic_word(A, a)),
                                       Subshift::periodic_orbit(periodic_word(A, b)), 16);
      const auto o = oracles::periodic_subshift_hausdorff(A, a, b, 16);
      g.check(d.value == o.value && d.lower_bound == o.lower_bound,
              "subshift distance differs from orbit brute force for " + A.render(a) + " vs " + A.render(b));
    }
}

void spectra_group(Group& g) {
  const Alphabet A({"a", "b"}, {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}, {0.0, 2.0});
  const Hamiltonian H = schrodinger_hamiltonian(Lattice::integer(1), A, 1.0);
  const auto free_spec = periodic_spectrum(H, periodic_word(A, Word(1, '\0')), 256, 1e-10);
  g.check(free_spec.bands.size() == 1 && std::abs(free_spec.min() + 2.0) < 1e-8 && std::abs(free_spec.max() - 2.0) < 1e-8,
          "free Laplacian spectrum is not [-2, 2]");
  const auto two = periodic_spectrum(H, periodic_word(A, Word("\x00\x01", 2)), 256, 1e-10);
  const double r5 = std::sqrt(5.0);
  g.check(two.bands.size() == 2 && std::abs(two.bands[0].first - (1 - r5)) < 1e-8 && std::abs(two.bands[0].second) < 1e-8 &&
              std::abs(two.bands[1].first - 2.0) < 1e-8 && std::abs(two.bands[1].second - (1 + r5)) < 1e-8,
          "period-2 spectrum differs from [1-sqrt5, 0] u [2, 1+sqrt5]");
}

void norm_distance_group(Group& g) {
  std::uniform_int_distribution<int> size(1, 24);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = size(g.rng);
    const auto r = norm_distance_spectral_bound(gen::random_hermitian(n, g.rng), gen::random_hermitian(n, g.rng));
    g.check(r.holds, "d_H = " + str(r.dH) + " exceeds ||A - B|| = " + str(r.normdiff));
  }
}

void truncation_group(Group& g) {
  const Alphabet A({"a"});
  const Configuration xi = periodic_word(A, Word(1, '\0'));
  for (double beta : {0.5, 1.0}) {
    const Hamiltonian H = synthetic_long_range(beta, 64);
    const CMatrix full = assemble_dirichlet_1d(H, xi, 0, 128).matrix;
    for (double s : {2.0, 4.0, 8.0}) {
      const CMatrix cut = assemble_dirichlet_1d(truncate_range(H, s), xi, 0, 128).matrix;
      const double lhs = hermitian_norm(full - cut);
      const double rhs = schur_norm(H) * std::pow(s, -beta) * (1 + 1e-9);
      g.check(lhs <= rhs, "beta " + str(beta) + " s " + str(s) + ": " + str(lhs) + " > " + str(rhs));
    }
  }
}

void positivity_group(Group& g) {
  const Alphabet A({"a"});
  const Configuration xi = periodic_word(A, Word(1, '\0'));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Hamiltonian H = gen::random_model(g.rng);
    for (const Hamiltonian& C : {comparison_operator_beta(H), comparison_operator_infty(H)}) {
      const CMatrix W = assemble_dirichlet_1d(C, xi, 0, 24).matrix;
      Eigen::VectorXcd v(W.cols());
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = u(g.rng);
      const Eigen::VectorXcd w = W * v;
      g.check(w.real().minCoeff() >= -1e-14 && w.imag().cwiseAbs().maxCoeff() <= 1e-14, "comparison operator not positive");
    }
    const double norm = hermitian_norm(assemble_dirichlet_1d(comparison_operator_beta(H), xi, 0, 24).matrix);
    g.check(norm <= schur_norm(H) + 1e-9, "window norm " + str(norm) + " exceeds ||H||_beta");
  }
}

void partition_group(Group& g) {
  const Lattice Z = Lattice::integer(1);
  const auto pc = partition_constants(Z);
  g.check(pc.Noverlap == 3 && pc.C_L == 6.0, "d = 1 constants are not N = 3, C_L = 6");
  g.check(std::abs(pc.C_L_sampled - 6.0) < 1e-6, "grid C_L " + str(pc.C_L_sampled) + " differs from 6");
  g.check(overlap_count(Lattice::integer(2)) == 9, "d = 2 overlap count is not 9");
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    Eigen::VectorXd x(1);
    x[0] = u(g.rng);
    g.check(std::abs(partition_sum(Z, x) - 1.0) <= 1e-10, "partition sum off at " + str(x[0]));
  }
}

void simd_group(Group& g) {
  if (!kernels::avx2_available()) {
    g.check(true, "");
    return;
  }
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t rows = 37, bands = 29;
  std::vector<double> data(rows * bands);
  for (auto& v : data) v = u(g.rng);
  std::vector<double> lo1(bands), hi1(bands), lo2(bands), hi2(bands);
  std::vector<std::uint32_t> al1(bands), ah1(bands), al2(bands), ah2(bands);
  kernels::scalar::band_extrema(data.data(), rows, bands, lo1.data(), hi1.data(), al1.data(), ah1.data());
  kernels::avx2::band_extrema(data.data(), rows, bands, lo2.data(), hi2.data(), al2.data(), ah2.data());
  g.check(lo1 == lo2 && hi1 == hi2 && al1 == al2 && ah1 == ah2, "band_extrema paths differ");
  std::vector<double> x(1001), ga(1001), la(1001), ra(1001), gb(1001), lb(1001), rb(1001);
  for (auto& v : x) v = 1.5 * u(g.rng);
  kernels::scalar::bump_factor(x.data(), x.size(), ga.data(), la.data(), ra.data());
  kernels::avx2::bump_factor(x.data(), x.size(), gb.data(), lb.data(), rb.data());
  g.check(ga == gb && la == lb && ra == rb, "bump_factor paths differ");
  const double T[4] = {1.0, 0.5, -0.25, 2.0};
  const double s1 = kernels::scalar::max_grad_norm_sq_row(0.3, 1.7, ga.data(), la.data(), ga.size(), T);
  const double s2 = kernels::avx2::max_grad_norm_sq_row(0.3, 1.7, ga.data(), la.data(), ga.size(), T);
  g.check(s1 == s2, "max_grad_norm_sq_row paths differ");
}

void certificate_group(Group& g) {
  ExperimentSpec s;
  s.model = io::json::parse(R"({"hamiltonian": {"schrodinger": {"lambda": 1}, "beta": 1}})");
  s.k_min = 4;
  s.k_max = 8;
  s.k_ref = 10;
  s.r_max = 128;
  s.seed = g.rng();
  const auto r = sweep_convergents(s);
  for (const auto& row : r.rows)
    g.check(!row.aborted() && row.pass, "Fibonacci row k = " + std::to_string(row.k) + " fails: " +
                                            (row.aborted() ? row.error : str(row.d_spectral) + " > " + str(row.certificate.bound)));
}

void self_adjoint_group(Group& g) {
  const Alphabet A = fibonacci_alphabet();
  const Subshift S = Subshift::orbit_closure(fibonacci_configuration());
  g.check(verify_self_adjoint(schrodinger_hamiltonian(Lattice::integer(1), A, 1.0), S, 64, g.rng()).passed(),
          "Schrodinger model fails (R1)/(R2)");
  // Pattern-dependent hop whose reverse does not match: must be caught.
  std::map<Word, CMatrix> table;
  table[Word("\x00\x00\x01", 3)] = CMatrix::Constant(1, 1, 1.0);
  for (const auto& p : pattern_dictionary(S, 1).patterns)
    if (!table.count(p)) table[p] = CMatrix::Constant(1, 1, 2.0);
  const Hamiltonian bad(Lattice::integer(1), 1, 1.0,
                        {{LatticePoint{1}, CoefficientFn::lookup(1, table)},
                         {LatticePoint{-1}, CoefficientFn::constant(std::complex<double>(1.0))}});
  g.check(!verify_self_adjoint(bad, S, 1000, 1).passed(), "asymmetric hop model passes (R2)");
}

}  // namespace

bool SelftestReport::passed() const {
  for (const auto& g : groups)
    if (!g.passed()) return false;
  return true;
}

io::json SelftestReport::to_json() const {
  io::json gs = io::json::array();
  for (const auto& g : groups)
    gs.push_back({{"name", g.name}, {"seed", g.seed}, {"checks", g.checks}, {"passed", g.passed()}, {"failures", g.failures}});
  return {{"schema", 1}, {"seed", seed}, {"passed", passed()}, {"groups", gs}};
}

SelftestReport run_selftest(const SelftestOptions& opts) {
  SelftestReport rep;
  rep.seed = opts.seed;
  std::uint64_t k = 0;
  auto run = [&](const char* name, auto&& body) {
    Group g(name, opts.seed + 1000003ULL * ++k);
    try {
      body(g);
    } catch (const std::exception& e) {
      g.check(false, std::string("exception: ") + e.what());
    }
    rep.groups.push_back(g.done());
  };
  run("alphabet-invariants", [&](Group& g) { alphabet_group(g, opts); });
  run("metric-axioms", metric_axioms_group);
  run("subshift-distance", subshift_distance_group);
  run("spectra-closed-form", spectra_group);
  run("norm-distance", norm_distance_group);
  run("range-truncation", truncation_group);
  run("positivity", positivity_group);
  run("partition", partition_group);
  run("simd-equivalence", simd_group);
  run("self-adjointness", self_adjoint_group);
  run("certificate-sweep", certificate_group);
  return rep;
}

}  // namespace aperispec
