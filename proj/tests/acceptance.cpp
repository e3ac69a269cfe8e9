// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "aperispec/assemble.hpp"
#include "aperispec/bounds.hpp"
#include "aperispec/checks/generators.hpp"
#include "aperispec/checks/oracles.hpp"
#include "aperispec/io.hpp"
#include "aperispec/partition.hpp"
#include "aperispec/spectra.hpp"
#include "aperispec/sweep.hpp"
#include "aperispec/symbolic_ops.hpp"

using namespace aperispec;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void require(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds; <= 0 means none
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string data(const std::string& name) { return std::string(APERISPEC_TEST_DATA) + "/" + name; }

const Lattice Z = Lattice::integer(1);

Outcome metric_axioms() {
  Outcome o;
  gen::Rng rng(1001);
  std::uniform_int_distribution<int> period(1, 6);
  constexpr double r_max = 32;
  for (int t = 0; t < 1000 && o.ok; ++t) {
    const Alphabet A = gen::random_alphabet(3, rng);
    const Word w[3] = {gen::random_word(period(rng), 3, rng), gen::random_word(period(rng), 3, rng),
                       gen::random_word(period(rng), 3, rng)};
    const Configuration c[3] = {periodic_word(A, w[0]), periodic_word(A, w[1]), periodic_word(A, w[2])};
    const auto ab = config_distance(c[0], c[1], r_max), ba = config_distance(c[1], c[0], r_max);
    const auto bc = config_distance(c[1], c[2], r_max), ac = config_distance(c[0], c[2], r_max);
    o.require(ab.value == ba.value && ab.lower_bound == ba.lower_bound, "symmetry fails at trial " + std::to_string(t));
    o.require(ac.value <= ab.value + bc.value, "triangle inequality fails at trial " + std::to_string(t));
    const auto oracle = oracles::config_distance_1d(A, w[0], w[1], r_max);
    o.require(oracle.value == ab.value && oracle.lower_bound == ab.lower_bound,
              "oracle disagrees at trial " + std::to_string(t));
    bool agree = true;
    for (std::int64_t x = -32; x <= 32; ++x) agree = agree && c[0].letter_at_1d(x) == c[1].letter_at_1d(x);
    o.require(ab.agree_on_cube == agree, "zero distance does not match agreement at trial " + std::to_string(t));
    o.require(!agree || ab.lower_bound, "agreeing pair not reported at the resolution floor");
    const auto aa = config_distance(c[0], c[0], r_max);
    o.require(aa.agree_on_cube && aa.lower_bound, "d(x,x) is not zero");
  }
  if (o.ok) o.detail = "1000 triples, exact rational arithmetic";
  return o;
}

Outcome subshift_oracle() {
  Outcome o;
  const Alphabet A = fibonacci_alphabet();
  std::vector<Word> words;
  for (int p = 1; p <= 4; ++p)
    for (int bits = 0; bits < (1 << p); ++bits) {
      Word w(p, '\0');
      for (int i = 0; i < p; ++i) w[i] = static_cast<char>((bits >> i) & 1);
      words.push_back(w);
    }
  std::size_t pairs = 0;
  for (const auto& a : words)
    for (const auto& b : words) {
      const auto d = subshift_distance(Subshift::periodic_orbit(periodic_word(A, a)),
                                       Subshift::periodic_orbit(periodic_word(A, b)), 64);
      const auto ref = oracles::periodic_subshift_hausdorff(A, a, b, 64);
      o.require(d.value == ref.value && d.lower_bound == ref.lower_bound,
                "mismatch for " + A.render(a) + " vs " + A.render(b));
      ++pairs;
    }
  if (o.ok) o.detail = std::to_string(pairs) + " pairs equal exactly";
  return o;
}

Outcome closed_form_spectra() {
  Outcome o;
  const Alphabet A({"a", "b"}, {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}, {0.0, 2.0});
  const Hamiltonian H = schrodinger_hamiltonian(Z, A, 1.0);
  const Hamiltonian free = schrodinger_hamiltonian(Z, A, 0.0);
  const auto s1 = periodic_spectrum(free, periodic_word(A, Word(1, '\0')), 256, 1e-10);
  const auto s2 = periodic_spectrum(H, periodic_word(A, A.parse_word("ab")), 256, 1e-10);
  const double r5 = std::sqrt(5.0);
  const double e1 = hausdorff_distance_sets(s1, SpectrumSet::from_intervals({{-2.0, 2.0}}));
  const double e2 = hausdorff_distance_sets(s2, SpectrumSet::from_intervals({{1.0 - r5, 0.0}, {2.0, 1.0 + r5}}));
  o.require(s1.bands.size() == 1 && e1 <= 1e-8, "free Laplacian error " + fmt("%.3g", e1));
  o.require(s2.bands.size() == 2 && e2 <= 1e-8, "period-2 error " + fmt("%.3g", e2));
  if (o.ok) o.detail = "errors " + fmt("%.2e", e1) + ", " + fmt("%.2e", e2);
  return o;
}

Outcome norm_distance() {
  Outcome o;
  gen::Rng rng(4004);
  std::uniform_int_distribution<int> size(1, 64);
  double worst = -1e300;
  for (int i = 0; i < 500; ++i) {
    const int n = size(rng);
    const CMatrix A = gen::random_hermitian(n, rng), B = gen::random_hermitian(n, rng);
    const auto r = norm_distance_spectral_bound(A, B);
    // The norm must not be overstated: Jacobi SVD for the value, power iteration as a lower bound.
    const CMatrix D = A - B;
    const double svd = Eigen::JacobiSVD<CMatrix>(D).singularValues()(0);
    worst = std::max(worst, r.dH - r.normdiff);
    o.require(r.dH <= r.normdiff + 1e-10, "pair " + std::to_string(i) + " violates the bound");
    o.require(std::abs(svd - r.normdiff) <= 1e-10 * std::max(1.0, svd), "norm disagrees with Jacobi SVD");
    o.require(oracles::power_iteration_norm(D) <= r.normdiff * (1 + 1e-12), "norm below the power-iteration estimate");
  }
  if (o.ok) o.detail = "500 pairs, max dH - |A-B| = " + fmt("%.3g", worst);
  return o;
}

Outcome truncation() {
  Outcome o;
  const auto xi = periodic_word(Alphabet({"a"}), Word(1, '\0'));
  double worst = 0.0;
  for (double beta : {0.5, 1.0}) {
    const Hamiltonian H = synthetic_long_range(beta, 511);
    const CMatrix full = assemble_dirichlet_1d(H, xi, 0, 512).matrix;
    const double nb = schur_norm(H);
    for (double s : {2.0, 4.0, 8.0, 16.0}) {
      const CMatrix cut = assemble_dirichlet_1d(truncate_range(H, s), xi, 0, 512).matrix;
      const double lhs = hermitian_norm(full - cut), rhs = nb * std::pow(s, -beta);
      worst = std::max(worst, lhs / rhs);
      o.require(lhs <= rhs * (1 + 1e-9), "beta " + fmt("%g", beta) + " s " + fmt("%g", s) + ": " + fmt("%.6g", lhs) +
                                             " > " + fmt("%.6g", rhs));
    }
  }
  if (o.ok) o.detail = "max ratio " + fmt("%.4f", worst);
  return o;
}

Outcome positivity() {
  Outcome o;
  gen::Rng rng(6006);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto xi = periodic_word(Alphabet({"a"}), Word(1, '\0'));
  double min_entry = 1e300;
  for (int m = 0; m < 100; ++m) {
    const Hamiltonian H = gen::random_model(rng);
    const double nb = schur_norm(H);
    for (const Hamiltonian& C : {comparison_operator_beta(H), comparison_operator_infty(H)}) {
      const CMatrix W = assemble_dirichlet_1d(C, xi, 0, 48).matrix;
      o.require(hermitian_norm(W) <= nb + 1e-9, "window norm exceeds the Schur norm for model " + std::to_string(m));
      for (int v = 0; v < 100; ++v) {
        Eigen::VectorXcd x(W.rows());
        for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = u(rng);
        const Eigen::VectorXcd y = W * x;
        for (Eigen::Index k = 0; k < y.size(); ++k) {
          min_entry = std::min(min_entry, y[k].real());
          o.require(y[k].real() >= -1e-14 && std::abs(y[k].imag()) <= 1e-14, "negative image for model " + std::to_string(m));
        }
      }
    }
  }
  if (o.ok) o.detail = "min entry " + fmt("%.3g", min_entry);
  return o;
}

Outcome partition() {
  Outcome o;
  const auto pc = partition_constants(Z);
  const double sampled = sampled_lipschitz_constant(Z, 1e-4);
  o.require(pc.Noverlap == 3, "N != 3 for d = 1");
  o.require(pc.C_L == 6.0, "C_L != 6");
  o.require(std::abs(sampled - 6.0) <= 1e-6, "grid C_L " + fmt("%.9g", sampled));
  o.require(overlap_count(Lattice::integer(2)) == 9, "N != 9 for d = 2");
  gen::Rng rng(7007);
  std::uniform_real_distribution<double> x(-50.0, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) worst = std::max(worst, std::abs(partition_sum(Z, Eigen::VectorXd::Constant(1, x(rng))) - 1.0));
  o.require(worst <= 1e-10, "partition sum off by " + fmt("%.3g", worst));
  for (double r : {2.0, 5.0, 10.0}) {
    double best = 0.0;
    const double h = 1e-4;
    for (double t = -r; t < r; t += h) {
      const double a = partition_bump(Z, Eigen::VectorXd::Constant(1, t / r));
      const double b = partition_bump(Z, Eigen::VectorXd::Constant(1, (t + h) / r));
      best = std::max(best, std::abs(b - a) / h);
    }
    o.require(best <= pc.C_L / r * 1.001, "rescaled Lipschitz at r = " + fmt("%g", r) + " is " + fmt("%.6g", best));
  }
  if (o.ok) o.detail = "grid C_L " + fmt("%.9f", sampled) + ", sum error " + fmt("%.2e", worst);
  return o;
}

Outcome run_sweep_criterion(const std::string& file, bool fibonacci) {
  Outcome o;
  const auto spec = parse_experiment(io::read_json_file(data(file)));
  const auto r = sweep_convergents(spec);
  const double closed = 288.0 * (2.0 * std::sqrt(2.0) + 1.0);
  for (const auto& row : r.rows) {
    if (row.aborted()) {
      o.fail("k=" + std::to_string(row.k) + " aborted: " + row.error);
      continue;
    }
    const double limit = closed * row.certificate.constants.C_hop * row.d_subshift;
    o.require(std::abs(row.certificate.bound - limit) <= 1e-9 * limit, "certificate constant differs from 288(2v2+1)");
    o.require(row.d_spectral <= limit, "k=" + std::to_string(row.k) + " d_spectral " + fmt("%.6g", row.d_spectral) +
                                           " > " + fmt("%.6g", limit));
    if (!fibonacci) o.require(!row.sampled, "dictionary sampled at " + row.approximant);
  }
  std::string detail = std::to_string(r.summary.passed) + "/" + std::to_string(r.rows.size()) + " rows vs " +
                       r.summary.reference + ", max ratio " + fmt("%.4g", r.summary.max_ratio);
  if (fibonacci) {
    o.require(r.summary.slope.has_value(), "no slope");
    if (r.summary.slope) {
      o.require(*r.summary.slope >= 0.9, "slope " + fmt("%.4f", *r.summary.slope) + " < 0.9");
      detail += ", slope " + fmt("%.4f", *r.summary.slope);
    }
  }
  if (o.ok) o.detail = detail;
  return o;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(APERISPEC_CLI_PATH) + " " + args + " 2>/dev/null";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("aperispec_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
  const std::string base = "sweep " + data("sweep_fibonacci.json") + " --seed 1 --quiet --out ";
  o.require(run_cli(base + a) == 0, "first run failed");
  o.require(run_cli(base + b) == 0, "second run failed");
  const std::string ca = slurp(a), cb = slurp(b);
  o.require(!ca.empty() && ca == cb, "CSV files differ");
  if (o.ok) o.detail = std::to_string(ca.size()) + " bytes identical";
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "metric-axioms", 10, metric_axioms},
      {2, "subshift-distance-oracle", 5, subshift_oracle},
      {3, "closed-form-spectra", 1, closed_form_spectra},
      {4, "norm-distance", 20, norm_distance},
      {5, "truncation-bound", 10, truncation},
      {6, "positivity", 0, positivity},
      {7, "partition-constants", 0, partition},
      {8, "fibonacci-sweep", 180, [] { return run_sweep_criterion("sweep_fibonacci.json", true); }},
      {9, "kohmoto-sweep", 180, [] { return run_sweep_criterion("sweep_kohmoto.json", false); }},
      {10, "sweep-determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && secs > c.time_limit)
      o.fail("runtime " + fmt("%.2f", secs) + " s exceeds " + fmt("%g", c.time_limit) + " s" +
             (o.detail.empty() ? "" : " (" + o.detail + ")"));
    std::printf("%s [%d] %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
