#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "aperispec/bounds.hpp"
#include "aperispec/checks/selftest.hpp"
#include "aperispec/errors.hpp"
#include "aperispec/io.hpp"
#include "aperispec/partition.hpp"
#include "aperispec/spectra.hpp"
#include "aperispec/sweep.hpp"

using namespace aperispec;

namespace {

constexpr int kExitUsage = 64;

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw DomainError("cannot write " + out);
  f << text;
}

std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

// A model file may carry its own lattice; otherwise the configuration's lattice is used.
Hamiltonian load_model(const io::json& model, const io::SubshiftFile& on) {
  const Lattice lat = model.contains("lattice") ? io::parse_lattice(model.at("lattice")) : on.lattice;
  return io::parse_hamiltonian(model, lat, on.alphabet);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aperispec: spectral continuity certificates for aperiodic tight-binding operators"};
  app.require_subcommand(1);
  std::string out;

  auto* dict = app.add_subcommand("dict", "pattern dictionary of a subshift at a radius");
  std::string dict_file;
  std::int64_t dict_radius = 1;
  dict->add_option("subshift", dict_file, "subshift JSON")->required();
  dict->add_option("--radius,-r", dict_radius, "pattern radius")->check(CLI::PositiveNumber);
  dict->add_option("--out,-o", out);

  auto* dist = app.add_subcommand("dist", "Hausdorff distance between two subshifts");
  std::string dist_a, dist_b;
  double rmax = 64.0;
  bool dist_config = false;
  dist->add_option("a", dist_a, "first subshift JSON")->required();
  dist->add_option("b", dist_b, "second subshift JSON")->required();
  dist->add_option("--rmax", rmax, "largest radius scanned");
  dist->add_flag("--config", dist_config, "distance between the two configurations instead of their subshifts");
  dist->add_option("--out,-o", out);

  auto* spectrum = app.add_subcommand("spectrum", "band spectrum of a periodic configuration on Z");
  std::string spec_model, spec_config;
  int grid = 256;
  double tol = 1e-10;
  spectrum->add_option("model", spec_model, "model JSON")->required();
  spectrum->add_option("config", spec_config, "configuration JSON")->required();
  spectrum->add_option("--grid", grid);
  spectrum->add_option("--tol", tol);
  spectrum->add_option("--out,-o", out);

  auto* bound = app.add_subcommand("bound", "spectral distance certificate for a pair of subshifts");
  std::string bound_model, bound_a, bound_b, theorem = "finite";
  double C_H = 0.0;
  bound->add_option("model", bound_model, "model JSON")->required();
  bound->add_option("a", bound_a, "first subshift JSON")->required();
  bound->add_option("b", bound_b, "second subshift JSON")->required();
  bound->add_option("--rmax", rmax, "largest radius scanned for the subshift distance");
  bound->add_option("--theorem", theorem, "finite | infinite | fallback")
      ->check(CLI::IsMember({"finite", "infinite", "fallback"}));
  bound->add_option("--C_H", C_H, "declared linear growth constant (infinite)");
  bound->add_option("--out,-o", out);

  auto* sweep = app.add_subcommand("sweep", "convergent sweep of an experiment spec");
  std::string exp_file, dat_out, json_out;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  sweep->add_option("experiment", exp_file, "experiment JSON")->required();
  sweep->add_option("--out,-o", out, "CSV output (default stdout)");
  sweep->add_option("--dat", dat_out, "gnuplot .dat output");
  sweep->add_option("--json", json_out, "summary JSON output");
  sweep->add_option("--seed", seed, "override the spec seed");
  sweep->add_flag("--quiet,-q", quiet, "no progress on stderr");

  auto* selftest = app.add_subcommand("selftest", "run every invariant group");
  std::uint64_t st_seed = SelftestOptions{}.seed;
  std::string fault;
  selftest->add_option("--seed", st_seed);
  selftest->add_option("--inject-fault", fault, "corrupt an input on purpose (metric)")->check(CLI::IsMember({"metric"}));
  selftest->add_option("--out,-o", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (*dict) {
      const auto f = io::parse_subshift_file(io::read_json_file(dict_file));
      emit(dump(io::dictionary_to_json(pattern_dictionary(f.subshift, dict_radius), f.alphabet)), out);
    } else if (*dist) {
      const auto a = io::parse_subshift_file(io::read_json_file(dist_a));
      const auto b = io::parse_subshift_file(io::read_json_file(dist_b));
      if (dist_config) {
        if (!a.configuration || !b.configuration) throw DomainError("--config needs a configuration in both files");
        const auto d = config_distance(*a.configuration, *b.configuration, rmax);
        emit(dump({{"d", to_double(d.value)},
                   {"exact", std::to_string(d.value.numerator()) + "/" + std::to_string(d.value.denominator())},
                   {"lower_bound", d.lower_bound},
                   {"agree_on_cube", d.agree_on_cube}}),
             out);
      } else {
        emit(dump(io::distance_to_json(subshift_distance(a.subshift, b.subshift, rmax))), out);
      }
    } else if (*spectrum) {
      const auto cfg = io::parse_subshift_file(io::read_json_file(spec_config));
      if (!cfg.configuration) throw DomainError(spec_config + " has no configuration");
      const Hamiltonian H = load_model(io::read_json_file(spec_model), cfg);
      SpectrumSet s = periodic_spectrum(H, *cfg.configuration, grid, tol);
      s.meta.model = spec_model;
      emit(dump(io::spectrum_to_json(s)), out);
    } else if (*bound) {
      const auto a = io::parse_subshift_file(io::read_json_file(bound_a));
      const auto b = io::parse_subshift_file(io::read_json_file(bound_b));
      const Hamiltonian H = load_model(io::read_json_file(bound_model), a);
      const auto d = subshift_distance(a.subshift, b.subshift, rmax);
      const auto pc = partition_constants(H.lattice());
      const std::string inputs = "model=" + bound_model + ";a=" + bound_a + ";b=" + bound_b + ";r_max=" + io::format_double(rmax);
      const double dv = to_double(d.value);
      BoundCertificate c = theorem == "finite"     ? finite_range_bound(H, dv, pc, d.lower_bound, inputs)
                           : theorem == "infinite" ? infinite_range_bound(H, C_H, dv, pc, d.lower_bound, inputs)
                                                   : norm_fallback_certificate(H, dv, pc, d.lower_bound, inputs);
      emit(dump(io::certificate_to_json(c)), out);
    } else if (*sweep) {
      ExperimentSpec spec = parse_experiment(io::read_json_file(exp_file));
      if (seed) spec.seed = *seed;
      const auto r = sweep_convergents(spec, [&](const SweepRow& row) {
        if (quiet) return;
        std::cerr << "k=" << row.k << " " << row.approximant << " period " << row.period << " "
                  << (row.aborted() ? "aborted: " + row.error : (row.pass ? "pass" : "FAIL")) << " (" << row.wall_seconds
                  << " s)\n";
      });
      emit(sweep_csv(r), out);
      if (!dat_out.empty()) emit(sweep_dat(r), dat_out);
      if (!json_out.empty()) emit(dump(sweep_summary_json(r)), json_out);
    } else if (*selftest) {
      SelftestOptions o;
      o.seed = st_seed;
      o.inject_fault = fault;
      const auto rep = run_selftest(o);
      emit(dump(rep.to_json()), out);
      return rep.passed() ? 0 : 1;
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
