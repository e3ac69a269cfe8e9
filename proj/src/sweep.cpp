#include "aperispec/sweep.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "aperispec/errors.hpp"
#include "aperispec/partition.hpp"

namespace aperispec {

void ExperimentSpec::validate() const {
  if (!(k_min < k_max && k_max < k_ref)) throw DomainError("experiment needs k_min < k_max < k_ref");
  if (k_min < 1) throw DomainError("k_min must be >= 1");
  if (grid < 64) throw DomainError("experiment needs grid >= 64");
  if (!(tol > 0.0)) throw DomainError("spectrum tolerance must be positive");
  if (!(r_max >= 8.0)) throw DomainError("experiment needs r_max >= 8");
  if (family == Family::Fibonacci && k_ref > 60) throw DomainError("Fibonacci index too large");
}

ExperimentSpec parse_experiment(const io::json& j) {
  if (j.value("schema", 1) != 1) throw DomainError("unsupported experiment schema");
  ExperimentSpec s;
  if (!j.contains("model")) throw DomainError("experiment needs a \"model\"");
  s.model = j.at("model");
  if (j.contains("alphabet")) s.alphabet = io::parse_alphabet(j.at("alphabet"));
  if (!j.contains("family")) throw DomainError("experiment needs a \"family\"");
  const auto& f = j.at("family");
  const auto kind = f.value("kind", std::string());
  if (kind == "fibonacci") {
    s.family = ExperimentSpec::Family::Fibonacci;
  } else if (kind == "kohmoto") {
    s.family = ExperimentSpec::Family::Kohmoto;
    if (f.contains("alpha")) {
      const auto& a = f.at("alpha");
      if (a.is_string()) {
        s.alpha = a.get<std::string>();
      } else {
        // Same reading as configuration files: small-denominator rationals are recovered exactly.
        const Alpha parsed = Alpha::from_double(a.get<double>());
        s.alpha = parsed.is_rational() ? parsed.fraction().to_string() : io::format_double(a.get<double>());
      }
    }
    s.phase = f.value("phase", 0.0);
  } else {
    throw DomainError("family kind must be \"fibonacci\" or \"kohmoto\"");
  }
  s.k_min = f.value("k_min", 0);
  s.k_max = f.value("k_max", 0);
  s.k_ref = f.value("k_ref", 0);
  if (j.contains("spectrum")) {
    s.grid = j.at("spectrum").value("grid", s.grid);
    s.tol = j.at("spectrum").value("tol", s.tol);
  }
  s.r_max = j.value("r_max", s.r_max);
  s.seed = j.value("seed", s.seed);
  s.self_adjoint_samples = j.value("self_adjoint_samples", s.self_adjoint_samples);
  s.validate();
  return s;
}

namespace {

struct Member {
  std::string label;
  Configuration config;
};

Member family_member(const ExperimentSpec& s, const std::vector<Fraction>& conv, int k) {
  if (s.family == ExperimentSpec::Family::Fibonacci)
    return {"F_" + std::to_string(k), periodic_word(s.alphabet, fibonacci_word(k))};
  if (k > static_cast<int>(conv.size()))
    throw DomainError("alpha has only " + std::to_string(conv.size()) + " convergents");
  const Fraction f = conv[k - 1];
  return {f.to_string(), kohmoto_configuration(Alpha::rational(f.p, f.q), s.phase, s.alphabet)};
}

std::string rational_text(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

SweepResult sweep_convergents(const ExperimentSpec& spec, const SweepProgress& progress) {
  spec.validate();
  const auto t_start = std::chrono::steady_clock::now();
  const Lattice lat = Lattice::integer(1);
  const Hamiltonian H = io::parse_hamiltonian(spec.model, lat, spec.alphabet);
  const PartitionConstants pc = partition_constants(lat);
  const double beta = H.beta();

  std::vector<Fraction> conv;
  if (spec.family == ExperimentSpec::Family::Kohmoto) conv = convergents(Alpha::parse(spec.alpha), spec.k_ref);

  SweepResult out;
  out.spec = spec;
  const Member ref = family_member(spec, conv, spec.k_ref);
  const Subshift ref_sub = Subshift::periodic_orbit(ref.config);
  const SpectrumSet ref_spec = periodic_spectrum(H, ref.config, spec.grid, spec.tol);
  out.summary.reference = ref.label;
  out.summary.reference_period = ref.config.periods().at(0);

  for (int k = spec.k_min; k <= spec.k_max; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepRow row;
    row.k = k;
    try {
      const Member m = family_member(spec, conv, k);
      row.approximant = m.label;
      row.period = m.config.periods().at(0);
      const Subshift sub = Subshift::periodic_orbit(m.config);
      const SelfAdjointReport sa = verify_self_adjoint(H, sub, spec.self_adjoint_samples, spec.seed + k);
      if (!sa.passed())
        throw DomainError("model fails self-adjointness on " + m.label + ": " +
                          (sa.violations.empty() ? std::string("range not symmetric") : sa.violations.front()));
      const SubshiftDistance d = subshift_distance(sub, ref_sub, spec.r_max);
      row.d_subshift = to_double(d.value);
      row.d_subshift_exact = rational_text(d.value);
      row.d_lower_bound = d.lower_bound;
      row.sampled = d.sampled;
      row.agreement_radius = d.agreement_radius;
      row.d_spectral = hausdorff_distance_sets(periodic_spectrum(H, m.config, spec.grid, spec.tol), ref_spec);
      std::ostringstream inputs;
      inputs << "pair=" << m.label << "|" << ref.label << ";r_max=" << io::format_double(spec.r_max)
             << ";grid=" << spec.grid << ";tol=" << io::format_double(spec.tol);
      row.certificate = finite_range_bound(H, row.d_subshift, pc, row.d_lower_bound, inputs.str());
      row.ratio = row.d_subshift > 0.0 ? row.d_spectral / std::pow(row.d_subshift, beta) : 0.0;
      row.pass = row.d_spectral <= row.certificate.bound;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    row.wall_seconds = seconds_since(t0);
    if (progress) progress(row);
    out.rows.push_back(std::move(row));
  }

  SweepSummary& s = out.summary;
  std::vector<double> lx, ly;
  double last_d = 2.0;
  for (const auto& r : out.rows) {
    ++s.rows;
    if (r.aborted()) {
      ++s.aborted;
      continue;
    }
    r.pass ? ++s.passed : ++s.failed;
    s.max_ratio = std::max(s.max_ratio, r.ratio);
    if (r.d_subshift > last_d) s.d_subshift_nonincreasing = false;
    last_d = r.d_subshift;
    if (r.d_subshift > 0.0 && r.d_spectral > 0.0) {
      lx.push_back(std::log(r.d_subshift));
      ly.push_back(std::log(r.d_spectral));
    }
  }
  s.slope = loglog_slope(lx, ly);
  s.slope_points = lx.size();
  s.wall_seconds = seconds_since(t_start);
  return out;
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "schema,k,approximant,period,reference,d_subshift,d_subshift_exact,d_lower_bound,sampled,agreement_radius,"
        "d_spectral,bound,effective_bound,ratio,pass,digest,error\n";
  for (const auto& row : r.rows) {
    os << 1 << ',' << row.k << ',' << csv_field(row.approximant) << ',' << row.period << ','
       << csv_field(r.summary.reference) << ',';
    if (row.aborted()) {
      os << ",,,,,,,,,0,," << csv_field(row.error) << '\n';
      continue;
    }
    os << io::format_double(row.d_subshift) << ',' << row.d_subshift_exact << ',' << (row.d_lower_bound ? 1 : 0) << ','
       << (row.sampled ? 1 : 0) << ',' << row.agreement_radius << ',' << io::format_double(row.d_spectral) << ','
       << io::format_double(row.certificate.bound) << ',' << io::format_double(row.certificate.effective) << ','
       << io::format_double(row.ratio) << ',' << (row.pass ? 1 : 0) << ',' << row.certificate.digest << ",\n";
  }
  return os.str();
}

std::string sweep_dat(const SweepResult& r) {
  std::ostringstream os;
  os << "# reference " << r.summary.reference << " period " << r.summary.reference_period << "\n";
  os << "# k period d_subshift d_spectral bound ratio pass\n";
  for (const auto& row : r.rows) {
    if (row.aborted()) {
      os << "# k=" << row.k << " aborted: " << row.error << '\n';
      continue;
    }
    os << row.k << ' ' << row.period << ' ' << io::format_double(row.d_subshift) << ' '
       << io::format_double(row.d_spectral) << ' ' << io::format_double(row.certificate.bound) << ' '
       << io::format_double(row.ratio) << ' ' << (row.pass ? 1 : 0) << '\n';
  }
  return os.str();
}

io::json sweep_summary_json(const SweepResult& r) {
  const auto& s = r.summary;
  io::json rows = io::json::array();
  for (const auto& row : r.rows) {
    io::json j = {{"k", row.k}, {"approximant", row.approximant}, {"period", row.period}, {"wall_seconds", row.wall_seconds}};
    if (row.aborted()) {
      j["error"] = row.error;
    } else {
      j["d_subshift"] = row.d_subshift;
      j["d_lower_bound"] = row.d_lower_bound;
      j["d_spectral"] = row.d_spectral;
      j["certificate"] = io::certificate_to_json(row.certificate);
      j["ratio"] = row.ratio;
      j["pass"] = row.pass;
    }
    rows.push_back(std::move(j));
  }
  return {{"schema", 1},
          {"reference", s.reference},
          {"reference_period", s.reference_period},
          {"rows", rows},
          {"summary",
           {{"rows", s.rows},
            {"passed", s.passed},
            {"failed", s.failed},
            {"aborted", s.aborted},
            {"max_ratio", s.max_ratio},
            {"slope", s.slope ? io::json(*s.slope) : io::json(nullptr)},
            {"slope_points", s.slope_points},
            {"d_subshift_nonincreasing", s.d_subshift_nonincreasing},
            {"wall_seconds", s.wall_seconds}}}};
}

}  // namespace aperispec
