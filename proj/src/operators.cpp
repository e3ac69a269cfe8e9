#include "aperispec/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "aperispec/errors.hpp"

namespace aperispec {

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().maxCoeff();
}

namespace {

CMatrix scalar(std::complex<double> v) {
  CMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

std::string point_string(const LatticePoint& p) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < p.dim(); ++i) os << (i ? "," : "") << p.n[i];
  os << ")";
  return os.str();
}

std::string key_digits(const Word& key) {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(static_cast<unsigned char>(key[i]));
  }
  return out;
}

void check_declared(double C_t, double R_t) {
  if (!(C_t >= 1.0) || !std::isfinite(C_t)) throw DomainError("declared Hölder constant C_t must be >= 1");
  if (!(R_t >= 1.0) || !std::isfinite(R_t)) throw DomainError("declared radius of influence R_t must be >= 1");
}

std::int64_t cube_index(int d, std::int64_t rho, const LatticePoint& z) {
  const std::int64_t side = 2 * rho + 1;
  std::int64_t idx = 0;
  for (int i = 0; i < d; ++i) {
    if (std::llabs(z.n[i]) > rho) throw DomainError("site lies outside the pattern");
    idx = idx * side + z.n[i] + rho;
  }
  return idx;
}

}  // namespace

CoefficientFn CoefficientFn::constant(CMatrix value, double C_t, double R_t) {
  if (value.rows() == 0 || value.rows() != value.cols()) throw DomainError("coefficient matrix must be square and non-empty");
  if (!value.allFinite()) throw DomainError("coefficient matrix has non-finite entries");
  check_declared(C_t, R_t);
  CoefficientFn c;
  c.kind = ConstantCoef{std::move(value)};
  c.C_t = C_t;
  c.R_t = R_t;
  return c;
}

CoefficientFn CoefficientFn::constant(std::complex<double> value, double C_t, double R_t) {
  return constant(scalar(value), C_t, R_t);
}

CoefficientFn CoefficientFn::lookup(std::int64_t key_radius, std::map<Word, CMatrix> table, double C_t, double R_t) {
  if (key_radius < 0) throw DomainError("lookup key radius must be >= 0");
  if (table.empty()) throw DomainError("lookup table must not be empty");
  const auto n = table.begin()->second.rows();
  const auto key_len = table.begin()->first.size();
  for (const auto& [key, m] : table) {
    if (m.rows() == 0 || m.rows() != m.cols() || m.rows() != n) throw DomainError("lookup values must share one square size");
    if (!m.allFinite()) throw DomainError("lookup value has non-finite entries");
    if (key.size() != key_len) throw DomainError("lookup keys must share one pattern size");
  }
  if (R_t <= 0.0) R_t = std::max<double>(1.0, static_cast<double>(key_radius));
  check_declared(C_t, R_t);
  CoefficientFn c;
  c.kind = LookupCoef{key_radius, std::move(table)};
  c.C_t = C_t;
  c.R_t = R_t;
  return c;
}

std::int64_t CoefficientFn::key_radius() const {
  if (const auto* l = std::get_if<LookupCoef>(&kind)) return l->key_radius;
  return 0;
}

int CoefficientFn::N() const {
  if (const auto* c = std::get_if<ConstantCoef>(&kind)) return static_cast<int>(c->value.rows());
  return static_cast<int>(std::get<LookupCoef>(kind).table.begin()->second.rows());
}

double CoefficientFn::sup_norm() const {
  if (const auto* c = std::get_if<ConstantCoef>(&kind)) return op_norm(c->value);
  double m = 0.0;
  for (const auto& [key, v] : std::get<LookupCoef>(kind).table) m = std::max(m, op_norm(v));
  return m;
}

const CMatrix& CoefficientFn::at_key(const Word& key) const {
  if (const auto* c = std::get_if<ConstantCoef>(&kind)) return c->value;
  const auto& table = std::get<LookupCoef>(kind).table;
  const auto it = table.find(key);
  if (it == table.end()) throw UncoveredPatternError(key_digits(key));
  return it->second;
}

CMatrix evaluate_coefficient(const CoefficientFn& c, const Configuration& xi, const LatticePoint& x) {
  if (c.is_constant()) return std::get<ConstantCoef>(c.kind).value;
  const Word key = xi.window(x, c.key_radius());
  const auto& table = std::get<LookupCoef>(c.kind).table;
  const auto it = table.find(key);
  if (it == table.end()) throw UncoveredPatternError(xi.alphabet().render(key));
  return it->second;
}

CMatrix evaluate_coefficient_on_pattern(const CoefficientFn& c, int d, std::int64_t rho, const Word& pattern,
                                        const LatticePoint& site) {
  if (c.is_constant()) return std::get<ConstantCoef>(c.kind).value;
  const std::int64_t k = c.key_radius();
  Word key;
  if (d == 1) {
    const std::int64_t start = site.n[0] - k + rho;
    if (start < 0 || site.n[0] + k > rho) throw DomainError("coefficient key reaches outside the pattern");
    key = pattern.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(2 * k + 1));
  } else {
    for (const auto& q : cube_points(Lattice::integer(d), static_cast<double>(k) + 0.5))
      key.push_back(pattern[static_cast<std::size_t>(cube_index(d, rho, site + q))]);
  }
  return c.at_key(key);
}

Hamiltonian::Hamiltonian(Lattice lat, int N, double beta, std::vector<HopTerm> terms)
    : lattice_(std::move(lat)), N_(N), beta_(beta), terms_(std::move(terms)) {
  if (N_ < 1) throw DomainError("internal dimension N must be >= 1");
  if (!(beta_ > 0.0 && beta_ <= 1.0)) throw DomainError("Hölder exponent beta must lie in (0,1]");
  const int d = lattice_.dim();
  std::set<LatticePoint> seen;
  for (const auto& t : terms_) {
    if (t.h.dim() != d) throw DomainError("hop vector dimension differs from the lattice dimension");
    if (!seen.insert(t.h).second) throw DomainError("duplicate hop " + point_string(t.h));
    if (t.coef.N() != N_) throw DomainError("coefficient size differs from N at hop " + point_string(t.h));
    if (const auto* l = std::get_if<LookupCoef>(&t.coef.kind)) {
      if (l->table.begin()->first.size() != cube_size(d, l->key_radius))
        throw DomainError("lookup key size does not match its radius at hop " + point_string(t.h));
    }
    R_H_ = std::max(R_H_, t.coef.R_t);
    C_hop_ = std::max(C_hop_, t.coef.C_t);
  }
}

std::int64_t Hamiltonian::max_hop() const {
  std::int64_t m = 0;
  for (const auto& t : terms_) m = std::max(m, max_norm(t.h));
  return m;
}

std::int64_t Hamiltonian::context_radius() const {
  std::int64_t rho = 1;
  for (const auto& t : terms_) rho = std::max(rho, max_norm(t.h) + t.coef.key_radius());
  for (const auto& t : terms_) rho = std::max(rho, t.coef.key_radius());
  return rho;
}

const HopTerm* Hamiltonian::find(const LatticePoint& h) const {
  for (const auto& t : terms_)
    if (t.h == h) return &t;
  return nullptr;
}

bool Hamiltonian::range_symmetric() const {
  for (const auto& t : terms_)
    if (!find(-t.h)) return false;
  return true;
}

double schur_norm(const Hamiltonian& H, std::optional<double> beta_override) {
  const double beta = beta_override.value_or(H.beta());
  double s = 0.0;
  for (const auto& t : H.terms()) {
    const double len = H.lattice().euclidean_length(t.h);
    s += t.coef.sup_norm() * std::pow(1.0 + len * len, beta / 2.0);
  }
  return s;
}

SelfAdjointReport verify_self_adjoint(const Hamiltonian& H, const Subshift& S, std::size_t n_samples, std::uint64_t seed) {
  SelfAdjointReport rep;
  for (const auto& t : H.terms()) {
    if (!H.find(-t.h)) {
      rep.r1 = false;
      rep.violations.push_back("(R1) hop " + point_string(t.h) + " present but " + point_string(-t.h) + " missing");
    }
  }
  if (H.terms().empty()) return rep;
  const int d = H.lattice().dim();
  const std::int64_t rho = H.context_radius();
  const auto dict = pattern_dictionary(S, rho);
  const std::vector<Word> patterns(dict.patterns.begin(), dict.patterns.end());
  const std::size_t total = patterns.size() * H.terms().size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (n_samples >= total) {
    for (std::size_t p = 0; p < patterns.size(); ++p)
      for (std::size_t h = 0; h < H.terms().size(); ++h) pairs.emplace_back(p, h);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_p(0, patterns.size() - 1), pick_h(0, H.terms().size() - 1);
    for (std::size_t i = 0; i < n_samples; ++i) pairs.emplace_back(pick_p(rng), pick_h(rng));
  }
  const LatticePoint origin = LatticePoint::origin(d);
  for (const auto& [pi, hi] : pairs) {
    const HopTerm& t = H.terms()[hi];
    const HopTerm* partner = H.find(-t.h);
    if (!partner) continue;
    ++rep.checked;
    const Word& pat = patterns[pi];
    try {
      const CMatrix a = evaluate_coefficient_on_pattern(t.coef, d, rho, pat, origin);
      const CMatrix b = evaluate_coefficient_on_pattern(partner->coef, d, rho, pat, -t.h);
      const double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
      const double resid = (b - a.adjoint()).cwiseAbs().maxCoeff();
      if (resid > 1e-12 * scale) {
        rep.r2 = false;
        std::ostringstream os;
        os << "(R2) hop " << point_string(t.h) << " on pattern '" << S.alphabet().render(pat)
           << "': t_{-h} at x-h differs from t_h(x)^* by " << resid;
        rep.violations.push_back(os.str());
      }
    } catch (const UncoveredPatternError& e) {
      rep.r2 = false;
      rep.violations.push_back("(R2) hop " + point_string(t.h) + " could not be evaluated: " + e.what());
    }
  }
  return rep;
}

double minimal_hoelder_constant(const CoefficientFn& c, const Alphabet& alphabet, const PatternDictionary& dict, double beta) {
  if (dict.patterns.empty()) throw DomainError("minimal Hölder constant needs a non-empty dictionary");
  if (c.is_constant()) return 1.0;
  const std::int64_t k = c.key_radius();
  if (dict.radius < k) throw DomainError("dictionary radius is smaller than the coefficient key radius");
  // The dimension follows from the pattern size at the dictionary radius.
  int d = 1;
  while (cube_size(d, dict.radius) < dict.patterns.begin()->size()) ++d;
  std::set<Word> keys;
  for (const auto& p : dict.patterns) keys.insert(restrict_pattern(d, dict.radius, k, p));
  std::vector<std::pair<Word, CMatrix>> vals;
  for (const auto& key : keys) vals.emplace_back(key, c.at_key(key));
  double best = 1.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    for (std::size_t j = i + 1; j < vals.size(); ++j) {
      double dist = 0.0;
      for (std::size_t y = 0; y < vals[i].first.size(); ++y)
        dist = std::max(dist, to_double(alphabet.distance(static_cast<unsigned char>(vals[i].first[y]),
                                                          static_cast<unsigned char>(vals[j].first[y]))));
      const double diff = op_norm(vals[i].second - vals[j].second);
      best = std::max(best, diff / std::pow(dist, beta));
    }
  }
  return best;
}

Hamiltonian truncate_range(const Hamiltonian& H, double s) {
  if (!(s >= 1.0)) throw DomainError("truncation radius must be >= 1");
  std::vector<HopTerm> kept;
  for (const auto& t : H.terms())
    if (static_cast<double>(max_norm(t.h)) <= s) kept.push_back(t);
  return Hamiltonian(H.lattice(), H.N(), H.beta(), std::move(kept));
}

Hamiltonian comparison_operator_beta(const Hamiltonian& H) {
  std::vector<HopTerm> terms;
  for (const auto& t : H.terms()) {
    const double len = H.lattice().euclidean_length(t.h);
    const double w = std::pow(1.0 + len * len, H.beta() / 2.0);
    const double C = std::max(1.0, w * t.coef.C_t);
    if (const auto* c = std::get_if<ConstantCoef>(&t.coef.kind)) {
      terms.push_back({t.h, CoefficientFn::constant(w * op_norm(c->value), C, t.coef.R_t)});
    } else {
      const auto& l = std::get<LookupCoef>(t.coef.kind);
      std::map<Word, CMatrix> table;
      for (const auto& [key, v] : l.table) table.emplace(key, scalar(w * op_norm(v)));
      terms.push_back({t.h, CoefficientFn::lookup(l.key_radius, std::move(table), C, t.coef.R_t)});
    }
  }
  return Hamiltonian(H.lattice(), 1, H.beta(), std::move(terms));
}

Hamiltonian comparison_operator_infty(const Hamiltonian& H) {
  std::vector<HopTerm> terms;
  for (const auto& t : H.terms()) terms.push_back({t.h, CoefficientFn::constant(t.coef.sup_norm(), 1.0, t.coef.R_t)});
  return Hamiltonian(H.lattice(), 1, H.beta(), std::move(terms));
}

Hamiltonian schrodinger_hamiltonian(const Lattice& lat, const Alphabet& alphabet, double lambda, double beta) {
  if (!std::isfinite(lambda)) throw DomainError("coupling lambda must be finite");
  const int d = lat.dim();
  std::vector<HopTerm> terms;
  for (int j = 0; j < d; ++j) {
    LatticePoint e = LatticePoint::origin(d);
    e.n[j] = 1;
    terms.push_back({e, CoefficientFn::constant(1.0)});
    terms.push_back({-e, CoefficientFn::constant(1.0)});
  }
  std::map<Word, CMatrix> table;
  double osc = 0.0;
  for (std::size_t a = 0; a < alphabet.size(); ++a) {
    table.emplace(Word(1, static_cast<char>(a)), scalar(lambda * alphabet.value(static_cast<int>(a))));
    for (std::size_t b = 0; b < alphabet.size(); ++b)
      osc = std::max(osc, std::abs(alphabet.value(static_cast<int>(a)) - alphabet.value(static_cast<int>(b))));
  }
  terms.push_back({LatticePoint::origin(d), CoefficientFn::lookup(0, std::move(table), std::max(1.0, std::abs(lambda) * osc))});
  return Hamiltonian(lat, 1, beta, std::move(terms));
}

Hamiltonian synthetic_long_range(double beta, std::int64_t h_max) {
  if (h_max < 1) throw DomainError("synthetic model needs h_max >= 1");
  std::vector<HopTerm> terms;
  for (std::int64_t k = 1; k <= h_max; ++k) {
    const double v = std::pow(static_cast<double>(k), -(beta + 2.0));
    const double R = static_cast<double>(k);
    terms.push_back({LatticePoint{k}, CoefficientFn::constant(v, 1.0, R)});
    terms.push_back({LatticePoint{-k}, CoefficientFn::constant(v, 1.0, R)});
  }
  return Hamiltonian(Lattice::integer(1), 1, beta, std::move(terms));
}

}  // namespace aperispec
