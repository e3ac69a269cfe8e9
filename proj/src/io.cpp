#include "aperispec/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "aperispec/errors.hpp"

namespace aperispec::io {

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

Rational parse_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number()) return rational_from_double(j.get<double>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return rational_from_double(std::stod(s));
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw DomainError("malformed rational \"" + s + "\"");
    }
  }
  throw DomainError("expected a number or \"p/q\" string");
}

Alpha parse_alpha(const json& j) {
  if (j.is_string()) return Alpha::parse(j.get<std::string>());
  if (j.is_number()) return Alpha::from_double(j.get<double>());
  throw DomainError("alpha must be a number or an expression string");
}

// "alpha", "1-alpha", "c+k*alpha" forms are reduced to constant + coeff * alpha.
CirclePoint parse_circle_point(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0};
  if (!j.is_string()) throw DomainError("interval start must be a number or an alpha expression");
  std::string s;
  for (char c : j.get<std::string>())
    if (c != ' ') s.push_back(c);
  const auto pos = s.find("alpha");
  if (pos == std::string::npos) return {std::stod(s), 0};
  if (pos + 5 != s.size()) throw DomainError("alpha must end the interval start expression: " + s);
  std::string head = s.substr(0, pos);
  if (!head.empty() && head.back() == '*') head.pop_back();
  // head is now "", "-", "k", "c+", "c-", "c+k", "c-k".
  double c = 0.0;
  int k = 1;
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < head.size(); ++i)
    if (head[i] == '+' || head[i] == '-') split = i;
  std::string coeff = head;
  if (split != std::string::npos) {
    c = std::stod(head.substr(0, split));
    coeff = head.substr(split);
  }
  if (coeff.empty() || coeff == "+")
    k = 1;
  else if (coeff == "-")
    k = -1;
  else
    k = std::stoi(coeff);
  return {c, k};
}

int label_index(const json& j, const Alphabet& alphabet) {
  if (j.is_number_integer()) {
    const int i = j.get<int>();
    if (i < 0 || static_cast<std::size_t>(i) >= alphabet.size()) throw DomainError("label index out of range");
    return i;
  }
  return alphabet.index_of(j.get<std::string>());
}

Word parse_word_json(const json& j, const Alphabet& alphabet) {
  if (j.is_string()) return alphabet.parse_word(j.get<std::string>());
  if (!j.is_array()) throw DomainError("word must be a string or an array of labels");
  Word w;
  for (const auto& e : j) w.push_back(static_cast<char>(label_index(e, alphabet)));
  return w;
}

LatticePoint parse_point(const json& j, int d) {
  auto v = j.get<std::vector<std::int64_t>>();
  if (static_cast<int>(v.size()) != d) throw DomainError("lattice point has the wrong dimension");
  return LatticePoint(std::move(v));
}

Configuration parse_unshifted(const json& j, const Lattice& lat, const Alphabet& alphabet) {
  const auto kind = require(j, "kind").get<std::string>();
  const bool one_d = lat.dim() == 1 && lat.is_identity();
  if (kind == "periodic") {
    Word block = parse_word_json(require(j, "block"), alphabet);
    std::vector<std::int64_t> periods;
    if (j.contains("periods"))
      periods = j.at("periods").get<std::vector<std::int64_t>>();
    else if (lat.dim() == 1)
      periods = {static_cast<std::int64_t>(block.size())};
    else
      throw DomainError("periodic configuration in d > 1 needs \"periods\"");
    return Configuration::periodic(lat, alphabet, periods, block);
  }
  if (!one_d) throw DomainError("configuration kind \"" + kind + "\" is defined on Z only");
  if (kind == "fibonacci_periodic") {
    if (alphabet.size() < 2) throw DomainError("Fibonacci words need two labels");
    return periodic_word(alphabet, fibonacci_word(require(j, "k").get<int>()));
  }
  if (kind == "fibonacci") {
    if (alphabet.size() < 2) throw DomainError("Fibonacci words need two labels");
    return Configuration::substitution(alphabet, fibonacci_substitution());
  }
  if (kind == "substitution") {
    std::vector<Word> rules(alphabet.size());
    std::vector<bool> seen(alphabet.size(), false);
    for (const auto& [label, image] : require(j, "rules").items()) {
      const int i = alphabet.index_of(label);
      rules[i] = parse_word_json(image, alphabet);
      seen[i] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) throw DomainError("substitution has no rule for label " + alphabet.label(static_cast<int>(i)));
    const auto seed = require(j, "seed").get<std::string>();
    const auto dot = seed.find('.');
    if (dot == std::string::npos) throw DomainError("substitution seed must be \"left.right\"");
    return Configuration::substitution(alphabet, Substitution(rules, alphabet.index_of(seed.substr(0, dot)),
                                                              alphabet.index_of(seed.substr(dot + 1))));
  }
  if (kind == "kohmoto") {
    if (alphabet.size() < 2) throw DomainError("Kohmoto coding needs two labels");
    return kohmoto_configuration(parse_alpha(require(j, "alpha")), get_or(j, "phase", 0.0), alphabet);
  }
  if (kind == "rotation") {
    std::vector<CirclePoint> starts;
    std::vector<int> labels;
    for (const auto& iv : require(j, "intervals")) {
      starts.push_back(parse_circle_point(require(iv, "start")));
      labels.push_back(label_index(require(iv, "label"), alphabet));
    }
    CircleCoding coding(parse_alpha(require(j, "alpha")), get_or(j, "phase", 0.0), starts, labels);
    return Configuration::rotation(alphabet, std::move(coding));
  }
  throw DomainError("unknown configuration kind \"" + kind + "\"");
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

Lattice parse_lattice(const json& j) {
  const int d = require(j, "d").get<int>();
  if (d < 1) throw DomainError("lattice dimension must be >= 1");
  if (!j.contains("M")) return Lattice::integer(d);
  const auto rows = j.at("M").get<std::vector<std::vector<double>>>();
  if (static_cast<int>(rows.size()) != d) throw DomainError("basis M must be d x d");
  Eigen::MatrixXd M(d, d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(rows[i].size()) != d) throw DomainError("basis M must be d x d");
    for (int k = 0; k < d; ++k) M(i, k) = rows[i][k];
  }
  return Lattice(M);
}

Alphabet parse_alphabet(const json& j) {
  auto labels = require(j, "labels").get<std::vector<std::string>>();
  const std::size_t n = labels.size();
  Alphabet::Metric metric(n, std::vector<Rational>(n, Rational(1)));
  if (j.contains("metric")) {
    const auto& m = j.at("metric");
    if (!m.is_array() || m.size() != n) throw DomainError("metric must be an n x n array");
    for (std::size_t a = 0; a < n; ++a) {
      if (!m[a].is_array() || m[a].size() != n) throw DomainError("metric must be an n x n array");
      for (std::size_t b = 0; b < n; ++b) metric[a][b] = parse_rational(m[a][b]);
    }
  } else {
    for (std::size_t a = 0; a < n; ++a) metric[a][a] = Rational(0);
  }
  std::vector<std::complex<double>> values;
  if (j.contains("values"))
    for (const auto& v : j.at("values")) values.push_back(parse_complex(v));
  return Alphabet(std::move(labels), std::move(metric), std::move(values));
}

std::complex<double> parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw DomainError("expected a number or [re, im]");
}

CMatrix parse_matrix(const json& j) {
  if (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number())) {
    CMatrix m(1, 1);
    m(0, 0) = parse_complex(j);
    return m;
  }
  if (!j.is_array() || j.empty()) throw DomainError("expected a scalar or a square matrix");
  const auto n = static_cast<Eigen::Index>(j.size());
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != n) throw DomainError("matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = parse_complex(j[r][c]);
  }
  return m;
}

Configuration parse_configuration(const json& j, const Lattice& lat, const Alphabet& alphabet) {
  Configuration c = parse_unshifted(j, lat, alphabet);
  if (j.contains("shift")) c = shift(c, parse_point(j.at("shift"), lat.dim()));
  return c;
}

SubshiftFile parse_subshift_file(const json& j) {
  Lattice lat = j.contains("lattice") ? parse_lattice(j.at("lattice")) : Lattice::integer(1);
  Alphabet alphabet = parse_alphabet(require(j, "alphabet"));
  std::optional<Configuration> cfg;
  if (j.contains("configuration")) cfg = parse_configuration(j.at("configuration"), lat, alphabet);

  const json sub = j.contains("subshift") ? j.at("subshift") : json::object();
  std::string kind = get_or<std::string>(sub, "kind", "");
  if (kind.empty()) {
    if (sub.contains("dictionaries"))
      kind = "dictionary";
    else if (cfg && !cfg->periods().empty())
      kind = "periodic_orbit";
    else
      kind = "orbit_closure";
  }
  auto make = [&]() -> Subshift {
    if (kind == "dictionary") {
      std::map<std::int64_t, std::set<Word>> dicts;
      for (const auto& [radius, words] : require(sub, "dictionaries").items()) {
        std::set<Word> pats;
        for (const auto& w : words) pats.insert(parse_word_json(w, alphabet));
        dicts[std::stoll(radius)] = std::move(pats);
      }
      return Subshift::explicit_dictionary(lat, alphabet, std::move(dicts));
    }
    if (!cfg) throw DomainError("subshift kind \"" + kind + "\" needs a \"configuration\"");
    if (kind == "periodic_orbit") return Subshift::periodic_orbit(*cfg);
    if (kind == "orbit_closure") return Subshift::orbit_closure(*cfg);
    throw DomainError("unknown subshift kind \"" + kind + "\"");
  };
  Subshift s = make();
  if (sub.contains("name")) s.with_name(sub.at("name").get<std::string>());
  return SubshiftFile{std::move(lat), std::move(alphabet), std::move(cfg), std::move(s)};
}

Hamiltonian parse_hamiltonian(const json& root, const Lattice& lat, const Alphabet& alphabet) {
  const json& j = root.contains("hamiltonian") ? root.at("hamiltonian") : root;
  const double beta = get_or(j, "beta", 1.0);
  if (j.contains("schrodinger"))
    return schrodinger_hamiltonian(lat, alphabet, require(j.at("schrodinger"), "lambda").get<double>(), beta);
  const int N = get_or(j, "N", 1);
  std::vector<HopTerm> terms;
  for (const auto& t : require(j, "terms")) {
    const LatticePoint h = parse_point(require(t, "h"), lat.dim());
    const double C_t = get_or(t, "C_t", 1.0);
    if (t.contains("lookup")) {
      const auto& lk = t.at("lookup");
      const auto radius = require(lk, "radius").get<std::int64_t>();
      std::map<Word, CMatrix> table;
      for (const auto& [key, value] : require(lk, "table").items()) table[alphabet.parse_word(key)] = parse_matrix(value);
      terms.push_back({h, CoefficientFn::lookup(radius, std::move(table), C_t, get_or(t, "R_t", 0.0))});
    } else {
      terms.push_back({h, CoefficientFn::constant(parse_matrix(require(t, "value")), C_t, get_or(t, "R_t", 1.0))});
    }
  }
  return Hamiltonian(lat, N, beta, std::move(terms));
}

json spectrum_to_json(const SpectrumSet& s) {
  json bands = json::array();
  for (const auto& [a, b] : s.bands) bands.push_back({a, b});
  json raw = json::array();
  for (const auto& [a, b] : s.meta.raw_bands) raw.push_back({a, b});
  return {{"schema", 1},
          {"bands", bands},
          {"meta",
           {{"grid", s.meta.grid},
            {"tol", s.meta.tol},
            {"period", s.meta.period},
            {"model", s.meta.model},
            {"raw_bands", raw},
            {"refinement_solves", s.meta.refinement_solves}}}};
}

json certificate_to_json(const BoundCertificate& c) {
  json constants = {{"C_L", c.constants.C_L},
                    {"Noverlap", c.constants.Noverlap},
                    {"C_dL", c.constants.C_dL},
                    {"C_hop", c.constants.C_hop},
                    {"schur_beta", c.constants.schur_beta},
                    {"R_H", c.constants.R_H},
                    {"beta", c.constants.beta},
                    {"C_H", c.constants.C_H ? json(*c.constants.C_H) : json(nullptr)}};
  return {{"schema", 1},
          {"theorem", c.theorem},
          {"constants", constants},
          {"d_subshift", c.d_subshift},
          {"d_lower_bound", c.d_lower_bound},
          {"bound", c.bound},
          {"fallback", c.fallback},
          {"effective", c.effective},
          {"partition", c.partition},
          {"feasibility_convention", c.feasibility_convention},
          {"inputs", c.inputs},
          {"digest", c.digest}};
}

json distance_to_json(const SubshiftDistance& d) {
  return {{"d", to_double(d.value)},
          {"exact", std::to_string(d.value.numerator()) + "/" + std::to_string(d.value.denominator())},
          {"lower_bound", d.lower_bound},
          {"agreement_radius", d.agreement_radius},
          {"sampled", d.sampled}};
}

json dictionary_to_json(const PatternDictionary& dict, const Alphabet& alphabet) {
  json pats = json::array();
  for (const auto& p : dict.patterns) pats.push_back(alphabet.render(p));
  return {{"radius", dict.radius}, {"count", dict.size()}, {"sampled", dict.sampled}, {"patterns", pats}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace aperispec::io
