#include "aperispec/subshift.hpp"

#include "aperispec/errors.hpp"

namespace aperispec {

namespace {

bool is_periodic(const Configuration& c) { return !c.periods().empty(); }

std::set<Word> periodic_windows(const Configuration& c, std::int64_t r) {
  std::set<Word> out;
  const auto periods = c.periods();
  if (c.dim() == 1) {
    const std::int64_t p = periods[0];
    Word strip;
    strip.reserve(static_cast<std::size_t>(p + 2 * r));
    for (std::int64_t n = -r; n < p + r; ++n) strip.push_back(static_cast<char>(c.letter_at_1d(n)));
    const auto len = static_cast<std::size_t>(2 * r + 1);
    for (std::int64_t s = 0; s < p; ++s) out.insert(strip.substr(static_cast<std::size_t>(s), len));
    return out;
  }
  const int d = c.dim();
  std::vector<std::int64_t> idx(d, 0);
  while (true) {
    out.insert(c.window(LatticePoint(idx), r));
    int k = d - 1;
    while (k >= 0 && idx[k] == periods[k] - 1) {
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
    ++idx[k];
  }
  return out;
}

std::set<Word> factors(const Word& w, std::size_t len) {
  std::set<Word> out;
  if (w.size() < len) return out;
  for (std::size_t i = 0; i + len <= w.size(); ++i) out.insert(w.substr(i, len));
  return out;
}

// Factors of tau^n(left).tau^n(right) for tau = sigma^power. When two consecutive iterates
// (both halves at least L long) have the same length-L factors, every later iterate does too,
// since each length-L factor of tau(w) lies in tau(u) for a factor u of w of length <= L.
std::set<Word> substitution_windows(const Configuration& c, std::int64_t r, const DictionaryOptions& opts) {
  const auto& sub = c.substitution_data();
  const auto len = static_cast<std::size_t>(2 * r + 1);
  Word left(1, static_cast<char>(sub.left()));
  Word right(1, static_cast<char>(sub.right()));
  std::optional<std::set<Word>> prev;
  while (true) {
    if (left.size() >= len && right.size() >= len) {
      auto cur = factors(left + right, len);
      if (prev && *prev == cur) return cur;
      prev = std::move(cur);
    }
    if (static_cast<std::int64_t>(left.size() + right.size()) > opts.max_length)
      throw DictionaryNotCertifiedError("substitution dictionary at radius " + std::to_string(r) +
                                        " did not stabilize within " + std::to_string(opts.max_length) + " letters");
    left = sub.iterate(left, sub.power());
    right = sub.iterate(right, sub.power());
  }
}

std::set<Word> sampled_rotation_windows(const Configuration& c, std::int64_t r, const DictionaryOptions& opts) {
  std::set<Word> windows;
  std::int64_t done = 0;
  std::int64_t target = std::max<std::int64_t>(opts.initial_sample, 1);
  int stable = 0;
  std::size_t last_size = 0;
  while (true) {
    for (std::int64_t n = done; n < target; ++n) windows.insert(c.window(LatticePoint{n}, r));
    done = target;
    stable = windows.size() == last_size ? stable + 1 : 0;
    last_size = windows.size();
    if (stable >= 2) return windows;
    if (target > opts.max_length / 2)
      throw DictionaryNotCertifiedError("rotation dictionary at radius " + std::to_string(r) +
                                        " did not stabilize within an orbit sample of " + std::to_string(target));
    target *= 2;
  }
}

}  // namespace

Subshift Subshift::periodic_orbit(Configuration config) {
  if (!is_periodic(config)) throw DomainError("periodic orbit needs a periodic configuration");
  Subshift s;
  s.kind_ = Kind::PeriodicOrbit;
  s.lattice_ = std::make_shared<const Lattice>(config.lattice());
  s.alphabet_ = std::make_shared<const Alphabet>(config.alphabet());
  s.config_ = std::move(config);
  return s;
}

Subshift Subshift::orbit_closure(Configuration config) {
  Subshift s;
  s.kind_ = Kind::OrbitClosure;
  s.lattice_ = std::make_shared<const Lattice>(config.lattice());
  s.alphabet_ = std::make_shared<const Alphabet>(config.alphabet());
  s.config_ = std::move(config);
  return s;
}

Subshift Subshift::explicit_dictionary(Lattice lat, Alphabet alphabet, std::map<std::int64_t, std::set<Word>> dicts) {
  if (dicts.empty()) throw DomainError("explicit dictionary subshift needs at least one radius");
  const int d = lat.dim();
  for (const auto& [radius, patterns] : dicts) {
    if (radius < 1) throw DomainError("dictionary radius must be >= 1");
    if (patterns.empty()) throw DomainError("dictionary at radius " + std::to_string(radius) + " is empty");
    for (const auto& p : patterns) {
      if (p.size() != cube_size(d, radius)) throw DomainError("pattern size does not match radius " + std::to_string(radius));
      for (char c : p)
        if (static_cast<unsigned char>(c) >= alphabet.size()) throw DomainError("pattern uses an unknown label");
    }
  }
  for (auto it = dicts.begin(); std::next(it) != dicts.end(); ++it) {
    const auto nx = std::next(it);
    PatternDictionary big{nx->first, nx->second, false}, small{it->first, it->second, false};
    if (!restriction_consistent(d, big, small))
      throw DomainError("explicit dictionaries are not restriction consistent between radii " +
                        std::to_string(it->first) + " and " + std::to_string(nx->first));
  }
  Subshift s;
  s.kind_ = Kind::ExplicitDictionary;
  s.lattice_ = std::make_shared<const Lattice>(std::move(lat));
  s.alphabet_ = std::make_shared<const Alphabet>(std::move(alphabet));
  s.dicts_ = std::make_shared<const std::map<std::int64_t, std::set<Word>>>(std::move(dicts));
  return s;
}

const Configuration& Subshift::configuration() const {
  if (!config_) throw DomainError("subshift is given by dictionaries only");
  return *config_;
}

PatternDictionary pattern_dictionary(const Subshift& S, std::int64_t r, const DictionaryOptions& opts) {
  if (r < 1) throw DomainError("dictionary radius must be >= 1");
  PatternDictionary out;
  out.radius = r;
  if (S.kind_ == Subshift::Kind::ExplicitDictionary) {
    const auto it = S.dicts_->lower_bound(r);
    if (it == S.dicts_->end())
      throw DomainError("explicit dictionary has no radius >= " + std::to_string(r));
    for (const auto& p : it->second) out.patterns.insert(restrict_pattern(S.lattice().dim(), it->first, r, p));
    return out;
  }
  const Configuration& c = *S.config_;
  if (is_periodic(c)) {
    out.patterns = periodic_windows(c, r);
  } else if (c.kind() == Configuration::Kind::Substitution) {
    out.patterns = substitution_windows(c, r, opts);
  } else {
    out.patterns = sampled_rotation_windows(c, r, opts);
    out.sampled = true;
    const auto& coding = c.rotation_data();
    if (coding.is_two_interval_sturmian() && out.patterns.size() != static_cast<std::size_t>(2 * r + 2))
      throw DictionaryNotCertifiedError("sampled Sturmian dictionary at radius " + std::to_string(r) + " has " +
                                        std::to_string(out.patterns.size()) + " words, expected " +
                                        std::to_string(2 * r + 2));
  }
  return out;
}

}  // namespace aperispec
