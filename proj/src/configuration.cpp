#include "aperispec/configuration.hpp"

#include <algorithm>

#include "aperispec/errors.hpp"

namespace aperispec {

namespace {

constexpr std::int64_t kSaturate = static_cast<std::int64_t>(1) << 62;

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

bool is_primitive(const std::vector<std::vector<std::int64_t>>& incidence) {
  const std::size_t n = incidence.size();
  if (n == 0) return false;
  using Bool = std::vector<std::vector<char>>;
  Bool base(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base[i][j] = incidence[i][j] > 0;
  Bool power = base;
  // Wielandt: a primitive n x n matrix has a positive power at exponent (n-1)^2 + 1.
  const std::size_t bound = (n - 1) * (n - 1) + 1;
  for (std::size_t k = 1; k <= bound; ++k) {
    bool positive = true;
    for (std::size_t i = 0; i < n && positive; ++i)
      for (std::size_t j = 0; j < n && positive; ++j) positive = power[i][j] != 0;
    if (positive) return true;
    Bool next(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (power[i][l])
          for (std::size_t j = 0; j < n; ++j)
            if (base[l][j]) next[i][j] = 1;
    power = std::move(next);
  }
  return false;
}

Substitution::Substitution(std::vector<Word> rules, int left, int right)
    : rules_(std::move(rules)), left_(left), right_(right) {
  const int n = static_cast<int>(rules_.size());
  if (n == 0) throw DomainError("substitution needs at least one rule");
  if (left < 0 || left >= n || right < 0 || right >= n) throw DomainError("substitution seed letter out of range");
  bool grows = false;
  for (const auto& r : rules_) {
    if (r.empty()) throw DomainError("substitution rules must be non-empty");
    for (char c : r)
      if (static_cast<unsigned char>(c) >= n) throw DomainError("substitution rule uses an unknown letter");
    grows = grows || r.size() >= 2;
  }
  if (!is_primitive(incidence())) throw DomainError("substitution is not primitive");
  if (!grows) throw DomainError("substitution never grows");

  int last = left, first = right;
  power_ = 0;
  for (int k = 1; k <= 64; ++k) {
    last = static_cast<unsigned char>(rules_[last].back());
    first = static_cast<unsigned char>(rules_[first].front());
    if (last == left && first == right) {
      power_ = k;
      break;
    }
  }
  if (power_ == 0) throw DomainError("seed pair is not fixed by any power of the substitution up to 64");

  lengths_.push_back(std::vector<std::int64_t>(n, 1));
  while (lengths_.size() < 4096) {
    const auto& prev = lengths_.back();
    std::vector<std::int64_t> next(n, 0);
    bool all_saturated = true;
    for (int c = 0; c < n; ++c) {
      std::int64_t total = 0;
      for (char x : rules_[c]) total = std::min(kSaturate, total + prev[static_cast<unsigned char>(x)]);
      next[c] = total;
      all_saturated = all_saturated && total >= kSaturate;
    }
    lengths_.push_back(std::move(next));
    if (all_saturated) break;
  }
}

std::vector<std::vector<std::int64_t>> Substitution::incidence() const {
  const std::size_t n = rules_.size();
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (char c : rules_[j]) ++m[static_cast<unsigned char>(c)][j];
  return m;
}

Word Substitution::apply(const Word& w) const {
  Word out;
  for (char c : w) out += rules_[static_cast<unsigned char>(c)];
  return out;
}

Word Substitution::iterate(const Word& w, int n) const {
  Word cur = w;
  for (int i = 0; i < n; ++i) cur = apply(cur);
  return cur;
}

int Substitution::descend(int letter, int level, std::int64_t index) const {
  while (level > 0) {
    for (char x : rules_[letter]) {
      const int c = static_cast<unsigned char>(x);
      const std::int64_t len = lengths_[level - 1][c];
      if (index < len) {
        letter = c;
        break;
      }
      index -= len;
    }
    --level;
  }
  return letter;
}

int Substitution::letter_at(std::int64_t n) const {
  const int root = n >= 0 ? right_ : left_;
  const std::int64_t need = n >= 0 ? n + 1 : -n;
  if (need >= kSaturate) throw DomainError("substitution position out of range");
  for (std::size_t level = 0; level < lengths_.size(); level += power_) {
    const std::int64_t len = lengths_[level][root];
    if (len >= need) {
      const std::int64_t index = n >= 0 ? n : len + n;
      return descend(root, static_cast<int>(level), index);
    }
  }
  throw DomainError("substitution position out of range");
}

Configuration Configuration::periodic(Lattice lat, Alphabet alphabet, std::vector<std::int64_t> periods, Word block) {
  if (static_cast<int>(periods.size()) != lat.dim()) throw DomainError("period vector does not match lattice dimension");
  std::int64_t volume = 1;
  for (auto p : periods) {
    if (p < 1) throw DomainError("periods must be positive");
    volume *= p;
  }
  if (static_cast<std::int64_t>(block.size()) != volume) throw DomainError("periodic block size differs from the product of periods");
  for (char c : block)
    if (static_cast<unsigned char>(c) >= alphabet.size()) throw DomainError("periodic block uses an unknown label");
  Configuration cfg;
  cfg.kind_ = Kind::Periodic;
  cfg.offset_ = LatticePoint::origin(lat.dim());
  cfg.lattice_ = std::make_shared<const Lattice>(std::move(lat));
  cfg.alphabet_ = std::make_shared<const Alphabet>(std::move(alphabet));
  cfg.periodic_ = std::make_shared<const PeriodicData>(PeriodicData{std::move(periods), std::move(block)});
  return cfg;
}

Configuration Configuration::substitution(Alphabet alphabet, Substitution sub) {
  if (sub.rules().size() != alphabet.size()) throw DomainError("substitution needs one rule per label");
  Configuration cfg;
  cfg.kind_ = Kind::Substitution;
  cfg.offset_ = LatticePoint::origin(1);
  cfg.lattice_ = std::make_shared<const Lattice>(Lattice::integer(1));
  cfg.alphabet_ = std::make_shared<const Alphabet>(std::move(alphabet));
  cfg.substitution_ = std::make_shared<const Substitution>(std::move(sub));
  return cfg;
}

Configuration Configuration::rotation(Alphabet alphabet, CircleCoding coding) {
  for (int l : coding.labels())
    if (l < 0 || static_cast<std::size_t>(l) >= alphabet.size()) throw DomainError("rotation coding uses an unknown label");
  Configuration cfg;
  cfg.kind_ = Kind::Rotation;
  cfg.offset_ = LatticePoint::origin(1);
  cfg.lattice_ = std::make_shared<const Lattice>(Lattice::integer(1));
  cfg.alphabet_ = std::make_shared<const Alphabet>(std::move(alphabet));
  cfg.rotation_ = std::make_shared<const CircleCoding>(std::move(coding));
  return cfg;
}

int Configuration::base_letter_1d(std::int64_t n) const {
  switch (kind_) {
    case Kind::Periodic:
      return static_cast<unsigned char>(periodic_->block[floor_mod(n, periodic_->periods[0])]);
    case Kind::Substitution:
      return substitution_->letter_at(n);
    case Kind::Rotation:
      return rotation_->letter_at(n);
  }
  return 0;
}

int Configuration::base_letter(const LatticePoint& x) const {
  if (x.dim() == 1) return base_letter_1d(x.n[0]);
  const auto& p = periodic_->periods;
  std::int64_t idx = 0;
  for (int i = 0; i < x.dim(); ++i) idx = idx * p[i] + floor_mod(x.n[i], p[i]);
  return static_cast<unsigned char>(periodic_->block[idx]);
}

int Configuration::letter_at(const LatticePoint& x) const {
  if (x.dim() != dim()) throw DomainError("lattice point dimension mismatch");
  return base_letter(x - offset_);
}

int Configuration::letter_at_1d(std::int64_t n) const { return base_letter_1d(n - offset_.n[0]); }

Word Configuration::window(const LatticePoint& center, std::int64_t radius) const {
  Word out;
  if (dim() == 1) {
    out.reserve(static_cast<std::size_t>(2 * radius + 1));
    const std::int64_t c = center.n[0] - offset_.n[0];
    for (std::int64_t n = c - radius; n <= c + radius; ++n) out.push_back(static_cast<char>(base_letter_1d(n)));
    return out;
  }
  for (const auto& q : cube_points(*lattice_, static_cast<double>(std::max<std::int64_t>(radius, 0)) + 0.5))
    out.push_back(static_cast<char>(letter_at(center + q)));
  return out;
}

Configuration Configuration::shifted(const LatticePoint& h) const {
  if (h.dim() != dim()) throw DomainError("shift vector dimension mismatch");
  Configuration c = *this;
  c.offset_ = offset_ + h;
  return c;
}

const PeriodicData& Configuration::periodic_data() const {
  if (kind_ != Kind::Periodic) throw DomainError("configuration is not periodic");
  return *periodic_;
}

const Substitution& Configuration::substitution_data() const {
  if (kind_ != Kind::Substitution) throw DomainError("configuration is not a substitution fixed point");
  return *substitution_;
}

const CircleCoding& Configuration::rotation_data() const {
  if (kind_ != Kind::Rotation) throw DomainError("configuration is not a rotation coding");
  return *rotation_;
}

std::vector<std::int64_t> Configuration::periods() const {
  if (kind_ == Kind::Periodic) return periodic_->periods;
  if (kind_ == Kind::Rotation && rotation_->period() > 0) return {rotation_->period()};
  return {};
}

Word Configuration::period_word() const {
  const auto p = periods();
  if (dim() != 1 || p.empty()) throw DomainError("period_word needs a one-dimensional periodic configuration");
  Word out;
  for (std::int64_t n = 0; n < p[0]; ++n) out.push_back(static_cast<char>(letter_at_1d(n)));
  return out;
}

Configuration periodic_word(const Alphabet& alphabet, const Word& word) {
  return Configuration::periodic(Lattice::integer(1), alphabet, {static_cast<std::int64_t>(word.size())}, word);
}

}  // namespace aperispec
