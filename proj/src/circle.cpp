#include "aperispec/circle.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <regex>

#include "aperispec/alphabet.hpp"
#include "aperispec/errors.hpp"

namespace aperispec {

namespace {

using Big = boost::multiprecision::cpp_bin_float_100;

constexpr u128 kTwo64 = static_cast<u128>(1) << 64;

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  Big parse() {
    Big v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("cannot parse alpha expression '" + s_ + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Big expr() {
    Big v = term();
    while (true) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  Big term() {
    Big v = factor();
    while (true) {
      if (eat('*')) {
        v *= factor();
      } else if (eat('/')) {
        Big d = factor();
        if (d == 0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  Big factor() {
    skip();
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    if (eat('(')) {
      Big v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (s_.compare(pos_, 4, "sqrt") == 0) {
      pos_ += 4;
      if (!eat('(')) fail("sqrt needs '('");
      Big v = expr();
      if (!eat(')')) fail("missing ')'");
      if (v < 0) fail("sqrt of a negative number");
      return boost::multiprecision::sqrt(v);
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return Big(s_.substr(start, pos_ - start));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

u128 big_fraction_bits(const Big& frac) {
  Big x = frac * Big(18446744073709551616.0);  // 2^64
  Big hi = boost::multiprecision::floor(x);
  Big lo = boost::multiprecision::floor((x - hi) * Big(18446744073709551616.0));
  const auto h = hi.convert_to<unsigned long long>();
  const auto l = lo.convert_to<unsigned long long>();
  return (static_cast<u128>(h) << 64) | l;
}

// floor(x * 2^128) for x in [0,1); exact because a double has 53 significant bits.
u128 double_fraction_bits(double x) {
  const double scaled = std::ldexp(x, 64);
  const double hi = std::floor(scaled);
  const double lo = std::floor(std::ldexp(scaled - hi, 64));
  return (static_cast<u128>(static_cast<std::uint64_t>(hi)) << 64) | static_cast<std::uint64_t>(lo);
}

double fraction_part(double c) {
  double f = c - std::floor(c);
  if (f >= 1.0) f = 0.0;
  return f;
}

std::int64_t mod_pos(__int128 a, std::int64_t m) {
  __int128 r = a % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

}  // namespace

Alpha Alpha::rational(std::int64_t p, std::int64_t q) {
  if (q <= 0 || p <= 0 || p >= q) throw DomainError("alpha must lie in (0,1)");
  if (q > (static_cast<std::int64_t>(1) << 62)) throw DomainError("alpha denominator too large");
  const std::int64_t g = std::gcd(p, q);
  Alpha a;
  a.rational_ = true;
  a.p_ = p / g;
  a.q_ = q / g;
  const u128 num = static_cast<u128>(a.p_);
  // round(p/q * 2^128) computed as two 64-bit long divisions.
  const u128 hi = (num << 64) / static_cast<u128>(a.q_);
  const u128 rem = (num << 64) % static_cast<u128>(a.q_);
  const u128 lo = (rem << 64) / static_cast<u128>(a.q_);
  a.bits_ = (hi << 64) | lo;
  return a;
}

Alpha Alpha::fixed(u128 bits) {
  if (bits == 0) throw DomainError("alpha must lie in (0,1)");
  Alpha a;
  a.rational_ = false;
  a.bits_ = bits;
  return a;
}

Alpha Alpha::parse(const std::string& expr) {
  static const std::regex frac_re(R"(^\s*(\d+)\s*/\s*(\d+)\s*$)");
  static const std::regex dec_re(R"(^\s*0?\.(\d{1,18})\s*$)");
  std::smatch m;
  if (std::regex_match(expr, m, frac_re)) {
    return rational(std::stoll(m[1].str()), std::stoll(m[2].str()));
  }
  if (std::regex_match(expr, m, dec_re)) {
    const std::string digits = m[1].str();
    std::int64_t den = 1;
    for (std::size_t i = 0; i < digits.size(); ++i) den *= 10;
    const std::int64_t num = std::stoll(digits);
    if (num <= 0) throw DomainError("alpha must lie in (0,1)");
    const std::int64_t g = std::gcd(num, den);
    if (den / g <= (static_cast<std::int64_t>(1) << 62)) return rational(num / g, den / g);
  }
  const Big v = ExprParser(expr).parse();
  if (!(v > 0 && v < 1)) throw DomainError("alpha '" + expr + "' must lie in (0,1)");
  return fixed(big_fraction_bits(v));
}

Alpha Alpha::from_double(double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("alpha must lie in (0,1)");
  try {
    const Rational r = rational_from_double(x, 10'000, 1e-14);
    return rational(r.numerator(), r.denominator());
  } catch (const DomainError&) {
    return fixed(double_fraction_bits(x));
  }
}

double Alpha::to_double() const {
  if (rational_) return static_cast<double>(p_) / static_cast<double>(q_);
  const auto hi = static_cast<std::uint64_t>(bits_ >> 64);
  const auto lo = static_cast<std::uint64_t>(bits_);
  return std::ldexp(static_cast<double>(hi), -64) + std::ldexp(static_cast<double>(lo), -128);
}

std::string Alpha::to_string() const {
  if (rational_) return std::to_string(p_) + "/" + std::to_string(q_);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", to_double());
  return buf;
}

std::vector<Fraction> convergents(const Alpha& alpha, int k_max) {
  if (k_max < 1) throw DomainError("convergents: k_max must be >= 1");
  std::vector<Fraction> out;
  const u128 q_limit = static_cast<u128>(1) << 62;
  // Convergent recurrence seeded after a_0 = 0 (alpha < 1).
  u128 h_prev2 = 1, h_prev1 = 0, k_prev2 = 0, k_prev1 = 1;
  // The tail 1/alpha = top/bot; each step takes a = floor(top/bot), then tail = bot/rem.
  u128 a, rem, bot;
  if (alpha.is_rational()) {
    const auto top = static_cast<u128>(alpha.fraction().q);
    bot = static_cast<u128>(alpha.fraction().p);
    a = top / bot;
    rem = top % bot;
  } else {
    // top = 2^128 is not representable: use 2^128 = max + 1.
    bot = alpha.bits();
    const u128 max = ~static_cast<u128>(0);
    a = max / bot;
    rem = max % bot + 1;
    if (rem == bot) {
      ++a;
      rem = 0;
    }
  }
  while (static_cast<int>(out.size()) < k_max) {
    if (a > q_limit) break;
    const u128 h = a * h_prev1 + h_prev2;
    const u128 k = a * k_prev1 + k_prev2;
    if (k > q_limit) break;
    out.push_back({static_cast<std::int64_t>(h), static_cast<std::int64_t>(k)});
    h_prev2 = h_prev1, h_prev1 = h, k_prev2 = k_prev1, k_prev1 = k;
    if (rem == 0) break;
    const u128 top = bot;
    bot = rem;
    a = top / bot;
    rem = top % bot;
  }
  return out;
}

CircleCoding::CircleCoding(Alpha alpha, double phase, std::vector<CirclePoint> starts, std::vector<int> labels)
    : alpha_(alpha), phase_(phase), starts_(std::move(starts)), labels_(std::move(labels)) {
  if (starts_.empty() || starts_.size() != labels_.size())
    throw DomainError("circle partition needs one label per interval start");
  if (!std::isfinite(phase_)) throw DomainError("rotation phase must be finite");
  modulus_ = alpha_.is_rational() ? static_cast<u128>(alpha_.fraction().q) * kTwo64 : 0;
  offset_ = to_units({phase_, 0});
  std::vector<std::pair<u128, int>> cuts;
  for (std::size_t i = 0; i < starts_.size(); ++i) cuts.emplace_back(to_units(starts_[i]), labels_[i]);
  std::sort(cuts.begin(), cuts.end());
  if (cuts.front().first != 0) throw DomainError("circle partition must have an interval starting at 0");
  for (std::size_t i = 1; i < cuts.size(); ++i)
    if (cuts[i].first == cuts[i - 1].first) throw DomainError("circle partition has an empty interval");
  for (const auto& [u, l] : cuts) {
    cut_units_.push_back(u);
    cut_labels_.push_back(l);
  }
}

u128 CircleCoding::reduce(u128 v) const { return modulus_ == 0 ? v : v % modulus_; }

u128 CircleCoding::to_units(const CirclePoint& pt) const {
  if (!std::isfinite(pt.constant)) throw DomainError("circle point must be finite");
  const u128 c_bits = double_fraction_bits(fraction_part(pt.constant));
  if (alpha_.is_rational()) {
    const std::int64_t q = alpha_.fraction().q;
    const std::int64_t p = alpha_.fraction().p;
    // Constant part rounded to a multiple of 2^-64, then scaled into units of 1/(q 2^64).
    const u128 c64 = (c_bits >> 64) + ((c_bits >> 63) & 1);
    const u128 c_units = reduce(c64 * static_cast<u128>(q));
    const std::int64_t a_part = mod_pos(static_cast<__int128>(pt.alpha_coeff) * p, q);
    return reduce(c_units + (static_cast<u128>(a_part) << 64));
  }
  return c_bits + static_cast<u128>(static_cast<__int128>(pt.alpha_coeff)) * alpha_.bits();
}

int CircleCoding::letter_at(std::int64_t n) const {
  u128 v;
  if (alpha_.is_rational()) {
    const std::int64_t q = alpha_.fraction().q;
    const std::int64_t r = mod_pos(static_cast<__int128>(mod_pos(n, q)) * alpha_.fraction().p, q);
    v = (static_cast<u128>(r) << 64) + offset_;
    if (v >= modulus_) v -= modulus_;
  } else {
    v = offset_ + static_cast<u128>(static_cast<__int128>(n)) * alpha_.bits();
  }
  const auto it = std::upper_bound(cut_units_.begin(), cut_units_.end(), v);
  return cut_labels_[static_cast<std::size_t>(it - cut_units_.begin()) - 1];
}

bool CircleCoding::is_two_interval_sturmian() const {
  if (alpha_.is_rational() || cut_units_.size() != 2 || cut_labels_[0] == cut_labels_[1]) return false;
  const u128 a_units = to_units({0.0, 1});
  return cut_units_[1] == a_units || cut_units_[1] == static_cast<u128>(0) - a_units;
}

}  // namespace aperispec
