#include "aperispec/alphabet.hpp"

#include <cmath>

#include "aperispec/errors.hpp"

namespace aperispec {

double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

Rational rational_from_double(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x)) throw DomainError("cannot convert non-finite value to a rational");
  const double sign = x < 0 ? -1.0 : 1.0;
  double y = std::abs(x);
  // Continued-fraction convergents h/k of |x|.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rem = y;
  for (int it = 0; it < 64; ++it) {
    const double a_d = std::floor(rem);
    if (a_d > 9e15) break;
    const auto a = static_cast<std::int64_t>(a_d);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - y) <= tol) {
      return Rational(static_cast<std::int64_t>(sign) * h1, k1);
    }
    const double frac = rem - a_d;
    if (frac <= 0.0) break;
    rem = 1.0 / frac;
  }
  if (k1 != 0 && std::abs(static_cast<double>(h1) / static_cast<double>(k1) - y) <= tol)
    return Rational(static_cast<std::int64_t>(sign) * h1, k1);
  throw DomainError("value " + std::to_string(x) + " has no small-denominator rational form");
}

void validate_metric(const Alphabet::Metric& metric) {
  const std::size_t n = metric.size();
  for (const auto& row : metric)
    if (row.size() != n) throw AlphabetInvariantError("shape", "metric matrix is not square");
  auto pair = [](std::size_t a, std::size_t b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (metric[a][a] != Rational(0)) throw AlphabetInvariantError("zero-diagonal", "d" + pair(a, a) + " != 0");
    for (std::size_t b = 0; b < n; ++b) {
      if (metric[a][b] != metric[b][a]) throw AlphabetInvariantError("symmetry", "d" + pair(a, b) + " != d" + pair(b, a));
      if (a != b && !(metric[a][b] > Rational(0))) throw AlphabetInvariantError("positivity", "d" + pair(a, b) + " <= 0");
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (metric[a][c] > metric[a][b] + metric[b][c])
          throw AlphabetInvariantError("triangle-inequality",
                                       "d" + pair(a, c) + " > d" + pair(a, b) + " + d" + pair(b, c));
}

namespace {

Alphabet::Metric discrete_metric(std::size_t n) {
  Alphabet::Metric m(n, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 0;
  return m;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> labels)
    : Alphabet(labels, discrete_metric(labels.size())) {}

Alphabet::Alphabet(std::vector<std::string> labels, Metric metric, std::vector<std::complex<double>> values)
    : labels_(std::move(labels)), metric_(std::move(metric)), values_(std::move(values)) {
  if (labels_.empty()) throw DomainError("alphabet must have at least one label");
  if (labels_.size() > 255) throw DomainError("alphabet supports at most 255 labels");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw DomainError("alphabet labels must be non-empty");
    for (std::size_t j = 0; j < i; ++j)
      if (labels_[i] == labels_[j]) throw DomainError("duplicate alphabet label '" + labels_[i] + "'");
  }
  if (metric_.size() != labels_.size()) throw AlphabetInvariantError("shape", "metric size differs from label count");
  validate_metric(metric_);
  if (values_.empty()) {
    for (std::size_t i = 0; i < labels_.size(); ++i) values_.emplace_back(static_cast<double>(i), 0.0);
  } else if (values_.size() != labels_.size()) {
    throw DomainError("alphabet values must have one entry per label");
  }
}

int Alphabet::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  throw DomainError("unknown label '" + label + "'");
}

bool Alphabet::is_discrete() const {
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b)
      if (a != b && metric_[a][b] != Rational(1)) return false;
  return true;
}

bool Alphabet::single_char_labels() const {
  for (const auto& l : labels_)
    if (l.size() != 1) return false;
  return true;
}

std::string Alphabet::render(const std::string& indices) const {
  std::string out;
  const bool compact = single_char_labels();
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += labels_.at(static_cast<unsigned char>(indices[i]));
  }
  return out;
}

std::string Alphabet::parse_word(const std::string& text) const {
  std::string out;
  if (single_char_labels()) {
    for (char c : text) out.push_back(static_cast<char>(index_of(std::string(1, c))));
    return out;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    auto end = text.find(' ', pos);
    if (end == std::string::npos) end = text.size();
    out.push_back(static_cast<char>(index_of(text.substr(pos, end - pos))));
    pos = end;
  }
  return out;
}

}  // namespace aperispec
