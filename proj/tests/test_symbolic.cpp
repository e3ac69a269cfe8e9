#include <gtest/gtest.h>

#include <set>

#include "aperispec/checks/generators.hpp"
#include "aperispec/checks/oracles.hpp"
#include "aperispec/errors.hpp"
#include "aperispec/subshift.hpp"
#include "aperispec/symbolic_ops.hpp"

using namespace aperispec;

namespace {

// Fibonacci word by textual rewriting a -> ab, b -> a, independent of Substitution.
std::string rewrite_fibonacci(int rounds) {
  std::string w = "a";
  for (int i = 0; i < rounds; ++i) {
    std::string next;
    for (char c : w) next += c == 'a' ? "ab" : "a";
    w = next;
  }
  return w;
}

std::set<std::string> factors(const std::string& w, std::size_t len) {
  std::set<std::string> out;
  for (std::size_t i = 0; i + len <= w.size(); ++i) out.insert(w.substr(i, len));
  return out;
}

std::set<Word> sub_factors(const std::set<Word>& pats, std::size_t len) {
  std::set<Word> out;
  for (const auto& p : pats)
    for (std::size_t i = 0; i + len <= p.size(); ++i) out.insert(p.substr(i, len));
  return out;
}

const Alphabet& ab() {
  static const Alphabet A = fibonacci_alphabet();
  return A;
}

}  // namespace

TEST(Shift, ZeroShiftIsIdentity) {
  const auto xi = periodic_word(ab(), ab().parse_word("abbab"));
  const auto s = shift(xi, LatticePoint{0});
  for (std::int64_t n = -10; n <= 10; ++n) EXPECT_EQ(s.letter_at_1d(n), xi.letter_at_1d(n));
}

TEST(Shift, PeriodicBlockTransposes) {
  const auto s = shift(periodic_word(ab(), ab().parse_word("ab")), LatticePoint{1});
  EXPECT_EQ(ab().render(Word{static_cast<char>(s.letter_at_1d(0)), static_cast<char>(s.letter_at_1d(1))}), "ba");
}

TEST(Shift, InverseShiftRestoresLetters) {
  gen::Rng rng(3);
  std::uniform_int_distribution<int> len(1, 9), off(-40, 40);
  for (int i = 0; i < 100; ++i) {
    const auto xi = periodic_word(ab(), gen::random_word(len(rng), 2, rng));
    const LatticePoint h{off(rng)};
    const auto back = shift(shift(xi, h), -h);
    for (std::int64_t n = -20; n <= 20; ++n) ASSERT_EQ(back.letter_at_1d(n), xi.letter_at_1d(n));
  }
}

TEST(ConfigDistance, IdenticalConfigurationsReportLowerBound) {
  const auto xi = fibonacci_configuration();
  const auto d = config_distance(xi, xi, 40);
  EXPECT_EQ(d.value, Rational(1, 40));
  EXPECT_TRUE(d.lower_bound);
  EXPECT_TRUE(d.agree_on_cube);
}

TEST(ConfigDistance, OriginMismatchIsOne) {
  const auto d = config_distance(periodic_word(ab(), Word(1, 0)), periodic_word(ab(), Word(1, 1)), 16);
  EXPECT_EQ(d.value, Rational(1));
  EXPECT_FALSE(d.lower_bound);
}

TEST(ConfigDistance, FirstMismatchAtShellSix) {
  Word eta(12, 0);
  eta[6] = 1;  // positions 6 and -6 (mod 12) read b
  const Word xi(1, 0);
  const auto d = config_distance(periodic_word(ab(), xi), periodic_word(ab(), eta), 32);
  EXPECT_EQ(d.value, Rational(1, 6));
  const auto o = oracles::config_distance_1d(ab(), xi, eta, 32);
  EXPECT_EQ(o.value, d.value);
  EXPECT_FALSE(d.lower_bound);
}

TEST(ConfigDistance, MatchesCandidateEnumerationOnRandomMetrics) {
  gen::Rng rng(5);
  std::uniform_int_distribution<int> len(1, 7);
  for (int i = 0; i < 300; ++i) {
    const Alphabet A = gen::random_alphabet(3, rng);
    const Word x = gen::random_word(len(rng), 3, rng), y = gen::random_word(len(rng), 3, rng);
    const auto d = config_distance(periodic_word(A, x), periodic_word(A, y), 20);
    const auto o = oracles::config_distance_1d(A, x, y, 20);
    ASSERT_EQ(d.value, o.value) << A.render(x) << " vs " << A.render(y);
    ASSERT_EQ(d.lower_bound, o.lower_bound);
  }
}

TEST(ConfigDistance, RejectsMismatchedAlphabets) {
  EXPECT_THROW(config_distance(periodic_word(ab(), Word(1, 0)), periodic_word(Alphabet({"x", "y"}), Word(1, 0)), 8),
               DomainError);
}

TEST(Substitution, FibonacciFixedPointMatchesRewriting) {
  const auto xi = fibonacci_configuration();
  const std::string w = rewrite_fibonacci(16);
  for (std::int64_t n = 0; n < 500; ++n) ASSERT_EQ(ab().label(xi.letter_at_1d(n)), std::string(1, w[n])) << n;
  EXPECT_EQ(ab().label(xi.letter_at_1d(-1)), "b");
}

TEST(Substitution, FibonacciWordLengths) {
  for (int k = 1; k <= 20; ++k) EXPECT_EQ(static_cast<std::int64_t>(fibonacci_word(k).size()), fibonacci_number(k));
  EXPECT_EQ(ab().render(fibonacci_word(6)), rewrite_fibonacci(4));
}

TEST(Substitution, RejectsNonPrimitiveRules) {
  EXPECT_THROW(Substitution({Word("\x00\x00", 2), Word("\x01", 1)}, 0, 0), DomainError);
}

TEST(Dictionary, ConstantConfigurationHasOnePattern) {
  const auto d = pattern_dictionary(Subshift::periodic_orbit(periodic_word(ab(), Word(1, 0))), 5);
  EXPECT_EQ(d.size(), 1u);
  EXPECT_FALSE(d.sampled);
}

TEST(Dictionary, FibonacciLengthTwoFactors) {
  const auto d = pattern_dictionary(Subshift::orbit_closure(fibonacci_configuration()), 1);
  std::set<std::string> rendered;
  for (const auto& f : sub_factors(d.patterns, 2)) rendered.insert(ab().render(f));
  EXPECT_EQ(rendered, factors(rewrite_fibonacci(20), 2));
  EXPECT_EQ(rendered, (std::set<std::string>{"aa", "ab", "ba"}));
}

TEST(Dictionary, FibonacciFactorsMatchLongIterate) {
  const std::string w = rewrite_fibonacci(22);
  for (std::int64_t r = 1; r <= 8; ++r) {
    const auto d = pattern_dictionary(Subshift::orbit_closure(fibonacci_configuration()), r);
    std::set<std::string> rendered;
    for (const auto& p : d.patterns) rendered.insert(ab().render(p));
    EXPECT_EQ(rendered, factors(w, 2 * r + 1)) << "r = " << r;
    EXPECT_FALSE(d.sampled);
  }
}

TEST(Dictionary, SubstitutionBudgetExceeded) {
  DictionaryOptions o;
  o.max_length = 64;
  EXPECT_THROW(pattern_dictionary(Subshift::orbit_closure(fibonacci_configuration()), 40, o), DictionaryNotCertifiedError);
}

TEST(Dictionary, SturmianComplexityGoldenRotation) {
  const auto xi = kohmoto_configuration(Alpha::parse("(sqrt(5)-1)/2"), 0.0, ab());
  const Subshift S = Subshift::orbit_closure(xi);
  for (std::int64_t r = 1; r <= 6; ++r) {
    const auto d = pattern_dictionary(S, r);
    EXPECT_TRUE(d.sampled);
    EXPECT_EQ(d.size(), static_cast<std::size_t>(2 * r + 2)) << "odd length " << 2 * r + 1;
    EXPECT_EQ(sub_factors(d.patterns, 2 * r).size(), static_cast<std::size_t>(2 * r + 1)) << "even length " << 2 * r;
  }
  EXPECT_EQ(pattern_dictionary(S, 2).size(), 6u);
}

TEST(Dictionary, RationalRotationIsExact) {
  const auto xi = kohmoto_configuration(Alpha::rational(2, 5), 0.0, ab());
  EXPECT_FALSE(pattern_dictionary(Subshift::orbit_closure(xi), 4).sampled);
  EXPECT_EQ(pattern_dictionary(Subshift::orbit_closure(xi), 4).size(), 5u);
}

TEST(SubshiftDistance, EqualSubshiftsGiveLowerBound) {
  const auto S = Subshift::periodic_orbit(periodic_word(ab(), ab().parse_word("aab")));
  const auto d = subshift_distance(S, S, 32);
  EXPECT_EQ(d.value, Rational(1, 32));
  EXPECT_TRUE(d.lower_bound);
}

TEST(SubshiftDistance, FullShiftAgainstConstantOrbit) {
  std::set<Word> all;
  for (int bits = 0; bits < 8; ++bits) all.insert(Word{static_cast<char>(bits & 1), static_cast<char>((bits >> 1) & 1),
                                                       static_cast<char>((bits >> 2) & 1)});
  const auto full = Subshift::explicit_dictionary(Lattice::integer(1), ab(), {{1, all}});
  // The explicit dictionary only reaches radius 1, so the scan stops there.
  const auto d = subshift_distance(full, Subshift::periodic_orbit(periodic_word(ab(), Word(1, 0))), 1);
  EXPECT_THROW(subshift_distance(full, Subshift::periodic_orbit(periodic_word(ab(), Word(1, 0))), 8), DomainError);
  EXPECT_EQ(d.value, Rational(1));
  // Brute force over the full shift's period <= 2 points against the constant orbit.
  Rational worst(0);
  for (const char* w : {"a", "b", "ab"}) {
    const auto o = oracles::periodic_subshift_hausdorff(ab(), ab().parse_word(w), Word(1, 0), 8);
    worst = std::max(worst, o.value);
  }
  EXPECT_EQ(worst, Rational(1));
}

TEST(SubshiftDistance, FibonacciPeriodizationsMatchOrbitBruteForce) {
  for (int k = 2; k <= 9; ++k) {
    const Word a = fibonacci_word(k), b = fibonacci_word(k + 4);
    const auto d = subshift_distance(Subshift::periodic_orbit(periodic_word(ab(), a)),
                                     Subshift::periodic_orbit(periodic_word(ab(), b)), 256);
    const auto o = oracles::periodic_subshift_hausdorff(ab(), a, b, 256);
    EXPECT_EQ(d.value, o.value) << "k = " << k;
    EXPECT_FALSE(d.lower_bound);
    EXPECT_EQ(d.value, Rational(1, d.agreement_radius + 1));
  }
}

TEST(SubshiftDistance, NonDiscreteMetricIsRejected) {
  const Alphabet A({"a", "b"}, {{Rational(0), Rational(1, 2)}, {Rational(1, 2), Rational(0)}});
  const auto S = Subshift::periodic_orbit(periodic_word(A, Word(1, 0)));
  EXPECT_THROW(subshift_distance(S, S, 8), DomainError);
}

TEST(Rotation, HalfIsPeriodTwo) {
  const auto xi = kohmoto_configuration(Alpha::rational(1, 2), 0.0, ab());
  EXPECT_EQ(xi.periods(), (std::vector<std::int64_t>{2}));
  for (std::int64_t n = 0; n < 10; ++n) EXPECT_EQ(xi.letter_at_1d(n), xi.letter_at_1d(n + 2));
  EXPECT_NE(xi.letter_at_1d(0), xi.letter_at_1d(1));
}

TEST(Rotation, TwoFifthsHasTwoMarkedLettersPerPeriod) {
  const auto xi = kohmoto_configuration(Alpha::rational(2, 5), 0.0, ab());
  int ones = 0;
  for (std::int64_t n = 0; n < 5; ++n) ones += xi.letter_at_1d(n);
  EXPECT_EQ(ones, 2);
  for (std::int64_t n = -20; n < 20; ++n) EXPECT_EQ(xi.letter_at_1d(n), xi.letter_at_1d(n + 5));
}

TEST(Rotation, MatchesDirectOrbitForRationalSlope) {
  // Label 1 exactly when frac(n p / q) lies in [1 - p/q, 1), evaluated in integers.
  const std::int64_t p = 12, q = 29;
  const auto xi = kohmoto_configuration(Alpha::rational(p, q), 0.0, ab());
  for (std::int64_t n = -100; n < 100; ++n) {
    const std::int64_t r = ((n * p) % q + q) % q;
    EXPECT_EQ(xi.letter_at_1d(n), r >= q - p ? 1 : 0) << n;
  }
}

TEST(Convergents, GoldenMean) {
  const auto c = convergents(Alpha::parse("(sqrt(5)-1)/2"), 6);
  const std::vector<Fraction> want = {{1, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 8}, {8, 13}};
  EXPECT_EQ(c, want);
}

TEST(Convergents, RationalTerminates) {
  const auto c = convergents(Alpha::parse("1/3"), 10);
  ASSERT_FALSE(c.empty());
  EXPECT_EQ(c.back(), (Fraction{1, 3}));
}

TEST(Convergents, SilverMean) {
  const auto c = convergents(Alpha::parse("sqrt(2)-1"), 8);
  const std::vector<Fraction> want = {{1, 2}, {2, 5}, {5, 12}, {12, 29}, {29, 70}, {70, 169}, {169, 408}, {408, 985}};
  EXPECT_EQ(c, want);
}

TEST(Convergents, FollowRecurrenceDeep) {
  // q_{n+1} = 2 q_n + q_{n-1} for sqrt(2) - 1.
  const auto c = convergents(Alpha::parse("sqrt(2)-1"), 40);
  ASSERT_GE(c.size(), 30u);
  for (std::size_t i = 2; i < c.size(); ++i) {
    EXPECT_EQ(c[i].q, 2 * c[i - 1].q + c[i - 2].q);
    EXPECT_EQ(c[i].p, 2 * c[i - 1].p + c[i - 2].p);
  }
}

TEST(AlphaParse, DecimalIsRational) {
  const Alpha a = Alpha::parse("0.25");
  EXPECT_TRUE(a.is_rational());
  EXPECT_EQ(a.fraction(), (Fraction{1, 4}));
  EXPECT_FALSE(Alpha::parse("sqrt(2)-1").is_rational());
  // Nearest double to 0.41421356237309504880...; sqrt(2.0) - 1.0 is one ulp off.
  EXPECT_EQ(Alpha::parse("sqrt(2)-1").to_double(), 0.41421356237309504880);
}
