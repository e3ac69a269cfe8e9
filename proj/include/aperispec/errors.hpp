#pragma once

#include <stdexcept>
#include <string>

namespace aperispec {

/// Invalid input: violated precondition, malformed model, mismatched lattice or alphabet.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not deliver its contract (non-convergence, lost Hermiticity).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pattern-lookup coefficient was evaluated on a pattern missing from its table.
class UncoveredPatternError : public DomainError {
 public:
  UncoveredPatternError(const std::string& pattern)
      : DomainError("uncovered pattern: " + pattern), pattern_(pattern) {}
  const std::string& pattern() const { return pattern_; }

 private:
  std::string pattern_;
};

/// Dictionary materialization did not stabilize within the configured sample budget.
class DictionaryNotCertifiedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Alphabet metric failed one of its invariants; `invariant()` names which one.
class AlphabetInvariantError : public DomainError {
 public:
  AlphabetInvariantError(const std::string& invariant, const std::string& detail)
      : DomainError("alphabet metric violates " + invariant + ": " + detail), invariant_(invariant) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

/// A certificate could not be issued because a declared constant was contradicted.
class CertificateRefusedError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace aperispec
