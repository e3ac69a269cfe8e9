#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "aperispec/configuration.hpp"
#include "aperispec/pattern.hpp"

namespace aperispec {

struct DictionaryOptions {
  /// Largest substitution word or rotation orbit sample before giving up.
  std::int64_t max_length = std::int64_t{1} << 24;
  /// Initial orbit sample length for irrational rotations.
  std::int64_t initial_sample = 1024;
};

class Subshift {
 public:
  enum class Kind { PeriodicOrbit, OrbitClosure, ExplicitDictionary };

  static Subshift periodic_orbit(Configuration config);
  static Subshift orbit_closure(Configuration config);
  /// Dictionaries by radius; lookups at radius r use the smallest stored radius >= r.
  static Subshift explicit_dictionary(Lattice lat, Alphabet alphabet, std::map<std::int64_t, std::set<Word>> dicts);

  Kind kind() const { return kind_; }
  const Lattice& lattice() const { return *lattice_; }
  const Alphabet& alphabet() const { return *alphabet_; }
  const Configuration& configuration() const;
  bool has_configuration() const { return config_.has_value(); }
  std::string name() const { return name_; }
  Subshift& with_name(std::string name) {
    name_ = std::move(name);
    return *this;
  }

 private:
  Subshift() = default;
  Kind kind_ = Kind::PeriodicOrbit;
  std::shared_ptr<const Lattice> lattice_;
  std::shared_ptr<const Alphabet> alphabet_;
  std::optional<Configuration> config_;
  std::shared_ptr<const std::map<std::int64_t, std::set<Word>>> dicts_;
  std::string name_;

  friend PatternDictionary pattern_dictionary(const Subshift&, std::int64_t, const DictionaryOptions&);
};

/// The exact set of radius-r patterns of S (flagged `sampled` for irrational rotations).
PatternDictionary pattern_dictionary(const Subshift& S, std::int64_t r, const DictionaryOptions& opts = {});

}  // namespace aperispec
