#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "aperispec/bounds.hpp"
#include "aperispec/operators.hpp"
#include "aperispec/spectra.hpp"
#include "aperispec/subshift.hpp"
#include "aperispec/symbolic_ops.hpp"

namespace aperispec::io {

using nlohmann::json;

/// Reads a JSON file; throws DomainError with the path on I/O or syntax errors.
json read_json_file(const std::string& path);

/// {"d": 2, "M": [[...], ...]}; M defaults to the identity.
Lattice parse_lattice(const json& j);
/// {"labels": [...], "metric": [[...]], "values": [...]}; metric entries are numbers or "p/q".
Alphabet parse_alphabet(const json& j);
/// Number or [re, im].
std::complex<double> parse_complex(const json& j);
/// Scalar, [re, im] or an N x N array of scalars.
CMatrix parse_matrix(const json& j);

/// The "configuration" object of a configuration file; see README for the kinds.
Configuration parse_configuration(const json& j, const Lattice& lat, const Alphabet& alphabet);

/// A configuration or subshift file:
/// {"lattice"?: ..., "alphabet": ..., "configuration"?: ..., "subshift"?: ...}.
/// Without a "subshift" object a periodic configuration yields its periodic orbit and any other
/// configuration its orbit closure.
struct SubshiftFile {
  Lattice lattice;
  Alphabet alphabet;
  std::optional<Configuration> configuration;
  Subshift subshift;
};
SubshiftFile parse_subshift_file(const json& j);

/// A model file {"lattice"?: ..., "hamiltonian": {...}} or a bare hamiltonian object.
Hamiltonian parse_hamiltonian(const json& j, const Lattice& lat, const Alphabet& alphabet);

json spectrum_to_json(const SpectrumSet& s);
json certificate_to_json(const BoundCertificate& c);
json distance_to_json(const SubshiftDistance& d);
json dictionary_to_json(const PatternDictionary& dict, const Alphabet& alphabet);

/// %.17g; JSON numbers written by nlohmann already round-trip, this is for CSV and digests.
std::string format_double(double v);

}  // namespace aperispec::io
