#pragma once

#include <cstdint>
#include <random>

#include "aperispec/alphabet.hpp"
#include "aperispec/configuration.hpp"
#include "aperispec/operators.hpp"

namespace aperispec::gen {

using Rng = std::mt19937_64;

/// Shortest-path closure of random rational edge weights in [1/den, 1]: always a valid metric.
Alphabet::Metric random_metric(std::size_t n, Rng& rng, std::int64_t den = 12);
Alphabet random_alphabet(std::size_t n, Rng& rng);

/// Uniform word of the given length over labels 0..n_labels-1.
Word random_word(std::size_t length, int n_labels, Rng& rng);

/// Hermitian matrix with entries of modulus <= scale.
CMatrix random_hermitian(int n, Rng& rng, double scale = 1.0);

/// Symmetric-range model on Z with random constant complex hops (t_{-h} = t_h^*), random
/// on-site term and N = 1 or 2.
Hamiltonian random_model(Rng& rng, int max_hop = 4);

}  // namespace aperispec::gen
