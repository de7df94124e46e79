#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "aqs/analysis.hpp"
#include "aqs/hamiltonian.hpp"

namespace aqs {

/// Real embedding of a state: (re..., im...) after rotating the global phase
/// so the largest-modulus amplitude (first on ties) is real and positive.
RealVector embed_state(const State& s);

/// `n` points drawn from N(center, sigma^2 I).
EmbeddingSet gaussian_cloud(std::string label, std::size_t n, const RealVector& center, double sigma,
                            std::uint64_t seed);

/// Two clouds of unit-variance isotropic points whose centres are
/// `separation` apart along the first axis.
std::pair<EmbeddingSet, EmbeddingSet> separated_clusters(std::size_t n_per_set, std::size_t dim,
                                                         double separation, std::uint64_t seed);

struct InterferenceTriple {
    RealVector y;   // reference response
    RealVector yp;  // reference after the second operator's influence
    RealVector x;   // second operator alone
};

/// Y and X share a latent Z ~ N(0, 1)^d plus independent N(0, 0.5^2) parts.
/// Y' = Y + 0.5 s (X - Y) where s is +1 on a random half of the components
/// and -1 on the rest, so the change partly follows and partly opposes X - Y.
InterferenceTriple sign_mixed_triple(std::size_t dim, std::uint64_t seed);

/// Order-swap experiment on a Fock space: condition "A->B" applies H_A then
/// H_B (matrix H_B H_A) and "B->A" the reverse, each from a jittered
/// occupation state.
struct SwapExperiment {
    FockContext ctx;
    HamiltonianParams first;   // H_A
    HamiltonianParams second;  // H_B
    std::vector<std::size_t> initial_occupation;
    double jitter = 0.02;      // std of complex Gaussian noise per amplitude; the order
                               // signal is lost in 2-D PCA by about 0.03
    std::size_t runs = 100;    // per order
};

/// H_A = eps-only diag(1, 2); H_B = coupling-only [[0, 1], [1, 1]]; from |01>.
SwapExperiment noncommuting_swap();
/// Same geometry with H_B replaced by eps-only diag(3, 0.5); both diagonal.
SwapExperiment commuting_swap();

/// Final-state embeddings for both orders. Jitter for run r of either order
/// comes from its own seeded substream.
std::pair<EmbeddingSet, EmbeddingSet> swapped_order_embeddings(const SwapExperiment& exp, std::uint64_t seed);

}  // namespace aqs
