#pragma once

#include <cstddef>
#include <vector>

#include "aqs/creativity.hpp"

namespace aqs {

struct CPair {
    std::size_t i = 0;  // i < j, 0-based portfolio positions
    std::size_t j = 1;
    double c = 0.0;
};

/// Greedy selection of the most order-dependent pair at `s`. Ties go to the
/// lexicographically smallest (i, j). Throws PortfolioTooSmall below 2 ops.
CPair maximize_c_pair(const OperatorPortfolio& p, const State& s);

/// Applies ops[0] first, then ops[1], ... and renormalizes. Throws
/// StateAnnihilated if the image norm drops below `norm_floor`.
State apply_sequence(std::span<const Operator> ops, const State& s, double norm_floor = 1e-12);

/// 1 - fidelity between the forward sequence (ops[0] first) and the reversed
/// one (ops[n-1] first). Ray fidelity ignores global phase, so a pair that
/// only anticommutes (AB = -BA) scores 0.
double order_sensitivity(std::span<const Operator> ops, const State& s);

/// True iff every pairwise commutator has max-entry modulus <= tol, i.e. the
/// portfolio sits in the commutative regime where application order is
/// irrelevant.
bool commuting_collapse_check(const OperatorPortfolio& p, const State& s, double tol);

}  // namespace aqs
