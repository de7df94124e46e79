#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "aqs/creativity.hpp"
#include "aqs/operators.hpp"

namespace aqs {

/// Coefficients of H(k) = sum_i eps_i n_i + sum_ij g_ij a_i^dagger a_j.
struct HamiltonianParams {
    std::size_t step = 0;
    std::vector<double> epsilon;    // length M
    std::vector<Complex> coupling;  // M x M, row-major
    bool hermitian_mode = true;

    static HamiltonianParams zeros(std::size_t modes, bool hermitian_mode = true);

    std::size_t modes() const noexcept { return epsilon.size(); }
    Complex g(std::size_t i, std::size_t j) const { return coupling[i * modes() + j]; }
    Complex& g(std::size_t i, std::size_t j) { return coupling[i * modes() + j]; }

    /// Shape checks against `modes`; in hermitian mode also checks
    /// g_ji = conj(g_ij) within 1e-12.
    void validate(std::size_t modes) const;

    friend bool operator==(const HamiltonianParams&, const HamiltonianParams&) = default;
};

/// Constants of the coefficient feedback law
///   eps_i(k) = decay * eps_i(k-1) + alpha * <n_i> + bias_i
///   g_ij(k)  = decay * g_ij(k-1)  + beta * C_ij        (i != j)
///   g_ii(k)  = decay * g_ii(k-1)
/// followed by G <- (G + G^dagger)/2 in hermitian mode, or G <- 0 when
/// diagonal_only is set.
struct GeneratorConfig {
    double decay = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
    bool hermitian_mode = true;
    bool diagonal_only = false;
    double norm_floor = 1e-10;
    std::vector<double> bias;  // external factors; empty means zero

    void validate(std::size_t modes) const;
};

struct Trajectory {
    std::vector<State> states;                  // K + 1 (fewer if annihilated)
    std::vector<HamiltonianParams> params_history;
    std::vector<CValueMatrix> c_history;
    std::vector<double> prenorm;
    bool annihilated = false;
    /// Step at which H(k)|psi_k> fell below the norm floor.
    std::optional<std::size_t> failed_step;
    std::optional<double> failed_prenorm;

    std::size_t steps() const noexcept { return prenorm.size(); }
    /// Entrywise mean of c_history; throws InvalidArgument when empty.
    CValueMatrix mean_c() const;
};

struct StepResult {
    State state;
    double prenorm = 0.0;
};

Operator build_hamiltonian(const HamiltonianParams& params, const FockContext& ctx);

/// normalize(H|psi>). Throws StateAnnihilated when ||H|psi>|| < norm_floor.
StepResult s_generator_step(const Operator& h, const State& s, const GeneratorConfig& cfg);

/// <n_i> for every mode, read off the squared amplitudes.
std::vector<double> occupation_expectations(const State& s, const FockContext& ctx);

/// Hermitian hopping observables indexed by ordered mode pair (i, j) at
/// position i*M + j: n_i on the diagonal, a_i^dag a_j + a_j^dag a_i for
/// i < j and -i(a_j^dag a_i - a_i^dag a_j) for i > j.
OperatorPortfolio canonical_portfolio(const FockContext& ctx);

/// Mode-level C-values driving the couplings. A portfolio of M operators is
/// one operator per mode (C_ij = C(P_i, P_j)); a portfolio of M^2 operators is
/// indexed by mode pair (C_ij = C(P_ij, P_ji)).
CValueMatrix mode_c_matrix(const OperatorPortfolio& p, const State& s, std::size_t modes);

/// Pure coefficient update from precomputed feedback quantities.
HamiltonianParams update_params(const HamiltonianParams& prev, std::span<const double> occupations,
                                const CValueMatrix& mode_c, const GeneratorConfig& cfg);

HamiltonianParams h_generator_step(const HamiltonianParams& prev, const State& s,
                                   const OperatorPortfolio& p, const FockContext& ctx,
                                   const GeneratorConfig& cfg);

/// Runs K rounds of: H-Generator update, build H(k), S-Generator update.
/// Annihilation does not throw; the trajectory comes back truncated with
/// `annihilated` set.
Trajectory evolve(const State& s0, const HamiltonianParams& p0, const FockContext& ctx,
                  const OperatorPortfolio& portfolio, const GeneratorConfig& cfg, std::size_t steps);

}  // namespace aqs
