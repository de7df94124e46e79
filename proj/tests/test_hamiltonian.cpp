#include <gtest/gtest.h>

#include <cmath>

#include "aqs/error.hpp"
#include "aqs/hamiltonian.hpp"
#include "support.hpp"

namespace aqs {
namespace {

template <class Fn>
ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected aqs::Error";
    return ErrorCode::InvalidArgument;
}

CValueMatrix zero_c(std::size_t m) {
    CValueMatrix c;
    c.size = m;
    c.values.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) c.names.push_back("mode_" + std::to_string(i));
    return c;
}

// H assembled from Kronecker products of single-mode ladders, M = 2 only.
test::Mat naive_two_mode_h(const HamiltonianParams& p, std::size_t cutoff) {
    const test::Mat a = test::naive_ladder(cutoff), eye = test::naive_eye(cutoff + 1);
    const test::Mat ops[2] = {test::naive_kron(a, eye), test::naive_kron(eye, a)};
    const std::size_t d = ops[0].size();
    test::Mat h(d, test::Vec(d));
    for (std::size_t i = 0; i < 2; ++i) {
        const test::Mat n = test::naive_mul(test::naive_dagger(ops[i]), ops[i]);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) h[r][c] += p.epsilon[i] * n[r][c];
        for (std::size_t j = 0; j < 2; ++j) {
            const test::Mat hop = test::naive_mul(test::naive_dagger(ops[i]), ops[j]);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) h[r][c] += p.g(i, j) * hop[r][c];
        }
    }
    return h;
}

TEST(BuildHamiltonian, SingleModeNumberOperator) {
    HamiltonianParams p = HamiltonianParams::zeros(1);
    p.epsilon = {1.0};
    EXPECT_EQ(build_hamiltonian(p, FockContext{1, 2}), Operator::diagonal(ComplexVector{0.0, 1.0, 2.0}));
}

TEST(BuildHamiltonian, HoppingMovesTheExcitation) {
    const FockContext ctx{2, 1};
    HamiltonianParams p = HamiltonianParams::zeros(2);
    p.g(0, 1) = 1.0;
    p.g(1, 0) = 1.0;
    const std::vector<std::size_t> occ01{0, 1}, occ10{1, 0};
    const Image img = apply(build_hamiltonian(p, ctx), ctx.basis_state(occ01));
    const State target = ctx.basis_state(occ10);
    EXPECT_EQ(img.raw, ComplexVector(target.amplitudes().begin(), target.amplitudes().end()));
}

TEST(BuildHamiltonian, MatchesKroneckerAssembly) {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t cutoff = 1; cutoff <= 3; ++cutoff) {
        HamiltonianParams p = HamiltonianParams::zeros(2);
        p.epsilon = {u(rng), u(rng)};
        p.g(0, 0) = u(rng);
        p.g(1, 1) = u(rng);
        const Complex off(u(rng), u(rng));
        p.g(0, 1) = off;
        p.g(1, 0) = std::conj(off);
        const Operator h = build_hamiltonian(p, FockContext{2, cutoff});
        EXPECT_LT(test::max_diff(h, naive_two_mode_h(p, cutoff)), 1e-14);
        EXPECT_TRUE(is_hermitian(h, 1e-12));
    }
}

TEST(HamiltonianParams, Validation) {
    HamiltonianParams p = HamiltonianParams::zeros(2);
    p.g(0, 1) = Complex(0.0, 1.0);
    EXPECT_EQ(code_of([&] { p.validate(2); }), ErrorCode::NotHermitian);
    p.hermitian_mode = false;
    EXPECT_NO_THROW(p.validate(2));
    EXPECT_EQ(code_of([&] { p.validate(3); }), ErrorCode::DimMismatch);
    p.epsilon[0] = std::nan("");
    EXPECT_EQ(code_of([&] { p.validate(2); }), ErrorCode::NonFinite);
}

TEST(SGenerator, NormalizesTheImage) {
    std::mt19937_64 rng(52);
    const State s = test::random_state(4, rng);
    const GeneratorConfig cfg;
    const StepResult same = s_generator_step(Operator::identity(4), s, cfg);
    EXPECT_NEAR(same.prenorm, 1.0, 1e-15);
    EXPECT_NEAR(fidelity(same.state, s), 1.0, 1e-15);

    const StepResult twice = s_generator_step(Complex(2.0) * Operator::identity(4), s, cfg);
    EXPECT_NEAR(twice.prenorm, 2.0, 1e-14);
    EXPECT_NEAR(norm(twice.state.amplitudes()), 1.0, 1e-12);
}

TEST(SGenerator, AnnihilationRaises) {
    const FockContext ctx{1, 2};
    HamiltonianParams p = HamiltonianParams::zeros(1);
    p.epsilon = {1.0};
    const Operator h = build_hamiltonian(p, ctx);
    EXPECT_EQ(code_of([&] { s_generator_step(h, State::basis(3, 0), GeneratorConfig{}); }),
              ErrorCode::StateAnnihilated);
    EXPECT_EQ(code_of([&] { s_generator_step(Operator::zero(3), State::basis(3, 1), GeneratorConfig{}); }),
              ErrorCode::StateAnnihilated);
}

TEST(Occupations, ReadOffAmplitudes) {
    const FockContext ctx{2, 2};
    const std::vector<std::size_t> occ{2, 1};
    EXPECT_EQ(occupation_expectations(ctx.basis_state(occ), ctx), (std::vector<double>{2.0, 1.0}));
    std::mt19937_64 rng(53);
    const State s = test::random_state(ctx.dim(), rng);
    const auto n = occupation_expectations(s, ctx);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(n[i], expectation(number_operator(ctx, i), s).real(), 1e-13);
}

TEST(UpdateParams, EpsilonFollowsOccupation) {
    GeneratorConfig cfg;
    cfg.decay = 1.0;
    cfg.alpha = 1.0;
    const std::vector<double> occ{1.0};
    const HamiltonianParams next = update_params(HamiltonianParams::zeros(1), occ, zero_c(1), cfg);
    EXPECT_EQ(next.epsilon, (std::vector<double>{1.0}));
    EXPECT_EQ(next.step, 1u);
}

TEST(UpdateParams, DecayBiasAndCoupling) {
    GeneratorConfig cfg;
    cfg.decay = 0.5;
    cfg.alpha = 0.25;
    cfg.beta = 2.0;
    cfg.bias = {0.1, -0.1};
    HamiltonianParams prev = HamiltonianParams::zeros(2);
    prev.epsilon = {4.0, 2.0};
    prev.g(0, 0) = 6.0;
    prev.g(0, 1) = 1.0;
    prev.g(1, 0) = 1.0;
    CValueMatrix c = zero_c(2);
    c.values = {0.0, 0.75, 0.75, 0.0};
    const std::vector<double> occ{2.0, 4.0};
    const HamiltonianParams next = update_params(prev, occ, c, cfg);
    EXPECT_DOUBLE_EQ(next.epsilon[0], 0.5 * 4.0 + 0.25 * 2.0 + 0.1);
    EXPECT_DOUBLE_EQ(next.epsilon[1], 0.5 * 2.0 + 0.25 * 4.0 - 0.1);
    EXPECT_EQ(next.g(0, 0), Complex(3.0));
    EXPECT_EQ(next.g(1, 1), Complex(0.0));
    EXPECT_EQ(next.g(0, 1), Complex(0.5 + 1.5));
    EXPECT_EQ(next.g(1, 0), Complex(2.0));

    cfg.diagonal_only = true;
    for (const Complex& g : update_params(prev, occ, c, cfg).coupling) EXPECT_EQ(g, Complex(0.0));
}

TEST(UpdateParams, HermitianModeSymmetrizes) {
    GeneratorConfig cfg;
    HamiltonianParams prev = HamiltonianParams::zeros(2, false);
    prev.g(0, 1) = Complex(1.0, 2.0);
    prev.g(1, 0) = Complex(3.0, 0.0);
    const std::vector<double> occ{0.0, 0.0};
    const HamiltonianParams sym = update_params(prev, occ, zero_c(2), cfg);
    EXPECT_EQ(sym.g(0, 1), Complex(2.0, 1.0));
    EXPECT_EQ(sym.g(1, 0), Complex(2.0, -1.0));
    EXPECT_NO_THROW(sym.validate(2));

    cfg.hermitian_mode = false;
    const HamiltonianParams raw = update_params(prev, occ, zero_c(2), cfg);
    EXPECT_EQ(raw.g(0, 1), Complex(1.0, 2.0));
    EXPECT_EQ(raw.g(1, 0), Complex(3.0, 0.0));
}

TEST(GeneratorConfig, Validation) {
    GeneratorConfig cfg;
    cfg.decay = 1.5;
    EXPECT_EQ(code_of([&] { cfg.validate(2); }), ErrorCode::InvalidArgument);
    cfg = GeneratorConfig{};
    cfg.alpha = -1.0;
    EXPECT_EQ(code_of([&] { cfg.validate(2); }), ErrorCode::InvalidArgument);
    cfg = GeneratorConfig{};
    cfg.bias = {1.0};
    EXPECT_ANY_THROW(cfg.validate(2));
}

TEST(CanonicalPortfolio, HermitianAndPairIndexed) {
    const FockContext ctx{3, 1};
    const OperatorPortfolio p = canonical_portfolio(ctx);
    ASSERT_EQ(p.size(), 9u);
    EXPECT_EQ(p.names()[0], "n_0");
    EXPECT_EQ(p.names()[1], "x_0_1");
    EXPECT_EQ(p.names()[3], "y_0_1");
    for (const Operator& op : p.ops()) EXPECT_TRUE(is_hermitian(op, 1e-12));
}

// Below the cutoff the hopping pair obeys the angular-momentum algebra, so
// the mode-level C-value is 2 |<n_i - n_j>|.
TEST(ModeCMatrix, PopulationImbalanceBelowCutoff) {
    const FockContext ctx{3, 2};
    const OperatorPortfolio p = canonical_portfolio(ctx);
    std::mt19937_64 rng(54);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        ComplexVector amp(ctx.dim());
        for (std::size_t idx = 0; idx < ctx.dim(); ++idx) {
            const auto occ = ctx.occupations(idx);
            if (occ[0] + occ[1] + occ[2] <= ctx.cutoff) amp[idx] = Complex(u(rng), u(rng));
        }
        const State s = State::from_amplitudes(amp);
        const auto n = occupation_expectations(s, ctx);
        const CValueMatrix c = mode_c_matrix(p, s, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                EXPECT_NEAR(c(i, j), 2.0 * std::abs(n[i] - n[j]), 1e-12) << i << "," << j;
    }
}

TEST(ModeCMatrix, PerModePortfolioAndSizeCheck) {
    const FockContext ctx{2, 1};
    const OperatorPortfolio per_mode({"a", "b"}, {fock_annihilation(ctx, 0), fock_annihilation(ctx, 1)});
    std::mt19937_64 rng(55);
    const State s = test::random_state(4, rng);
    EXPECT_NEAR(mode_c_matrix(per_mode, s, 2)(0, 1), c_value(per_mode[0], per_mode[1], s), 1e-15);
    const OperatorPortfolio three({"a", "b", "c"}, {per_mode[0], per_mode[1], Operator::identity(4)});
    EXPECT_EQ(code_of([&] { mode_c_matrix(three, s, 2); }), ErrorCode::DimMismatch);
}

TEST(Evolve, TrajectoryShape) {
    const FockContext ctx{2, 2};
    GeneratorConfig cfg;
    cfg.decay = 0.9;
    cfg.alpha = 0.2;
    cfg.beta = 0.5;
    HamiltonianParams p0 = HamiltonianParams::zeros(2);
    p0.epsilon = {1.0, 1.0};
    const std::vector<std::size_t> occ{0, 1};
    const Trajectory t = evolve(ctx.basis_state(occ), p0, ctx, canonical_portfolio(ctx), cfg, 10);
    EXPECT_FALSE(t.annihilated);
    EXPECT_EQ(t.steps(), 10u);
    EXPECT_EQ(t.states.size(), 11u);
    EXPECT_EQ(t.params_history.size(), 10u);
    EXPECT_EQ(t.c_history.size(), 10u);
    for (std::size_t k = 0; k < t.states.size(); ++k) EXPECT_NEAR(norm(t.states[k].amplitudes()), 1.0, 1e-12);
    for (std::size_t k = 0; k < 10; ++k) {
        EXPECT_EQ(t.params_history[k].step, k + 1);
        EXPECT_NO_THROW(t.params_history[k].validate(2));
    }
    // First C-matrix is taken at |01>: 2 |0 - 1|.
    EXPECT_NEAR(t.c_history[0](0, 1), 2.0, 1e-12);
    EXPECT_NO_THROW(t.mean_c());
}

TEST(Evolve, IsReproducible) {
    const FockContext ctx{2, 2};
    GeneratorConfig cfg;
    cfg.alpha = 0.3;
    cfg.beta = 0.4;
    cfg.decay = 0.8;
    HamiltonianParams p0 = HamiltonianParams::zeros(2);
    p0.epsilon = {1.0, 0.5};
    std::mt19937_64 rng(56);
    const State s0 = test::random_state(ctx.dim(), rng);
    const Trajectory a = evolve(s0, p0, ctx, canonical_portfolio(ctx), cfg, 15);
    const Trajectory b = evolve(s0, p0, ctx, canonical_portfolio(ctx), cfg, 15);
    EXPECT_EQ(a.states, b.states);
    EXPECT_EQ(a.params_history, b.params_history);
    EXPECT_EQ(a.prenorm, b.prenorm);
}

TEST(Evolve, AnnihilationTruncatesConsistently) {
    const FockContext ctx{1, 2};
    GeneratorConfig cfg;
    cfg.decay = 0.0;
    HamiltonianParams p0 = HamiltonianParams::zeros(1);
    p0.epsilon = {1.0};
    const OperatorPortfolio p({"n"}, {number_operator(ctx, 0)});
    const Trajectory t = evolve(State::basis(3, 1), p0, ctx, p, cfg, 5);
    EXPECT_TRUE(t.annihilated);
    ASSERT_TRUE(t.failed_step.has_value());
    EXPECT_EQ(*t.failed_step, 0u);
    EXPECT_EQ(*t.failed_prenorm, 0.0);
    EXPECT_EQ(t.states.size(), 1u);
    EXPECT_EQ(t.steps(), 0u);
    EXPECT_EQ(code_of([&] { t.mean_c(); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([&] { evolve(State::basis(3, 1), p0, ctx, p, cfg, 0); }), ErrorCode::InvalidArgument);
}

}  // namespace
}  // namespace aqs
