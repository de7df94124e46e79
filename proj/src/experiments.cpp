#include "aqs/experiments.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "aqs/error.hpp"
#include "aqs/random.hpp"
#include "aqs/scheduler.hpp"

namespace aqs {

RealVector embed_state(const State& s) {
    std::size_t big = 0;
    for (std::size_t i = 1; i < s.dim(); ++i)
        if (std::abs(s[i]) > std::abs(s[big])) big = i;
    const Complex phase = std::conj(s[big]) / std::abs(s[big]);
    RealVector out(2 * s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const Complex z = phase * s[i];
        out[i] = z.real();
        out[s.dim() + i] = z.imag();
    }
    return out;
}

EmbeddingSet gaussian_cloud(std::string label, std::size_t n, const RealVector& center, double sigma,
                            std::uint64_t seed) {
    Rng rng = substream(seed, "gaussian-cloud:" + label);
    std::normal_distribution<double> noise(0.0, sigma);
    EmbeddingSet set{std::move(label), {}};
    set.vectors.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        RealVector v = center;
        for (double& x : v) x += noise(rng);
        set.vectors.push_back(std::move(v));
    }
    return set;
}

std::pair<EmbeddingSet, EmbeddingSet> separated_clusters(std::size_t n_per_set, std::size_t dim,
                                                         double separation, std::uint64_t seed) {
    if (dim == 0) throw Error(ErrorCode::InvalidArgument, "cluster dim must be >= 1");
    RealVector ca(dim, 0.0), cb(dim, 0.0);
    cb[0] = separation;
    return {gaussian_cloud("A", n_per_set, ca, 1.0, seed), gaussian_cloud("B", n_per_set, cb, 1.0, seed)};
}

InterferenceTriple sign_mixed_triple(std::size_t dim, std::uint64_t seed) {
    if (dim < 4) throw Error(ErrorCode::InvalidArgument, "sign-mixed triple needs dim >= 4");
    Rng rng = substream(seed, "sign-mixed-triple");
    std::normal_distribution<double> latent(0.0, 1.0);
    std::normal_distribution<double> own(0.0, 0.5);
    InterferenceTriple t{RealVector(dim), RealVector(dim), RealVector(dim)};
    for (std::size_t k = 0; k < dim; ++k) {
        const double z = latent(rng);
        t.y[k] = z + own(rng);
        t.x[k] = z + own(rng);
    }
    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<double> sign(dim, -1.0);
    for (std::size_t k = 0; k < dim / 2; ++k) sign[order[k]] = 1.0;
    for (std::size_t k = 0; k < dim; ++k) t.yp[k] = t.y[k] + 0.5 * sign[k] * (t.x[k] - t.y[k]);
    return t;
}

SwapExperiment noncommuting_swap() {
    SwapExperiment e;
    e.ctx = FockContext{2, 2};
    e.first = HamiltonianParams::zeros(2);
    e.first.epsilon = {1.0, 2.0};
    e.second = HamiltonianParams::zeros(2);
    e.second.g(0, 1) = 1.0;
    e.second.g(1, 0) = 1.0;
    e.second.g(1, 1) = 1.0;
    e.initial_occupation = {0, 1};
    return e;
}

SwapExperiment commuting_swap() {
    SwapExperiment e = noncommuting_swap();
    e.second = HamiltonianParams::zeros(2);
    e.second.epsilon = {3.0, 0.5};
    return e;
}

std::pair<EmbeddingSet, EmbeddingSet> swapped_order_embeddings(const SwapExperiment& exp, std::uint64_t seed) {
    exp.first.validate(exp.ctx.modes);
    exp.second.validate(exp.ctx.modes);
    if (!(exp.jitter >= 0.0)) throw Error(ErrorCode::InvalidArgument, "jitter must be >= 0");
    const Operator ha = build_hamiltonian(exp.first, exp.ctx);
    const Operator hb = build_hamiltonian(exp.second, exp.ctx);
    const State base = exp.ctx.basis_state(exp.initial_occupation);
    const std::vector<Operator> ab{ha, hb};
    const std::vector<Operator> ba{hb, ha};

    auto run_order = [&](const std::string& label, const std::vector<Operator>& seq) {
        EmbeddingSet set{label, {}};
        std::normal_distribution<double> noise(0.0, exp.jitter);
        for (std::size_t r = 0; r < exp.runs; ++r) {
            Rng rng = substream(seed, "swap-jitter:" + label, r);
            ComplexVector amps(base.amplitudes().begin(), base.amplitudes().end());
            for (Complex& z : amps) {
                const double re = noise(rng);
                const double im = noise(rng);
                z += Complex(re, im);
            }
            set.vectors.push_back(embed_state(apply_sequence(seq, State::from_amplitudes(std::move(amps)))));
        }
        return set;
    };
    return {run_order("A->B", ab), run_order("B->A", ba)};
}

}  // namespace aqs
