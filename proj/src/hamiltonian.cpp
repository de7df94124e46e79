#include "aqs/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "aqs/error.hpp"

namespace aqs {

HamiltonianParams HamiltonianParams::zeros(std::size_t modes, bool hermitian_mode) {
    return HamiltonianParams{0, std::vector<double>(modes, 0.0), std::vector<Complex>(modes * modes),
                             hermitian_mode};
}

void HamiltonianParams::validate(std::size_t m) const {
    require_same_dim(epsilon.size(), m, "epsilon length");
    require_same_dim(coupling.size(), m * m, "coupling size");
    for (double e : epsilon)
        if (!std::isfinite(e)) throw Error(ErrorCode::NonFinite, "epsilon entry is not finite");
    for (const Complex& z : coupling)
        if (!is_finite(z)) throw Error(ErrorCode::NonFinite, "coupling entry is not finite");
    if (hermitian_mode) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j)
                if (std::abs(g(j, i) - std::conj(g(i, j))) > 1e-12) {
                    throw Error(ErrorCode::NotHermitian, "coupling is not Hermitian at (" +
                                                             std::to_string(i) + "," + std::to_string(j) + ")");
                }
    }
}

void GeneratorConfig::validate(std::size_t modes) const {
    if (!(decay >= 0.0 && decay <= 1.0)) throw Error(ErrorCode::InvalidArgument, "decay must lie in [0, 1]");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::InvalidArgument, "alpha must be >= 0");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw Error(ErrorCode::InvalidArgument, "beta must be >= 0");
    if (!(norm_floor > 0.0)) throw Error(ErrorCode::InvalidArgument, "norm_floor must be > 0");
    if (!bias.empty()) require_same_dim(bias.size(), modes, "bias length");
}

CValueMatrix Trajectory::mean_c() const {
    if (c_history.empty()) throw Error(ErrorCode::InvalidArgument, "trajectory has no C-values");
    CValueMatrix mean = c_history.front();
    for (std::size_t k = 1; k < c_history.size(); ++k)
        for (std::size_t e = 0; e < mean.values.size(); ++e) mean.values[e] += c_history[k].values[e];
    for (double& v : mean.values) v /= static_cast<double>(c_history.size());
    return mean;
}

namespace {

std::vector<std::size_t> strides(const FockContext& ctx) {
    std::vector<std::size_t> s(ctx.modes, 1);
    for (std::size_t m = ctx.modes - 1; m-- > 0;) s[m] = s[m + 1] * (ctx.cutoff + 1);
    return s;
}

}  // namespace

Operator build_hamiltonian(const HamiltonianParams& params, const FockContext& ctx) {
    const std::size_t m = ctx.modes;
    require_same_dim(params.epsilon.size(), m, "build_hamiltonian epsilon");
    require_same_dim(params.coupling.size(), m * m, "build_hamiltonian coupling");
    const std::size_t d = ctx.dim();
    const auto stride = strides(ctx);
    Operator h(d);
    std::vector<std::size_t> occ(m);
    for (std::size_t col = 0; col < d; ++col) {
        for (std::size_t i = 0; i < m; ++i) occ[i] = (col / stride[i]) % (ctx.cutoff + 1);
        Complex diag{};
        for (std::size_t i = 0; i < m; ++i)
            diag += (params.epsilon[i] + params.g(i, i)) * static_cast<double>(occ[i]);
        h(col, col) += diag;
        // a_i^dag a_j moves one quantum from mode j to mode i.
        for (std::size_t i = 0; i < m; ++i) {
            if (occ[i] == ctx.cutoff) continue;
            for (std::size_t j = 0; j < m; ++j) {
                if (i == j || occ[j] == 0) continue;
                const Complex gij = params.g(i, j);
                if (gij == Complex{}) continue;
                const std::size_t row = col - stride[j] + stride[i];
                const double amp = std::sqrt(static_cast<double>(occ[i] + 1)) *
                                   std::sqrt(static_cast<double>(occ[j]));
                h(row, col) += gij * amp;
            }
        }
    }
    return h;
}

StepResult s_generator_step(const Operator& h, const State& s, const GeneratorConfig& cfg) {
    Image img = apply(h, s);
    if (!(img.norm >= cfg.norm_floor)) {
        throw Error(ErrorCode::StateAnnihilated,
                    "||H psi|| = " + std::to_string(img.norm) + " below norm floor");
    }
    return StepResult{State::from_amplitudes(std::move(img.raw)), img.norm};
}

std::vector<double> occupation_expectations(const State& s, const FockContext& ctx) {
    require_same_dim(s.dim(), ctx.dim(), "occupation_expectations");
    const auto stride = strides(ctx);
    std::vector<double> n(ctx.modes, 0.0);
    for (std::size_t k = 0; k < s.dim(); ++k) {
        const double p = std::norm(s[k]);
        if (p == 0.0) continue;
        for (std::size_t i = 0; i < ctx.modes; ++i)
            n[i] += p * static_cast<double>((k / stride[i]) % (ctx.cutoff + 1));
    }
    return n;
}

OperatorPortfolio canonical_portfolio(const FockContext& ctx) {
    const std::size_t m = ctx.modes;
    std::vector<Operator> a, ad;
    for (std::size_t i = 0; i < m; ++i) {
        a.push_back(fock_annihilation(ctx, i));
        ad.push_back(adjoint(a.back()));
    }
    std::vector<std::string> names;
    std::vector<Operator> ops;
    const Complex minus_i{0.0, -1.0};
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) {
                names.push_back("n_" + std::to_string(i));
                ops.push_back(number_operator(ctx, i));
            } else if (i < j) {
                names.push_back("x_" + std::to_string(i) + "_" + std::to_string(j));
                ops.push_back(compose(ad[i], a[j]) + compose(ad[j], a[i]));
            } else {
                names.push_back("y_" + std::to_string(j) + "_" + std::to_string(i));
                ops.push_back(minus_i * (compose(ad[j], a[i]) - compose(ad[i], a[j])));
            }
        }
    }
    return OperatorPortfolio(std::move(names), std::move(ops));
}

CValueMatrix mode_c_matrix(const OperatorPortfolio& p, const State& s, std::size_t modes) {
    require_same_dim(p.dim(), s.dim(), "mode_c_matrix");
    const bool pair_indexed = p.size() == modes * modes && modes > 1;
    if (!pair_indexed && p.size() != modes) {
        throw Error(ErrorCode::DimMismatch, "portfolio size " + std::to_string(p.size()) +
                                                " is neither M nor M^2 for M = " + std::to_string(modes));
    }
    CValueMatrix c;
    c.size = modes;
    c.values.assign(modes * modes, 0.0);
    for (std::size_t i = 0; i < modes; ++i) c.names.push_back("mode_" + std::to_string(i));
    for (std::size_t i = 0; i < modes; ++i) {
        for (std::size_t j = i + 1; j < modes; ++j) {
            const double v = pair_indexed ? c_value(p[i * modes + j], p[j * modes + i], s)
                                          : c_value(p[i], p[j], s);
            c.values[i * modes + j] = v;
            c.values[j * modes + i] = v;
        }
    }
    return c;
}

HamiltonianParams update_params(const HamiltonianParams& prev, std::span<const double> occupations,
                                const CValueMatrix& mode_c, const GeneratorConfig& cfg) {
    const std::size_t m = prev.modes();
    require_same_dim(occupations.size(), m, "update_params occupations");
    require_same_dim(mode_c.size, m, "update_params C-matrix");
    cfg.validate(m);
    HamiltonianParams next = prev;
    next.step = prev.step + 1;
    next.hermitian_mode = cfg.hermitian_mode;
    for (std::size_t i = 0; i < m; ++i) {
        const double bias = cfg.bias.empty() ? 0.0 : cfg.bias[i];
        next.epsilon[i] = cfg.decay * prev.epsilon[i] + cfg.alpha * occupations[i] + bias;
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            Complex g = cfg.decay * prev.g(i, j);
            if (i != j) g += cfg.beta * mode_c(i, j);
            next.g(i, j) = g;
        }
    }
    if (cfg.diagonal_only) {
        std::fill(next.coupling.begin(), next.coupling.end(), Complex{});
    } else if (cfg.hermitian_mode) {
        for (std::size_t i = 0; i < m; ++i) {
            next.g(i, i) = next.g(i, i).real();
            for (std::size_t j = i + 1; j < m; ++j) {
                const Complex sym = 0.5 * (next.g(i, j) + std::conj(next.g(j, i)));
                next.g(i, j) = sym;
                next.g(j, i) = std::conj(sym);
            }
        }
    }
    return next;
}

HamiltonianParams h_generator_step(const HamiltonianParams& prev, const State& s,
                                   const OperatorPortfolio& p, const FockContext& ctx,
                                   const GeneratorConfig& cfg) {
    require_same_dim(prev.modes(), ctx.modes, "h_generator_step modes");
    const auto occ = occupation_expectations(s, ctx);
    return update_params(prev, occ, mode_c_matrix(p, s, ctx.modes), cfg);
}

Trajectory evolve(const State& s0, const HamiltonianParams& p0, const FockContext& ctx,
                  const OperatorPortfolio& portfolio, const GeneratorConfig& cfg, std::size_t steps) {
    if (steps == 0) throw Error(ErrorCode::InvalidArgument, "steps must be >= 1");
    require_same_dim(s0.dim(), ctx.dim(), "evolve initial state");
    require_same_dim(portfolio.dim(), ctx.dim(), "evolve portfolio");
    p0.validate(ctx.modes);
    cfg.validate(ctx.modes);

    Trajectory t;
    t.states.push_back(s0);
    HamiltonianParams params = p0;
    for (std::size_t k = 0; k < steps; ++k) {
        const State& psi = t.states.back();
        CValueMatrix c = mode_c_matrix(portfolio, psi, ctx.modes);
        params = update_params(params, occupation_expectations(psi, ctx), c, cfg);
        const Operator h = build_hamiltonian(params, ctx);
        Image img = apply(h, psi);
        if (!(img.norm >= cfg.norm_floor)) {
            t.annihilated = true;
            t.failed_step = k;
            t.failed_prenorm = img.norm;
            break;
        }
        t.params_history.push_back(params);
        t.c_history.push_back(std::move(c));
        t.prenorm.push_back(img.norm);
        t.states.push_back(State::from_amplitudes(std::move(img.raw)));
    }
    return t;
}

}  // namespace aqs
