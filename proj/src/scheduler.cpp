#include "aqs/scheduler.hpp"

#include <algorithm>

#include "aqs/error.hpp"

namespace aqs {

CPair maximize_c_pair(const OperatorPortfolio& p, const State& s) {
    if (p.size() < 2) throw Error(ErrorCode::PortfolioTooSmall, "need at least two operators");
    require_same_dim(p.dim(), s.dim(), "maximize_c_pair");
    CPair best{0, 1, -1.0};
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            const double c = c_value(p[i], p[j], s);
            if (c > best.c) best = {i, j, c};
        }
    }
    return best;
}

State apply_sequence(std::span<const Operator> ops, const State& s, double norm_floor) {
    ComplexVector v(s.amplitudes().begin(), s.amplitudes().end());
    for (const Operator& op : ops) {
        Image img = aqs::apply(op, v);
        if (!(img.norm >= norm_floor)) {
            throw Error(ErrorCode::StateAnnihilated, "operator sequence annihilates the state");
        }
        // Rescale at every step so long products cannot underflow.
        for (Complex& z : img.raw) z /= img.norm;
        v = std::move(img.raw);
    }
    return State::from_amplitudes(std::move(v));
}

double order_sensitivity(std::span<const Operator> ops, const State& s) {
    if (ops.size() < 2) throw Error(ErrorCode::InvalidArgument, "order_sensitivity needs at least two operators");
    const State forward = apply_sequence(ops, s);
    std::vector<Operator> reversed(ops.rbegin(), ops.rend());
    const State backward = apply_sequence(reversed, s);
    return std::clamp(1.0 - fidelity(forward, backward), 0.0, 1.0);
}

bool commuting_collapse_check(const OperatorPortfolio& p, const State& s, double tol) {
    (void)s;  // the commutator test is state independent
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (commutator(p[i], p[j]).max_abs() > tol) return false;
    return true;
}

}  // namespace aqs
