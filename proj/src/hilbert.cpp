#include "aqs/hilbert.hpp"

#include <cmath>
#include <string>

#include "aqs/error.hpp"

namespace aqs {

bool is_finite(Complex z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

double norm(std::span<const Complex> v) noexcept {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return std::sqrt(s);
}

State State::from_amplitudes(ComplexVector raw) {
    if (raw.empty()) throw Error(ErrorCode::InvalidArgument, "state must have dim >= 1");
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!is_finite(raw[i])) {
            throw Error(ErrorCode::NonFinite, "amplitude " + std::to_string(i) + " is not finite");
        }
    }
    const double n = norm(raw);
    if (!(n >= kConstructionTol)) throw Error(ErrorCode::ZeroNorm, "amplitude vector has zero norm");
    for (Complex& z : raw) z /= n;
    return State(std::move(raw));
}

State State::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
    ComplexVector v(dim);
    v[index] = 1.0;
    return State(std::move(v));
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
    require_same_dim(a.size(), b.size(), "inner_product");
    Complex acc{};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

Complex inner_product(const State& a, const State& b) {
    return inner_product(a.amplitudes(), b.amplitudes());
}

State superpose(std::span<const State> states, std::span<const Complex> weights) {
    if (states.empty()) throw Error(ErrorCode::InvalidArgument, "superpose needs at least one state");
    require_same_dim(states.size(), weights.size(), "superpose weights");
    const std::size_t dim = states.front().dim();
    ComplexVector acc(dim);
    for (std::size_t k = 0; k < states.size(); ++k) {
        require_same_dim(dim, states[k].dim(), "superpose");
        for (std::size_t i = 0; i < dim; ++i) acc[i] += weights[k] * states[k][i];
    }
    return State::from_amplitudes(std::move(acc));
}

double fidelity(const State& a, const State& b) {
    return std::abs(inner_product(a, b));
}

}  // namespace aqs
