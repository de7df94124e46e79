#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace aqs {

/// Complex amplitude, stored as an explicit (re, im) pair of doubles.
using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kNormTol = 1e-9;

bool is_finite(Complex z) noexcept;
double norm(std::span<const Complex> v) noexcept;

/// Unit-norm amplitude vector |psi>. The only way to build one is through
/// from_amplitudes (or the basis helpers), so every instance is normalized
/// and finite.
class State {
public:
    /// Normalizes `raw`. Throws ZeroNorm when ||raw|| < 1e-12 and NonFinite
    /// on any NaN/Inf entry.
    static State from_amplitudes(ComplexVector raw);
    static State basis(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    Complex operator[](std::size_t i) const { return amps_[i]; }

    friend bool operator==(const State&, const State&) = default;

private:
    explicit State(ComplexVector amps) : amps_(std::move(amps)) {}
    ComplexVector amps_;
};

/// <a|b> = sum conj(a_i) b_i.
Complex inner_product(const State& a, const State& b);
Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);

/// Normalized sum_i w_i |psi_i>.
State superpose(std::span<const State> states, std::span<const Complex> weights);

/// |<a|b>|, blind to the global phase of either argument.
double fidelity(const State& a, const State& b);

}  // namespace aqs
