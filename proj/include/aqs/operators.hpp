#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "aqs/hilbert.hpp"

namespace aqs {

/// Dense square complex matrix, row-major.
///
/// Order convention: compose(A, B) is the matrix product AB, which acting on
/// a ket applies B first and then A. A sequence "A then B" is therefore the
/// matrix BA.
class Operator {
public:
    Operator() = default;
    explicit Operator(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static Operator zero(std::size_t dim) { return Operator(dim); }
    static Operator identity(std::size_t dim);
    static Operator diagonal(std::span<const Complex> diag);
    /// Throws DimMismatch on a ragged or non-square input and NonFinite on
    /// NaN/Inf entries.
    static Operator from_rows(const std::vector<ComplexVector>& rows);
    static Operator from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t dim() const noexcept { return dim_; }
    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    Complex operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
    std::span<const Complex> data() const noexcept { return data_; }

    /// Largest entry modulus.
    double max_abs() const noexcept;
    double frobenius() const noexcept;

    Operator& operator+=(const Operator& rhs);
    Operator& operator-=(const Operator& rhs);
    Operator& operator*=(Complex s);

    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator*(Complex s, Operator a) { return a *= s; }
    friend Operator operator-(Operator a) { return a *= Complex(-1.0); }
    friend bool operator==(const Operator&, const Operator&) = default;

private:
    std::size_t dim_ = 0;
    ComplexVector data_;
};

/// Unnormalized image A|psi> together with its norm.
struct Image {
    ComplexVector raw;
    double norm = 0.0;
};

Operator compose(const Operator& a, const Operator& b);
/// AB - BA. Entrywise, commutator(b, a) is the exact negation.
Operator commutator(const Operator& a, const Operator& b);
Operator adjoint(const Operator& a);
Image apply(const Operator& a, std::span<const Complex> v);
Image apply(const Operator& a, const State& s);
Complex expectation(const Operator& a, const State& s);
/// Dispersion sqrt(<A^2> - <A>^2). Only defined for operators that are
/// Hermitian within 1e-9; anything else raises NotHermitian.
double std_dev(const Operator& a, const State& s);
bool is_hermitian(const Operator& a, double tol);

/// Truncated multi-mode Fock space. Basis states are occupation tuples
/// (n_0, ..., n_{M-1}) with 0 <= n_i <= cutoff, ordered lexicographically
/// with the last mode varying fastest. Modes are indexed from 0.
struct FockContext {
    std::size_t modes = 1;
    std::size_t cutoff = 1;

    /// (cutoff + 1)^modes; throws InvalidArgument on overflow or zero fields.
    std::size_t dim() const;
    std::vector<std::size_t> occupations(std::size_t index) const;
    std::size_t index(std::span<const std::size_t> occupations) const;
    State basis_state(std::span<const std::size_t> occupations) const;

    friend bool operator==(const FockContext&, const FockContext&) = default;
};

/// a_i with a|n> = sqrt(n)|n-1> on mode i, identity elsewhere.
Operator fock_annihilation(const FockContext& ctx, std::size_t mode);
/// a_i^dagger. Hard cutoff: a^dagger|cutoff> = 0, so the CCR [a, a^dagger] = 1
/// fails on the top occupation of the mode.
Operator fock_creation(const FockContext& ctx, std::size_t mode);
/// n_i = a_i^dagger a_i, built directly as a diagonal.
Operator number_operator(const FockContext& ctx, std::size_t mode);

}  // namespace aqs
