#pragma once

#include <string>
#include <vector>

#include "aqs/operators.hpp"

namespace aqs {

/// Named set of operators sharing one dimension.
class OperatorPortfolio {
public:
    /// Throws InvalidArgument on duplicate/empty names or mismatched list
    /// lengths, DimMismatch when the operators disagree on dimension.
    OperatorPortfolio(std::vector<std::string> names, std::vector<Operator> ops);

    std::size_t size() const noexcept { return ops_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<Operator>& ops() const noexcept { return ops_; }
    const Operator& operator[](std::size_t i) const { return ops_[i]; }

private:
    std::vector<std::string> names_;
    std::vector<Operator> ops_;
    std::size_t dim_ = 0;
};

/// Symmetric, zero-diagonal, nonnegative grid of pairwise C-values.
struct CValueMatrix {
    std::vector<std::string> names;
    std::size_t size = 0;
    std::vector<double> values;  // row-major size x size

    double operator()(std::size_t i, std::size_t j) const { return values[i * size + j]; }
};

/// C = |<psi|[A,B]|psi>|, the order-dependence of A and B at psi.
double c_value(const Operator& a, const Operator& b, const State& s);

/// sigma_A * sigma_B - C/2. The Robertson relation says this never drops
/// below zero (up to rounding) for Hermitian A, B.
double robertson_gap(const Operator& a, const Operator& b, const State& s);

CValueMatrix c_matrix(const OperatorPortfolio& p, const State& s);

}  // namespace aqs
