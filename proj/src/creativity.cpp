#include "aqs/creativity.hpp"

#include <cmath>
#include <set>

#include "aqs/error.hpp"

namespace aqs {

OperatorPortfolio::OperatorPortfolio(std::vector<std::string> names, std::vector<Operator> ops)
    : names_(std::move(names)), ops_(std::move(ops)) {
    if (names_.size() != ops_.size()) {
        throw Error(ErrorCode::InvalidArgument, "portfolio names and operators differ in length");
    }
    if (ops_.empty()) throw Error(ErrorCode::InvalidArgument, "portfolio is empty");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw Error(ErrorCode::InvalidArgument, "portfolio operator name is empty");
        if (!seen.insert(n).second) throw Error(ErrorCode::InvalidArgument, "duplicate operator name '" + n + "'");
    }
    dim_ = ops_.front().dim();
    for (const auto& op : ops_) require_same_dim(op.dim(), dim_, "portfolio");
}

double c_value(const Operator& a, const Operator& b, const State& s) {
    require_same_dim(a.dim(), b.dim(), "c_value");
    require_same_dim(a.dim(), s.dim(), "c_value state");
    return std::abs(expectation(commutator(a, b), s));
}

double robertson_gap(const Operator& a, const Operator& b, const State& s) {
    require_same_dim(a.dim(), b.dim(), "robertson_gap");
    const double sa = std_dev(a, s);
    const double sb = std_dev(b, s);
    return sa * sb - 0.5 * c_value(a, b, s);
}

CValueMatrix c_matrix(const OperatorPortfolio& p, const State& s) {
    require_same_dim(p.dim(), s.dim(), "c_matrix");
    const std::size_t n = p.size();
    CValueMatrix m{p.names(), n, std::vector<double>(n * n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double c = c_value(p[i], p[j], s);
            m.values[i * n + j] = c;
            m.values[j * n + i] = c;
        }
    }
    return m;
}

}  // namespace aqs
