#include "aqs/operators.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "aqs/error.hpp"

namespace aqs {

Operator Operator::identity(std::size_t dim) {
    Operator op(dim);
    for (std::size_t i = 0; i < dim; ++i) op(i, i) = 1.0;
    return op;
}

Operator Operator::diagonal(std::span<const Complex> diag) {
    Operator op(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) op(i, i) = diag[i];
    return op;
}

Operator Operator::from_rows(const std::vector<ComplexVector>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "operator must have dim >= 1");
    Operator op(n);
    for (std::size_t i = 0; i < n; ++i) {
        require_same_dim(rows[i].size(), n, "operator row " + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_finite(rows[i][j])) {
                throw Error(ErrorCode::NonFinite, "operator entry (" + std::to_string(i) + "," +
                                                      std::to_string(j) + ") is not finite");
            }
            op(i, j) = rows[i][j];
        }
    }
    return op;
}

Operator Operator::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::vector<ComplexVector> r;
    r.reserve(rows.size());
    for (const auto& row : rows) r.emplace_back(row);
    return from_rows(r);
}

double Operator::max_abs() const noexcept {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double Operator::frobenius() const noexcept { return norm(data_); }

Operator& Operator::operator+=(const Operator& rhs) {
    require_same_dim(dim_, rhs.dim_, "operator +");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
    require_same_dim(dim_, rhs.dim_, "operator -");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

Operator& Operator::operator*=(Complex s) {
    for (Complex& z : data_) z *= s;
    return *this;
}

Operator compose(const Operator& a, const Operator& b) {
    require_same_dim(a.dim(), b.dim(), "compose");
    const std::size_t n = a.dim();
    Operator out(n);
    // i-k-j order; each output entry accumulates over k ascending, so the
    // result is bitwise reproducible.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

Operator commutator(const Operator& a, const Operator& b) {
    return compose(a, b) - compose(b, a);
}

Operator adjoint(const Operator& a) {
    const std::size_t n = a.dim();
    Operator out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

Image apply(const Operator& a, std::span<const Complex> v) {
    require_same_dim(a.dim(), v.size(), "apply");
    const std::size_t n = a.dim();
    Image img{ComplexVector(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * v[j];
        img.raw[i] = acc;
    }
    img.norm = norm(img.raw);
    return img;
}

Image apply(const Operator& a, const State& s) { return apply(a, s.amplitudes()); }

Complex expectation(const Operator& a, const State& s) {
    const Image img = apply(a, s);
    return inner_product(s.amplitudes(), img.raw);
}

double std_dev(const Operator& a, const State& s) {
    require_same_dim(a.dim(), s.dim(), "std_dev");
    if (!is_hermitian(a, kNormTol)) throw Error(ErrorCode::NotHermitian, "std_dev needs a Hermitian operator");
    const Image img = apply(a, s);
    // For Hermitian A, <A^2> = ||A psi||^2.
    const double second = img.norm * img.norm;
    const double mean = inner_product(s.amplitudes(), img.raw).real();
    return std::sqrt(std::max(0.0, second - mean * mean));
}

bool is_hermitian(const Operator& a, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "is_hermitian tolerance must be positive");
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
    return true;
}

std::size_t FockContext::dim() const {
    if (modes == 0 || cutoff == 0) {
        throw Error(ErrorCode::InvalidArgument, "Fock context needs modes >= 1 and cutoff >= 1");
    }
    std::size_t d = 1;
    for (std::size_t m = 0; m < modes; ++m) {
        if (d > std::numeric_limits<std::size_t>::max() / (cutoff + 1)) {
            throw Error(ErrorCode::InvalidArgument, "Fock dimension overflows");
        }
        d *= cutoff + 1;
    }
    return d;
}

std::vector<std::size_t> FockContext::occupations(std::size_t index) const {
    if (index >= dim()) throw Error(ErrorCode::InvalidArgument, "Fock index out of range");
    std::vector<std::size_t> occ(modes);
    for (std::size_t m = modes; m-- > 0;) {
        occ[m] = index % (cutoff + 1);
        index /= cutoff + 1;
    }
    return occ;
}

std::size_t FockContext::index(std::span<const std::size_t> occupations) const {
    require_same_dim(occupations.size(), modes, "Fock occupation tuple");
    std::size_t idx = 0;
    for (std::size_t m = 0; m < modes; ++m) {
        if (occupations[m] > cutoff) {
            throw Error(ErrorCode::InvalidArgument, "occupation of mode " + std::to_string(m) +
                                                        " exceeds cutoff");
        }
        idx = idx * (cutoff + 1) + occupations[m];
    }
    return idx;
}

State FockContext::basis_state(std::span<const std::size_t> occupations) const {
    return State::basis(dim(), index(occupations));
}

namespace {

void check_mode(const FockContext& ctx, std::size_t mode) {
    if (mode >= ctx.modes) {
        throw Error(ErrorCode::ModeOutOfRange, "mode " + std::to_string(mode) + " not in [0, " +
                                                   std::to_string(ctx.modes) + ")");
    }
}

// Stride of `mode` in the flat index (last mode fastest).
std::size_t mode_stride(const FockContext& ctx, std::size_t mode) {
    std::size_t stride = 1;
    for (std::size_t m = mode + 1; m < ctx.modes; ++m) stride *= ctx.cutoff + 1;
    return stride;
}

}  // namespace

Operator fock_annihilation(const FockContext& ctx, std::size_t mode) {
    check_mode(ctx, mode);
    const std::size_t d = ctx.dim();
    const std::size_t stride = mode_stride(ctx, mode);
    Operator op(d);
    for (std::size_t col = 0; col < d; ++col) {
        const std::size_t n = (col / stride) % (ctx.cutoff + 1);
        if (n > 0) op(col - stride, col) = std::sqrt(static_cast<double>(n));
    }
    return op;
}

Operator fock_creation(const FockContext& ctx, std::size_t mode) {
    return adjoint(fock_annihilation(ctx, mode));
}

Operator number_operator(const FockContext& ctx, std::size_t mode) {
    check_mode(ctx, mode);
    const std::size_t d = ctx.dim();
    const std::size_t stride = mode_stride(ctx, mode);
    Operator op(d);
    for (std::size_t i = 0; i < d; ++i) op(i, i) = static_cast<double>((i / stride) % (ctx.cutoff + 1));
    return op;
}

}  // namespace aqs
