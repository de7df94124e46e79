#pragma once

// Test-only helpers. The naive routines here are deliberately written
// without the library so they can serve as independent oracles.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "aqs/hilbert.hpp"
#include "aqs/operators.hpp"

namespace aqs::test {

using Mat = std::vector<std::vector<std::complex<double>>>;
using Vec = std::vector<std::complex<double>>;

inline const Complex I{0.0, 1.0};

inline Operator sigma_x() { return Operator::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
inline Operator sigma_y() { return Operator::from_rows({{0.0, -I}, {I, 0.0}}); }
inline Operator sigma_z() { return Operator::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

inline Mat to_mat(const Operator& op) {
    Mat m(op.dim(), Vec(op.dim()));
    for (std::size_t i = 0; i < op.dim(); ++i)
        for (std::size_t j = 0; j < op.dim(); ++j) m[i][j] = op(i, j);
    return m;
}

inline Mat naive_mul(const Mat& a, const Mat& b) {
    const std::size_t n = a.size();
    Mat c(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline Mat naive_kron(const Mat& a, const Mat& b) {
    const std::size_t n = a.size(), m = b.size();
    Mat c(n * m, Vec(n * m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) c[i * m + k][j * m + l] = a[i][j] * b[k][l];
    return c;
}

inline Mat naive_eye(std::size_t n) {
    Mat m(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

/// Single-mode ladder matrix a with a|n> = sqrt(n)|n-1>.
inline Mat naive_ladder(std::size_t cutoff) {
    Mat a(cutoff + 1, Vec(cutoff + 1));
    for (std::size_t n = 1; n <= cutoff; ++n) a[n - 1][n] = std::sqrt(static_cast<double>(n));
    return a;
}

inline Mat naive_dagger(const Mat& a) {
    Mat d(a.size(), Vec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) d[j][i] = std::conj(a[i][j]);
    return d;
}

inline Vec naive_apply(const Mat& a, const Vec& v) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

inline std::complex<double> naive_dot(const Vec& a, const Vec& b) {
    std::complex<double> s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline Vec naive_normalize(Vec v) {
    const double n = std::sqrt(naive_dot(v, v).real());
    for (auto& z : v) z /= n;
    return v;
}

/// |<psi|(AB - BA)|psi>| evaluated by brute force.
inline double naive_c_value(const Mat& a, const Mat& b, const Vec& psi) {
    const Vec ab = naive_apply(a, naive_apply(b, psi));
    const Vec ba = naive_apply(b, naive_apply(a, psi));
    Vec diff(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) diff[i] = ab[i] - ba[i];
    return std::abs(naive_dot(psi, diff));
}

/// Two-pass textbook Pearson correlation.
inline double naive_corr(const std::vector<double>& u, const std::vector<double>& v) {
    double mu = 0, mv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        mu += u[i];
        mv += v[i];
    }
    mu /= static_cast<double>(u.size());
    mv /= static_cast<double>(v.size());
    double suv = 0, suu = 0, svv = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        suv += (u[i] - mu) * (v[i] - mv);
        suu += (u[i] - mu) * (u[i] - mu);
        svv += (v[i] - mv) * (v[i] - mv);
    }
    return suv / std::sqrt(suu * svv);
}

inline double max_diff(const Operator& op, const Mat& m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < op.dim(); ++i)
        for (std::size_t j = 0; j < op.dim(); ++j) worst = std::max(worst, std::abs(op(i, j) - m[i][j]));
    return worst;
}

inline Operator random_operator(std::size_t dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Operator op(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const double re = u(rng);
            op(i, j) = Complex(re, u(rng));
        }
    return op;
}

/// (M + M^dagger) / 2 with entries uniform in [-1, 1]^2.
inline Operator random_hermitian(std::size_t dim, std::mt19937_64& rng) {
    const Operator m = random_operator(dim, rng);
    return Complex(0.5) * (m + adjoint(m));
}

inline ComplexVector random_vector(std::size_t dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexVector v(dim);
    for (auto& z : v) {
        const double re = u(rng);
        z = Complex(re, u(rng));
    }
    return v;
}

inline State random_state(std::size_t dim, std::mt19937_64& rng) {
    return State::from_amplitudes(random_vector(dim, rng));
}

inline std::size_t random_dim(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Vec amps(const State& s) { return Vec(s.amplitudes().begin(), s.amplitudes().end()); }

}  // namespace aqs::test
