#include <gtest/gtest.h>

#include <cmath>

#include "aqs/creativity.hpp"
#include "aqs/error.hpp"
#include "support.hpp"

namespace aqs {
namespace {

using test::sigma_x;
using test::sigma_y;
using test::sigma_z;

template <class Fn>
ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected aqs::Error";
    return ErrorCode::InvalidArgument;
}

OperatorPortfolio pauli() { return OperatorPortfolio({"x", "y", "z"}, {sigma_x(), sigma_y(), sigma_z()}); }

TEST(CValue, PauliExamples) {
    const State e0 = State::basis(2, 0);
    EXPECT_DOUBLE_EQ(c_value(sigma_x(), sigma_y(), e0), 2.0);
    EXPECT_DOUBLE_EQ(c_value(sigma_x(), sigma_x(), e0), 0.0);
    EXPECT_DOUBLE_EQ(c_value(sigma_x(), sigma_z(), e0), 0.0);
    std::mt19937_64 rng(41);
    EXPECT_EQ(c_value(Operator::identity(3), test::random_operator(3, rng), test::random_state(3, rng)), 0.0);
}

TEST(CValue, MatchesBruteForceAndIsSymmetric) {
    std::mt19937_64 rng(42);
    for (int k = 0; k < 200; ++k) {
        const std::size_t d = test::random_dim(rng, 2, 16);
        const Operator a = test::random_operator(d, rng), b = test::random_operator(d, rng);
        const State s = test::random_state(d, rng);
        const double c = c_value(a, b, s);
        EXPECT_GE(c, 0.0);
        EXPECT_DOUBLE_EQ(c, c_value(b, a, s));
        EXPECT_NEAR(c, test::naive_c_value(test::to_mat(a), test::to_mat(b), test::amps(s)), 1e-10);
    }
}

TEST(CValue, DimMismatch) {
    EXPECT_EQ(code_of([] { c_value(sigma_x(), sigma_y(), State::basis(3, 0)); }), ErrorCode::DimMismatch);
}

TEST(Robertson, EqualityCaseForPauliPair) {
    const State e0 = State::basis(2, 0);
    EXPECT_NEAR(robertson_gap(sigma_x(), sigma_y(), e0), 0.0, 1e-12);
}

TEST(Robertson, NonNegativeForRandomHermitianPairs) {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 1000; ++k) {
        const std::size_t d = test::random_dim(rng, 2, 32);
        const Operator a = test::random_hermitian(d, rng), b = test::random_hermitian(d, rng);
        EXPECT_GE(robertson_gap(a, b, test::random_state(d, rng)), -1e-9);
    }
}

TEST(Robertson, RejectsNonHermitian) {
    const Operator raising = Operator::from_rows({{0.0, 1.0}, {0.0, 0.0}});
    EXPECT_EQ(code_of([&] { robertson_gap(raising, sigma_x(), State::basis(2, 0)); }), ErrorCode::NotHermitian);
}

TEST(CMatrix, PauliAtGroundState) {
    const CValueMatrix m = c_matrix(pauli(), State::basis(2, 0));
    ASSERT_EQ(m.size, 3u);
    EXPECT_EQ(m.names, (std::vector<std::string>{"x", "y", "z"}));
    EXPECT_DOUBLE_EQ(m(0, 1), 2.0);
    EXPECT_DOUBLE_EQ(m(1, 0), 2.0);
    EXPECT_DOUBLE_EQ(m(0, 2), 0.0);
    EXPECT_DOUBLE_EQ(m(1, 2), 0.0);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(m(i, i), 0.0);
}

TEST(CMatrix, CommutingPortfolioIsZero) {
    std::mt19937_64 rng(44);
    std::vector<Operator> ops;
    for (int k = 0; k < 4; ++k) ops.push_back(Operator::diagonal(test::random_vector(5, rng)));
    const CValueMatrix m = c_matrix(OperatorPortfolio({"a", "b", "c", "d"}, ops), test::random_state(5, rng));
    for (double v : m.values) EXPECT_EQ(v, 0.0);
}

TEST(CMatrix, SymmetricZeroDiagonalNonNegative) {
    std::mt19937_64 rng(45);
    for (int k = 0; k < 20; ++k) {
        const std::size_t d = test::random_dim(rng, 2, 10);
        std::vector<Operator> ops;
        std::vector<std::string> names;
        for (int i = 0; i < 5; ++i) {
            ops.push_back(test::random_operator(d, rng));
            names.push_back("op" + std::to_string(i));
        }
        const OperatorPortfolio p(names, ops);
        const State s = test::random_state(d, rng);
        const CValueMatrix m = c_matrix(p, s);
        for (std::size_t i = 0; i < 5; ++i) {
            EXPECT_EQ(m(i, i), 0.0);
            for (std::size_t j = 0; j < 5; ++j) {
                EXPECT_GE(m(i, j), 0.0);
                EXPECT_EQ(m(i, j), m(j, i));
                if (i != j) {
                    EXPECT_NEAR(m(i, j), c_value(p[i], p[j], s), 1e-15);
                }
            }
        }
    }
}

TEST(Portfolio, Validation) {
    EXPECT_EQ(code_of([] { OperatorPortfolio({"a", "a"}, {sigma_x(), sigma_y()}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { OperatorPortfolio({"a", ""}, {sigma_x(), sigma_y()}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { OperatorPortfolio({"a"}, {sigma_x(), sigma_y()}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { OperatorPortfolio({}, {}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { OperatorPortfolio({"a", "b"}, {sigma_x(), Operator::identity(3)}); }),
              ErrorCode::DimMismatch);
    const OperatorPortfolio p = pauli();
    EXPECT_EQ(p.size(), 3u);
    EXPECT_EQ(p.dim(), 2u);
    EXPECT_EQ(code_of([&] { c_matrix(p, State::basis(4, 0)); }), ErrorCode::DimMismatch);
}

}  // namespace
}  // namespace aqs
