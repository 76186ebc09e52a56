#include "sullivan/exact_linalg.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace sullivan;
using namespace sullivan::linalg;

namespace {

RationalMatrix q(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Rational>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (long v : row) r.back().emplace_back(v);
  }
  return RationalMatrix::from_rows(r, r.empty() ? 0 : r[0].size());
}

IntegerMatrix z(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Integer>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (long v : row) r.back().emplace_back(v);
  }
  return IntegerMatrix::from_rows(r, r.empty() ? 0 : r[0].size());
}

} // namespace

TEST(Rref, ProportionalRows) {
  const auto r = rref(q({{1, 2}, {2, 4}}));
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.pivots, std::vector<std::size_t>{0});
  EXPECT_EQ(r.reduced, q({{1, 2}, {0, 0}}));
}

TEST(Rref, IdentityAndZero) {
  const auto id = RationalMatrix::identity(3);
  EXPECT_EQ(rref(id).reduced, id);
  EXPECT_EQ(rref(id).rank, 3u);
  const auto zero = q({{0, 0}, {0, 0}});
  EXPECT_EQ(rref(zero).reduced, zero);
  EXPECT_EQ(rref(zero).rank, 0u);
}

TEST(Rational, FractionStrings) {
  EXPECT_EQ(to_fraction_string(Rational(3)), "3/1");
  EXPECT_EQ(to_fraction_string(Rational(-2, 4)), "-1/2");
  EXPECT_EQ(parse_fraction("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_fraction("-7"), Rational(-7));
  EXPECT_THROW(parse_fraction("1/0"), Error);
  EXPECT_THROW(parse_fraction("0.5"), Error);
  EXPECT_THROW(parse_fraction(""), Error);
}

TEST(Kernel, Examples) {
  const auto k = kernel_basis(q({{1, 2}, {2, 4}}));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0], (Vector{-2, 1}));
  EXPECT_TRUE(kernel_basis(RationalMatrix::identity(4)).empty());
  const auto zero = kernel_basis(RationalMatrix(2, 3));
  ASSERT_EQ(zero.size(), 3u);
  EXPECT_EQ(zero[0], (Vector{1, 0, 0}));
  EXPECT_EQ(zero[1], (Vector{0, 1, 0}));
  EXPECT_EQ(zero[2], (Vector{0, 0, 1}));
}

TEST(Kernel, SparseMatchesDense) {
  const auto m = q({{1, 0, 2, 0}, {0, 3, 0, 1}, {2, 0, 4, 0}});
  std::vector<SparseColumn> cols(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) cols[j].push_back({i, m(i, j)});
  EXPECT_EQ(kernel_basis_sparse(cols, m.rows()), kernel_basis(m));
}

TEST(Solve, Examples) {
  EXPECT_EQ(solve(RationalMatrix::identity(2), Vector{3, Rational(-1, 2)}), (Vector{3, Rational(-1, 2)}));
  EXPECT_FALSE(solve(q({{1, 2}, {2, 4}}), Vector{1, 3}).has_value());
  EXPECT_EQ(solve(q({{2}}), Vector{5}), (Vector{Rational(5, 2)}));
  EXPECT_THROW(solve(q({{2}}), Vector{1, 2}), Error);
}

TEST(QuotientDimension, Examples) {
  const std::vector<Vector> none;
  const std::vector<Vector> e1{{1}};
  EXPECT_EQ(quotient_dimension(none, e1, 1), 1u);
  EXPECT_EQ(quotient_dimension(e1, e1, 1), 0u);
  const std::vector<Vector> diag{{1, 1}};
  const std::vector<Vector> plane{{1, 0}, {0, 1}};
  EXPECT_EQ(quotient_dimension(diag, plane, 2), 1u);
  const auto qb = quotient_basis(diag, plane, 2);
  EXPECT_EQ(qb.dimension, 1u);
  const std::vector<Vector> outside{{0, 1}};
  const std::vector<Vector> axis{{1, 0}};
  EXPECT_THROW(quotient_basis(outside, axis, 2), Error);
}

TEST(RowSpaceTest, MembershipAndReduction) {
  RowSpace s(3);
  EXPECT_TRUE(s.insert({1, 1, 0}));
  EXPECT_TRUE(s.insert({0, 1, 1}));
  EXPECT_FALSE(s.insert({1, 2, 1}));
  EXPECT_TRUE(s.contains({2, 0, -2}));
  EXPECT_FALSE(s.contains({0, 0, 1}));
  EXPECT_EQ(s.rank(), 2u);
}

TEST(Snf, Examples) {
  EXPECT_EQ(smith_normal_form(IntegerMatrix::identity(2)).diagonal, (std::vector<Integer>{1, 1}));
  const auto a = z({{2, 0}, {0, 3}});
  const auto snf = smith_normal_form(a, true);
  EXPECT_EQ(snf.diagonal, (std::vector<Integer>{1, 6}));
  EXPECT_EQ(snf.diagonal, oracle::invariant_factors(a));
  IntegerMatrix d(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 6;
  EXPECT_EQ(*snf.left * a * *snf.right, d);
  const auto zero = smith_normal_form(IntegerMatrix(2, 3));
  EXPECT_TRUE(zero.diagonal.empty());
  EXPECT_EQ(zero.rank, 0u);
}

TEST(Snf, NegativeAndRectangular) {
  const auto a = z({{-4, 6, 2}, {8, 0, -10}});
  const auto snf = smith_normal_form(a);
  EXPECT_EQ(snf.diagonal, oracle::invariant_factors(a));
  EXPECT_EQ(snf.diagonal, (std::vector<Integer>{2, 6}));
}

TEST(Oracle, MinorGcdSelfCheck) {
  // 2x2 determinant by hand.
  EXPECT_EQ(oracle::determinant({{3, 5}, {1, 2}}), Integer(1));
  EXPECT_EQ(oracle::minor_gcd(z({{2, 4}, {6, 8}}), 1), Integer(2));
  EXPECT_EQ(oracle::minor_gcd(z({{2, 4}, {6, 8}}), 2), Integer(8));
}
