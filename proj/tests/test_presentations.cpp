#include "sullivan/presentations.hpp"
#include "sullivan/serialization.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace sullivan;
using namespace sullivan::groups;

namespace {

GroupPresentation bundled(const std::string& name) {
  return parse(io::read_file(std::string(SULLIVAN_DATA_DIR) + "/presentations/" + name));
}

Word w(std::initializer_list<Letter> letters) { return Word(std::vector<Letter>(letters)); }

} // namespace

TEST(Parse, Commutator) {
  const auto p = parse("a,b\n[a,b]");
  EXPECT_EQ(p.generators, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(p.relators.size(), 1u);
  EXPECT_EQ(p.relators[0], w({{"a", 1}, {"b", 1}, {"a", -1}, {"b", -1}}));
  EXPECT_EQ(p.relators[0].to_string(), "a b a^-1 b^-1");
}

TEST(Parse, PowerAndEquation) {
  const auto p = parse("a\na^2");
  EXPECT_EQ(p.relators[0], Word::letter("a", 2));
  const auto q = parse("a, b\na b = b a\n(a b)^-2\na^(-1) b^+3\n1 = a a^-1\n");
  EXPECT_EQ(q.relators[0], w({{"a", 1}, {"b", 1}, {"a", -1}, {"b", -1}}));
  EXPECT_EQ(q.relators[1], w({{"b", -1}, {"a", -1}, {"b", -1}, {"a", -1}}));
  EXPECT_EQ(q.relators[2], w({{"a", -1}, {"b", 3}}));
  EXPECT_TRUE(q.relators[3].empty());
}

TEST(Parse, CommentsBlankLinesAndUnicode) {
  const auto p = parse("# header\n\n  α, β'  # gens\n\n[α, β']  # rel\n");
  EXPECT_EQ(p.generators, (std::vector<std::string>{"α", "β'"}));
  EXPECT_EQ(p.relators.size(), 1u);
}

TEST(Parse, ErrorsCarryPosition) {
  try {
    parse("a, b\n[a, c]\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 5u);
    EXPECT_NE(std::string(e.what()).find("unknown generator 'c'"), std::string::npos);
  }
  EXPECT_THROW(parse("a\na^0\n"), ParseError);
  EXPECT_THROW(parse("a\n(a\n"), ParseError);
  EXPECT_THROW(parse("a, a\n"), ParseError);
  EXPECT_THROW(parse("# only comments\n"), ParseError);
  EXPECT_THROW(parse("a, 2b\n"), ParseError);
  EXPECT_THROW(parse("a\na = a = a\n"), ParseError);
}

TEST(Parse, BundledF) {
  const auto f = bundled("F.grp");
  EXPECT_EQ(f.generators, (std::vector<std::string>{"x1", "x2", "x3", "x4", "alpha", "beta"}));
  EXPECT_EQ(f.relators.size(), 17u);
}

TEST(Parse, PrintRoundTrip) {
  const auto f = bundled("F.grp");
  EXPECT_EQ(parse(print(f)), f);
  EXPECT_EQ(print(parse("a\n")), "a\n");
}

TEST(RelationMatrix, Examples) {
  const auto m = relation_matrix(parse("a\na^2"));
  ASSERT_EQ(m.rows(), 1u);
  EXPECT_EQ(m(0, 0), Integer(2));

  const auto f = bundled("F.grp");
  const auto rm = relation_matrix(f);
  const auto col = [&](const std::string& g) {
    return static_cast<std::size_t>(std::find(f.generators.begin(), f.generators.end(), g) - f.generators.begin());
  };
  // alpha^2 = x3
  const auto alpha_sq = parse("x1, x2, x3, x4, alpha, beta\nalpha^2 = x3\n").relators[0];
  const auto row_of = [&](const Word& r) {
    for (std::size_t i = 0; i < f.relators.size(); ++i)
      if (f.relators[i] == r) return i;
    return f.relators.size();
  };
  const std::size_t i = row_of(alpha_sq);
  ASSERT_LT(i, f.relators.size());
  EXPECT_EQ(rm(i, col("alpha")), Integer(2));
  EXPECT_EQ(rm(i, col("x3")), Integer(-1));
  // alpha beta = x2^-1 x3 x4^-1 beta alpha
  const auto ab = parse("x1, x2, x3, x4, alpha, beta\nalpha beta = x2^-1 x3 x4^-1 beta alpha\n").relators[0];
  const std::size_t j = row_of(ab);
  ASSERT_LT(j, f.relators.size());
  EXPECT_EQ(rm(j, col("x2")), Integer(1));
  EXPECT_EQ(rm(j, col("x3")), Integer(-1));
  EXPECT_EQ(rm(j, col("x4")), Integer(1));
  EXPECT_EQ(rm(j, col("alpha")), Integer(0));
  EXPECT_EQ(rm(j, col("beta")), Integer(0));
}

TEST(AbelianInvariants, Examples) {
  EXPECT_EQ(abelian_invariants(parse("a, b\n")).to_string(), "rank=2,torsion=");
  EXPECT_EQ(rational_rank(parse("a, b\n[a, b]\n")), 2u);
  EXPECT_EQ(abelian_invariants(parse("a\na^6\n")).torsion, (std::vector<Integer>{6}));
}

TEST(AbelianInvariants, BundledFAndGMatchOracle) {
  const auto f = bundled("F.grp");
  const auto g = bundled("G.grp");
  const auto inv_f = abelian_invariants(f);
  EXPECT_EQ(inv_f.free_rank, 0u);
  EXPECT_EQ(inv_f.torsion, (std::vector<Integer>{2, 4, 4}));
  EXPECT_EQ(rational_rank(f), 0u);
  EXPECT_EQ(rational_rank(g), 1u);
  EXPECT_EQ(abelian_invariants(g).torsion, inv_f.torsion);

  // Minor-gcd oracle on the relation matrix.
  const auto factors = oracle::invariant_factors(relation_matrix(f));
  std::vector<Integer> torsion;
  for (const auto& d : factors)
    if (d > 1) torsion.push_back(d);
  EXPECT_EQ(torsion, inv_f.torsion);
  EXPECT_EQ(f.generators.size() - factors.size(), inv_f.free_rank);
}

TEST(DirectProduct, MatchesBundledG) {
  const auto f = bundled("F.grp");
  EXPECT_EQ(direct_product_with_z(f, "t"), bundled("G.grp"));
  EXPECT_THROW(direct_product_with_z(f, "x1"), Error);
}
