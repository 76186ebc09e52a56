#pragma once

// Randomized property checks with fixed seeds. Shared by the unit suite and
// the acceptance binary; each runner returns its case and failure counts.

#include "oracles.hpp"

#include "sullivan/bigraded_model.hpp"
#include "sullivan/presentations.hpp"

#include <random>
#include <string>

namespace props {

using namespace sullivan;

struct Result {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
  bool ok() const { return failures == 0; }
};

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Rational rational(long bound = 5) {
    const long den = integer(1, 3);
    Rational q(integer(-bound, bound), den);
    q.canonicalize();
    return q;
  }

  // Random homogeneous polynomial of degree k (zero if no monomials exist).
  Polynomial homogeneous(const Algebra& alg, int k, std::size_t max_terms = 4) {
    const auto basis = alg.basis_of(k);
    Polynomial p;
    if (basis.empty()) return p;
    const auto n = static_cast<std::size_t>(integer(1, static_cast<long>(max_terms)));
    for (std::size_t i = 0; i < n; ++i) {
      const auto& m = basis[static_cast<std::size_t>(integer(0, static_cast<long>(basis.size()) - 1))];
      p.add_term(m, rational());
    }
    return p;
  }

  // Algebra on 3..6 generators of degrees 1..4.
  Algebra algebra(int cap) {
    std::vector<Generator> gens;
    const long n = integer(3, 6);
    for (long i = 0; i < n; ++i) {
      Generator g;
      g.degree = static_cast<int>(integer(1, 4));
      g.name = "g" + std::to_string(i) + "_" + std::to_string(g.degree);
      gens.push_back(g);
    }
    return Algebra(std::move(gens), cap);
  }

  linalg::RationalMatrix rational_matrix(std::size_t max_dim = 7) {
    const auto r = static_cast<std::size_t>(integer(1, static_cast<long>(max_dim)));
    const auto c = static_cast<std::size_t>(integer(1, static_cast<long>(max_dim)));
    linalg::RationalMatrix m(r, c);
    // Low-rank cases come from repeating earlier rows.
    for (std::size_t i = 0; i < r; ++i) {
      if (i > 0 && coin(0.3)) {
        const auto src = static_cast<std::size_t>(integer(0, static_cast<long>(i) - 1));
        const Rational s = rational();
        for (std::size_t j = 0; j < c; ++j) m(i, j) = s * m(src, j);
        continue;
      }
      for (std::size_t j = 0; j < c; ++j) m(i, j) = coin(0.4) ? Rational(0) : rational();
    }
    return m;
  }

  linalg::IntegerMatrix integer_matrix(std::size_t max_dim = 5, long bound = 6) {
    const auto r = static_cast<std::size_t>(integer(1, static_cast<long>(max_dim)));
    const auto c = static_cast<std::size_t>(integer(1, static_cast<long>(max_dim)));
    linalg::IntegerMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = coin(0.3) ? 0 : integer(-bound, bound);
    return m;
  }

  groups::Word word(const std::vector<std::string>& gens, std::size_t max_len = 6) {
    groups::Word w;
    const long len = integer(0, static_cast<long>(max_len));
    for (long i = 0; i < len; ++i) {
      w.push({gens[static_cast<std::size_t>(integer(0, static_cast<long>(gens.size()) - 1))], integer(-3, 3)});
    }
    return w;
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

inline const BigradedModel& wedge_model_cap8() {
  static const BigradedModel model = build(CohomologySpec::wedge_s2_s3_s3(), 8);
  return model;
}

/// d(pq) = d(p)q + (-1)^{|p|} p d(q) on the wedge model.
inline Result leibniz(std::size_t cases, std::uint64_t seed = 0x5eed0001) {
  const CdgaModel& model = wedge_model_cap8().cdga();
  const Algebra& alg = model.algebra();
  Gen gen(seed);
  Result r;
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const int dp = static_cast<int>(gen.integer(0, 7));
    const int dq = static_cast<int>(gen.integer(0, 8 - dp));
    const Polynomial p = gen.homogeneous(alg, dp), q = gen.homogeneous(alg, dq);
    const Polynomial lhs = apply_d_unbounded(model, alg.multiply_unbounded(p, q));
    Polynomial rhs = alg.multiply_unbounded(apply_d_unbounded(model, p), q);
    Polynomial second = alg.multiply_unbounded(p, apply_d_unbounded(model, q));
    if (dp % 2) second = -second;
    rhs += second;
    if (!(lhs == rhs)) r.fail("Leibniz fails for p = " + alg.to_string(p) + ", q = " + alg.to_string(q));
  }
  return r;
}

/// pq = (-1)^{|p||q|} qp and (pq)r = p(qr) over random algebras.
inline Result commutativity_associativity(std::size_t cases, std::uint64_t seed = 0x5eed0002) {
  Gen gen(seed);
  Result r;
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const Algebra alg = gen.algebra(12);
    const int a = static_cast<int>(gen.integer(0, 4)), b = static_cast<int>(gen.integer(0, 4)),
              c = static_cast<int>(gen.integer(0, 4));
    const Polynomial p = gen.homogeneous(alg, a), q = gen.homogeneous(alg, b), s = gen.homogeneous(alg, c);
    Polynomial qp = alg.multiply(q, p);
    if ((a * b) % 2) qp = -qp;
    if (!(alg.multiply(p, q) == qp)) r.fail("commutativity fails for " + alg.to_string(p) + ", " + alg.to_string(q));
    if (!(alg.multiply(alg.multiply(p, q), s) == alg.multiply(p, alg.multiply(q, s)))) {
      r.fail("associativity fails for " + alg.to_string(p) + ", " + alg.to_string(q) + ", " + alg.to_string(s));
    }
  }
  return r;
}

/// rank + nullity = columns; kernel vectors are annihilated; solve finds a
/// preimage of every vector in the image.
inline Result rank_nullity(std::size_t cases, std::uint64_t seed = 0x5eed0003) {
  Gen gen(seed);
  Result r;
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const auto m = gen.rational_matrix();
    const auto kernel = linalg::kernel_basis(m);
    const std::size_t rk = linalg::rank(m);
    bool ok = rk + kernel.size() == m.cols();
    for (const auto& v : kernel) {
      const auto image = m * v;
      ok = ok && std::all_of(image.begin(), image.end(), [](const Rational& q) { return q == 0; });
    }
    linalg::Vector x(m.cols());
    for (auto& q : x) q = gen.rational();
    const auto b = m * x;
    const auto y = linalg::solve(m, b);
    ok = ok && y && m * *y == b;
    // Kernel from the block-sparse route agrees with the dense one.
    std::vector<linalg::SparseColumn> cols(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i2 = 0; i2 < m.rows(); ++i2)
        if (m(i2, j) != 0) cols[j].push_back({i2, m(i2, j)});
    ok = ok && linalg::kernel_basis_sparse(cols, m.rows()) == kernel;
    if (!ok) r.fail("rank-nullity/solve fails on a " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  }
  return r;
}

/// Invariant factors form a divisibility chain, agree with the minor-gcd
/// oracle, and the transforms reproduce the diagonal.
inline Result snf_divisibility(std::size_t cases, std::uint64_t seed = 0x5eed0004) {
  Gen gen(seed);
  Result r;
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const auto m = gen.integer_matrix();
    const auto snf = linalg::smith_normal_form(m, true);
    bool ok = snf.rank == snf.diagonal.size();
    for (std::size_t k = 0; k < snf.diagonal.size(); ++k) {
      ok = ok && snf.diagonal[k] >= 1;
      if (k + 1 < snf.diagonal.size()) ok = ok && mpz_divisible_p(snf.diagonal[k + 1].get_mpz_t(), snf.diagonal[k].get_mpz_t());
    }
    ok = ok && snf.diagonal == oracle::invariant_factors(m);
    linalg::IntegerMatrix d(m.rows(), m.cols());
    for (std::size_t k = 0; k < snf.diagonal.size(); ++k) d(k, k) = snf.diagonal[k];
    ok = ok && snf.left && snf.right && (*snf.left) * m * (*snf.right) == d;
    if (!ok) r.fail("SNF check fails on a " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  }
  return r;
}

/// Random Tietze moves preserve the abelian invariants.
inline groups::GroupPresentation tietze_move(const groups::GroupPresentation& p, Gen& gen, std::size_t& fresh) {
  groups::GroupPresentation q = p;
  const auto pick = [&](std::size_t n) { return static_cast<std::size_t>(gen.integer(0, static_cast<long>(n) - 1)); };
  switch (gen.integer(0, 4)) {
    case 0:  // add a conjugate of a relator or its inverse
      if (!q.relators.empty()) {
        const auto w = gen.word(q.generators);
        auto rel = q.relators[pick(q.relators.size())];
        if (gen.coin()) rel = rel.inverse();
        q.relators.push_back(w * rel * w.inverse());
      }
      break;
    case 1:  // add a product of two relators
      if (!q.relators.empty()) q.relators.push_back(q.relators[pick(q.relators.size())] * q.relators[pick(q.relators.size())]);
      break;
    case 2: {  // new generator defined by a word
      const std::string y = "y" + std::to_string(fresh++);
      const auto w = gen.word(q.generators);
      q.generators.push_back(y);
      q.relators.push_back(groups::Word::letter(y) * w.inverse());
      break;
    }
    case 3:  // reorder relators
      std::shuffle(q.relators.begin(), q.relators.end(), gen.engine());
      break;
    default:  // reorder generators
      std::shuffle(q.generators.begin(), q.generators.end(), gen.engine());
      break;
  }
  return q;
}

inline Result tietze_stability(std::size_t cases, const std::vector<groups::GroupPresentation>& seeds,
                               std::uint64_t seed = 0x5eed0005) {
  Gen gen(seed);
  Result r;
  std::size_t fresh = 0;
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    auto p = seeds[i % seeds.size()];
    const auto before = groups::abelian_invariants(p);
    const long moves = gen.integer(1, 5);
    for (long k = 0; k < moves; ++k) p = tietze_move(p, gen, fresh);
    if (!(groups::abelian_invariants(p) == before)) r.fail("Tietze move changed " + before.to_string());
  }
  return r;
}

/// Small presentations used as Tietze starting points.
inline std::vector<groups::GroupPresentation> tietze_seeds() {
  return {groups::parse("a, b\n[a, b]\n"), groups::parse("a, b\na^4\nb^6\n[a, b]\n"),
          groups::parse("a, b, c\na^2 b^-2\n[a, c]\nc^3 = b\n"), groups::parse("a, b\n")};
}

} // namespace props
