#pragma once

// Independent reference computations used to pin results of the engine.

#include "sullivan/free_gca.hpp"
#include "sullivan/exact_linalg.hpp"

#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

using sullivan::Integer;
using sullivan::linalg::IntegerMatrix;

// Bareiss fraction-free determinant.
inline Integer determinant(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// gcd of all k×k minors (the k-th determinantal divisor).
inline Integer minor_gcd(const IntegerMatrix& m, std::size_t k) {
  Integer g = 0;
  for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
    for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
      std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = m(rows[i], cols[j]);
      Integer d = determinant(std::move(sub));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    });
  });
  return g;
}

// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}.
inline std::vector<Integer> invariant_factors(const IntegerMatrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    const Integer dk = minor_gcd(m, k);
    if (dk == 0) break;
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

// Monomials of degree k by brute force over all exponent vectors.
inline std::vector<sullivan::Monomial> enumerate_basis(const sullivan::Algebra& alg, int k) {
  std::vector<sullivan::Monomial> out;
  std::vector<std::uint32_t> exps(alg.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t g, int remaining) {
    if (g == alg.size()) {
      if (remaining != 0) return;
      sullivan::Monomial m;
      for (std::size_t i = 0; i < exps.size(); ++i)
        if (exps[i]) m.factors.push_back({static_cast<sullivan::GenId>(i), exps[i]});
      out.push_back(m);
      return;
    }
    const auto& gen = alg.generator(static_cast<sullivan::GenId>(g));
    const int max = gen.odd() ? 1 : remaining / gen.degree;
    for (int e = 0; e <= max && e * gen.degree <= remaining; ++e) {
      exps[g] = static_cast<std::uint32_t>(e);
      rec(g + 1, remaining - e * gen.degree);
    }
    exps[g] = 0;
  };
  rec(0, k);
  std::sort(out.begin(), out.end());
  return out;
}

// Free Lie algebra dimensions: the rational homotopy of a wedge of spheres
// S^{n_i} has pi_{k}⊗Q of dimension equal to the degree-(k-1) part of the
// free graded Lie algebra on classes of degree n_i - 1. The minimal model has
// that many generators in degree k. Computed here from the Hilbert series of
// the universal enveloping algebra 1 / (1 - Σ t^{n_i - 1}) by the graded
// Poincare-Birkhoff-Witt product, solved degree by degree.
inline std::vector<long> wedge_generator_counts(const std::vector<int>& sphere_dims, int cap) {
  // U(L) series coefficients.
  std::vector<Integer> u(static_cast<std::size_t>(cap) + 1, 0);
  u[0] = 1;
  for (int n = 1; n <= cap; ++n)
    for (int s : sphere_dims)
      if (s - 1 <= n && s - 1 >= 1) u[static_cast<std::size_t>(n)] += u[static_cast<std::size_t>(n - (s - 1))];

  // PBW: U = Π_{n even} (1 - t^n)^{-l_n} Π_{n odd} (1 + t^n)^{l_n}. Peel off one
  // degree at a time.
  std::vector<long> lie(static_cast<std::size_t>(cap) + 1, 0);
  std::vector<Integer> prod(static_cast<std::size_t>(cap) + 1, 0);
  prod[0] = 1;
  for (int n = 1; n < cap; ++n) {
    const Integer l = u[static_cast<std::size_t>(n)] - prod[static_cast<std::size_t>(n)];
    lie[static_cast<std::size_t>(n)] = l.get_si();
    for (long rep = 0; rep < l; ++rep) {
      std::vector<Integer> next(prod.size(), 0);
      for (std::size_t i = 0; i < prod.size(); ++i) {
        if (prod[i] == 0) continue;
        if (n % 2 == 0) {
          for (std::size_t j = i; j < prod.size(); j += static_cast<std::size_t>(n)) next[j] += prod[i];
        } else {
          next[i] += prod[i];
          if (i + static_cast<std::size_t>(n) < prod.size()) next[i + static_cast<std::size_t>(n)] += prod[i];
        }
      }
      prod = std::move(next);
    }
  }
  // Generators of degree k correspond to Lie elements of degree k - 1.
  std::vector<long> out(static_cast<std::size_t>(cap) + 1, 0);
  for (int k = 2; k <= cap; ++k) out[static_cast<std::size_t>(k)] = lie[static_cast<std::size_t>(k - 1)];
  return out;
}

} // namespace oracle
