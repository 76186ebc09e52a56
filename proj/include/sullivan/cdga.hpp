#pragma once

#include "sullivan/exact_linalg.hpp"
#include "sullivan/free_gca.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sullivan {

/// Free CDGA (ΛV, d): an algebra plus the value of d on each generator.
/// Construction checks homogeneity and minimality; d∘d = 0 is checked
/// separately by check_d_squared.
class CdgaModel {
public:
  CdgaModel() = default;
  CdgaModel(Algebra algebra, std::vector<Polynomial> differential)
      : algebra_(std::move(algebra)), d_(std::move(differential)) {
    if (d_.size() != algebra_.size()) throw Error("differential must be given for every generator");
    for (GenId g = 0; g < d_.size(); ++g) validate(g);
  }

  const Algebra& algebra() const noexcept { return algebra_; }
  int cap() const noexcept { return algebra_.cap(); }
  const Polynomial& d(GenId g) const {
    if (g >= d_.size()) throw Error("unknown generator id " + std::to_string(g));
    return d_[g];
  }
  const std::vector<Polynomial>& differential() const noexcept { return d_; }

private:
  void validate(GenId g) const {
    const auto& gen = algebra_.generator(g);
    for (const auto& [m, c] : d_[g].terms()) {
      for (const auto& f : m.factors) algebra_.generator(f.gen);
      if (algebra_.degree(m) != gen.degree + 1) {
        throw Error("d(" + gen.name + ") is not homogeneous of degree " + std::to_string(gen.degree + 1));
      }
      if (m.word_length() < 2) {
        throw Error("d(" + gen.name + ") has a linear term; the model must be minimal");
      }
    }
  }

  Algebra algebra_;
  std::vector<Polynomial> d_;
};

struct DifferentialValue {
  Polynomial value;
  bool overflow = false;  // some term above the cap was dropped
};

namespace detail {

// d of a normalized monomial by the Leibniz rule; cap < 0 disables truncation.
inline Polynomial derive_monomial(const CdgaModel& model, const Monomial& m, int cap, bool& overflow) {
  const Algebra& alg = model.algebra();
  Polynomial out;
  int prefix_degree = 0;
  for (std::size_t i = 0; i < m.factors.size(); ++i) {
    const Factor& f = m.factors[i];
    const auto& gen = alg.generator(f.gen);
    const Polynomial& dg = model.d(f.gen);
    if (!dg.is_zero()) {
      // d(g^e) = e g^{e-1} dg for even g; odd g has e = 1.
      Monomial prefix{{m.factors.begin(), m.factors.begin() + static_cast<std::ptrdiff_t>(i)}};
      Monomial suffix;
      if (f.exp > 1) suffix.factors.push_back(Factor{f.gen, f.exp - 1});
      suffix.factors.insert(suffix.factors.end(), m.factors.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                            m.factors.end());
      const Rational sign = (prefix_degree % 2 == 0) ? 1 : -1;
      const Rational scale = sign * Rational(f.exp);
      Polynomial left = cap < 0 ? alg.multiply_unbounded(Polynomial::term(prefix), dg)
                                : alg.multiply_truncated(Polynomial::term(prefix), dg, overflow);
      Polynomial whole = cap < 0 ? alg.multiply_unbounded(left, Polynomial::term(suffix))
                                 : alg.multiply_truncated(left, Polynomial::term(suffix), overflow);
      whole *= scale;
      out += whole;
    }
    prefix_degree += static_cast<int>(f.exp) * gen.degree;
  }
  return out;
}

} // namespace detail

/// d as a derivation, d(uv) = d(u)v + (-1)^{|u|} u d(v). Terms above the cap
/// are dropped and reported through `overflow`.
inline DifferentialValue apply_d(const CdgaModel& model, const Polynomial& p) {
  DifferentialValue out;
  for (const auto& [m, c] : p.terms()) {
    Polynomial dm = detail::derive_monomial(model, m, model.cap(), out.overflow);
    dm *= c;
    out.value += dm;
  }
  return out;
}

/// d with no truncation; for internal use where a computation deliberately
/// reaches just past the cap (quadratic cycles of the model builder).
inline Polynomial apply_d_unbounded(const CdgaModel& model, const Polynomial& p) {
  Polynomial out;
  bool unused = false;
  for (const auto& [m, c] : p.terms()) {
    Polynomial dm = detail::derive_monomial(model, m, -1, unused);
    dm *= c;
    out += dm;
  }
  return out;
}

struct DSquaredReport {
  bool pass = true;
  std::optional<GenId> first_failure;
  std::vector<GenId> unverifiable;  // d(d(g)) would land above the cap
};

inline DSquaredReport check_d_squared(const CdgaModel& model) {
  DSquaredReport report;
  for (const auto& gen : model.algebra().generators()) {
    if (gen.degree + 2 > model.cap()) {
      report.unverifiable.push_back(gen.id);
      continue;
    }
    const auto dd = apply_d(model, model.d(gen.id));
    if (dd.overflow) {
      report.unverifiable.push_back(gen.id);
      continue;
    }
    if (!dd.value.is_zero() && report.pass) {
      report.pass = false;
      report.first_failure = gen.id;
    }
  }
  return report;
}

/// Coordinates of polynomials against a fixed monomial basis.
class CoordinateSystem {
public:
  CoordinateSystem() = default;
  explicit CoordinateSystem(std::vector<Monomial> basis) : basis_(std::move(basis)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  }

  const std::vector<Monomial>& basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return basis_.size(); }

  std::optional<std::size_t> index_of(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  linalg::Vector coordinates(const Polynomial& p) const {
    linalg::Vector v(basis_.size());
    for (const auto& [m, c] : p.terms()) {
      auto i = index_of(m);
      if (!i) throw Error("polynomial has a term outside the coordinate basis");
      v[*i] = c;
    }
    return v;
  }

  Polynomial polynomial(const linalg::Vector& v) const {
    Polynomial p;
    for (std::size_t i = 0; i < v.size(); ++i) p.add_term(basis_[i], v[i]);
    return p;
  }

private:
  std::vector<Monomial> basis_;
  std::map<Monomial, std::size_t> index_;
};

/// Matrix of d from degree-k monomials to degree-(k+1) monomials; columns
/// follow `from`, rows follow `to`. Throws if d leaves the target basis.
inline linalg::RationalMatrix differential_matrix(const CdgaModel& model, const CoordinateSystem& from,
                                                  const CoordinateSystem& to) {
  linalg::RationalMatrix m(to.size(), from.size());
  for (std::size_t j = 0; j < from.size(); ++j) {
    const auto dm = apply_d(model, Polynomial::term(from.basis()[j]));
    if (dm.overflow) throw CapExceeded("differential matrix needs terms above the cap");
    for (const auto& [mono, c] : dm.value.terms()) {
      auto i = to.index_of(mono);
      if (!i) throw Error("differential leaves the target basis");
      m(*i, j) = c;
    }
  }
  return m;
}

struct CohomologyReport {
  int degree = 0;
  std::size_t cocycle_dim = 0;
  std::size_t coboundary_dim = 0;
  std::size_t dimension = 0;
  CoordinateSystem chain_basis;                // degree-k monomials
  std::vector<linalg::Vector> coboundaries;    // spanning set of B^k
  std::vector<linalg::Vector> cocycle_basis;   // canonical kernel basis of Z^k
  std::vector<Polynomial> representatives;     // complete B^k to Z^k
  std::vector<linalg::Vector> representative_vectors;
};

namespace detail {

inline void check_cohomology_degree(const CdgaModel& model, int k) {
  if (k < 0) throw Error("cohomology degree must be nonnegative");
  if (k > model.cap() - 1) {
    throw CapExceeded("cohomology in degree " + std::to_string(k) + " needs cap > " + std::to_string(k) +
                      " (cap is " + std::to_string(model.cap()) + ")");
  }
}

inline std::vector<linalg::Vector> columns_of(const linalg::RationalMatrix& m) {
  std::vector<linalg::Vector> out;
  out.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
  return out;
}

} // namespace detail

/// Reference route: one dense matrix per differential.
inline CohomologyReport cohomology_dense(const CdgaModel& model, int k) {
  detail::check_cohomology_degree(model, k);
  const Algebra& alg = model.algebra();
  CohomologyReport r;
  r.degree = k;
  r.chain_basis = CoordinateSystem(alg.basis_of(k));
  const CoordinateSystem below(k >= 1 ? alg.basis_of(k - 1) : std::vector<Monomial>{});
  const CoordinateSystem above(alg.basis_of(k + 1));

  r.cocycle_basis = linalg::kernel_basis(differential_matrix(model, r.chain_basis, above));
  r.coboundaries = detail::columns_of(differential_matrix(model, below, r.chain_basis));
  auto q = linalg::quotient_basis(r.coboundaries, r.cocycle_basis, r.chain_basis.size());
  r.cocycle_dim = r.cocycle_basis.size();
  r.coboundary_dim = r.cocycle_dim - q.dimension;
  r.dimension = q.dimension;
  r.representative_vectors = std::move(q.representatives);
  for (const auto& v : r.representative_vectors) r.representatives.push_back(r.chain_basis.polynomial(v));
  return r;
}

/// Sparse columns of d on `from`, indexed by `to`.
inline std::vector<linalg::SparseColumn> differential_columns(const CdgaModel& model, const CoordinateSystem& from,
                                                              const CoordinateSystem& to) {
  std::vector<linalg::SparseColumn> out(from.size());
  for (std::size_t j = 0; j < from.size(); ++j) {
    const auto dm = apply_d(model, Polynomial::term(from.basis()[j]));
    if (dm.overflow) throw CapExceeded("differential needs terms above the cap");
    for (const auto& [mono, c] : dm.value.terms()) {
      auto i = to.index_of(mono);
      if (!i) throw Error("differential leaves the target basis");
      out[j].emplace_back(*i, c);
    }
  }
  return out;
}

/// Degreewise cohomology: cocycles are the canonical kernel basis of d out
/// of degree k, and representatives are the cocycles (in that order) that
/// stay independent modulo the coboundaries.
inline CohomologyReport cohomology(const CdgaModel& model, int k) {
  detail::check_cohomology_degree(model, k);
  const Algebra& alg = model.algebra();
  CohomologyReport r;
  r.degree = k;
  r.chain_basis = CoordinateSystem(alg.basis_of(k));
  const CoordinateSystem below(k >= 1 ? alg.basis_of(k - 1) : std::vector<Monomial>{});
  const CoordinateSystem above(alg.basis_of(k + 1));

  r.cocycle_basis = linalg::kernel_basis_sparse(differential_columns(model, r.chain_basis, above), above.size());
  for (const auto& col : differential_columns(model, below, r.chain_basis)) {
    linalg::Vector v(r.chain_basis.size());
    for (const auto& [i, c] : col) v[i] = c;
    r.coboundaries.push_back(std::move(v));
  }
  auto q = linalg::quotient_basis(r.coboundaries, r.cocycle_basis, r.chain_basis.size());
  r.cocycle_dim = r.cocycle_basis.size();
  r.coboundary_dim = r.cocycle_dim - q.dimension;
  r.dimension = q.dimension;
  r.representative_vectors = std::move(q.representatives);
  for (const auto& v : r.representative_vectors) r.representatives.push_back(r.chain_basis.polynomial(v));
  return r;
}

/// Coordinates of [p] in the representative basis of `report`.
inline linalg::Vector class_of(const CdgaModel& model, const CohomologyReport& report, const Polynomial& p) {
  if (!p.is_zero()) {
    auto deg = model.algebra().homogeneous_degree(p);
    if (!deg || *deg != report.degree) {
      throw Error("class_of: polynomial is not homogeneous of degree " + std::to_string(report.degree));
    }
  }
  const auto dp = apply_d(model, p);
  if (dp.overflow) throw CapExceeded("class_of: cannot decide the cocycle condition below the cap");
  if (!dp.value.is_zero()) throw Error("class_of: polynomial is not a cocycle");

  const std::size_t n = report.chain_basis.size();
  // Columns: a basis of B^k followed by the representatives.
  linalg::RowSpace boundary_space(n);
  std::vector<linalg::Vector> columns;
  for (const auto& b : report.coboundaries)
    if (boundary_space.insert(b)) columns.push_back(b);
  const std::size_t nb = columns.size();
  for (const auto& v : report.representative_vectors) columns.push_back(v);

  const auto x = linalg::solve(linalg::RationalMatrix::from_columns(columns, n),
                               report.chain_basis.coordinates(p));
  if (!x) throw Error("class_of: cocycle outside the span of coboundaries and representatives");
  return linalg::Vector(x->begin() + static_cast<std::ptrdiff_t>(nb), x->end());
}

inline linalg::Vector class_of(const CdgaModel& model, const Polynomial& p, int k) {
  return class_of(model, cohomology(model, k), p);
}

/// (ΛW, d) ⊗ (Λx, 0): one more odd generator of degree 1 with d(x) = 0.
inline CdgaModel adjoin_circle(const CdgaModel& model, std::string name = "x") {
  if (model.algebra().circle()) throw Error("model already has a circle generator");
  Generator x;
  x.name = std::move(name);
  x.degree = 1;
  x.stage = 0;
  x.circle = true;
  auto d = model.differential();
  d.emplace_back();
  return CdgaModel(model.algebra().with_generator(std::move(x)), std::move(d));
}

} // namespace sullivan
