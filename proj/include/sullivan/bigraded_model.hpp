#pragma once

#include "sullivan/cdga.hpp"
#include "sullivan/parallel.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace sullivan {

struct CohomologyClass {
  std::string name;
  int degree = 2;

  friend bool operator==(const CohomologyClass&, const CohomologyClass&) = default;
};

/// A simply connected cohomology algebra with trivial products, given by its
/// additive generators.
struct CohomologySpec {
  std::vector<CohomologyClass> classes;

  static CohomologySpec wedge_s2_s3_s3() { return {{{"a2", 2}, {"b3", 3}, {"c3", 3}}}; }

  void validate() const {
    std::set<std::string> names;
    for (const auto& c : classes) {
      if (c.degree < 2) {
        throw Error("class '" + c.name + "' has degree " + std::to_string(c.degree) +
                    "; only simply connected inputs (degree >= 2) are supported");
      }
      if (c.name.empty()) throw Error("class names must be nonempty");
      if (!names.insert(c.name).second) throw Error("duplicate class name '" + c.name + "'");
    }
  }

  int max_degree() const {
    int d = 0;
    for (const auto& c : classes) d = std::max(d, c.degree);
    return d;
  }

  std::size_t count_in_degree(int k) const {
    return static_cast<std::size_t>(
        std::count_if(classes.begin(), classes.end(), [k](const auto& c) { return c.degree == k; }));
  }

  friend bool operator==(const CohomologySpec&, const CohomologySpec&) = default;
};

/// (ΛW, d) with W = ⊕ W_s. Generators are ordered by (stage, degree, index
/// within the cycle basis); stage-s generators are named "w{s}_{deg}_{i}".
class BigradedModel {
public:
  BigradedModel() = default;
  BigradedModel(CdgaModel cdga, CohomologySpec spec) : cdga_(std::move(cdga)), spec_(std::move(spec)) {
    for (const auto& g : cdga_.algebra().generators()) {
      if (g.circle) throw Error("a bigraded model of W cannot contain the circle generator");
      stages_[g.stage].push_back(g.id);
    }
  }

  const CdgaModel& cdga() const noexcept { return cdga_; }
  const Algebra& algebra() const noexcept { return cdga_.algebra(); }
  const CohomologySpec& spec() const noexcept { return spec_; }
  int cap() const noexcept { return cdga_.cap(); }
  const std::map<int, std::vector<GenId>>& stages() const noexcept { return stages_; }

  int top_stage() const { return stages_.empty() ? -1 : stages_.rbegin()->first; }

  std::vector<GenId> stage(int s) const {
    auto it = stages_.find(s);
    return it == stages_.end() ? std::vector<GenId>{} : it->second;
  }

  // Number of generators in each degree 1..cap (index = degree).
  std::vector<std::size_t> generator_counts() const {
    std::vector<std::size_t> counts(static_cast<std::size_t>(cap()) + 1, 0);
    for (const auto& g : algebra().generators())
      if (g.degree <= cap()) ++counts[static_cast<std::size_t>(g.degree)];
    return counts;
  }

private:
  CdgaModel cdga_;
  CohomologySpec spec_;
  std::map<int, std::vector<GenId>> stages_;
};

/// W_0 ≅ H with d = 0.
inline BigradedModel build_stage_zero(const CohomologySpec& spec, int cap) {
  spec.validate();
  if (spec.max_degree() > cap) {
    throw Error("cap " + std::to_string(cap) + " is below the top class degree " +
                std::to_string(spec.max_degree()));
  }
  std::vector<Generator> gens;
  for (const auto& c : spec.classes) gens.push_back(Generator{0, c.name, c.degree, 0, false});
  const std::size_t n = gens.size();
  return BigradedModel(CdgaModel(Algebra(std::move(gens), cap), std::vector<Polynomial>(n)), spec);
}

/// Word-length-2 monomials of the given stage and degree. Enumerated from
/// generator pairs, so degrees up to cap + 1 are allowed.
inline std::vector<Monomial> quadratic_monomials(const Algebra& alg, int stage, int degree) {
  std::vector<Monomial> out;
  const auto& gens = alg.generators();
  for (GenId i = 0; i < gens.size(); ++i) {
    for (GenId j = i; j < gens.size(); ++j) {
      if (gens[i].stage + gens[j].stage != stage || gens[i].degree + gens[j].degree != degree) continue;
      if (i == j) {
        if (gens[i].odd()) continue;
        out.push_back(Monomial::of(i, 2));
      } else {
        out.push_back(Monomial{{Factor{i, 1}, Factor{j, 1}}});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Basis of ker d on (Λ²W_{≤m})_m in the given degree.
inline std::vector<Polynomial> quadratic_cycles(const BigradedModel& model, int stage, int degree) {
  if (degree > model.cap() + 1) {
    throw CapExceeded("quadratic cycles requested in degree " + std::to_string(degree) + " beyond cap + 1");
  }
  const auto monomials = quadratic_monomials(model.algebra(), stage, degree);
  if (monomials.empty()) return {};

  std::map<Monomial, std::size_t> rows;
  std::vector<Polynomial> images;
  images.reserve(monomials.size());
  for (const auto& m : monomials) {
    images.push_back(apply_d_unbounded(model.cdga(), Polynomial::term(m)));
    for (const auto& [t, c] : images.back().terms()) rows.emplace(t, 0);
  }
  std::size_t next = 0;
  for (auto& [t, idx] : rows) idx = next++;
  std::vector<linalg::SparseColumn> cols(monomials.size());
  for (std::size_t j = 0; j < monomials.size(); ++j)
    for (const auto& [t, c] : images[j].terms()) cols[j].emplace_back(rows.at(t), c);

  const CoordinateSystem coords(monomials);
  std::vector<Polynomial> out;
  for (const auto& v : linalg::kernel_basis_sparse(cols, rows.size())) out.push_back(coords.polynomial(v));
  return out;
}

/// Adjoins W_{m+1}: one generator of degree k per basis cycle of degree k+1,
/// for every k <= cap, with d equal to that cycle.
inline BigradedModel extend_stage(const BigradedModel& model, int m) {
  if (m < 0 || model.top_stage() != m) {
    throw Error("extend_stage(" + std::to_string(m) + ") called out of order; top stage is " +
                std::to_string(model.top_stage()));
  }
  const int cap = model.cap();
  std::vector<std::vector<Polynomial>> per_degree(static_cast<std::size_t>(cap) + 1);
  parallel_for(per_degree.size(), [&](std::size_t k) {
    if (k >= 1) per_degree[k] = quadratic_cycles(model, m, static_cast<int>(k) + 1);
  });

  Algebra alg = model.algebra();
  std::vector<Polynomial> d = model.cdga().differential();
  for (int k = 1; k <= cap; ++k) {
    const auto& cycles = per_degree[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      Generator g;
      g.name = "w" + std::to_string(m + 1) + "_" + std::to_string(k) + "_" + std::to_string(i);
      g.degree = k;
      g.stage = m + 1;
      alg = alg.with_generator(std::move(g));
      d.push_back(cycles[i]);
    }
  }
  return BigradedModel(CdgaModel(std::move(alg), std::move(d)), model.spec());
}

/// Stage 0, then extend_stage until a stage adjoins nothing of degree <= cap.
inline BigradedModel build(const CohomologySpec& spec, int cap) {
  BigradedModel model = build_stage_zero(spec, cap);
  if (spec.classes.empty()) return model;
  const int min_degree = std::min_element(spec.classes.begin(), spec.classes.end(), [](auto& a, auto& b) {
                           return a.degree < b.degree;
                         })->degree;
  for (int m = 0; m <= cap; ++m) {
    const std::size_t before = model.algebra().size();
    model = extend_stage(model, m);
    if (model.algebra().size() == before) break;
    // Stage-s generators have degree >= s + min_degree, so the loop ends by
    // stage cap - min_degree at the latest.
    for (GenId g : model.stage(m + 1)) {
      if (model.algebra().generator(g).degree < m + 1 + min_degree) {
        throw Error("stage " + std::to_string(m + 1) + " generator below the expected degree bound");
      }
    }
  }
  return model;
}

struct Violation {
  enum class Check { CapTooSmall, CohomologyDimension, DecomposableCocycle, DSquared, Bigrading };
  Check check;
  int degree = -1;
  std::string message;
};

inline std::string to_string(Violation::Check c) {
  switch (c) {
    case Violation::Check::CapTooSmall: return "cap-too-small";
    case Violation::Check::CohomologyDimension: return "cohomology-dimension";
    case Violation::Check::DecomposableCocycle: return "decomposable-cocycle";
    case Violation::Check::DSquared: return "d-squared";
    case Violation::Check::Bigrading: return "bigrading";
  }
  return "unknown";
}

struct VerifyReport {
  bool pass = true;
  std::vector<std::size_t> cohomology_dims;  // index k = 0..cap-1
  std::vector<std::size_t> expected_dims;
  std::vector<GenId> d_squared_unverifiable;
  std::vector<Violation> violations;

  bool failed(Violation::Check c) const {
    return std::any_of(violations.begin(), violations.end(), [c](const auto& v) { return v.check == c; });
  }
};

/// Decomposable cocycles of degree k that are not coboundaries (their count).
inline std::size_t non_bounding_decomposables(const CdgaModel& model, const CohomologyReport& h) {
  const Algebra& alg = model.algebra();
  const int k = h.degree;
  std::vector<std::size_t> decomposable;
  for (std::size_t i = 0; i < h.chain_basis.size(); ++i)
    if (h.chain_basis.basis()[i].word_length() >= 2) decomposable.push_back(i);
  if (decomposable.empty()) return 0;

  const CoordinateSystem above(alg.basis_of(k + 1));
  std::vector<Monomial> sub;
  for (std::size_t i : decomposable) sub.push_back(h.chain_basis.basis()[i]);
  const auto cols = differential_columns(model, CoordinateSystem(sub), above);

  linalg::RowSpace boundaries(h.chain_basis.size());
  for (const auto& b : h.coboundaries) boundaries.insert(b);
  std::size_t bad = 0;
  for (const auto& z : linalg::kernel_basis_sparse(cols, above.size())) {
    linalg::Vector full(h.chain_basis.size());
    for (std::size_t t = 0; t < z.size(); ++t) full[decomposable[t]] = z[t];
    if (!boundaries.contains(full)) ++bad;
  }
  return bad;
}

/// Checks, for all k <= cap-1: H^k has the dimension of the spec; every
/// decomposable cocycle bounds; d² = 0; each stage-s generator (s >= 1) has a
/// nonzero purely quadratic differential of stage s-1.
inline VerifyReport verify(const BigradedModel& model) {
  VerifyReport r;
  const CdgaModel& cdga = model.cdga();
  const Algebra& alg = model.algebra();
  const int cap = model.cap();

  for (const auto& c : model.spec().classes) {
    if (c.degree > cap - 1) {
      r.violations.push_back({Violation::Check::CapTooSmall, c.degree,
                              "class " + c.name + " (degree " + std::to_string(c.degree) +
                                  ") cannot be verified at cap " + std::to_string(cap)});
    }
  }
  for (const auto& c : model.spec().classes) {
    auto id = alg.find(c.name);
    if (!id || alg.generator(*id).stage != 0 || alg.generator(*id).degree != c.degree) {
      r.violations.push_back({Violation::Check::Bigrading, c.degree,
                              "class " + c.name + " has no stage-0 generator of its degree"});
    }
  }

  const std::size_t degrees = cap >= 1 ? static_cast<std::size_t>(cap) : 0;
  r.cohomology_dims.assign(degrees, 0);
  r.expected_dims.assign(degrees, 0);
  std::vector<std::size_t> bad_decomposables(degrees, 0);
  parallel_for(degrees, [&](std::size_t k) {
    const auto h = cohomology(cdga, static_cast<int>(k));
    r.cohomology_dims[k] = h.dimension;
    bad_decomposables[k] = non_bounding_decomposables(cdga, h);
  });
  for (std::size_t k = 0; k < degrees; ++k) {
    r.expected_dims[k] = model.spec().count_in_degree(static_cast<int>(k)) + (k == 0 ? 1 : 0);
    if (r.cohomology_dims[k] != r.expected_dims[k]) {
      r.violations.push_back({Violation::Check::CohomologyDimension, static_cast<int>(k),
                              "H^" + std::to_string(k) + " has dimension " + std::to_string(r.cohomology_dims[k]) +
                                  ", expected " + std::to_string(r.expected_dims[k])});
    }
    if (bad_decomposables[k] > 0) {
      r.violations.push_back({Violation::Check::DecomposableCocycle, static_cast<int>(k),
                              std::to_string(bad_decomposables[k]) + " decomposable cocycle(s) in degree " +
                                  std::to_string(k) + " do not bound"});
    }
  }

  const auto dsq = check_d_squared(cdga);
  r.d_squared_unverifiable = dsq.unverifiable;
  if (!dsq.pass) {
    const auto& g = alg.generator(*dsq.first_failure);
    r.violations.push_back({Violation::Check::DSquared, g.degree, "d(d(" + g.name + ")) != 0"});
  }

  for (const auto& g : alg.generators()) {
    const Polynomial& dg = cdga.d(g.id);
    if (g.stage == 0) {
      if (!dg.is_zero())
        r.violations.push_back({Violation::Check::Bigrading, g.degree, "stage-0 generator " + g.name + " is not closed"});
      continue;
    }
    if (dg.is_zero()) {
      r.violations.push_back({Violation::Check::Bigrading, g.degree, "d(" + g.name + ") vanishes"});
      continue;
    }
    for (const auto& [m, c] : dg.terms()) {
      if (m.word_length() != 2 || alg.stage(m) != g.stage - 1) {
        r.violations.push_back({Violation::Check::Bigrading, g.degree,
                                "d(" + g.name + ") has a term " + alg.to_string(m) +
                                    " that is not quadratic of stage " + std::to_string(g.stage - 1)});
        break;
      }
    }
  }

  r.pass = r.violations.empty();
  return r;
}

struct StageIsomorphismReport {
  bool pass = true;
  std::vector<std::string> failures;
};

/// d: W_{s+1} (degree k) -> (Λ²W_{≤s})_s ∩ ker d (degree k+1) is injective
/// and onto, for every stage and every k <= cap.
inline StageIsomorphismReport check_stage_isomorphisms(const BigradedModel& model) {
  StageIsomorphismReport r;
  const Algebra& alg = model.algebra();
  for (int s = 0; s <= model.top_stage(); ++s) {
    for (int k = 1; k <= model.cap(); ++k) {
      const auto cycles = quadratic_cycles(model, s, k + 1);
      std::vector<Polynomial> images;
      for (GenId g : model.stage(s + 1))
        if (alg.generator(g).degree == k) images.push_back(model.cdga().d(g));

      const CoordinateSystem coords(quadratic_monomials(alg, s, k + 1));
      linalg::RowSpace cycle_space(coords.size()), image_space(coords.size());
      for (const auto& c : cycles) cycle_space.insert(coords.coordinates(c));
      bool injective = true, inside = true;
      for (const auto& im : images) {
        const auto v = coords.coordinates(im);
        if (!cycle_space.contains(v)) inside = false;
        if (!image_space.insert(v)) injective = false;
      }
      const bool onto = image_space.rank() == cycle_space.rank();
      if (!(injective && inside && onto)) {
        r.pass = false;
        r.failures.push_back("stage " + std::to_string(s + 1) + ", degree " + std::to_string(k));
      }
    }
  }
  return r;
}

} // namespace sullivan
