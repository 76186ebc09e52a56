#pragma once

#include "sullivan/bigraded_model.hpp"
#include "sullivan/cdga.hpp"
#include "sullivan/parallel.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sullivan {

/// Degree-0 algebra endomorphism of a free CDGA, given by generator images.
/// Images may be partial while a morphism is being built.
class CdgaMorphism {
public:
  CdgaMorphism() = default;
  explicit CdgaMorphism(std::shared_ptr<const CdgaModel> model)
      : model_(std::move(model)), images_(model_->algebra().size()) {}

  static CdgaMorphism identity(std::shared_ptr<const CdgaModel> model) {
    CdgaMorphism f(std::move(model));
    for (GenId g = 0; g < f.images_.size(); ++g) f.images_[g] = Polynomial::generator(g);
    return f;
  }

  const CdgaModel& model() const { return *model_; }
  const std::shared_ptr<const CdgaModel>& model_ptr() const noexcept { return model_; }
  const Algebra& algebra() const { return model_->algebra(); }

  bool defined(GenId g) const { return g < images_.size() && images_[g].has_value(); }
  bool total() const {
    return std::all_of(images_.begin(), images_.end(), [](const auto& i) { return i.has_value(); });
  }

  const Polynomial& image(GenId g) const {
    if (!defined(g)) throw Error("morphism is undefined on " + algebra().generator(g).name);
    return *images_[g];
  }

  void set_image(GenId g, Polynomial p) {
    const auto& gen = algebra().generator(g);
    for (const auto& [m, c] : p.terms()) {
      if (algebra().degree(m) != gen.degree) {
        throw Error("image of " + gen.name + " is not homogeneous of degree " + std::to_string(gen.degree));
      }
    }
    images_[g] = std::move(p);
  }

  /// Extension to ΛV as an algebra map. Throws CapExceeded above the cap.
  Polynomial apply(const Polynomial& p) const { return apply_impl(p, true); }

  /// Same map with no cap. Exact for any element of ΛV; needed for φ(dw)
  /// when w sits in the top degree.
  Polynomial apply_unbounded(const Polynomial& p) const { return apply_impl(p, false); }

  friend bool operator==(const CdgaMorphism& a, const CdgaMorphism& b) { return a.images_ == b.images_; }

private:
  Polynomial apply_impl(const Polynomial& p, bool capped) const {
    const Algebra& alg = algebra();
    Polynomial out;
    for (const auto& [m, c] : p.terms()) {
      Polynomial value = Polynomial::constant(c);
      for (const auto& f : m.factors) {
        for (std::uint32_t e = 0; e < f.exp; ++e) {
          value = capped ? alg.multiply(value, image(f.gen)) : alg.multiply_unbounded(value, image(f.gen));
        }
      }
      out += value;
    }
    return out;
  }

  std::shared_ptr<const CdgaModel> model_;
  std::vector<std::optional<Polynomial>> images_;
};

/// f ∘ g on generators.
inline CdgaMorphism compose(const CdgaMorphism& f, const CdgaMorphism& g) {
  CdgaMorphism out(g.model_ptr());
  for (GenId id = 0; id < g.algebra().size(); ++id) out.set_image(id, f.apply(g.image(id)));
  return out;
}

/// Terms of p not divisible by generator g (the substitution g ↦ 0).
inline Polynomial kill_generator(const Polynomial& p, GenId g) {
  Polynomial out;
  for (const auto& [m, c] : p.terms())
    if (m.exponent_of(g) == 0) out.add_term(m, c);
  return out;
}

namespace detail {

inline GenId circle_of(const CdgaModel& model) {
  auto x = model.algebra().circle();
  if (!x) throw Error("model has no circle generator; adjoin one first");
  return *x;
}

inline int top_stage(const Algebra& alg) {
  int s = 0;
  for (const auto& g : alg.generators()) s = std::max(s, g.stage);
  return s;
}

// Solves target = d(Σ c_i g_i) over the given generators; nullopt when target
// is not such a boundary. `unique` reports whether the d-images of the
// generators are linearly independent.
inline std::optional<Polynomial> solve_linear_boundary(const CdgaModel& model, const std::vector<GenId>& gens,
                                                       const Polynomial& target, bool& unique) {
  std::map<Monomial, std::size_t> rows;
  for (const auto& [m, c] : target.terms()) rows.emplace(m, 0);
  for (GenId g : gens)
    for (const auto& [m, c] : model.d(g).terms()) rows.emplace(m, 0);
  std::size_t next = 0;
  for (auto& [m, i] : rows) i = next++;

  linalg::RationalMatrix a(rows.size(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (const auto& [m, c] : model.d(gens[j]).terms()) a(rows.at(m), j) = c;
  linalg::Vector b(rows.size());
  for (const auto& [m, c] : target.terms()) b[rows.at(m)] = c;

  unique = linalg::rank(a) == gens.size();
  const auto x = linalg::solve(a, b);
  if (!x) return std::nullopt;
  Polynomial out;
  for (std::size_t j = 0; j < gens.size(); ++j) out.add_term(Monomial::of(gens[j]), (*x)[j]);
  return out;
}

} // namespace detail

/// φ on W_0 ∪ {x}: a2 ↦ a2, b3 ↦ b3, c3 ↦ c3 + a2·x, x ↦ x.
inline CdgaMorphism seed_phi(std::shared_ptr<const CdgaModel> model_with_x) {
  const Algebra& alg = model_with_x->algebra();
  const GenId x = detail::circle_of(*model_with_x);

  std::vector<std::pair<std::string, int>> stage_zero;
  for (const auto& g : alg.generators())
    if (g.stage == 0 && !g.circle) stage_zero.emplace_back(g.name, g.degree);
  const std::vector<std::pair<std::string, int>> wedge{{"a2", 2}, {"b3", 3}, {"c3", 3}};
  if (stage_zero != wedge) throw Error("the seed of phi needs the model of S^2 v S^3 v S^3 (classes a2, b3, c3)");

  const GenId a = alg.id_of("a2"), b = alg.id_of("b3"), c = alg.id_of("c3");
  CdgaMorphism phi(std::move(model_with_x));
  phi.set_image(a, Polynomial::generator(a));
  phi.set_image(b, Polynomial::generator(b));
  phi.set_image(c, Polynomial::generator(c) + alg.multiply(Polynomial::generator(a), Polynomial::generator(x)));
  phi.set_image(x, Polynomial::generator(x));
  return phi;
}

/// Fault raised when the inductive extension of φ breaks down.
class ExtensionError : public Error {
public:
  using Error::Error;
};

/// The α·x defect of φ on a generator: φ(dw) - dw = defect_cycle · x.
struct Defect {
  Polynomial defect_cycle;
  Polynomial primitive;  // w' with d(w') = defect_cycle, a combination of generators
};

/// Extends φ over the stage-m generators: φ(w) = w + w'·x where d(w') is the
/// defect cycle of φ(dw) - dw.
inline CdgaMorphism extend_phi(CdgaMorphism phi, int m, std::vector<Defect>* defects = nullptr) {
  const CdgaModel& model = phi.model();
  const Algebra& alg = model.algebra();
  const GenId x = detail::circle_of(model);
  if (!phi.defined(x)) throw ExtensionError("phi must be defined on the circle generator");
  for (const auto& g : alg.generators()) {
    if (g.stage < m && !phi.defined(g.id)) {
      throw ExtensionError("phi is not yet defined on " + g.name + " (stage " + std::to_string(g.stage) + ")");
    }
  }

  for (const auto& gen : alg.generators()) {
    if (gen.stage != m || gen.circle) continue;
    const Polynomial& dw = model.d(gen.id);
    const Polynomial defect = phi.apply_unbounded(dw) - dw;

    Polynomial alpha;
    for (const auto& [mono, c] : defect.terms()) {
      if (mono.exponent_of(x) != 1) {
        throw ExtensionError("defect of " + gen.name + " is not of the form alpha*x");
      }
      Monomial rest;
      for (const auto& f : mono.factors)
        if (f.gen != x) rest.factors.push_back(f);
      // rest·x = sign·mono
      std::vector<Factor> with_x = rest.factors;
      with_x.push_back(Factor{x, 1});
      const auto normal = alg.normalize(with_x);
      alpha.add_term(rest, c * normal->sign);
    }
    for (const auto& [mono, c] : alpha.terms()) {
      if (mono.word_length() < 2) throw ExtensionError("defect of " + gen.name + " is not decomposable");
    }
    if (!apply_d_unbounded(model, alpha).is_zero()) {
      throw ExtensionError("defect of " + gen.name + " is not a cycle");
    }

    std::map<int, Polynomial> by_stage;
    for (const auto& [mono, c] : alpha.terms()) by_stage[alg.stage(mono)].add_term(mono, c);
    Polynomial primitive;
    for (const auto& [j, component] : by_stage) {
      std::vector<GenId> candidates;
      for (const auto& g : alg.generators())
        if (g.stage == j + 1 && g.degree == gen.degree - 1) candidates.push_back(g.id);
      bool unique = false;
      auto w = detail::solve_linear_boundary(model, candidates, component, unique);
      if (!w) throw ExtensionError("defect of " + gen.name + " is not a boundary");
      if (!unique) throw ExtensionError("defect of " + gen.name + " has a non-unique primitive");
      primitive += *w;
    }
    if (defects) defects->push_back({alpha, primitive});
    phi.set_image(gen.id, Polynomial::generator(gen.id) + alg.multiply(primitive, Polynomial::generator(x)));
  }
  return phi;
}

/// Seed plus extension over every stage of the model.
inline CdgaMorphism construct_phi(std::shared_ptr<const CdgaModel> model_with_x) {
  const int top = detail::top_stage(model_with_x->algebra());
  CdgaMorphism phi = seed_phi(std::move(model_with_x));
  for (int m = 1; m <= top; ++m) phi = extend_phi(std::move(phi), m);
  return phi;
}

/// Extends images given on stage 0 (and the circle) to the whole model by
/// lifting σ(dw) to d of a linear combination of generators of degree |w|.
inline CdgaMorphism extend_by_linear_lifts(CdgaMorphism seed) {
  const CdgaModel& model = seed.model();
  const Algebra& alg = model.algebra();
  const int top = detail::top_stage(alg);
  for (int m = 1; m <= top; ++m) {
    for (const auto& gen : alg.generators()) {
      if (gen.stage != m) continue;
      std::vector<GenId> candidates;
      for (const auto& g : alg.generators())
        if (g.degree == gen.degree && !model.d(g.id).is_zero()) candidates.push_back(g.id);
      bool unique = false;
      auto lift = detail::solve_linear_boundary(model, candidates, seed.apply_unbounded(model.d(gen.id)), unique);
      if (!lift) throw ExtensionError("no linear lift for " + gen.name);
      seed.set_image(gen.id, *lift);
    }
  }
  return seed;
}

struct ChainMapReport {
  bool pass = true;
  std::optional<GenId> first_failure;
  std::vector<GenId> unverifiable;
};

/// φ(dg) = d(φg) for every generator whose check stays within the cap.
inline ChainMapReport is_chain_map(const CdgaMorphism& phi) {
  ChainMapReport r;
  const CdgaModel& model = phi.model();
  for (const auto& g : model.algebra().generators()) {
    if (g.degree + 1 > model.cap()) {
      r.unverifiable.push_back(g.id);
      continue;
    }
    const auto dphi = apply_d(model, phi.image(g.id));
    if (dphi.overflow) {
      r.unverifiable.push_back(g.id);
      continue;
    }
    if (phi.apply(model.d(g.id)) != dphi.value && r.pass) {
      r.pass = false;
      r.first_failure = g.id;
    }
  }
  return r;
}

/// Largest D such that φ(v) - v has no linear part for every generator of
/// degree <= D (the top generator degree when none fails).
inline int linear_part_identity_up_to(const CdgaMorphism& phi) {
  const Algebra& alg = phi.algebra();
  int top = 0;
  std::optional<int> first_bad;
  for (const auto& g : alg.generators()) {
    top = std::max(top, g.degree);
    const auto split = word_split(phi.image(g.id) - Polynomial::generator(g.id));
    if (split.count(1) && (!first_bad || g.degree < *first_bad)) first_bad = g.degree;
  }
  return first_bad ? *first_bad - 1 : top;
}

struct MovedClass {
  int degree = 0;
  std::size_t index = 0;           // position in the H^k representative basis
  std::string representative;      // the class being moved
  linalg::Vector image;            // coordinates of H(φ)[rep]
  std::string image_text;          // Σ coordinates · representatives
};

struct ESharpReport {
  int m = 0;
  bool is_member = false;
  bool is_chain_map = false;
  int linear_part_identity_up_to = 0;
  std::vector<std::size_t> cohomology_dims;  // k = 0..cap-1
  std::vector<std::vector<std::string>> cohomology_bases;
  std::vector<MovedClass> cohomology_moved_classes;
  ChainMapReport chain;
};

/// Membership of φ in E_#^m (φ(v) - v decomposable for |v| <= m) and the
/// action of H(φ) in every degree below the cap.
inline ESharpReport e_sharp_report(const CdgaMorphism& phi, int m) {
  const CdgaModel& model = phi.model();
  if (m > model.cap()) throw Error("e_sharp_report: m exceeds the cap");
  if (!phi.total()) throw Error("e_sharp_report: morphism is not total");
  const Algebra& alg = model.algebra();

  ESharpReport r;
  r.m = m;
  r.chain = is_chain_map(phi);
  r.is_chain_map = r.chain.pass;
  r.linear_part_identity_up_to = linear_part_identity_up_to(phi);
  r.is_member = r.linear_part_identity_up_to >= m;

  const std::size_t degrees = static_cast<std::size_t>(std::max(model.cap(), 0));
  std::vector<std::vector<MovedClass>> moved(degrees);
  r.cohomology_dims.assign(degrees, 0);
  r.cohomology_bases.assign(degrees, {});
  parallel_for(degrees, [&](std::size_t k) {
    const auto h = cohomology(model, static_cast<int>(k));
    r.cohomology_dims[k] = h.dimension;
    for (const auto& rep : h.representatives) r.cohomology_bases[k].push_back(alg.to_string(rep));
    for (std::size_t i = 0; i < h.representatives.size(); ++i) {
      const auto coords = class_of(model, h, phi.apply(h.representatives[i]));
      linalg::Vector unit(h.dimension);
      unit[i] = 1;
      if (coords == unit) continue;
      Polynomial image;
      for (std::size_t j = 0; j < coords.size(); ++j) {
        Polynomial term = h.representatives[j];
        term *= coords[j];
        image += term;
      }
      moved[k].push_back({static_cast<int>(k), i, alg.to_string(h.representatives[i]), coords,
                          alg.to_string(image)});
    }
  });
  for (auto& per_degree : moved)
    for (auto& mc : per_degree) r.cohomology_moved_classes.push_back(std::move(mc));
  return r;
}

/// True when the report shows [c3] ↦ [c3] + [a2·x] in degree 3.
inline bool shows_c3_witness(const CdgaMorphism& phi, const ESharpReport& r) {
  const Algebra& alg = phi.algebra();
  const auto x = alg.circle();
  const auto a = alg.find("a2"), c = alg.find("c3");
  if (!x || !a || !c) return false;
  const std::string c3 = alg.to_string(Polynomial::generator(*c));
  const std::string expected =
      alg.to_string(Polynomial::generator(*c) + alg.multiply(Polynomial::generator(*a), Polynomial::generator(*x)));
  return std::any_of(r.cohomology_moved_classes.begin(), r.cohomology_moved_classes.end(), [&](const auto& mc) {
    return mc.degree == 3 && mc.representative == c3 && mc.image_text == expected;
  });
}

/// ψ with ψ∘φ = id, by induction on degree: ψ(Lg) = g - ψ(N g) where L is
/// the linear part of φ and N the decomposable part.
inline CdgaMorphism invert(const CdgaMorphism& phi) {
  if (!phi.total()) throw Error("invert: morphism is not total");
  const Algebra& alg = phi.algebra();
  CdgaMorphism psi(phi.model_ptr());

  std::map<int, std::vector<GenId>> by_degree;
  for (const auto& g : alg.generators()) by_degree[g.degree].push_back(g.id);

  for (const auto& [deg, gens] : by_degree) {
    const std::size_t n = gens.size();
    std::map<GenId, std::size_t> local;
    for (std::size_t i = 0; i < n; ++i) local[gens[i]] = i;

    // linear(h, g) = coefficient of h in φ(g); rhs(g) = g - ψ(decomposable part of φ(g)).
    linalg::RationalMatrix linear(n, n);
    std::vector<Polynomial> rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial decomposable;
      for (const auto& [m, c] : phi.image(gens[j]).terms()) {
        if (m.word_length() == 1) linear(local.at(m.factors.front().gen), j) = c;
        else decomposable.add_term(m, c);
      }
      rhs[j] = Polynomial::generator(gens[j]) - psi.apply(decomposable);
    }
    if (linalg::rank(linear) != n) {
      throw Error("invert: linear part is singular in degree " + std::to_string(deg));
    }
    // Σ_h linear(h, g) ψ(h) = rhs(g), so ψ(h) = Σ_g rhs(g) inv(g, h) with
    // inv = linear^{-1}; column h of inv solves linear·y = e_h.
    std::vector<linalg::Vector> inverse_columns(n);
    for (std::size_t h = 0; h < n; ++h) {
      linalg::Vector e(n);
      e[h] = 1;
      inverse_columns[h] = *linalg::solve(linear, e);
    }
    for (std::size_t h = 0; h < n; ++h) {
      Polynomial image;
      for (std::size_t g = 0; g < n; ++g) {
        if (inverse_columns[h][g] == 0) continue;
        Polynomial term = rhs[g];
        term *= inverse_columns[h][g];
        image += term;
      }
      psi.set_image(gens[h], std::move(image));
    }
  }
  return psi;
}

/// Substitutes x ↦ 0 in every image and restricts to the generators of W.
inline bool is_identity_modulo_circle(const CdgaMorphism& phi) {
  const Algebra& alg = phi.algebra();
  const GenId x = detail::circle_of(phi.model());
  for (const auto& g : alg.generators()) {
    if (g.circle) continue;
    if (kill_generator(phi.image(g.id), x) != Polynomial::generator(g.id)) return false;
  }
  return true;
}

} // namespace sullivan
