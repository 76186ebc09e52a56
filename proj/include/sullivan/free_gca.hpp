#pragma once

#include "sullivan/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sullivan {

using GenId = std::uint32_t;

struct Generator {
  GenId id = 0;
  std::string name;
  int degree = 1;  // cohomological degree
  int stage = 0;   // lower degree in a bigraded model
  bool circle = false;

  bool odd() const noexcept { return degree % 2 != 0; }
};

struct Factor {
  GenId gen = 0;
  std::uint32_t exp = 1;

  friend auto operator<=>(const Factor&, const Factor&) = default;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Normalized monomial: factors strictly increasing by generator id, odd
/// generators with exponent 1. The empty factor list is the unit.
struct Monomial {
  std::vector<Factor> factors;

  static Monomial unit() { return {}; }
  static Monomial of(GenId g, std::uint32_t exp = 1) { return Monomial{{Factor{g, exp}}}; }

  bool is_unit() const noexcept { return factors.empty(); }

  std::uint32_t word_length() const noexcept {
    std::uint32_t n = 0;
    for (const auto& f : factors) n += f.exp;
    return n;
  }

  std::uint32_t exponent_of(GenId g) const noexcept {
    for (const auto& f : factors)
      if (f.gen == g) return f.exp;
    return 0;
  }

  // Lexicographic on the factor list.
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct SignedMonomial {
  int sign = 1;
  Monomial monomial;
};

class Polynomial {
public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  static Polynomial constant(const Rational& c) { return term(Monomial::unit(), c); }
  static Polynomial term(Monomial m, const Rational& c = 1) {
    Polynomial p;
    p.add_term(std::move(m), c);
    return p;
  }
  static Polynomial generator(GenId g) { return term(Monomial::of(g)); }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
  Terms terms_;
};

/// A polynomial's terms grouped by word length.
inline std::map<std::uint32_t, Polynomial> word_split(const Polynomial& p) {
  std::map<std::uint32_t, Polynomial> out;
  for (const auto& [m, c] : p.terms()) out[m.word_length()].add_term(m, c);
  return out;
}

/// Raised when an operation would create a term above the degree cap.
class CapExceeded : public Error {
public:
  using Error::Error;
};

struct BasisFilter {
  std::optional<std::uint32_t> word_length;      // exactly
  std::optional<std::uint32_t> min_word_length;  // at least
  std::optional<int> stage;                      // exactly

  bool accepts(std::uint32_t length, int st) const {
    if (word_length && length != *word_length) return false;
    if (min_word_length && length < *min_word_length) return false;
    if (stage && st != *stage) return false;
    return true;
  }
};

/// Generator table plus degree cap; the ambient free graded-commutative
/// algebra. Immutable once built.
class Algebra {
public:
  Algebra() = default;
  Algebra(std::vector<Generator> generators, int cap) : cap_(cap) {
    if (cap < 0) throw Error("degree cap must be nonnegative");
    for (auto& g : generators) add(std::move(g));
  }

  int cap() const noexcept { return cap_; }
  std::size_t size() const noexcept { return gens_.size(); }
  const std::vector<Generator>& generators() const noexcept { return gens_; }

  const Generator& generator(GenId id) const {
    if (id >= gens_.size()) throw Error("unknown generator id " + std::to_string(id));
    return gens_[id];
  }

  std::optional<GenId> find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  GenId id_of(std::string_view name) const {
    auto id = find(name);
    if (!id) throw Error("unknown generator '" + std::string(name) + "'");
    return *id;
  }

  std::optional<GenId> circle() const {
    for (const auto& g : gens_)
      if (g.circle) return g.id;
    return std::nullopt;
  }

  // Copy with one more generator; its id is the next dense index.
  Algebra with_generator(Generator g) const {
    Algebra out = *this;
    out.add(std::move(g));
    return out;
  }

  int degree(const Monomial& m) const {
    int d = 0;
    for (const auto& f : m.factors) d += static_cast<int>(f.exp) * generator(f.gen).degree;
    return d;
  }

  int stage(const Monomial& m) const {
    int s = 0;
    for (const auto& f : m.factors) s += static_cast<int>(f.exp) * generator(f.gen).stage;
    return s;
  }

  // Degree of p if every term has the same degree; nullopt for zero or mixed.
  std::optional<int> homogeneous_degree(const Polynomial& p) const {
    std::optional<int> d;
    for (const auto& [m, c] : p.terms()) {
      const int dm = degree(m);
      if (d && *d != dm) return std::nullopt;
      d = dm;
    }
    return d;
  }

  int max_degree(const Polynomial& p) const {
    int d = -1;
    for (const auto& [m, c] : p.terms()) d = std::max(d, degree(m));
    return d;
  }

  /// Sorts an arbitrary factor list into normal form. The sign collects -1
  /// for every transposition of two odd factors; nullopt means the product is
  /// zero (an odd generator occurs twice).
  std::optional<SignedMonomial> normalize(std::span<const Factor> factors) const {
    std::vector<Factor> work;
    work.reserve(factors.size());
    for (const auto& f : factors) {
      generator(f.gen);
      if (f.exp == 0) continue;
      work.push_back(f);
    }
    int sign = 1;
    // Insertion sort keeps the transposition count explicit.
    for (std::size_t i = 1; i < work.size(); ++i) {
      for (std::size_t j = i; j > 0 && work[j - 1].gen > work[j].gen; --j) {
        if (odd_factor(work[j - 1]) && odd_factor(work[j])) sign = -sign;
        std::swap(work[j - 1], work[j]);
      }
    }
    Monomial out;
    for (const auto& f : work) {
      if (!out.factors.empty() && out.factors.back().gen == f.gen) {
        out.factors.back().exp += f.exp;
      } else {
        out.factors.push_back(f);
      }
    }
    for (const auto& f : out.factors) {
      if (generator(f.gen).odd() && f.exp > 1) return std::nullopt;
    }
    return SignedMonomial{sign, std::move(out)};
  }

  /// Product of two normalized monomials, ignoring the cap.
  std::optional<SignedMonomial> multiply_monomials(const Monomial& a, const Monomial& b) const {
    Monomial out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    int sign = 1;
    // Number of odd factors of a not yet emitted; each odd factor of b jumps
    // over exactly those with a larger id.
    std::size_t odd_left = 0;
    for (const auto& f : a.factors) odd_left += odd_factor(f) ? 1 : 0;
    auto ia = a.factors.begin(), ib = b.factors.begin();
    while (ia != a.factors.end() || ib != b.factors.end()) {
      if (ib == b.factors.end() || (ia != a.factors.end() && ia->gen < ib->gen)) {
        if (odd_factor(*ia)) --odd_left;
        out.factors.push_back(*ia++);
      } else if (ia == a.factors.end() || ib->gen < ia->gen) {
        if (odd_factor(*ib) && odd_left % 2 == 1) sign = -sign;
        out.factors.push_back(*ib++);
      } else {
        if (generator(ia->gen).odd()) return std::nullopt;
        // even generator: no sign, but b's factor still passes odd ones of a
        out.factors.push_back(Factor{ia->gen, ia->exp + ib->exp});
        ++ia;
        ++ib;
      }
    }
    return SignedMonomial{sign, std::move(out)};
  }

  /// Exact product; throws CapExceeded if a term would exceed the cap.
  Polynomial multiply(const Polynomial& p, const Polynomial& q) const {
    bool overflow = false;
    Polynomial out = multiply_impl(p, q, cap_, overflow);
    if (overflow) throw CapExceeded("product exceeds degree cap " + std::to_string(cap_));
    return out;
  }

  /// Product with every term above the cap dropped; `overflow` is set when
  /// something was dropped. Used where the model is cut off at the cap.
  Polynomial multiply_truncated(const Polynomial& p, const Polynomial& q, bool& overflow) const {
    return multiply_impl(p, q, cap_, overflow);
  }

  /// Product with no cap at all.
  Polynomial multiply_unbounded(const Polynomial& p, const Polynomial& q) const {
    bool overflow = false;
    return multiply_impl(p, q, -1, overflow);
  }

  Polynomial power(const Polynomial& p, std::uint32_t e) const {
    Polynomial out = Polynomial::constant(1);
    for (std::uint32_t i = 0; i < e; ++i) out = multiply(out, p);
    return out;
  }

  /// Deterministic (lexicographically sorted) monomial basis of degree k.
  std::vector<Monomial> basis_of(int k, const BasisFilter& filter = {}) const {
    if (k > cap_) {
      throw CapExceeded("basis requested in degree " + std::to_string(k) + " above cap " +
                        std::to_string(cap_));
    }
    std::vector<Monomial> out;
    if (k < 0) return out;
    std::vector<Factor> current;
    enumerate(0, k, 0, 0, filter, current, out);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string to_string(const Monomial& m) const {
    if (m.is_unit()) return "1";
    std::string s;
    for (const auto& f : m.factors) {
      if (!s.empty()) s += '*';
      s += generator(f.gen).name;
      if (f.exp > 1) s += "^" + std::to_string(f.exp);
    }
    return s;
  }

  /// Report form, e.g. "c3 + a2*x": terms by word length, then lexicographic.
  std::string to_string(const Polynomial& p) const {
    if (p.is_zero()) return "0";
    std::vector<std::pair<const Monomial*, const Rational*>> terms;
    for (const auto& [m, c] : p.terms()) terms.emplace_back(&m, &c);
    std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
      return x.first->word_length() < y.first->word_length();
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms) {
      Rational coef = *c;
      if (first) {
        if (coef < 0) {
          os << "-";
          coef = -coef;
        }
      } else {
        os << (coef < 0 ? " - " : " + ");
        if (coef < 0) coef = -coef;
      }
      first = false;
      if (m->is_unit()) {
        os << coef.get_str();
      } else {
        if (coef != 1) os << coef.get_str() << '*';
        os << to_string(*m);
      }
    }
    return os.str();
  }

private:
  void add(Generator g) {
    if (g.degree < 1) throw Error("generator '" + g.name + "' must have positive degree");
    if (g.stage < 0) throw Error("generator '" + g.name + "' has negative stage");
    if (g.name.empty()) throw Error("generator name must be nonempty");
    if (by_name_.count(g.name)) throw Error("duplicate generator name '" + g.name + "'");
    if (g.circle && (g.degree != 1 || g.stage != 0)) {
      throw Error("circle generator must have degree 1 and stage 0");
    }
    g.id = static_cast<GenId>(gens_.size());
    by_name_.emplace(g.name, g.id);
    gens_.push_back(std::move(g));
  }

  bool odd_factor(const Factor& f) const { return generator(f.gen).odd() && f.exp % 2 == 1; }

  Polynomial multiply_impl(const Polynomial& p, const Polynomial& q, int cap, bool& overflow) const {
    Polynomial out;
    for (const auto& [ma, ca] : p.terms()) {
      const int da = degree(ma);
      for (const auto& [mb, cb] : q.terms()) {
        if (cap >= 0 && da + degree(mb) > cap) {
          overflow = true;
          continue;
        }
        auto prod = multiply_monomials(ma, mb);
        if (!prod) continue;
        out.add_term(prod->monomial, prod->sign * ca * cb);
      }
    }
    return out;
  }

  void enumerate(GenId next, int remaining, std::uint32_t length, int stage, const BasisFilter& filter,
                 std::vector<Factor>& current, std::vector<Monomial>& out) const {
    if (remaining == 0) {
      if (filter.accepts(length, stage)) out.push_back(Monomial{current});
      return;
    }
    if (filter.word_length && length >= *filter.word_length) return;
    for (GenId g = next; g < gens_.size(); ++g) {
      const auto& gen = gens_[g];
      if (gen.degree > remaining) continue;
      const std::uint32_t max_exp = gen.odd() ? 1u : static_cast<std::uint32_t>(remaining / gen.degree);
      for (std::uint32_t e = 1; e <= max_exp; ++e) {
        current.push_back(Factor{g, e});
        enumerate(g + 1, remaining - static_cast<int>(e) * gen.degree, length + e,
                  stage + static_cast<int>(e) * gen.stage, filter, current, out);
        current.pop_back();
      }
    }
  }

  int cap_ = 0;
  std::vector<Generator> gens_;
  std::unordered_map<std::string, GenId> by_name_;
};

} // namespace sullivan
