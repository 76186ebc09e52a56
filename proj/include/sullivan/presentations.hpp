#pragma once

#include "sullivan/exact_linalg.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace sullivan::groups {

struct Letter {
  std::string gen;
  long exp = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Freely reduced word: adjacent letters on the same generator are merged
/// and zero exponents removed.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) {
    for (auto& l : letters) push(std::move(l));
  }

  static Word letter(std::string gen, long exp = 1) { return Word({Letter{std::move(gen), exp}}); }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }

  void push(Letter l) {
    if (l.exp == 0) return;
    if (!letters_.empty() && letters_.back().gen == l.gen) {
      letters_.back().exp += l.exp;
      if (letters_.back().exp == 0) letters_.pop_back();
      return;
    }
    letters_.push_back(std::move(l));
  }

  Word inverse() const {
    Word out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push(Letter{it->gen, -it->exp});
    return out;
  }

  Word power(long k) const {
    Word out;
    const Word base = k < 0 ? inverse() : *this;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) out = out * base;
    return out;
  }

  friend Word operator*(Word a, const Word& b) {
    for (const auto& l : b.letters_) a.push(l);
    return a;
  }

  friend bool operator==(const Word&, const Word&) = default;

  std::string to_string() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (const auto& l : letters_) {
      if (!s.empty()) s += ' ';
      s += l.gen;
      if (l.exp != 1) s += "^" + std::to_string(l.exp);
    }
    return s;
  }

private:
  std::vector<Letter> letters_;
};

inline Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

inline bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
inline bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80; }

// Recursive-descent parser for one line.
//   word   := factor*            (juxtaposition)
//   factor := atom ('^' integer)?
//   atom   := ident | '1' | '(' word ')' | '[' word ',' word ']'
class LineParser {
public:
  LineParser(std::string_view text, std::size_t line, const std::set<std::string>& gens)
      : text_(text), line_(line), gens_(gens) {}

  Word relator() {
    Word lhs = word();
    skip_space();
    if (peek() == '=') {
      ++pos_;
      Word rhs = word();
      expect_end();
      return lhs * rhs.inverse();
    }
    expect_end();
    return lhs;
  }

private:
  Word word() {
    Word w;
    while (true) {
      skip_space();
      const char c = peek();
      if (c == '\0' || c == ')' || c == ']' || c == ',' || c == '=') return w;
      w = w * factor();
    }
  }

  Word factor() {
    Word base = atom();
    skip_space();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      return base.power(integer());
    }
    return base;
  }

  Word atom() {
    skip_space();
    const std::size_t start = pos_;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Word inner = word();
      expect(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      Word u = word();
      expect(',');
      Word v = word();
      expect(']');
      return commutator(u, v);
    }
    if (c == '1' && !ident_char(static_cast<unsigned char>(peek(1)))) {
      ++pos_;
      return Word{};
    }
    if (ident_start(static_cast<unsigned char>(c))) {
      while (ident_char(static_cast<unsigned char>(peek()))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (!gens_.count(name)) fail(start, "unknown generator '" + name + "'");
      return Word::letter(std::move(name));
    }
    fail(start, c == '\0' ? "unexpected end of line" : std::string("unexpected character '") + c + "'");
  }

  long integer() {
    const std::size_t start = pos_;
    if (peek() == '(') {
      ++pos_;
      skip_space();
      const long k = integer();
      expect(')');
      return k;
    }
    if (peek() == '-' || peek() == '+') ++pos_;
    const std::size_t digits = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == digits) fail(start, "expected an integer exponent");
    long k = 0;
    try {
      k = std::stol(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      fail(start, "exponent out of range");
    }
    if (k == 0) fail(start, "exponent must be nonzero");
    return k;
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  void expect_end() {
    skip_space();
    if (pos_ < text_.size()) fail(pos_, std::string("unexpected character '") + text_[pos_] + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

  [[noreturn]] void fail(std::size_t pos, const std::string& what) const { throw ParseError(line_, pos + 1, what); }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
  const std::set<std::string>& gens_;
};

inline std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
  return line;
}

inline bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

} // namespace detail

/// Parses the presentation format: the first non-blank line lists the
/// generators, separated by commas; every later line is a relator word or an
/// equation "lhs = rhs". '#' starts a comment.
inline GroupPresentation parse(std::string_view text) {
  GroupPresentation pres;
  std::set<std::string> gens;
  bool have_generators = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;
    line = detail::strip_comment(line);
    if (detail::blank(line)) continue;

    if (!have_generators) {
      std::size_t start = 0;
      while (start <= line.size()) {
        auto comma = line.find(',', start);
        if (comma == std::string_view::npos) comma = line.size();
        std::string_view item = line.substr(start, comma - start);
        std::size_t b = 0;
        while (b < item.size() && std::isspace(static_cast<unsigned char>(item[b]))) ++b;
        std::size_t e = item.size();
        while (e > b && std::isspace(static_cast<unsigned char>(item[e - 1]))) --e;
        std::string name(item.substr(b, e - b));
        const std::size_t column = start + b + 1;
        if (name.empty() || !detail::ident_start(static_cast<unsigned char>(name[0])) ||
            !std::all_of(name.begin(), name.end(), [](char c) { return detail::ident_char(static_cast<unsigned char>(c)); })) {
          throw ParseError(line_no, column, "invalid generator name '" + name + "'");
        }
        if (!gens.insert(name).second) throw ParseError(line_no, column, "duplicate generator '" + name + "'");
        pres.generators.push_back(std::move(name));
        start = comma + 1;
      }
      have_generators = true;
      continue;
    }
    pres.relators.push_back(detail::LineParser(line, line_no, gens).relator());
  }
  if (!have_generators) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing generator line");
  return pres;
}

inline std::string print(const GroupPresentation& pres) {
  std::ostringstream os;
  for (std::size_t i = 0; i < pres.generators.size(); ++i) os << (i ? ", " : "") << pres.generators[i];
  os << '\n';
  for (const auto& r : pres.relators) os << r.to_string() << '\n';
  return os.str();
}

/// Exponent sums: one row per relator, one column per generator.
inline linalg::IntegerMatrix relation_matrix(const GroupPresentation& pres) {
  linalg::IntegerMatrix m(pres.relators.size(), pres.generators.size());
  for (std::size_t i = 0; i < pres.relators.size(); ++i) {
    for (const auto& l : pres.relators[i].letters()) {
      auto it = std::find(pres.generators.begin(), pres.generators.end(), l.gen);
      if (it == pres.generators.end()) throw Error("relator uses unknown generator '" + l.gen + "'");
      m(i, static_cast<std::size_t>(it - pres.generators.begin())) += l.exp;
    }
  }
  return m;
}

struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // entries >= 2, t_i | t_{i+1}

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;

  std::string to_string() const {
    std::string s = "rank=" + std::to_string(free_rank) + ",torsion=";
    for (std::size_t i = 0; i < torsion.size(); ++i) s += (i ? "," : "") + torsion[i].get_str();
    return s;
  }
};

inline AbelianInvariants abelian_invariants(const GroupPresentation& pres) {
  const auto snf = linalg::smith_normal_form(relation_matrix(pres));
  AbelianInvariants out;
  out.free_rank = pres.generators.size() - snf.rank;
  for (const auto& d : snf.diagonal)
    if (d > 1) out.torsion.push_back(d);
  return out;
}

/// dim (G^ab ⊗ Q).
inline std::size_t rational_rank(const GroupPresentation& pres) { return abelian_invariants(pres).free_rank; }

/// G × Z: a new generator commuting with every old one.
inline GroupPresentation direct_product_with_z(GroupPresentation pres, const std::string& t = "t") {
  if (std::find(pres.generators.begin(), pres.generators.end(), t) != pres.generators.end()) {
    throw Error("generator '" + t + "' already present");
  }
  const auto old = pres.generators;
  pres.generators.push_back(t);
  for (const auto& g : old) pres.relators.push_back(commutator(Word::letter(t), Word::letter(g)));
  return pres;
}

} // namespace sullivan::groups
