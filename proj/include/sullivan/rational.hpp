#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace sullivan {

using Rational = mpq_class;
using Integer = mpz_class;

// Base of every fault raised by the engine.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Always "p/q" with q > 0, including integers ("3/1").
inline std::string to_fraction_string(Rational q) {
  q.canonicalize();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Accepts "p/q" or a bare integer "p".
inline Rational parse_fraction(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error("empty rational literal");
  for (char c : s) {
    if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9'))) {
      throw Error("invalid rational literal '" + s + "'");
    }
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error("invalid rational literal '" + s + "'");
  if (q.get_den() == 0) throw Error("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

} // namespace sullivan
