#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gsv/errors.hpp"

namespace gsv {

// Exact rationals. mpq_class keeps values canonical (gcd 1, positive
// denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "-p", "p/q" or "+p/q". Whitespace is not allowed inside.
inline Rational parseRational(std::string_view text) {
  auto fail = [&](std::size_t pos) -> Rational {
    throw SyntaxError("malformed rational '" + std::string(text) + "'", pos);
  };
  if (text.empty()) return fail(0);
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') ++i;
  std::size_t digitsStart = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == digitsStart) return fail(i);
  std::size_t slash = std::string_view::npos;
  if (i < text.size()) {
    if (text[i] != '/') return fail(i);
    slash = i++;
    std::size_t denStart = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == denStart || i != text.size()) return fail(i);
  }
  std::string num(text.substr(text[0] == '+' ? 1 : 0,
                              slash == std::string_view::npos ? std::string_view::npos
                                                              : slash - (text[0] == '+' ? 1 : 0)));
  Rational q;
  q.get_num() = Integer(num, 10);
  if (slash == std::string_view::npos) {
    q.get_den() = 1;
  } else {
    Integer den(std::string(text.substr(slash + 1)), 10);
    if (den == 0) return fail(slash + 1);
    q.get_den() = den;
  }
  q.canonicalize();
  return q;
}

// "p/q", or "p" when the denominator is 1.
inline std::string formatRational(const Rational& q) { return q.get_str(10); }

inline bool isInteger(const Rational& q) { return q.get_den() == 1; }

} // namespace gsv
