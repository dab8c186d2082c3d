#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "gsv/errors.hpp"
#include "gsv/polynomial.hpp"
#include "gsv/rational.hpp"

namespace gsv {

// Canonical text form: terms in descending grlex order joined by " + " / " - ",
// coefficient first ("3/4*x1_1^2*y2_1"), unit coefficients omitted.
inline std::string formatPoly(const Polynomial& p) {
  if (p.isZero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coef;
    if (first) {
      if (c < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    first = false;
    bool unit = (c == 1);
    if (!unit || t.mono.isOne()) out += formatRational(c);
    bool needStar = !unit;
    for (const auto& f : t.mono.factors()) {
      if (needStar) out += "*";
      out += f.var.name();
      if (f.exp > 1) out += "^" + std::to_string(f.exp);
      needStar = true;
    }
  }
  return out;
}

namespace detail {

class PolyParser {
public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    skipSpace();
    if (atEnd()) throw SyntaxError("empty polynomial", pos_);
    Polynomial sum;
    bool firstTerm = true;
    while (true) {
      skipSpace();
      int sign = 1;
      if (consumeMinus()) {
        sign = -1;
      } else if (peek() == '+') {
        ++pos_;
      } else if (!firstTerm) {
        throw SyntaxError("expected '+' or '-'", pos_);
      }
      skipSpace();
      Polynomial term = parseTerm();
      sum += sign < 0 ? -term : term;
      firstTerm = false;
      skipSpace();
      if (atEnd()) break;
    }
    return sum;
  }

private:
  Polynomial parseTerm() {
    Polynomial term(1);
    term *= parseFactor();
    while (true) {
      skipSpace();
      if (peek() != '*') break;
      ++pos_;
      skipSpace();
      term *= parseFactor();
    }
    return term;
  }

  Polynomial parseFactor() {
    char c = peek();
    if (c == 'x' || c == 'y') {
      VarKind kind = c == 'x' ? VarKind::X : VarKind::Y;
      ++pos_;
      int row = parseIndex();
      if (peek() != '_') throw SyntaxError("expected '_' in variable name", pos_);
      ++pos_;
      int col = parseIndex();
      unsigned exp = 1;
      skipSpace();
      if (peek() == '^') {
        ++pos_;
        skipSpace();
        exp = static_cast<unsigned>(parseIndex(true));
      }
      return Polynomial(Monomial(Variable{kind, row, col}, exp), Rational(1));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (peek() == '/') {
        ++pos_;
        std::size_t denStart = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == denStart) throw SyntaxError("expected denominator digits", pos_);
      }
      try {
        return Polynomial(parseRational(text_.substr(start, pos_ - start)));
      } catch (const SyntaxError&) {
        throw SyntaxError("invalid rational coefficient", start);
      }
    }
    if (atEnd()) throw SyntaxError("unexpected end of input", pos_);
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  int parseIndex(bool allowZero = false) {
    std::size_t start = pos_;
    long value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      if (value > 1'000'000) throw SyntaxError("index too large", start);
      ++pos_;
    }
    if (pos_ == start) throw SyntaxError("expected digits", pos_);
    if (!allowZero && value == 0) throw SyntaxError("indices are 1-based", start);
    return static_cast<int>(value);
  }

  // ASCII '-' or U+2212.
  bool consumeMinus() {
    if (peek() == '-') {
      ++pos_;
      return true;
    }
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return true;
    }
    return false;
  }

  void skipSpace() {
    while (!atEnd() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool atEnd() const { return pos_ >= text_.size(); }
  char peek() const { return atEnd() ? '\0' : text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace detail

inline Polynomial parsePoly(std::string_view text) { return detail::PolyParser(text).parse(); }

} // namespace gsv
