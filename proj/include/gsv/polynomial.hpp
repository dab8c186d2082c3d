#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gsv/errors.hpp"
#include "gsv/rational.hpp"

namespace gsv {

enum class VarKind : std::uint8_t { X = 0, Y = 1 };

// An entry of the generic matrices: x_{row,col} of X (r x s) or y_{row,col}
// of Y (s x r). Indices are 1-based. The defaulted ordering puts all X
// entries before all Y entries, each block row-major; this is the global
// variable order used by the term order.
struct Variable {
  VarKind kind = VarKind::X;
  int row = 1;
  int col = 1;

  static constexpr Variable x(int row, int col) { return {VarKind::X, row, col}; }
  static constexpr Variable y(int row, int col) { return {VarKind::Y, row, col}; }

  bool isX() const noexcept { return kind == VarKind::X; }
  bool isY() const noexcept { return kind == VarKind::Y; }

  std::string name() const {
    return std::string(isX() ? "x" : "y") + std::to_string(row) + "_" + std::to_string(col);
  }

  auto operator<=>(const Variable&) const = default;
};

class Monomial {
public:
  struct Factor {
    Variable var;
    unsigned exp;
    bool operator==(const Factor&) const = default;
  };

  Monomial() = default;
  explicit Monomial(Variable v, unsigned exp = 1) {
    if (exp > 0) {
      factors_.push_back({v, exp});
      degree_ = exp;
    }
  }

  unsigned degree() const noexcept { return degree_; }
  bool isOne() const noexcept { return factors_.empty(); }
  const std::vector<Factor>& factors() const noexcept { return factors_; }

  unsigned exponent(Variable v) const {
    for (const auto& f : factors_)
      if (f.var == v) return f.exp;
    return 0;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial out;
    out.factors_.reserve(factors_.size() + o.factors_.size());
    auto a = factors_.begin(), b = o.factors_.begin();
    while (a != factors_.end() || b != o.factors_.end()) {
      if (b == o.factors_.end() || (a != factors_.end() && a->var < b->var)) {
        out.factors_.push_back(*a++);
      } else if (a == factors_.end() || b->var < a->var) {
        out.factors_.push_back(*b++);
      } else {
        out.factors_.push_back({a->var, a->exp + b->exp});
        ++a;
        ++b;
      }
    }
    out.degree_ = degree_ + o.degree_;
    return out;
  }

  // this / o, if o divides this.
  std::optional<Monomial> divide(const Monomial& o) const {
    if (o.degree_ > degree_) return std::nullopt;
    Monomial out;
    auto a = factors_.begin();
    for (const auto& f : o.factors_) {
      while (a != factors_.end() && a->var < f.var) out.factors_.push_back(*a++);
      if (a == factors_.end() || a->var != f.var || a->exp < f.exp) return std::nullopt;
      if (a->exp > f.exp) out.factors_.push_back({a->var, a->exp - f.exp});
      ++a;
    }
    out.factors_.insert(out.factors_.end(), a, factors_.end());
    out.degree_ = degree_ - o.degree_;
    return out;
  }

  // Removes one power of v; v must occur.
  Monomial withoutOne(Variable v) const {
    Monomial out = *this;
    for (auto it = out.factors_.begin(); it != out.factors_.end(); ++it) {
      if (it->var == v) {
        if (--it->exp == 0) out.factors_.erase(it);
        --out.degree_;
        return out;
      }
    }
    return out;
  }

  bool operator==(const Monomial& o) const { return factors_ == o.factors_; }

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& f : factors_) {
      std::uint64_t key = (static_cast<std::uint64_t>(f.var.kind) << 56) ^
                          (static_cast<std::uint64_t>(f.var.row) << 40) ^
                          (static_cast<std::uint64_t>(f.var.col) << 24) ^ f.exp;
      h = (h ^ key) * 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }

private:
  std::vector<Factor> factors_; // sorted by variable, no zero exponents
  unsigned degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

// Graded lexicographic comparison; "greater" means earlier in a sorted
// polynomial. Lex tie-break: the first variable (global order) where the
// exponents differ decides, larger exponent wins.
inline std::strong_ordering grlex(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0, j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].var == fb[j].var) {
      if (fa[i].exp != fb[j].exp) return fa[i].exp <=> fb[j].exp;
      ++i;
      ++j;
    } else if (fa[i].var < fb[j].var) {
      return std::strong_ordering::greater;
    } else {
      return std::strong_ordering::less;
    }
  }
  if (i < fa.size()) return std::strong_ordering::greater;
  if (j < fb.size()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

using Assignment = std::map<Variable, Rational>;

// Sparse multivariate polynomial over Q in canonical form: terms sorted by
// descending grlex, no zero coefficients. Structural equality is equality.
class Polynomial {
public:
  struct Term {
    Monomial mono;
    Rational coef;
    bool operator==(const Term&) const = default;
  };

  Polynomial() = default;
  Polynomial(int c) : Polynomial(Rational(c)) {}
  Polynomial(const Rational& c) {
    if (c != 0) terms_.push_back({Monomial(), c});
  }
  Polynomial(Variable v) { terms_.push_back({Monomial(v), Rational(1)}); }
  Polynomial(const Monomial& m, const Rational& c) {
    if (c != 0) terms_.push_back({m, c});
  }

  static Polynomial fromTerms(std::vector<Term> terms) {
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    for (auto& t : terms) acc[t.mono] += t.coef;
    return fromAccumulator(std::move(acc));
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool isZero() const noexcept { return terms_.empty(); }
  bool isConstant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.isOne());
  }
  Rational constantValue() const {
    if (!terms_.empty() && terms_.back().mono.isOne()) return terms_.back().coef;
    return Rational(0);
  }
  const Term& leadingTerm() const { return terms_.front(); }

  unsigned totalDegree() const noexcept { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

  std::vector<Variable> variables() const {
    std::vector<Variable> vs;
    for (const auto& t : terms_)
      for (const auto& f : t.mono.factors()) vs.push_back(f.var);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  Polynomial operator-() const {
    Polynomial out = *this;
    for (auto& t : out.terms_) t.coef = -t.coef;
    return out;
  }

  Polynomial operator+(const Polynomial& o) const { return merge(o, false); }
  Polynomial operator-(const Polynomial& o) const { return merge(o, true); }

  Polynomial operator*(const Polynomial& o) const {
    if (isZero() || o.isZero()) return {};
    if (o.terms_.size() == 1) return timesTerm(o.terms_[0]);
    if (terms_.size() == 1) return o.timesTerm(terms_[0]);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) acc[a.mono * b.mono] += a.coef * b.coef;
    return fromAccumulator(std::move(acc));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial pow(unsigned e) const {
    Polynomial result(1), base = *this;
    while (e > 0) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e > 0) base *= base;
    }
    return result;
  }

  // Exact quotient by b, or nullopt if b does not divide this. Multivariate
  // division by leading terms: if b | a then LT(b) | LT(remainder) at every
  // step, so a non-divisible leading term proves non-divisibility.
  std::optional<Polynomial> tryExactDiv(const Polynomial& b) const {
    if (b.isZero()) throw PreconditionViolation("division by the zero polynomial");
    if (b.isConstant()) {
      Polynomial out = *this;
      Rational inv = 1 / b.constantValue();
      for (auto& t : out.terms_) t.coef *= inv;
      return out;
    }
    auto desc = [](const Monomial& x, const Monomial& y) { return grlex(x, y) > 0; };
    std::map<Monomial, Rational, decltype(desc)> rem(desc);
    for (const auto& t : terms_) rem.emplace(t.mono, t.coef);
    std::vector<Term> quotient;
    const Term& lb = b.leadingTerm();
    while (!rem.empty()) {
      auto lead = rem.begin();
      auto q = lead->first.divide(lb.mono);
      if (!q) return std::nullopt;
      Term qt{*q, lead->second / lb.coef};
      for (const auto& t : b.terms_) {
        auto [it, fresh] = rem.try_emplace(t.mono * qt.mono, 0);
        it->second -= t.coef * qt.coef;
        if (it->second == 0) rem.erase(it);
      }
      quotient.push_back(std::move(qt));
    }
    Polynomial out;
    out.terms_ = std::move(quotient); // generated in descending order
    return out;
  }

  Polynomial exactDiv(const Polynomial& b) const {
    auto q = tryExactDiv(b);
    if (!q) throw NotDivisible("polynomial division leaves a nonzero remainder");
    return *q;
  }

  Polynomial derivative(Variable v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      unsigned e = t.mono.exponent(v);
      if (e == 0) continue;
      out.push_back({t.mono.withoutOne(v), t.coef * e});
    }
    // d/dv maps distinct monomials containing v to distinct monomials, but
    // the grlex order among them can change, so re-sort.
    std::sort(out.begin(), out.end(),
              [](const Term& a, const Term& b) { return grlex(a.mono, b.mono) > 0; });
    Polynomial p;
    p.terms_ = std::move(out);
    return p;
  }

  // Variables missing from the assignment are an error.
  Rational evaluate(const Assignment& at) const {
    Rational sum = 0;
    for (const auto& t : terms_) {
      Rational v = t.coef;
      for (const auto& f : t.mono.factors()) {
        auto it = at.find(f.var);
        if (it == at.end()) throw PreconditionViolation("no value for variable " + f.var.name());
        Rational p;
        mpz_pow_ui(p.get_num_mpz_t(), it->second.get_num_mpz_t(), f.exp);
        mpz_pow_ui(p.get_den_mpz_t(), it->second.get_den_mpz_t(), f.exp);
        v *= p;
      }
      sum += v;
    }
    return sum;
  }

private:
  static Polynomial fromAccumulator(std::unordered_map<Monomial, Rational, MonomialHash>&& acc) {
    Polynomial p;
    p.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) p.terms_.push_back({m, std::move(c)});
    std::sort(p.terms_.begin(), p.terms_.end(),
              [](const Term& a, const Term& b) { return grlex(a.mono, b.mono) > 0; });
    return p;
  }

  // Multiplying by a monomial preserves a monomial order.
  Polynomial timesTerm(const Term& t) const {
    Polynomial out;
    out.terms_.reserve(terms_.size());
    for (const auto& a : terms_) out.terms_.push_back({a.mono * t.mono, a.coef * t.coef});
    return out;
  }

  Polynomial merge(const Polynomial& o, bool subtract) const {
    Polynomial out;
    out.terms_.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end()) {
      auto c = grlex(a->mono, b->mono);
      if (c > 0) {
        out.terms_.push_back(*a++);
      } else if (c < 0) {
        out.terms_.push_back({b->mono, subtract ? Rational(-b->coef) : b->coef});
        ++b;
      } else {
        Rational s = subtract ? Rational(a->coef - b->coef) : Rational(a->coef + b->coef);
        if (s != 0) out.terms_.push_back({a->mono, std::move(s)});
        ++a;
        ++b;
      }
    }
    for (; a != terms_.end(); ++a) out.terms_.push_back(*a);
    for (; b != o.terms_.end(); ++b)
      out.terms_.push_back({b->mono, subtract ? Rational(-b->coef) : b->coef});
    return out;
  }

  std::vector<Term> terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return Polynomial(c) * p; }

} // namespace gsv
