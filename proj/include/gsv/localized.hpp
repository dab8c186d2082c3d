#pragma once

#include <algorithm>
#include <compare>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsv/errors.hpp"
#include "gsv/poly_io.hpp"
#include "gsv/polynomial.hpp"

namespace gsv {

// Sorted distinct 1-based column indices i1 < ... < ir. Labels a minor of the
// generic r x s matrix X and, equally, the Y-rows solved in a chart.
class IndexSet {
public:
  IndexSet() = default;
  IndexSet(std::initializer_list<int> idx) : IndexSet(std::vector<int>(idx)) {}
  explicit IndexSet(std::vector<int> idx) : idx_(std::move(idx)) {
    std::sort(idx_.begin(), idx_.end());
    if (std::adjacent_find(idx_.begin(), idx_.end()) != idx_.end())
      throw PreconditionViolation("index set has repeated entries");
    if (!idx_.empty() && idx_.front() < 1)
      throw PreconditionViolation("index set entries are 1-based");
  }

  std::size_t size() const noexcept { return idx_.size(); }
  int operator[](std::size_t k) const { return idx_[k]; }
  auto begin() const noexcept { return idx_.begin(); }
  auto end() const noexcept { return idx_.end(); }
  const std::vector<int>& indices() const noexcept { return idx_; }

  bool contains(int i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }
  // Position of i inside the set, or -1.
  int position(int i) const {
    auto it = std::lower_bound(idx_.begin(), idx_.end(), i);
    return (it != idx_.end() && *it == i) ? static_cast<int>(it - idx_.begin()) : -1;
  }

  std::string toString() const {
    std::string out = "{";
    for (std::size_t k = 0; k < idx_.size(); ++k) out += (k ? "," : "") + std::to_string(idx_[k]);
    return out + "}";
  }

  auto operator<=>(const IndexSet&) const = default;

private:
  std::vector<int> idx_;
};

// All r-subsets of {1..s} in lexicographic order.
inline std::vector<IndexSet> rSubsets(int r, int s) {
  std::vector<IndexSet> out;
  if (r < 0 || r > s) return out;
  std::vector<int> cur(static_cast<std::size_t>(r));
  std::iota(cur.begin(), cur.end(), 1);
  while (true) {
    out.emplace_back(cur);
    int k = r - 1;
    while (k >= 0 && cur[static_cast<std::size_t>(k)] == s - r + k + 1) --k;
    if (k < 0) break;
    ++cur[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < r; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

// Sign of the permutation given as a sequence of distinct integers.
inline int permutationSign(std::vector<int> p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (p[i] != static_cast<int>(i)) {
      std::swap(p[i], p[static_cast<std::size_t>(p[i])]);
      sign = -sign;
    }
  }
  return sign;
}

// minor_I = det of the generic X restricted to rows 1..|I| and columns I,
// by the Leibniz expansion.
inline Polynomial minorPolynomial(const IndexSet& I) {
  const int r = static_cast<int>(I.size());
  std::vector<int> perm(static_cast<std::size_t>(r));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Polynomial::Term> terms;
  do {
    Monomial m;
    for (int row = 0; row < r; ++row)
      m = m * Monomial(Variable::x(row + 1, I[static_cast<std::size_t>(perm[static_cast<std::size_t>(row)])]));
    terms.push_back({m, Rational(permutationSign(perm))});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Polynomial::fromTerms(std::move(terms));
}

using MinorExponents = std::map<IndexSet, unsigned>;

inline Polynomial expandMinorProduct(const MinorExponents& e) {
  Polynomial out(1);
  for (const auto& [I, k] : e)
    if (k > 0) out *= minorPolynomial(I).pow(k);
  return out;
}

// Recognises p = c * prod minor_I^{e_I}. Only minors that use every X row
// appearing in p are candidates, which matches how minors arise here.
inline std::optional<std::pair<Rational, MinorExponents>> factorAsMinorProduct(const Polynomial& p) {
  if (p.isZero()) return std::nullopt;
  int maxRow = 0, maxCol = 0;
  for (const auto& v : p.variables()) {
    if (v.isY()) return std::nullopt;
    maxRow = std::max(maxRow, v.row);
    maxCol = std::max(maxCol, v.col);
  }
  MinorExponents factors;
  Polynomial rest = p;
  if (!rest.isConstant()) {
    if (rest.totalDegree() % static_cast<unsigned>(maxRow) != 0) return std::nullopt;
    for (const auto& I : rSubsets(maxRow, maxCol)) {
      Polynomial m = minorPolynomial(I);
      while (!rest.isConstant()) {
        auto q = rest.tryExactDiv(m);
        if (!q) break;
        rest = std::move(*q);
        ++factors[I];
      }
      if (rest.isConstant()) break;
    }
  }
  if (!rest.isConstant()) return std::nullopt;
  return std::make_pair(rest.constantValue(), std::move(factors));
}

// Element of Q[x, y] localised at the minors: numerator / prod minor_I^{e_I}.
// The denominator is kept as a formal product; equality is decided by
// cross-multiplication, so no gcd machinery is needed.
class LocalizedElement {
public:
  LocalizedElement() = default;
  LocalizedElement(int c) : num_(c) {}
  LocalizedElement(const Rational& c) : num_(c) {}
  LocalizedElement(Polynomial p) : num_(std::move(p)) {}
  LocalizedElement(Variable v) : num_(v) {}
  LocalizedElement(Polynomial num, MinorExponents den) : num_(std::move(num)), den_(std::move(den)) {
    normalizeExponents();
  }

  // minor_I^k for any integer k.
  static LocalizedElement minorPower(const IndexSet& I, int k) {
    if (k >= 0) return LocalizedElement(minorPolynomial(I).pow(static_cast<unsigned>(k)));
    return LocalizedElement(Polynomial(1), MinorExponents{{I, static_cast<unsigned>(-k)}});
  }

  const Polynomial& numerator() const noexcept { return num_; }
  const MinorExponents& denominatorFactors() const noexcept { return den_; }
  Polynomial denominator() const { return expandMinorProduct(den_); }

  bool isZero() const noexcept { return num_.isZero(); }
  bool isPolynomial() const noexcept { return den_.empty(); }

  LocalizedElement operator-() const { return {-num_, den_}; }

  LocalizedElement operator+(const LocalizedElement& o) const { return combine(o, false); }
  LocalizedElement operator-(const LocalizedElement& o) const { return combine(o, true); }

  LocalizedElement operator*(const LocalizedElement& o) const {
    if (isZero() || o.isZero()) return {};
    MinorExponents d = den_;
    for (const auto& [I, k] : o.den_) d[I] += k;
    return {num_ * o.num_, std::move(d)};
  }

  // Division is only closed when the divisor's numerator is, up to a
  // constant, a product of minors.
  LocalizedElement operator/(const LocalizedElement& o) const {
    if (o.isZero()) throw PreconditionViolation("division by zero");
    auto f = factorAsMinorProduct(o.num_);
    if (!f) throw NonMinorDenominator("divisor numerator " + formatPoly(o.num_) + " is not a product of minors");
    MinorExponents d = den_;
    for (const auto& [I, k] : f->second) d[I] += k;
    Polynomial n = num_ * o.denominator();
    return {Rational(1 / f->first) * n, std::move(d)};
  }

  // this * minor_I^k; positive powers first cancel formal denominator factors.
  LocalizedElement timesMinorPower(const IndexSet& I, int k) const {
    if (isZero() || k == 0) return *this;
    MinorExponents d = den_;
    if (k < 0) {
      d[I] += static_cast<unsigned>(-k);
      return {num_, std::move(d)};
    }
    auto up = static_cast<unsigned>(k);
    if (auto it = d.find(I); it != d.end()) {
      unsigned c = std::min(up, it->second);
      up -= c;
      if ((it->second -= c) == 0) d.erase(it);
    }
    return {up == 0 ? num_ : num_ * minorPolynomial(I).pow(up), std::move(d)};
  }

  LocalizedElement& operator+=(const LocalizedElement& o) { return *this = *this + o; }
  LocalizedElement& operator-=(const LocalizedElement& o) { return *this = *this - o; }
  LocalizedElement& operator*=(const LocalizedElement& o) { return *this = *this * o; }

  // a/Da == b/Db  iff  a * (Db/g) == b * (Da/g), g the formal common part.
  bool operator==(const LocalizedElement& o) const {
    if (den_ == o.den_) return num_ == o.num_;
    if (isZero() || o.isZero()) return isZero() && o.isZero();
    MinorExponents da = den_, db = o.den_;
    for (auto& [I, k] : da) {
      auto it = db.find(I);
      if (it == db.end()) continue;
      unsigned g = std::min(k, it->second);
      k -= g;
      it->second -= g;
    }
    return num_ * expandMinorProduct(db) == o.num_ * expandMinorProduct(da);
  }

  // Quotient rule on the formal denominator. Minors whose derivative vanishes
  // (e.g. all minors for a Y variable) contribute nothing and are not touched.
  LocalizedElement derivative(Variable v) const {
    std::vector<std::pair<IndexSet, unsigned>> moving;
    for (const auto& [I, k] : den_)
      if (k > 0 && !minorPolynomial(I).derivative(v).isZero()) moving.emplace_back(I, k);
    if (moving.empty()) return {num_.derivative(v), den_};
    // d(N / prod m^e) = (N' prod m - N sum e_k m_k' prod_{l!=k} m_l) / (prod m^{e} * prod m)
    std::vector<Polynomial> ms;
    for (const auto& [I, k] : moving) ms.push_back(minorPolynomial(I));
    Polynomial all(1);
    for (const auto& m : ms) all *= m;
    Polynomial top = num_.derivative(v) * all;
    for (std::size_t k = 0; k < moving.size(); ++k) {
      Polynomial others(1);
      for (std::size_t l = 0; l < moving.size(); ++l)
        if (l != k) others *= ms[l];
      top -= Rational(moving[k].second) * (num_ * ms[k].derivative(v) * others);
    }
    MinorExponents d = den_;
    for (const auto& [I, k] : moving) d[I] += 1;
    return {std::move(top), std::move(d)};
  }

  // Cancels minors from the numerator while they divide it exactly.
  LocalizedElement reduced() const {
    if (isZero()) return {};
    Polynomial n = num_;
    MinorExponents d = den_;
    for (auto& [I, k] : d) {
      if (k == 0) continue;
      Polynomial m = minorPolynomial(I);
      while (k > 0) {
        auto q = n.tryExactDiv(m);
        if (!q) break;
        n = std::move(*q);
        --k;
      }
    }
    return {std::move(n), std::move(d)};
  }

  Rational evaluate(const Assignment& at) const {
    std::map<IndexSet, Rational> minors;
    return evaluate(at, minors);
  }

  // `minors` caches minor values across calls at the same point.
  Rational evaluate(const Assignment& at, std::map<IndexSet, Rational>& minors) const {
    Rational den = 1;
    for (const auto& [I, k] : den_) {
      auto it = minors.find(I);
      if (it == minors.end()) it = minors.emplace(I, minorPolynomial(I).evaluate(at)).first;
      const Rational& m = it->second;
      if (m == 0) throw PreconditionViolation("minor " + I.toString() + " vanishes at the evaluation point");
      for (unsigned j = 0; j < k; ++j) den *= m;
    }
    return num_.evaluate(at) / den;
  }

  std::string toString() const {
    if (den_.empty()) return formatPoly(num_);
    std::string out = "(" + formatPoly(num_) + ")/(";
    bool first = true;
    for (const auto& [I, k] : den_) {
      if (!first) out += "*";
      first = false;
      out += "m" + I.toString();
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out + ")";
  }

private:
  void normalizeExponents() {
    if (num_.isZero()) {
      den_.clear();
      return;
    }
    std::erase_if(den_, [](const auto& kv) { return kv.second == 0; });
  }

  LocalizedElement combine(const LocalizedElement& o, bool subtract) const {
    if (den_ == o.den_) return {subtract ? num_ - o.num_ : num_ + o.num_, den_};
    if (o.isZero()) return *this;
    if (isZero()) return subtract ? -o : o;
    MinorExponents lcm = den_;
    for (const auto& [I, k] : o.den_) lcm[I] = std::max(lcm[I], k);
    auto lift = [&](const LocalizedElement& a) {
      MinorExponents extra;
      for (const auto& [I, k] : lcm) {
        auto it = a.den_.find(I);
        unsigned have = it == a.den_.end() ? 0 : it->second;
        if (k > have) extra[I] = k - have;
      }
      return a.num_ * expandMinorProduct(extra);
    };
    Polynomial a = lift(*this), b = lift(o);
    return {subtract ? a - b : a + b, std::move(lcm)};
  }

  Polynomial num_;
  MinorExponents den_;
};

} // namespace gsv
