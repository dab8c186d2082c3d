#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gsv/errors.hpp"
#include "gsv/matrix.hpp"
#include "gsv/random.hpp"
#include "gsv/variety.hpp"

namespace gsv {

// (A, B) in GL(r) x GL(s).
struct GroupElement {
  RationalMatrix A;
  RationalMatrix B;

  bool operator==(const GroupElement&) const = default;
};

inline void checkGroupElement(const GsvSpec& spec, const GroupElement& g) {
  if (g.A.rows() != spec.ur() || !g.A.isSquare() || g.B.rows() != spec.us() || !g.B.isSquare())
    throw ShapeMismatch("group element shape does not match GL(r) x GL(s)");
  if (det(g.A) == 0 || det(g.B) == 0) throw SingularGroupElement("group element is not invertible");
}

inline GroupElement identityElement(const GsvSpec& spec) {
  return {RationalMatrix::identity(spec.ur()), RationalMatrix::identity(spec.us())};
}

inline GroupElement compose(const GroupElement& g, const GroupElement& h) { return {g.A * h.A, g.B * h.B}; }

// (A, B) . (X, Y) = (A X B^{-1}, B Y A^{-1}).
inline Point act(const GsvSpec& spec, const GroupElement& g, const Point& p) {
  checkShape(spec, p);
  checkGroupElement(spec, g);
  return {g.A * p.X * inverse(g.B), g.B * p.Y * inverse(g.A)};
}

// v = ([I_r | 0], [I_r ; 0]).
inline Point basePoint(const GsvSpec& spec) {
  Point v{RationalMatrix(spec.ur(), spec.us()), RationalMatrix(spec.us(), spec.ur())};
  for (std::size_t i = 0; i < spec.ur(); ++i) {
    v.X(i, i) = 1;
    v.Y(i, i) = 1;
  }
  return v;
}

inline bool fixesBasePoint(const GsvSpec& spec, const GroupElement& g) {
  const Point v = basePoint(spec);
  return act(spec, g, v) == v;
}

// B = [[A, 0], [0, D]].
inline bool hasStabilizerBlockForm(const GsvSpec& spec, const GroupElement& g) {
  checkGroupElement(spec, g);
  for (std::size_t i = 0; i < spec.us(); ++i)
    for (std::size_t j = 0; j < spec.us(); ++j) {
      const bool topLeft = i < spec.ur() && j < spec.ur();
      const bool bottomRight = i >= spec.ur() && j >= spec.ur();
      if (topLeft && g.B(i, j) != g.A(i, j)) return false;
      if (!topLeft && !bottomRight && g.B(i, j) != 0) return false;
    }
  return true;
}

// Both characterisations of Stab(v) are computed and must agree.
inline bool inStabilizer(const GsvSpec& spec, const GroupElement& g) {
  const bool byAction = fixesBasePoint(spec, g);
  const bool byForm = hasStabilizerBlockForm(spec, g);
  if (byAction != byForm) throw Error("internal: stabilizer characterisations disagree");
  return byForm;
}

// g = (I_r, [Y | Z]) with the columns of Z spanning ker X; then g . v = p
// because X [Y | Z] = [I | 0].
inline GroupElement orbitWitness(const GsvSpec& spec, const Point& p) {
  if (!contains(spec, p)) throw NotOnVariety("orbitWitness: point does not satisfy XY = I");
  auto kernel = kernelBasis(p.X);
  if (kernel.size() != spec.us() - spec.ur()) throw DegenerateComplement("orbitWitness: X does not have rank r");
  GroupElement g{RationalMatrix::identity(spec.ur()), RationalMatrix(spec.us(), spec.us())};
  for (std::size_t i = 0; i < spec.us(); ++i) {
    for (std::size_t c = 0; c < spec.ur(); ++c) g.B(i, c) = p.Y(i, c);
    for (std::size_t k = 0; k < kernel.size(); ++k) g.B(i, spec.ur() + k) = kernel[k][i];
  }
  if (det(g.B) == 0) throw DegenerateComplement("orbitWitness: [Y | ker X] is singular");
  if (!(act(spec, g, basePoint(spec)) == p)) throw Error("internal: orbit witness does not reproduce the point");
  return g;
}

// (sigma, tau) in S_r x S_s, stored as 1-based images.
struct WeylElement {
  std::vector<int> sigma;
  std::vector<int> tau;
};

inline void checkPermutation(const std::vector<int>& p, std::size_t n) {
  if (p.size() != n) throw ShapeMismatch("permutation has the wrong length");
  std::vector<int> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i)
    if (sorted[i] != static_cast<int>(i) + 1) throw PreconditionViolation("not a permutation");
}

// P e_j = e_{perm(j)}.
inline RationalMatrix permutationMatrix(const std::vector<int>& perm) {
  RationalMatrix P(perm.size(), perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) P(static_cast<std::size_t>(perm[j] - 1), j) = 1;
  return P;
}

inline GroupElement asGroupElement(const WeylElement& w) { return {permutationMatrix(w.sigma), permutationMatrix(w.tau)}; }

// S_r permutes rows of X and columns of Y, S_s permutes columns of X and rows
// of Y: X'(sigma(i), tau(j)) = X(i, j), Y'(tau(j), sigma(i)) = Y(j, i).
inline Point weylAct(const GsvSpec& spec, const WeylElement& w, const Point& p) {
  checkShape(spec, p);
  checkPermutation(w.sigma, spec.ur());
  checkPermutation(w.tau, spec.us());
  Point out{RationalMatrix(spec.ur(), spec.us()), RationalMatrix(spec.us(), spec.ur())};
  for (std::size_t i = 0; i < spec.ur(); ++i)
    for (std::size_t j = 0; j < spec.us(); ++j) {
      const auto si = static_cast<std::size_t>(w.sigma[i] - 1), tj = static_cast<std::size_t>(w.tau[j] - 1);
      out.X(si, tj) = p.X(i, j);
      out.Y(tj, si) = p.Y(j, i);
    }
  return out;
}

// Torus character a^alpha b^beta of T = diag(a_1..a_r) x diag(b_1..b_s).
struct Character {
  std::vector<long> alpha;
  std::vector<long> beta;

  bool operator==(const Character&) const = default;
  auto operator<=>(const Character&) const = default;
};

// Character of T_H = {(diag(a), diag(a, d))}: alpha over a_1..a_r, delta
// over d_1..d_{s-r}. The zero vector is the trivial weight.
struct RestrictedCharacter {
  std::vector<long> alpha;
  std::vector<long> delta;

  static RestrictedCharacter zero(const GsvSpec& spec) {
    return {std::vector<long>(spec.ur(), 0), std::vector<long>(spec.us() - spec.ur(), 0)};
  }

  bool isZero() const {
    return std::all_of(alpha.begin(), alpha.end(), [](long v) { return v == 0; }) &&
           std::all_of(delta.begin(), delta.end(), [](long v) { return v == 0; });
  }

  RestrictedCharacter operator+(const RestrictedCharacter& o) const {
    RestrictedCharacter out = *this;
    for (std::size_t i = 0; i < alpha.size(); ++i) out.alpha[i] += o.alpha[i];
    for (std::size_t k = 0; k < delta.size(); ++k) out.delta[k] += o.delta[k];
    return out;
  }
  RestrictedCharacter operator-() const {
    RestrictedCharacter out = *this;
    for (auto& v : out.alpha) v = -v;
    for (auto& v : out.delta) v = -v;
    return out;
  }
  RestrictedCharacter operator-(const RestrictedCharacter& o) const { return *this + (-o); }
  RestrictedCharacter operator*(long k) const {
    RestrictedCharacter out = *this;
    for (auto& v : out.alpha) v *= k;
    for (auto& v : out.delta) v *= k;
    return out;
  }

  // alpha followed by delta.
  std::vector<long> flat() const {
    std::vector<long> out = alpha;
    out.insert(out.end(), delta.begin(), delta.end());
    return out;
  }

  // e.g. "a1-d1", "0"
  std::string toString() const {
    std::string out;
    auto emit = [&](long c, const std::string& name) {
      if (c == 0) return;
      if (c < 0) out += "-";
      else if (!out.empty()) out += "+";
      if (c != 1 && c != -1) out += std::to_string(c < 0 ? -c : c) + "*";
      out += name;
    };
    for (std::size_t i = 0; i < alpha.size(); ++i) emit(alpha[i], "a" + std::to_string(i + 1));
    for (std::size_t k = 0; k < delta.size(); ++k) emit(delta[k], "d" + std::to_string(k + 1));
    return out.empty() ? "0" : out;
  }

  bool operator==(const RestrictedCharacter&) const = default;
  auto operator<=>(const RestrictedCharacter&) const = default;
};

using WeightMultiset = std::map<RestrictedCharacter, std::size_t>;

// x_ij has weight a_i / b_j, y_ji has weight b_j / a_i.
inline Character coordinateWeight(const GsvSpec& spec, Variable v) {
  Character c{std::vector<long>(spec.ur(), 0), std::vector<long>(spec.us(), 0)};
  if (v.isX()) {
    c.alpha[static_cast<std::size_t>(v.row - 1)] = 1;
    c.beta[static_cast<std::size_t>(v.col - 1)] = -1;
  } else {
    c.alpha[static_cast<std::size_t>(v.col - 1)] = -1;
    c.beta[static_cast<std::size_t>(v.row - 1)] = 1;
  }
  return c;
}

// b_i -> a_i for i <= r, b_{r+k} -> d_k.
inline RestrictedCharacter restrictCharacter(const Character& c, const GsvSpec& spec) {
  RestrictedCharacter out = RestrictedCharacter::zero(spec);
  for (std::size_t i = 0; i < spec.ur(); ++i) out.alpha[i] = c.alpha[i] + c.beta[i];
  for (std::size_t k = 0; k + spec.ur() < spec.us(); ++k) out.delta[k] = c.beta[spec.ur() + k];
  return out;
}

inline RestrictedCharacter restrictedWeight(const GsvSpec& spec, const Monomial& m) {
  RestrictedCharacter w = RestrictedCharacter::zero(spec);
  for (const auto& f : m.factors()) w = w + restrictCharacter(coordinateWeight(spec, f.var), spec) * f.exp;
  return w;
}

// T_H-weight of p when every term has the same weight.
inline std::optional<RestrictedCharacter> restrictedWeight(const GsvSpec& spec, const Polynomial& p) {
  if (p.isZero()) return std::nullopt;
  RestrictedCharacter w = restrictedWeight(spec, p.leadingTerm().mono);
  for (const auto& t : p.terms())
    if (!(restrictedWeight(spec, t.mono) == w)) return std::nullopt;
  return w;
}

// The full-torus weights occurring in the support of v. More than one means
// v is not a weight vector.
inline std::set<Character> basePointSupportWeights(const GsvSpec& spec) {
  std::set<Character> ws;
  for (int i = 1; i <= spec.r; ++i) {
    ws.insert(coordinateWeight(spec, Variable::x(i, i)));
    ws.insert(coordinateWeight(spec, Variable::y(i, i)));
  }
  return ws;
}

enum class TangentBlock { TopLeft, P, Q };

inline const char* blockName(TangentBlock b) {
  switch (b) {
  case TangentBlock::TopLeft: return "gl_r";
  case TangentBlock::P: return "P";
  case TangentBlock::Q: return "Q";
  }
  return "?";
}

// Basis vector of the complement {(C, 0)} + {(0, [[0, P], [Q, 0]])} of h in g.
struct TangentWeight {
  TangentBlock block;
  int row; // 1-based position inside gl(r) or gl(s)
  int col;
  RestrictedCharacter weight;
};

// Ad-weights: E_ij in gl(r) has a_i/a_j, E_ij in gl(s) has b_i/b_j.
inline std::vector<TangentWeight> tangentBasis(const GsvSpec& spec) {
  std::vector<TangentWeight> out;
  for (int i = 1; i <= spec.r; ++i)
    for (int j = 1; j <= spec.r; ++j) {
      Character c{std::vector<long>(spec.ur(), 0), std::vector<long>(spec.us(), 0)};
      c.alpha[static_cast<std::size_t>(i - 1)] += 1;
      c.alpha[static_cast<std::size_t>(j - 1)] -= 1;
      out.push_back({TangentBlock::TopLeft, i, j, restrictCharacter(c, spec)});
    }
  auto glS = [&](TangentBlock b, int i, int j) {
    Character c{std::vector<long>(spec.ur(), 0), std::vector<long>(spec.us(), 0)};
    c.beta[static_cast<std::size_t>(i - 1)] += 1;
    c.beta[static_cast<std::size_t>(j - 1)] -= 1;
    out.push_back({b, i, j, restrictCharacter(c, spec)});
  };
  for (int i = 1; i <= spec.r; ++i)
    for (int j = spec.r + 1; j <= spec.s; ++j) glS(TangentBlock::P, i, j);
  for (int i = spec.r + 1; i <= spec.s; ++i)
    for (int j = 1; j <= spec.r; ++j) glS(TangentBlock::Q, i, j);
  return out;
}

inline WeightMultiset tangentWeights(const GsvSpec& spec) {
  WeightMultiset ms;
  for (const auto& t : tangentBasis(spec)) ++ms[t.weight];
  return ms;
}

// h + complement = g: stacks bases of h = {(C, diag(C, D))} and of the
// complement as vectors in Q^{r^2 + s^2} and checks full rank.
inline bool complementIsTransversal(const GsvSpec& spec) {
  const std::size_t r = spec.ur(), s = spec.us(), n = r * r + s * s;
  std::vector<std::vector<Rational>> rows;
  auto glR = [&](std::size_t i, std::size_t j) { return i * r + j; };
  auto glS = [&](std::size_t i, std::size_t j) { return r * r + i * s + j; };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<Rational> v(n, Rational(0));
      v[glR(i, j)] = 1;
      v[glS(i, j)] = 1;
      rows.push_back(v);
    }
  for (std::size_t i = r; i < s; ++i)
    for (std::size_t j = r; j < s; ++j) {
      std::vector<Rational> v(n, Rational(0));
      v[glS(i, j)] = 1;
      rows.push_back(v);
    }
  for (const auto& t : tangentBasis(spec)) {
    std::vector<Rational> v(n, Rational(0));
    const auto i = static_cast<std::size_t>(t.row - 1), j = static_cast<std::size_t>(t.col - 1);
    v[t.block == TangentBlock::TopLeft ? glR(i, j) : glS(i, j)] = 1;
    rows.push_back(v);
  }
  RationalMatrix m(rows.size(), n);
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < n; ++b) m(a, b) = rows[a][b];
  return rows.size() == n && rank(m) == n;
}

struct CanonicalWeight {
  RestrictedCharacter sum;
  std::size_t count = 0;
  bool topLeftCancels = false; // (i,j) and (j,i) opposite, diagonal trivial
  bool pqReciprocal = false;   // every P weight has its negative in Q
};

// Sum of the tangent weights, with the cancellation pattern verified
// block by block. Throws if any part fails.
inline CanonicalWeight canonicalWeight(const GsvSpec& spec) {
  const auto basis = tangentBasis(spec);
  CanonicalWeight out{RestrictedCharacter::zero(spec), basis.size(), true, true};
  std::map<std::pair<int, int>, RestrictedCharacter> topLeft, pBlock, qBlock;
  WeightMultiset pSet, qNeg;
  for (const auto& t : basis) {
    out.sum = out.sum + t.weight;
    if (t.block == TangentBlock::TopLeft) topLeft[{t.row, t.col}] = t.weight;
    if (t.block == TangentBlock::P) {
      pBlock[{t.row, t.col}] = t.weight;
      ++pSet[t.weight];
    }
    if (t.block == TangentBlock::Q) {
      qBlock[{t.row, t.col}] = t.weight;
      ++qNeg[-t.weight];
    }
  }
  for (const auto& [ij, w] : topLeft) {
    if (ij.first == ij.second) out.topLeftCancels = out.topLeftCancels && w.isZero();
    else out.topLeftCancels = out.topLeftCancels && w == -topLeft.at({ij.second, ij.first});
  }
  for (const auto& [ij, w] : pBlock) {
    auto it = qBlock.find({ij.second, ij.first});
    out.pqReciprocal = out.pqReciprocal && it != qBlock.end() && w == -it->second;
  }
  out.pqReciprocal = out.pqReciprocal && pSet == qNeg;

  if (out.count != static_cast<std::size_t>(dimension(spec)))
    throw NonTrivialCanonicalWeight("tangent weight count " + std::to_string(out.count) + " differs from 2rs - r^2");
  if (!out.sum.isZero()) throw NonTrivialCanonicalWeight("canonical weight is " + out.sum.toString());
  if (!out.topLeftCancels) throw NonTrivialCanonicalWeight("gl(r) weights do not cancel in pairs");
  if (!out.pqReciprocal) throw NonTrivialCanonicalWeight("P and Q weights are not reciprocal");
  return out;
}

// T_H-weight of sigma = dz_1 ^ ... ^ dz_N / minor^r on the chart {1..r}, read
// on the dual side: -(sum of coordinate weights - r * weight(minor)).
inline RestrictedCharacter sigmaWeight(const GsvSpec& spec) {
  std::vector<int> first(spec.ur());
  for (int i = 0; i < spec.r; ++i) first[static_cast<std::size_t>(i)] = i + 1;
  const IndexSet I(first);
  RestrictedCharacter w = RestrictedCharacter::zero(spec);
  for (const auto& v : chartCoordinates(spec, I)) w = w + restrictCharacter(coordinateWeight(spec, v), spec);
  auto minorWeight = restrictedWeight(spec, minorPolynomial(I));
  if (!minorWeight) throw NonTrivialSigmaWeight("minor " + I.toString() + " is not a T_H weight vector");
  return -(w - *minorWeight * spec.r);
}

// sigma has trivial weight and agrees with the tangent-space route.
inline bool sigmaWeightCheck(const GsvSpec& spec) {
  RestrictedCharacter w = sigmaWeight(spec);
  if (!w.isZero()) throw NonTrivialSigmaWeight("sigma has weight " + w.toString());
  return w == canonicalWeight(spec).sum;
}

// ----- seeded generators -----

inline GroupElement randomGroupElement(const GsvSpec& spec, Sampler& rng) {
  return {rng.invertible(spec.ur()), rng.invertible(spec.us())};
}

inline Point randomPoint(const GsvSpec& spec, Sampler& rng) {
  return act(spec, randomGroupElement(spec, rng), basePoint(spec));
}

// (A, diag(A, D)).
inline GroupElement randomStabilizerElement(const GsvSpec& spec, Sampler& rng) {
  GroupElement g{rng.invertible(spec.ur()), RationalMatrix(spec.us(), spec.us())};
  RationalMatrix D = rng.invertible(spec.us() - spec.ur());
  for (std::size_t i = 0; i < spec.ur(); ++i)
    for (std::size_t j = 0; j < spec.ur(); ++j) g.B(i, j) = g.A(i, j);
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j) g.B(spec.ur() + i, spec.ur() + j) = D(i, j);
  return g;
}

// Invertible elements outside the block form: alternately a stabilizer
// element with one corrupted entry, and an unconstrained random element.
inline GroupElement randomNonStabilizerElement(const GsvSpec& spec, Sampler& rng) {
  for (bool perturb = rng.uniformInt(0, 1) == 1;; perturb = !perturb) {
    GroupElement g = perturb ? randomStabilizerElement(spec, rng) : randomGroupElement(spec, rng);
    if (perturb) {
      std::size_t i = static_cast<std::size_t>(rng.uniformInt(0, spec.s - 1));
      std::size_t j = static_cast<std::size_t>(rng.uniformInt(0, spec.s - 1));
      g.B(i, j) += rng.uniformInt(1, 3);
    }
    if (det(g.B) != 0 && !hasStabilizerBlockForm(spec, g)) return g;
  }
}

// Random orbit point lying in every listed chart.
inline Point randomPointInCharts(const GsvSpec& spec, const std::vector<IndexSet>& charts, Sampler& rng) {
  while (true) {
    Point p = randomPoint(spec, rng);
    bool ok = true;
    for (const auto& I : charts) ok = ok && minor(p.X, I) != 0;
    if (ok) return p;
  }
}

inline WeylElement randomWeylElement(const GsvSpec& spec, Sampler& rng) {
  return {rng.permutation(spec.r), rng.permutation(spec.s)};
}

} // namespace gsv
