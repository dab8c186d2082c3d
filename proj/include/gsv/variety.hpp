#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gsv/errors.hpp"
#include "gsv/localized.hpp"
#include "gsv/matrix.hpp"
#include "gsv/polynomial.hpp"

namespace gsv {

// GSV(r, s) = { (X, Y) : X is r x s, Y is s x r, XY = I_r }.
struct GsvSpec {
  int r = 1;
  int s = 1;

  GsvSpec() = default;
  GsvSpec(int r_, int s_) : r(r_), s(s_) {
    if (r < 1 || s < 1) throw InvalidSpec("r and s must be positive");
    if (r > s) throw InvalidSpec("GSV(r,s) requires r <= s, got r=" + std::to_string(r) + ", s=" + std::to_string(s));
  }

  std::size_t ur() const noexcept { return static_cast<std::size_t>(r); }
  std::size_t us() const noexcept { return static_cast<std::size_t>(s); }

  auto operator<=>(const GsvSpec&) const = default;
};

// dim V = rs + r(s-r) = 2rs - r^2; the codimension in C^{2rs} is r^2.
inline int dimension(const GsvSpec& spec) { return 2 * spec.r * spec.s - spec.r * spec.r; }

struct Point {
  RationalMatrix X; // r x s
  RationalMatrix Y; // s x r

  bool operator==(const Point&) const = default;
};

inline PolyMatrix genericX(const GsvSpec& spec) {
  PolyMatrix X(spec.ur(), spec.us());
  for (int i = 1; i <= spec.r; ++i)
    for (int j = 1; j <= spec.s; ++j) X(i - 1, j - 1) = Variable::x(i, j);
  return X;
}

inline PolyMatrix genericY(const GsvSpec& spec) {
  PolyMatrix Y(spec.us(), spec.ur());
  for (int j = 1; j <= spec.s; ++j)
    for (int i = 1; i <= spec.r; ++i) Y(j - 1, i - 1) = Variable::y(j, i);
  return Y;
}

// X entries row-major, then Y entries row-major.
inline std::vector<Variable> ambientVariables(const GsvSpec& spec) {
  std::vector<Variable> vs;
  for (int i = 1; i <= spec.r; ++i)
    for (int j = 1; j <= spec.s; ++j) vs.push_back(Variable::x(i, j));
  for (int j = 1; j <= spec.s; ++j)
    for (int i = 1; i <= spec.r; ++i) vs.push_back(Variable::y(j, i));
  return vs;
}

// Entry (i,k) is sum_j x_ij y_jk - delta_ik.
inline PolyMatrix definingEquations(const GsvSpec& spec) {
  return genericX(spec) * genericY(spec) - PolyMatrix::identity(spec.ur());
}

inline void checkShape(const GsvSpec& spec, const Point& p) {
  if (p.X.rows() != spec.ur() || p.X.cols() != spec.us() || p.Y.rows() != spec.us() || p.Y.cols() != spec.ur())
    throw ShapeMismatch("point shape does not match GSV(" + std::to_string(spec.r) + "," + std::to_string(spec.s) + ")");
}

inline RationalMatrix residual(const GsvSpec& spec, const Point& p) {
  checkShape(spec, p);
  return p.X * p.Y - RationalMatrix::identity(spec.ur());
}

inline bool contains(const GsvSpec& spec, const Point& p) { return residual(spec, p).isZero(); }

inline Assignment assignmentOf(const GsvSpec& spec, const Point& p) {
  checkShape(spec, p);
  Assignment at;
  for (int i = 1; i <= spec.r; ++i)
    for (int j = 1; j <= spec.s; ++j) {
      at[Variable::x(i, j)] = p.X(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
      at[Variable::y(j, i)] = p.Y(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1));
    }
  return at;
}

// r^2 x 2rs matrix of partial derivatives of the defining equations, columns
// in ambient variable order.
inline PolyMatrix definingJacobian(const GsvSpec& spec) {
  PolyMatrix eqs = definingEquations(spec);
  auto vars = ambientVariables(spec);
  PolyMatrix J(spec.ur() * spec.ur(), vars.size());
  for (std::size_t i = 0; i < spec.ur(); ++i)
    for (std::size_t k = 0; k < spec.ur(); ++k)
      for (std::size_t v = 0; v < vars.size(); ++v) J(i * spec.ur() + k, v) = eqs(i, k).derivative(vars[v]);
  return J;
}

inline int jacobianRankAt(const GsvSpec& spec, const Point& p) {
  if (!contains(spec, p)) throw NotOnVariety("jacobianRankAt: point does not satisfy XY = I");
  return static_cast<int>(rank(evaluate(definingJacobian(spec), assignmentOf(spec, p))));
}

// Affine patch {minor_I != 0}: the Y-rows indexed by I are solved in terms of
// all X entries and the remaining Y rows.
struct Chart {
  IndexSet I;
  std::vector<Variable> freeCoords;            // X row-major, then Y rows not in I row-major
  std::map<Variable, LocalizedElement> solved; // y_{k,c} for k in I

  int coordinateIndex(Variable v) const {
    for (std::size_t k = 0; k < freeCoords.size(); ++k)
      if (freeCoords[k] == v) return static_cast<int>(k);
    return -1;
  }
};

inline std::vector<Variable> chartCoordinates(const GsvSpec& spec, const IndexSet& I) {
  std::vector<Variable> coords;
  for (int i = 1; i <= spec.r; ++i)
    for (int j = 1; j <= spec.s; ++j) coords.push_back(Variable::x(i, j));
  for (int j = 1; j <= spec.s; ++j) {
    if (I.contains(j)) continue;
    for (int i = 1; i <= spec.r; ++i) coords.push_back(Variable::y(j, i));
  }
  return coords;
}

inline void checkIndexSet(const GsvSpec& spec, const IndexSet& I) {
  if (I.size() != spec.ur()) throw PreconditionViolation("index set " + I.toString() + " must have exactly r entries");
  for (int c : I)
    if (c > spec.s) throw PreconditionViolation("index set " + I.toString() + " exceeds s");
}

// Y_I = X_I^{-1} (I_r - X_{I^c} Y_{I^c}) via the adjugate; denominators are minor_I.
inline Chart buildChart(const GsvSpec& spec, const IndexSet& I) {
  checkIndexSet(spec, I);
  PolyMatrix X = genericX(spec), Y = genericY(spec);
  std::vector<std::size_t> rowsR, colsI, colsRest;
  for (std::size_t i = 0; i < spec.ur(); ++i) rowsR.push_back(i);
  for (int j = 1; j <= spec.s; ++j) (I.contains(j) ? colsI : colsRest).push_back(static_cast<std::size_t>(j - 1));

  PolyMatrix XI = X.submatrix(rowsR, colsI);
  PolyMatrix rhs = PolyMatrix::identity(spec.ur());
  if (!colsRest.empty()) rhs = rhs - X.submatrix(rowsR, colsRest) * Y.submatrix(colsRest, rowsR);

  AdjugateSolution sol = adjugateSolve(XI, rhs);
  if (!(sol.denominator == minorPolynomial(I)))
    throw Error("internal: adjugate denominator differs from minor " + I.toString());

  Chart chart{I, chartCoordinates(spec, I), {}};
  for (std::size_t a = 0; a < spec.ur(); ++a)
    for (std::size_t c = 0; c < spec.ur(); ++c)
      chart.solved.emplace(Variable::y(I[a], static_cast<int>(c) + 1),
                           LocalizedElement(sol.numerators(a, c), MinorExponents{{I, 1}}));
  return chart;
}

// Evaluates a polynomial after replacing some variables by localized elements.
inline LocalizedElement substitute(const Polynomial& p, const std::map<Variable, LocalizedElement>& sub) {
  LocalizedElement sum;
  for (const auto& t : p.terms()) {
    Monomial kept;
    LocalizedElement replaced(1);
    for (const auto& f : t.mono.factors()) {
      auto it = sub.find(f.var);
      if (it == sub.end()) {
        kept = kept * Monomial(f.var, f.exp);
      } else {
        for (unsigned e = 0; e < f.exp; ++e) replaced *= it->second;
      }
    }
    sum += LocalizedElement(Polynomial(kept, t.coef)) * replaced;
  }
  return sum;
}

// The defining equations with the chart's solved rows substituted in.
inline Matrix<LocalizedElement> substitutedEquations(const GsvSpec& spec, const Chart& chart) {
  PolyMatrix eqs = definingEquations(spec);
  return eqs.map([&](const Polynomial& p) { return substitute(p, chart.solved); });
}

inline bool chartIsExact(const GsvSpec& spec, const Chart& chart) {
  auto m = substitutedEquations(spec, chart);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).isZero()) return false;
  return true;
}

// One chart per r-subset of {1..s}, lexicographic.
inline std::vector<Chart> chartAtlas(const GsvSpec& spec) {
  std::vector<Chart> charts;
  for (const auto& I : rSubsets(spec.r, spec.s)) charts.push_back(buildChart(spec, I));
  return charts;
}

// Charts of the atlas containing p (minor_I(p) != 0).
inline std::vector<IndexSet> chartsContaining(const GsvSpec& spec, const Point& p) {
  std::vector<IndexSet> out;
  for (const auto& I : rSubsets(spec.r, spec.s))
    if (minor(p.X, I) != 0) out.push_back(I);
  return out;
}

// (X, X^T) for X with orthonormal rows; r = 1 gives the sphere case.
inline Point stiefelEmbed(const RationalMatrix& X) {
  if (X.rows() == 0 || X.rows() > X.cols()) throw ShapeMismatch("stiefelEmbed: X must be r x s with 1 <= r <= s");
  if (!(X * X.transpose() == RationalMatrix::identity(X.rows())))
    throw NotOrthonormalRows("stiefelEmbed: X X^T != I");
  return {X, X.transpose()};
}

} // namespace gsv
