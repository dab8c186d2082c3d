#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gsv/errors.hpp"
#include "gsv/localized.hpp"
#include "gsv/matrix.hpp"
#include "gsv/variety.hpp"

namespace gsv {

// Coordinates of chart J written in the coordinates of chart I, on the formal
// overlap minor_I != 0, minor_J != 0.
struct TransitionMap {
  IndexSet from; // I
  IndexSet to;   // J
  std::vector<Variable> fromCoords;
  std::vector<Variable> toCoords;
  std::vector<LocalizedElement> substitution; // aligned with toCoords
  SymMatrix jacobian;                         // d(toCoords) / d(fromCoords)

  std::size_t nontrivialEntries() const {
    std::size_t n = 0;
    for (std::size_t k = 0; k < toCoords.size(); ++k)
      if (!(substitution[k].isPolynomial() && substitution[k].numerator() == Polynomial(toCoords[k]))) ++n;
    return n;
  }
};

inline bool adjacent(const IndexSet& I, const IndexSet& J) {
  if (I.size() != J.size() || I == J) return false;
  std::size_t common = 0;
  for (int i : I) common += J.contains(i) ? 1 : 0;
  return common + 1 == I.size();
}

inline TransitionMap transition(const GsvSpec& spec, const Chart& chartI, const IndexSet& J) {
  checkIndexSet(spec, J);
  if (chartI.I == J) throw PreconditionViolation("transition: charts must differ");
  TransitionMap t{chartI.I, J, chartI.freeCoords, chartCoordinates(spec, J), {}, {}};
  for (const auto& v : t.toCoords) {
    if (v.isY() && chartI.I.contains(v.row)) t.substitution.push_back(chartI.solved.at(v));
    else t.substitution.emplace_back(v);
  }
  const std::size_t n = t.toCoords.size();
  t.jacobian = SymMatrix(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t.jacobian(a, b) = t.substitution[a].derivative(t.fromCoords[b]);
  return t;
}

inline TransitionMap transition(const GsvSpec& spec, const IndexSet& I, const IndexSet& J) {
  if (I == J) throw PreconditionViolation("transition: charts must differ");
  return transition(spec, buildChart(spec, I), J);
}

inline LocalizedElement jacobianDet(const TransitionMap& t) { return det(t.jacobian); }

// (minor_J / minor_I)^r
inline LocalizedElement minorRatioPower(const GsvSpec& spec, const IndexSet& I, const IndexSet& J) {
  return LocalizedElement::minorPower(J, spec.r) * LocalizedElement::minorPower(I, -spec.r);
}

// +1 / -1 if value == +-reference, 0 otherwise.
inline int signAgainst(const LocalizedElement& value, const LocalizedElement& reference) {
  if (value == reference) return 1;
  if (value == -reference) return -1;
  return 0;
}

// Shape of the Jacobian for charts differing in one index, after moving the
// shared coordinates first: [[Id, 0], [C, D]] with D = d * Id_r, d = +-minor_J/minor_I.
struct AdjacentBlocks {
  bool identityTopLeft = false;
  bool zeroTopRight = false;
  bool diagonalD = false;
  LocalizedElement dEntry;
  int dSign = 0;       // d == dSign * minor_J / minor_I
  int reorderSign = 1; // det(jacobian) = reorderSign * det(reordered)
  SymMatrix C;
  SymMatrix D;

  bool matchesBlockForm() const { return identityTopLeft && zeroTopRight && diagonalD && dSign != 0; }
};

inline AdjacentBlocks adjacentBlocks(const GsvSpec& spec, const TransitionMap& t) {
  if (!adjacent(t.from, t.to)) throw PreconditionViolation("adjacentBlocks: charts are not adjacent");
  const std::size_t n = t.toCoords.size(), r = spec.ur();
  std::vector<std::size_t> rowOrder, colOrder, rowTail, colTail;
  for (std::size_t a = 0; a < n; ++a) {
    const auto& v = t.toCoords[a];
    (v.isY() && t.from.contains(v.row) ? rowTail : rowOrder).push_back(a);
  }
  for (std::size_t b = 0; b < n; ++b) {
    const auto& v = t.fromCoords[b];
    (v.isY() && t.to.contains(v.row) ? colTail : colOrder).push_back(b);
  }
  const std::size_t shared = rowOrder.size();
  rowOrder.insert(rowOrder.end(), rowTail.begin(), rowTail.end());
  colOrder.insert(colOrder.end(), colTail.begin(), colTail.end());

  AdjacentBlocks out;
  out.reorderSign = permutationSign(std::vector<int>(rowOrder.begin(), rowOrder.end())) *
                    permutationSign(std::vector<int>(colOrder.begin(), colOrder.end()));
  SymMatrix R = t.jacobian.submatrix(rowOrder, colOrder);

  std::vector<std::size_t> head, tail;
  for (std::size_t k = 0; k < shared; ++k) head.push_back(k);
  for (std::size_t k = shared; k < n; ++k) tail.push_back(k);
  out.identityTopLeft = R.submatrix(head, head) == SymMatrix::identity(shared);
  out.zeroTopRight = R.submatrix(head, tail).isZero();
  out.C = R.submatrix(tail, head);
  out.D = R.submatrix(tail, tail);

  out.dEntry = out.D(0, 0).reduced();
  out.diagonalD = true;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const auto& e = out.D(i, j);
      if (i == j ? !(e == out.dEntry) : !e.isZero()) out.diagonalD = false;
    }
  out.dSign = signAgainst(out.dEntry, LocalizedElement::minorPower(t.to, 1) * LocalizedElement::minorPower(t.from, -1));
  return out;
}

struct GluingCertificate {
  IndexSet I;
  IndexSet J;
  LocalizedElement jacobianDet;
  int gluing = 0;                 // sigma_J = gluing * sigma_I on the overlap
  bool detFormulaMatched = false; // jacobianDet == +-(minor_J/minor_I)^r
  int detSign = 0;
};

// det * minor_I^r / minor_J^r, which must be a unit.
inline int gluingFromDet(const GsvSpec& spec, const IndexSet& I, const IndexSet& J, const LocalizedElement& jdet) {
  LocalizedElement g = jdet.timesMinorPower(I, spec.r).timesMinorPower(J, -spec.r).reduced();
  if (g == LocalizedElement(1)) return 1;
  if (g == LocalizedElement(-1)) return -1;
  throw NotUnit("gluing factor for " + I.toString() + " -> " + J.toString() + " is not +-1: " + g.toString());
}

inline GluingCertificate certifyPair(const GsvSpec& spec, const Chart& chartI, const IndexSet& J) {
  TransitionMap t = transition(spec, chartI, J);
  GluingCertificate c{chartI.I, J, jacobianDet(t), 0, false, 0};
  c.detSign = signAgainst(c.jacobianDet, minorRatioPower(spec, chartI.I, J));
  c.detFormulaMatched = c.detSign != 0;
  c.gluing = gluingFromDet(spec, chartI.I, J, c.jacobianDet);
  return c;
}

inline int gluingFactor(const GsvSpec& spec, const IndexSet& I, const IndexSet& J) {
  if (I == J) throw PreconditionViolation("gluingFactor: charts must differ");
  return certifyPair(spec, buildChart(spec, I), J).gluing;
}

// g_IJ g_JK g_KI == 1 for g_AB = (minor_A / minor_B)^r, evaluated through the
// localized arithmetic and decided by cross-multiplication.
inline bool cartierCocycle(const GsvSpec& spec, const IndexSet& I, const IndexSet& J, const IndexSet& K) {
  if (I == J || J == K || I == K) throw PreconditionViolation("cartierCocycle: index sets must be distinct");
  checkIndexSet(spec, I);
  checkIndexSet(spec, J);
  checkIndexSet(spec, K);
  auto g = [&](const LocalizedElement& acc, const IndexSet& A, const IndexSet& B) {
    return acc.timesMinorPower(A, spec.r).timesMinorPower(B, -spec.r);
  };
  return g(g(g(LocalizedElement(1), I, J), J, K), K, I).reduced() == LocalizedElement(1);
}

enum class PairScope { Adjacent, All };

struct CertifyOptions {
  PairScope scope = PairScope::All;
  unsigned threads = 1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  bool checkCocycleTriples = true;
};

struct CanonicalCertificate {
  GsvSpec spec;
  std::vector<GluingCertificate> pairs; // lexicographic in (I, J), I < J
  std::size_t cocycleTriplesChecked = 0;
  bool cocycleOk = true;
  std::size_t signTriplesChecked = 0;
  bool signCocycleOk = true;

  bool allUnits() const {
    return std::all_of(pairs.begin(), pairs.end(), [](const auto& p) { return p.gluing == 1 || p.gluing == -1; });
  }
  bool trivial() const { return allUnits() && cocycleOk && signCocycleOk; }
};

namespace detail {

// Runs fn(0..n-1) on up to `threads` workers; rethrows the exception of the
// lowest failing index.
inline void parallelFor(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

} // namespace detail

// Certifies sigma_J = +-sigma_I on every selected chart pair, the Cartier
// cocycle on every chart triple, and the sign cocycle on every triple whose
// three pairs were certified.
inline CanonicalCertificate certifyCanonicalTrivial(const GsvSpec& spec, const CertifyOptions& opt = {}) {
  const auto subsets = rSubsets(spec.r, spec.s);
  auto checkDeadline = [&] {
    if (opt.deadline && std::chrono::steady_clock::now() > *opt.deadline)
      throw BudgetExceeded("time budget exhausted during canonical certification");
  };

  std::vector<Chart> charts(subsets.size());
  detail::parallelFor(subsets.size(), opt.threads, [&](std::size_t k) {
    checkDeadline();
    charts[k] = buildChart(spec, subsets[k]);
  });

  std::vector<std::pair<std::size_t, std::size_t>> todo;
  for (std::size_t a = 0; a < subsets.size(); ++a)
    for (std::size_t b = a + 1; b < subsets.size(); ++b)
      if (opt.scope == PairScope::All || adjacent(subsets[a], subsets[b])) todo.emplace_back(a, b);

  CanonicalCertificate cert{spec, std::vector<GluingCertificate>(todo.size()), 0, true, 0, true};
  detail::parallelFor(todo.size(), opt.threads, [&](std::size_t k) {
    checkDeadline();
    cert.pairs[k] = certifyPair(spec, charts[todo[k].first], subsets[todo[k].second]);
  });

  std::map<std::pair<IndexSet, IndexSet>, int> eps;
  for (const auto& p : cert.pairs) eps[{p.I, p.J}] = p.gluing;
  for (std::size_t a = 0; a < subsets.size(); ++a)
    for (std::size_t b = a + 1; b < subsets.size(); ++b)
      for (std::size_t c = b + 1; c < subsets.size(); ++c) {
        const auto &I = subsets[a], &J = subsets[b], &K = subsets[c];
        if (opt.checkCocycleTriples) {
          checkDeadline();
          ++cert.cocycleTriplesChecked;
          if (!cartierCocycle(spec, I, J, K)) cert.cocycleOk = false;
        }
        auto ij = eps.find({I, J}), jk = eps.find({J, K}), ik = eps.find({I, K});
        if (ij == eps.end() || jk == eps.end() || ik == eps.end()) continue;
        // eps_KI = 1 / eps_IK = eps_IK for a unit.
        ++cert.signTriplesChecked;
        if (ij->second * jk->second * ik->second != 1) cert.signCocycleOk = false;
      }
  return cert;
}

// Size budget for symbolic certification.
struct SizeBudget {
  std::size_t maxCharts = 15;
  int maxDimension = 24;

  bool admits(const GsvSpec& spec) const {
    return rSubsets(spec.r, spec.s).size() <= maxCharts && dimension(spec) <= maxDimension;
  }
};

} // namespace gsv
