#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gsv/atlas.hpp"
#include "gsv/errors.hpp"
#include "gsv/json_io.hpp"
#include "gsv/repthy.hpp"
#include "gsv/variety.hpp"

namespace gsv::cli {

inline constexpr const char* kToolVersion = "gsv 0.1.0";

enum class Command { Canonical, Weights, Orbit, Sweep, Atlas };

inline const char* commandName(Command c) {
  switch (c) {
  case Command::Canonical: return "canonical";
  case Command::Weights: return "weights";
  case Command::Orbit: return "orbit";
  case Command::Sweep: return "sweep";
  case Command::Atlas: return "atlas";
  }
  return "?";
}

struct RunConfig {
  Command command = Command::Canonical;
  int r = 1;
  int s = 2; // upper bound on s for sweep
  PairScope pairScope = PairScope::All;
  std::uint64_t seed = 1;
  int sampleCount = 20;
  int timeBudgetSeconds = 600;
  std::optional<std::string> outputPath;
  std::optional<std::string> pointFile;
  bool json = false;
  bool timing = false;
  unsigned threads = 1;
  SizeBudget budget{};
};

enum class Verdict { Ok, Failed, BudgetExceeded };

inline const char* verdictName(Verdict v) {
  switch (v) {
  case Verdict::Ok: return "OK";
  case Verdict::Failed: return "FAILED";
  case Verdict::BudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

inline int exitCode(Verdict v) {
  switch (v) {
  case Verdict::Ok: return 0;
  case Verdict::Failed: return 1;
  case Verdict::BudgetExceeded: return 2;
  }
  return 1;
}

inline constexpr int kUsageExit = 64;

// Stated value vs computed value.
struct Erratum {
  std::string id;
  std::string stated;
  std::string computed;
};

inline Erratum codimensionErratum() {
  return {"dimension-wording", "codimension rs+r(s-r)",
          "rs+r(s-r) = 2rs-r^2 is the dimension of V; its codimension in C^{2rs} is r^2"};
}

inline Erratum weightCountErratum() {
  return {"tangent-weight-count", "rs+s(s-r) tangent weights",
          "dim g/h = rs+r(s-r) = 2rs-r^2 weights"};
}

inline Erratum coordinateNameErratum() {
  return {"coordinate-name", "n_{32} among solved entries", "read as y_{32}"};
}

struct Report {
  GsvSpec spec;
  Command command = Command::Canonical;
  Verdict verdict = Verdict::Ok;
  Json payload = Json::object();
  long long elapsedMs = 0;
  std::vector<Erratum> errata;
  std::vector<std::string> summary; // human-readable lines
};

// Byte-identical for identical inputs unless timing is requested.
inline Json toJson(const Report& rep, bool includeTiming) {
  Json j;
  j["toolVersion"] = kToolVersion;
  j["spec"] = {{"r", rep.spec.r}, {"s", rep.spec.s}};
  j["command"] = commandName(rep.command);
  j["verdict"] = verdictName(rep.verdict);
  j["payload"] = rep.payload;
  if (includeTiming) j["elapsedMs"] = rep.elapsedMs;
  Json errata = Json::array();
  for (const auto& e : rep.errata) errata.push_back({{"id", e.id}, {"stated", e.stated}, {"computed", e.computed}});
  j["errata"] = errata;
  return j;
}

inline std::string toText(const Report& rep) {
  std::ostringstream out;
  out << commandName(rep.command) << " GSV(" << rep.spec.r << "," << rep.spec.s << "): " << verdictName(rep.verdict)
      << "\n";
  for (const auto& line : rep.summary) out << "  " << line << "\n";
  for (const auto& e : rep.errata) out << "  erratum [" << e.id << "]: stated '" << e.stated << "'; " << e.computed << "\n";
  out << "  elapsed: " << rep.elapsedMs << " ms\n";
  return out.str();
}

inline Json indexSetJson(const IndexSet& I) { return Json(I.indices()); }

namespace detail {

inline std::optional<std::chrono::steady_clock::time_point> deadlineFor(const RunConfig& cfg) {
  return std::chrono::steady_clock::now() + std::chrono::seconds(cfg.timeBudgetSeconds);
}

inline std::uint64_t specSeed(std::uint64_t seed, const GsvSpec& spec) {
  return seed * 1000003ULL + static_cast<std::uint64_t>(spec.r) * 101ULL + static_cast<std::uint64_t>(spec.s);
}

// At seeded random points of each overlap, the determinant of the evaluated
// Jacobian equals sign * (minor_J / minor_I)^r evaluated there.
inline bool numericCrossCheck(const GsvSpec& spec, const CanonicalCertificate& cert, int samples, Sampler& rng) {
  for (const auto& pair : cert.pairs) {
    TransitionMap t = transition(spec, pair.I, pair.J);
    for (int k = 0; k < samples; ++k) {
      Point p = randomPointInCharts(spec, {pair.I, pair.J}, rng);
      Assignment at = assignmentOf(spec, p);
      Rational ratio = minorPolynomial(pair.J).evaluate(at) / minorPolynomial(pair.I).evaluate(at);
      Rational expected = pair.detSign;
      for (int e = 0; e < spec.r; ++e) expected *= ratio;
      if (det(evaluate(t.jacobian, at)) != expected) return false;
    }
  }
  return true;
}

struct CanonicalOutcome {
  Json certificate;
  bool ok = false;
  std::vector<std::string> summary;
};

inline CanonicalOutcome runCanonical(const GsvSpec& spec, const RunConfig& cfg,
                                     std::optional<std::chrono::steady_clock::time_point> deadline) {
  CertifyOptions opt;
  opt.scope = cfg.pairScope;
  opt.threads = cfg.threads;
  opt.deadline = deadline;
  CanonicalCertificate cert = certifyCanonicalTrivial(spec, opt);

  Sampler rng(specSeed(cfg.seed, spec));
  const bool numericOk = numericCrossCheck(spec, cert, cfg.sampleCount, rng);
  const bool formulaOk =
      std::all_of(cert.pairs.begin(), cert.pairs.end(), [](const auto& p) { return p.detFormulaMatched; });
  const bool ok = cert.trivial() && numericOk && formulaOk;

  CanonicalOutcome out;
  Json& c = out.certificate;
  c["spec"] = {{"r", spec.r}, {"s", spec.s}};
  Json pairs = Json::array();
  for (const auto& p : cert.pairs)
    pairs.push_back({{"I", indexSetJson(p.I)},
                     {"J", indexSetJson(p.J)},
                     {"gluing", p.gluing},
                     {"detFormulaMatched", p.detFormulaMatched},
                     {"detSign", p.detSign},
                     {"adjacent", adjacent(p.I, p.J)}});
  c["pairs"] = pairs;
  c["cocycleTriplesChecked"] = cert.cocycleTriplesChecked;
  c["cocycleOk"] = cert.cocycleOk;
  c["signCocycle"] = {{"triplesChecked", cert.signTriplesChecked}, {"ok", cert.signCocycleOk}};
  c["numericCrossCheck"] = {{"samplesPerPair", cfg.sampleCount}, {"ok", numericOk}};
  c["pairScope"] = cfg.pairScope == PairScope::All ? "all" : "adjacent";
  c["chartCount"] = rSubsets(spec.r, spec.s).size();
  c["dimension"] = dimension(spec);
  c["verdict"] = ok ? "CANONICAL_TRIVIAL" : "FAILED";
  out.ok = ok;

  std::string signs;
  for (const auto& p : cert.pairs) signs += (signs.empty() ? "" : " ") + p.I.toString() + p.J.toString() + (p.gluing > 0 ? ":+1" : ":-1");
  out.summary.push_back(std::to_string(cert.pairs.size()) + " chart pairs certified, gluing signs: " +
                        (signs.empty() ? "(none)" : signs));
  out.summary.push_back(std::to_string(cert.cocycleTriplesChecked) + " cocycle triples checked, sign cocycle " +
                        (cert.signCocycleOk ? "ok" : "FAILED"));
  out.summary.push_back(std::string("numeric cross-check: ") + (numericOk ? "ok" : "FAILED"));
  out.summary.push_back(std::string("K_V = div(sigma) = 0: ") + (ok ? "certified" : "NOT certified"));
  return out;
}

struct WeightsOutcome {
  Json report;
  bool ok = false;
  std::vector<std::string> summary;
};

inline WeightsOutcome runWeights(const GsvSpec& spec) {
  WeightsOutcome out;
  Json& j = out.report;
  j["spec"] = {{"r", spec.r}, {"s", spec.s}};
  const auto basis = tangentBasis(spec);
  j["tangentWeightCount"] = basis.size();
  CanonicalWeight cw = canonicalWeight(spec);
  j["canonicalWeight"] = cw.sum.flat();
  j["pairing"] = (cw.topLeftCancels && cw.pqReciprocal) ? "RECIPROCAL_PAIRS_OK" : "FAILED";
  const bool sigmaOk = sigmaWeightCheck(spec);
  j["sigmaWeight"] = sigmaWeight(spec).flat();
  j["sigmaWeightAgrees"] = sigmaOk;
  const bool transversal = complementIsTransversal(spec);
  j["complementTransversal"] = transversal;
  j["basePointIsWeightVector"] = basePointSupportWeights(spec).size() == 1;
  Json weights = Json::array();
  for (const auto& t : basis)
    weights.push_back({{"block", blockName(t.block)},
                       {"row", t.row},
                       {"col", t.col},
                       {"weight", t.weight.toString()},
                       {"vector", t.weight.flat()}});
  j["weights"] = weights;
  out.ok = sigmaOk && transversal;
  j["verdict"] = out.ok ? "THEOREM1_OK" : "FAILED";
  out.summary.push_back(std::to_string(basis.size()) + " tangent weights (2rs - r^2 = " +
                        std::to_string(dimension(spec)) + "), sum = " + cw.sum.toString());
  out.summary.push_back("gl(r) weights cancel in (i,j)/(j,i) pairs; P/Q weights are reciprocal");
  out.summary.push_back(std::string("sigma_{1..r} weight: ") + sigmaWeight(spec).toString() +
                        (sigmaOk ? " (agrees)" : " (DISAGREES)"));
  return out;
}

} // namespace detail

inline Report cmdCanonical(const RunConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  Report rep{GsvSpec(cfg.r, cfg.s), Command::Canonical};
  rep.errata = {codimensionErratum()};
  if (!cfg.budget.admits(rep.spec)) {
    rep.verdict = Verdict::BudgetExceeded;
    rep.payload["reason"] = "symbolic certification limited to C(s,r) <= " + std::to_string(cfg.budget.maxCharts) +
                            " charts and dimension <= " + std::to_string(cfg.budget.maxDimension);
    rep.summary.push_back(rep.payload["reason"].get<std::string>());
  } else {
    try {
      auto outcome = detail::runCanonical(rep.spec, cfg, detail::deadlineFor(cfg));
      rep.payload = outcome.certificate;
      rep.verdict = outcome.ok ? Verdict::Ok : Verdict::Failed;
      rep.summary = outcome.summary;
    } catch (const BudgetExceeded& e) {
      rep.verdict = Verdict::BudgetExceeded;
      rep.payload["reason"] = e.what();
    } catch (const Error& e) {
      rep.verdict = Verdict::Failed;
      rep.payload["error"] = e.what();
    }
  }
  rep.elapsedMs =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline Report cmdWeights(const RunConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  Report rep{GsvSpec(cfg.r, cfg.s), Command::Weights};
  rep.errata = {weightCountErratum()};
  try {
    auto outcome = detail::runWeights(rep.spec);
    rep.payload = outcome.report;
    rep.verdict = outcome.ok ? Verdict::Ok : Verdict::Failed;
    rep.summary = outcome.summary;
  } catch (const Error& e) {
    rep.verdict = Verdict::Failed;
    rep.payload["error"] = e.what();
  }
  rep.elapsedMs =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// The point is given as Point JSON; its r and s define the spec.
inline Report cmdOrbit(const RunConfig& cfg, const Json& pointJson) {
  auto start = std::chrono::steady_clock::now();
  SpecPoint sp = pointFromJson(pointJson);
  Report rep{sp.spec, Command::Orbit};
  rep.errata = {codimensionErratum()};
  const GsvSpec& spec = sp.spec;
  const Point& p = sp.point;
  Json& j = rep.payload;
  j["point"] = pointToJson(spec, p);
  RationalMatrix res = residual(spec, p);
  const bool on = res.isZero();
  j["onVariety"] = on;
  if (!on) {
    for (std::size_t i = 0; i < res.rows() && !j.contains("violated"); ++i)
      for (std::size_t k = 0; k < res.cols(); ++k)
        if (res(i, k) != 0) {
          j["violated"] = {{"row", i + 1}, {"col", k + 1}, {"residual", formatRational(res(i, k))}};
          rep.summary.push_back("XY - I has nonzero entry (" + std::to_string(i + 1) + "," + std::to_string(k + 1) +
                                ") = " + formatRational(res(i, k)));
          break;
        }
    rep.verdict = Verdict::Failed;
  } else {
    try {
      const int jr = jacobianRankAt(spec, p);
      GroupElement g = orbitWitness(spec, p);
      const bool roundTrip = act(spec, g, basePoint(spec)) == p;
      j["jacobianRank"] = jr;
      j["dimension"] = dimension(spec);
      Json charts = Json::array();
      for (const auto& I : chartsContaining(spec, p)) charts.push_back(indexSetJson(I));
      j["charts"] = charts;
      j["witness"] = {{"A", matrixToJson(g.A)}, {"B", matrixToJson(g.B)}};
      j["roundTrip"] = roundTrip;
      const bool ok = roundTrip && jr == spec.r * spec.r;
      rep.verdict = ok ? Verdict::Ok : Verdict::Failed;
      rep.summary.push_back("on variety; Jacobian rank " + std::to_string(jr) + " = r^2, local dimension " +
                            std::to_string(dimension(spec)));
      rep.summary.push_back(std::string("orbit witness g with g.v = p: ") + (roundTrip ? "verified" : "FAILED"));
    } catch (const Error& e) {
      rep.verdict = Verdict::Failed;
      j["error"] = e.what();
    }
  }
  rep.elapsedMs =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline Report cmdAtlas(const RunConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  Report rep{GsvSpec(cfg.r, cfg.s), Command::Atlas};
  rep.errata = {codimensionErratum(), coordinateNameErratum()};
  const GsvSpec& spec = rep.spec;
  if (!cfg.budget.admits(spec)) {
    rep.verdict = Verdict::BudgetExceeded;
    rep.payload["reason"] = "atlas limited to the symbolic size budget";
    rep.elapsedMs = 0;
    return rep;
  }
  bool ok = true;
  Json charts = Json::array();
  const auto atlas = chartAtlas(spec);
  for (const auto& chart : atlas) {
    Json c;
    c["I"] = indexSetJson(chart.I);
    Json coords = Json::array();
    for (const auto& v : chart.freeCoords) coords.push_back(v.name());
    c["freeCoords"] = coords;
    Json solved = Json::array();
    for (const auto& [v, e] : chart.solved)
      solved.push_back({{"var", v.name()}, {"numerator", formatPoly(e.numerator())}, {"denominator", "m" + chart.I.toString()}});
    c["solved"] = solved;
    const bool exact = chartIsExact(spec, chart);
    ok = ok && exact && chart.freeCoords.size() == static_cast<std::size_t>(dimension(spec));
    c["substitutionVanishes"] = exact;
    charts.push_back(c);
  }
  Json transitions = Json::array();
  for (std::size_t a = 0; a < atlas.size(); ++a)
    for (std::size_t b = a + 1; b < atlas.size(); ++b) {
      if (!adjacent(atlas[a].I, atlas[b].I)) continue;
      TransitionMap t = transition(spec, atlas[a], atlas[b].I);
      AdjacentBlocks blocks = adjacentBlocks(spec, t);
      ok = ok && blocks.matchesBlockForm();
      transitions.push_back({{"I", indexSetJson(t.from)},
                             {"J", indexSetJson(t.to)},
                             {"nontrivialSubstitutions", t.nontrivialEntries()},
                             {"blockForm", blocks.matchesBlockForm()},
                             {"diagonalEntrySign", blocks.dSign}});
    }
  rep.payload["dimension"] = dimension(spec);
  rep.payload["charts"] = charts;
  rep.payload["adjacentTransitions"] = transitions;
  rep.verdict = ok ? Verdict::Ok : Verdict::Failed;
  rep.summary.push_back(std::to_string(atlas.size()) + " charts, each with " + std::to_string(dimension(spec)) +
                        " free coordinates; substitution into XY - I vanishes: " + (ok ? "yes" : "NO"));
  rep.summary.push_back(std::to_string(transitions.size()) + " adjacent transitions with block form [[I,0],[C,D]]");
  rep.elapsedMs =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// 1 <= r <= s <= cfg.s. Specs outside the size budget are listed as skipped
// for the symbolic part; the weight checks run everywhere.
inline Report cmdSweep(const RunConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  Report rep{GsvSpec(1, cfg.s), Command::Sweep};
  rep.errata = {codimensionErratum(), weightCountErratum()};
  const auto deadline = detail::deadlineFor(cfg);
  Json entries = Json::array();
  std::size_t certified = 0, skipped = 0;
  rep.verdict = Verdict::Ok;
  for (int s = 1; s <= cfg.s && rep.verdict == Verdict::Ok; ++s)
    for (int r = 1; r <= s && rep.verdict == Verdict::Ok; ++r) {
      GsvSpec spec(r, s);
      Json e = {{"r", r}, {"s", s}};
      std::string stage = "weights";
      try {
        auto w = detail::runWeights(spec);
        e["weights"] = w.report["verdict"];
        e["tangentWeightCount"] = w.report["tangentWeightCount"];
        if (!w.ok) rep.verdict = Verdict::Failed;
        stage = "canonical";
        if (cfg.budget.admits(spec)) {
          auto c = detail::runCanonical(spec, cfg, deadline);
          e["canonical"] = c.certificate["verdict"];
          Json signs = Json::array();
          for (const auto& p : c.certificate["pairs"]) signs.push_back(p["gluing"]);
          e["gluingSigns"] = signs;
          e["cocycleTriplesChecked"] = c.certificate["cocycleTriplesChecked"];
          ++certified;
          if (!c.ok) rep.verdict = Verdict::Failed;
        } else {
          e["canonical"] = "SKIPPED_BUDGET";
          ++skipped;
        }
      } catch (const BudgetExceeded& ex) {
        rep.verdict = Verdict::BudgetExceeded;
        e["failure"] = {{"stage", stage}, {"message", ex.what()}};
      } catch (const Error& ex) {
        rep.verdict = Verdict::Failed;
        e["failure"] = {{"stage", stage}, {"message", ex.what()}};
      }
      entries.push_back(e);
    }
  rep.payload["bound"] = cfg.s;
  rep.payload["seed"] = cfg.seed;
  rep.payload["samples"] = cfg.sampleCount;
  rep.payload["entries"] = entries;
  rep.payload["canonicalCertified"] = certified;
  rep.payload["canonicalSkippedBudget"] = skipped;
  rep.summary.push_back(std::to_string(entries.size()) + " specs with s <= " + std::to_string(cfg.s) + "; " +
                        std::to_string(certified) + " canonical certificates, " + std::to_string(skipped) +
                        " skipped by the size budget");
  rep.elapsedMs =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

} // namespace gsv::cli
