#include <gtest/gtest.h>

#include "gsv/repthy.hpp"

using namespace gsv;

namespace {

const std::vector<GsvSpec> kSpecs{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};

RestrictedCharacter rc(std::vector<long> alpha, std::vector<long> delta) { return {std::move(alpha), std::move(delta)}; }

} // namespace

TEST(Action, IdentityAndComposition) {
  for (const auto& spec : kSpecs) {
    Sampler rng(100);
    Point p = randomPoint(spec, rng);
    EXPECT_EQ(act(spec, identityElement(spec), p), p);
    for (int k = 0; k < 10; ++k) {
      GroupElement g = randomGroupElement(spec, rng), h = randomGroupElement(spec, rng);
      EXPECT_EQ(act(spec, compose(g, h), p), act(spec, g, act(spec, h, p)));
      EXPECT_TRUE(contains(spec, act(spec, g, p)));
    }
  }
}

TEST(Action, SingularElementRejected) {
  GsvSpec spec(1, 2);
  GroupElement g{RationalMatrix(1, 1), RationalMatrix::identity(2)};
  EXPECT_THROW(act(spec, g, basePoint(spec)), SingularGroupElement);
}

TEST(BasePoint, Examples) {
  Point v = basePoint(GsvSpec(1, 2));
  EXPECT_EQ(v.X, (RationalMatrix{{Rational(1), Rational(0)}}));
  EXPECT_EQ(v.Y, (RationalMatrix{{Rational(1)}, {Rational(0)}}));
  GsvSpec spec(2, 3);
  Point w = basePoint(spec);
  EXPECT_EQ(w.X, (RationalMatrix{{Rational(1), Rational(0), Rational(0)}, {Rational(0), Rational(1), Rational(0)}}));
  EXPECT_EQ(w.Y, w.X.transpose());
  EXPECT_EQ(minor(w.X, {1, 2}), 1);
}

TEST(Stabilizer, Examples) {
  GsvSpec spec(2, 3);
  Sampler rng(101);
  for (int k = 0; k < 10; ++k) EXPECT_TRUE(inStabilizer(spec, randomStabilizerElement(spec, rng)));
  GroupElement corner{RationalMatrix::identity(2), RationalMatrix::identity(3)};
  corner.B(0, 2) = 1;
  EXPECT_FALSE(inStabilizer(spec, corner));
  GroupElement mismatch = randomStabilizerElement(spec, rng);
  mismatch.B(0, 0) += 1;
  if (det(mismatch.B) == 0) mismatch.B(0, 0) += 1;
  EXPECT_FALSE(inStabilizer(spec, mismatch));
}

TEST(Stabilizer, CharacterisationsAgree) {
  for (const auto& spec : kSpecs) {
    Sampler rng(102);
    for (int k = 0; k < 20; ++k) {
      GroupElement h = randomStabilizerElement(spec, rng);
      EXPECT_EQ(act(spec, h, basePoint(spec)), basePoint(spec));
      EXPECT_TRUE(hasStabilizerBlockForm(spec, h));
      GroupElement g = randomNonStabilizerElement(spec, rng);
      EXPECT_FALSE(fixesBasePoint(spec, g));
      EXPECT_FALSE(inStabilizer(spec, g));
    }
  }
}

TEST(OrbitWitness, WorkedExample) {
  GsvSpec spec(1, 2);
  Point p{RationalMatrix{{Rational(2), Rational(3)}}, RationalMatrix{{Rational(1, 2)}, {Rational(0)}}};
  GroupElement g = orbitWitness(spec, p);
  EXPECT_EQ(g.A, RationalMatrix::identity(1));
  EXPECT_EQ(g.B, (RationalMatrix{{Rational(1, 2), Rational(3)}, {Rational(0), Rational(-2)}}));
  RationalMatrix inv = inverse(g.B);
  EXPECT_EQ(inv(0, 0), 2);
  EXPECT_EQ(inv(0, 1), 3);
}

TEST(OrbitWitness, BasePointAndRoundTrips) {
  for (const auto& spec : kSpecs) {
    GroupElement g = orbitWitness(spec, basePoint(spec));
    EXPECT_EQ(act(spec, g, basePoint(spec)), basePoint(spec));
    Sampler rng(103);
    for (int k = 0; k < 30; ++k) {
      Point p = randomPoint(spec, rng);
      EXPECT_EQ(act(spec, orbitWitness(spec, p), basePoint(spec)), p);
    }
  }
}

TEST(OrbitWitness, OffVariety) {
  GsvSpec spec(1, 2);
  EXPECT_THROW(orbitWitness(spec, Point{basePoint(spec).X, RationalMatrix(2, 1)}), NotOnVariety);
}

TEST(Weyl, IdentityAndTransposition) {
  GsvSpec spec(1, 2);
  Point p{RationalMatrix{{Rational(2), Rational(3)}}, RationalMatrix{{Rational(1, 2)}, {Rational(0)}}};
  EXPECT_EQ(weylAct(spec, WeylElement{{1}, {1, 2}}, p), p);
  Point q = weylAct(spec, WeylElement{{1}, {2, 1}}, p);
  EXPECT_EQ(q.X, (RationalMatrix{{Rational(3), Rational(2)}}));
  EXPECT_EQ(q.Y, (RationalMatrix{{Rational(0)}, {Rational(1, 2)}}));
  EXPECT_TRUE(contains(spec, q));
  EXPECT_THROW(weylAct(spec, WeylElement{{1}, {1, 1}}, p), PreconditionViolation);
}

TEST(Weyl, AgreesWithPermutationMatrices) {
  for (const auto& spec : kSpecs) {
    Sampler rng(104);
    for (int k = 0; k < 20; ++k) {
      Point p = randomPoint(spec, rng);
      WeylElement w = randomWeylElement(spec, rng);
      Point q = weylAct(spec, w, p);
      EXPECT_TRUE(contains(spec, q));
      EXPECT_EQ(q, act(spec, asGroupElement(w), p));
    }
  }
}

TEST(Weights, Coordinates) {
  GsvSpec spec(1, 2);
  Character x11 = coordinateWeight(spec, Variable::x(1, 1));
  EXPECT_EQ(x11.alpha, (std::vector<long>{1}));
  EXPECT_EQ(x11.beta, (std::vector<long>{-1, 0}));
  Character y11 = coordinateWeight(spec, Variable::y(1, 1));
  EXPECT_EQ(y11.alpha, (std::vector<long>{-1}));
  EXPECT_EQ(y11.beta, (std::vector<long>{1, 0}));
  GsvSpec big(2, 4);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 4; ++j) {
      Character a = coordinateWeight(big, Variable::x(i, j)), b = coordinateWeight(big, Variable::y(j, i));
      for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(a.alpha[k] + b.alpha[k], 0);
      for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(a.beta[k] + b.beta[k], 0);
    }
}

TEST(Weights, Restriction) {
  GsvSpec spec(1, 2);
  EXPECT_TRUE(restrictCharacter(coordinateWeight(spec, Variable::x(1, 1)), spec).isZero());
  EXPECT_EQ(restrictCharacter(coordinateWeight(spec, Variable::x(1, 2)), spec), rc({1}, {-1}));
  EXPECT_TRUE(restrictCharacter(Character{{0}, {0, 0}}, spec).isZero());
  EXPECT_EQ(rc({1}, {-1}).toString(), "a1-d1");
  EXPECT_EQ(RestrictedCharacter::zero(spec).toString(), "0");
}

TEST(Weights, TorusScalesCoordinates) {
  // (diag(a), diag(b)) scales x_ij by a_i/b_j and y_ji by b_j/a_i.
  GsvSpec spec(2, 3);
  Sampler rng(105);
  for (int k = 0; k < 10; ++k) {
    GroupElement t{RationalMatrix(2, 2), RationalMatrix(3, 3)};
    for (std::size_t i = 0; i < 2; ++i) t.A(i, i) = rng.uniformInt(1, 5);
    for (std::size_t j = 0; j < 3; ++j) t.B(j, j) = rng.uniformInt(1, 5);
    Point p = randomPoint(spec, rng), q = act(spec, t, p);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_EQ(q.X(i, j), p.X(i, j) * t.A(i, i) / t.B(j, j));
        EXPECT_EQ(q.Y(j, i), p.Y(j, i) * t.B(j, j) / t.A(i, i));
      }
  }
}

TEST(TangentWeights, LineCase) {
  GsvSpec spec(1, 2);
  WeightMultiset expected{{rc({0}, {0}), 1}, {rc({1}, {-1}), 1}, {rc({-1}, {1}), 1}};
  EXPECT_EQ(tangentWeights(spec), expected);
}

TEST(TangentWeights, SquareAndTwoByThree) {
  GsvSpec sq(3, 3);
  auto basis = tangentBasis(sq);
  EXPECT_EQ(basis.size(), 9U);
  for (const auto& t : basis) EXPECT_EQ(t.block, TangentBlock::TopLeft);
  GsvSpec spec(2, 3);
  auto b = tangentBasis(spec);
  EXPECT_EQ(b.size(), 8U);
  EXPECT_EQ(std::count_if(b.begin(), b.end(), [](auto& t) { return t.block == TangentBlock::P; }), 2);
  EXPECT_EQ(std::count_if(b.begin(), b.end(), [](auto& t) { return t.block == TangentBlock::Q; }), 2);
  EXPECT_EQ(std::count_if(b.begin(), b.end(), [](auto& t) { return t.block == TangentBlock::TopLeft; }), 4);
}

TEST(TangentWeights, Transversal) {
  for (int s = 1; s <= 5; ++s)
    for (int r = 1; r <= s; ++r) EXPECT_TRUE(complementIsTransversal(GsvSpec(r, s)));
}

TEST(CanonicalWeight, WeightSumSweep) {
  for (int s = 1; s <= 6; ++s)
    for (int r = 1; r <= s; ++r) {
      GsvSpec spec(r, s);
      CanonicalWeight cw = canonicalWeight(spec);
      EXPECT_TRUE(cw.sum.isZero());
      EXPECT_EQ(static_cast<int>(cw.count), 2 * r * s - r * r);
      EXPECT_TRUE(cw.topLeftCancels);
      EXPECT_TRUE(cw.pqReciprocal);
      EXPECT_TRUE(sigmaWeightCheck(spec));
    }
  EXPECT_EQ(canonicalWeight(GsvSpec(3, 5)).count, 21U);
  EXPECT_EQ(canonicalWeight(GsvSpec(4, 6)).count, 32U);
}

TEST(SigmaWeight, Examples) {
  EXPECT_TRUE(sigmaWeight(GsvSpec(1, 2)).isZero());
  EXPECT_TRUE(sigmaWeight(GsvSpec(2, 3)).isZero());
  auto minorWeight = restrictedWeight(GsvSpec(2, 3), minorPolynomial({1, 2}));
  ASSERT_TRUE(minorWeight.has_value());
  EXPECT_TRUE(minorWeight->isZero());
  EXPECT_FALSE(restrictedWeight(GsvSpec(1, 2), Polynomial(Variable::x(1, 1)) + Polynomial(Variable::x(1, 2))).has_value());
}

TEST(BasePoint, IsNotAWeightVector) {
  EXPECT_GT(basePointSupportWeights(GsvSpec(2, 3)).size(), 1U);
  EXPECT_GT(basePointSupportWeights(GsvSpec(1, 1)).size(), 1U);
}
