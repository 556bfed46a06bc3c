#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "ilim/error.hpp"
#include "ilim/maps.hpp"

using namespace ilim;

TEST(TentMap, Evaluation) {
  EXPECT_DOUBLE_EQ(tent_eval(TentMap(2.0), 0.25), 0.5);
  EXPECT_DOUBLE_EQ(tent_eval(TentMap(2.0), 0.5), 1.0);
  EXPECT_NEAR(tent_eval(TentMap(1.8), 0.9), 0.18, 1e-15);
  EXPECT_THROW(tent_eval(TentMap(1.8), 1.5), DomainError);
  EXPECT_THROW(tent_eval(TentMap(1.8), -0.1), DomainError);
}

TEST(TentMap, SlopeRange) {
  EXPECT_THROW(TentMap(1.0), DomainError);
  EXPECT_THROW(TentMap(2.1), DomainError);
  EXPECT_NO_THROW(TentMap(2.0));
  EXPECT_FALSE(TentMap(1.3).non_renormalizable());
  EXPECT_THROW(TentMap(1.3).require_non_renormalizable(), PreconditionError);
  EXPECT_TRUE(TentMap(1.5).non_renormalizable());
}

TEST(TentMap, Preimages) {
  auto p = TentMap(2.0).preimages(0.0);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], 0.0);
  EXPECT_EQ(p[1], 1.0);

  p = TentMap(2.0).preimages(1.0);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], 0.5);
  EXPECT_TRUE(p.double_root());

  EXPECT_TRUE(TentMap(1.8).preimages(1.0).empty());
  EXPECT_TRUE(tent_preimages(TentMap(1.8), 1.0).empty());
}

TEST(QuadraticMap, Evaluation) {
  EXPECT_DOUBLE_EQ(quad_eval(QuadraticMap(2.0), 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quad_eval(QuadraticMap(2.0), 1.0), -1.0);
  EXPECT_DOUBLE_EQ(quad_eval(QuadraticMap(1.5), 0.5), 0.625);
  EXPECT_THROW(quad_eval(QuadraticMap(1.5), 1.5), DomainError);
  EXPECT_THROW(QuadraticMap(0.0), DomainError);
  EXPECT_THROW(QuadraticMap(2.5), DomainError);
}

TEST(QuadraticMap, PreimagesAndFixedPoint) {
  const QuadraticMap q(1.7);
  for (double y : {-0.69, -0.3, 0.0, 0.4, 0.99}) {
    const auto pre = q.preimages(y);
    ASSERT_EQ(pre.size(), 2u) << y;
    for (double x : pre) EXPECT_NEAR(q.apply(x), y, 1e-12);
  }
  EXPECT_EQ(q.preimages(1.0).size(), 1u);
  EXPECT_TRUE(q.preimages(1.2).empty());
  EXPECT_TRUE(q.preimages(-0.8).empty());  // would need |x| > 1
  const double b = q.fixed_point();
  EXPECT_NEAR(q.apply(b), b, 1e-14);
  EXPECT_LT(q.derivative(b), 0.0);
}

TEST(CriticalOrbit, Examples) {
  const auto t2 = critical_orbit(TentMap(2.0), 3);
  EXPECT_EQ(t2, (std::vector<double>{1.0, 0.0, 0.0}));
  const auto t18 = critical_orbit(TentMap(1.8), 2);
  ASSERT_EQ(t18.size(), 2u);
  EXPECT_NEAR(t18[0], 0.9, 1e-15);
  EXPECT_NEAR(t18[1], 0.18, 1e-15);
  EXPECT_EQ(critical_orbit(QuadraticMap(1.0), 4), (std::vector<double>{1.0, 0.0, 1.0, 0.0}));
}

TEST(Itinerary, Examples) {
  EXPECT_EQ(itinerary(TentMap(2.0), 0.5, 4).str(), "CRLL");
  EXPECT_EQ(itinerary(TentMap(1.8), 0.9, 1).str(), "R");
  EXPECT_EQ(itinerary(QuadraticMap(2.0), 0.0, 3).str(), "CRL");
}

TEST(CoreInterval, Examples) {
  auto I = core_interval(TentMap(2.0));
  EXPECT_DOUBLE_EQ(I.lo, 0.0);
  EXPECT_DOUBLE_EQ(I.hi, 1.0);
  I = core_interval(TentMap(1.8));
  EXPECT_NEAR(I.lo, 0.18, 1e-15);
  EXPECT_NEAR(I.hi, 0.9, 1e-15);
  I = core_interval(TentMap(std::sqrt(2.0)));
  EXPECT_NEAR(I.lo, std::sqrt(2.0) - 1.0, 1e-12);
  EXPECT_NEAR(I.hi, std::sqrt(2.0) / 2.0, 1e-12);
}

TEST(TentMapProperty, SymmetryAboutCritical) {
  props::Gen g(11);
  for (int i = 0; i < 1000; ++i) {
    const TentMap t(g.slope());
    const double x = g.uniform(0.0, 1.0);
    EXPECT_NEAR(t.eval(x), t.eval(1.0 - x), 1e-15);
  }
}

TEST(TentMapProperty, PreimagesMapBack) {
  props::Gen g(12);
  for (int i = 0; i < 1000; ++i) {
    const TentMap t(g.slope());
    const double y = g.uniform(0.0, t.critical_value());
    const auto pre = t.preimages(y);
    ASSERT_FALSE(pre.empty());
    for (double x : pre) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
      EXPECT_NEAR(t.eval(x), y, 4 * std::numeric_limits<double>::epsilon());
    }
  }
}

TEST(TentMapProperty, CoreIsInvariant) {
  for (double s : {1.5, 1.8, 2.0}) {
    const TentMap t(s);
    const Interval core = core_interval(t);
    for (int i = 0; i <= 10000; ++i) {
      const double x = core.lo + core.length() * i / 10000.0;
      EXPECT_TRUE(core.contains(t.eval(x), 1e-14)) << s << " " << x;
    }
  }
}

TEST(TentMapProperty, CriticalOrbitStaysInCore) {
  for (double s : {1.5, 1.8, 2.0}) {
    const TentMap t(s);
    for (double x : critical_orbit(t, 200)) {
      EXPECT_GE(x, -1e-12);
      EXPECT_LE(x, t.critical_value() + 1e-12);
    }
  }
}
