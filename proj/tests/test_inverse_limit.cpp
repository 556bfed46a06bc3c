#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "ilim/error.hpp"
#include "ilim/inverse_limit.hpp"

using namespace ilim;

TEST(BackwardPoint, Validate) {
  EXPECT_TRUE(validate(BackwardPoint::zero(1.8, 30)));
  EXPECT_TRUE(validate(BackwardPoint(1.8, {0.25, 0.45, 0.81}), 1e-9));
  EXPECT_FALSE(validate(BackwardPoint(1.8, {0.3, 0.9, 0.3}), 1e-9));
  EXPECT_FALSE(validate(BackwardPoint(1.8, {0.5, 0.9, 0.18, 0.324, 0.5832, 0.75}), 1e-9));
  EXPECT_THROW(BackwardPoint(2.5, {0.1}), DomainError);
}

TEST(Metric, Examples) {
  const BackwardPoint x(2.0, {0.25, 0.5, 1.0});
  EXPECT_EQ(metric(x, x), 0.0);

  std::vector<double> coords(21);
  for (int k = 0; k <= 20; ++k) coords[20 - k] = 0.4 * std::pow(1.8, -k);
  const BackwardPoint y(1.8, coords);
  double expected = 0.0;
  for (int k = 0; k <= 20; ++k) expected += 0.4 * std::pow(3.6, -k);
  EXPECT_NEAR(metric(BackwardPoint::zero(1.8, 20), y), expected, 1e-14);
  EXPECT_NEAR(expected, 0.5538, 1e-4);

  EXPECT_THROW(metric(BackwardPoint::zero(1.8, 3), BackwardPoint::zero(1.8, 4)), PreconditionError);
  EXPECT_THROW(metric(BackwardPoint::zero(1.8, 3), BackwardPoint::zero(1.7, 3)), PreconditionError);
}

TEST(Shift, Examples) {
  EXPECT_EQ(shift(BackwardPoint::zero(1.7, 4)), BackwardPoint::zero(1.7, 5));
  const BackwardPoint x(2.0, {0.25, 0.5, 1.0});
  EXPECT_EQ(shift(x), BackwardPoint(2.0, {0.25, 0.5, 1.0, 0.0}));
  EXPECT_EQ(unshift(shift(x)), x);
  EXPECT_EQ(unshift(x), BackwardPoint(2.0, {0.25, 0.5}));
  EXPECT_THROW(unshift(BackwardPoint(2.0, {0.3})), PreconditionError);
}

TEST(Projection, Examples) {
  EXPECT_EQ(projection(BackwardPoint::zero(1.9, 6), 4), 0.0);
  const BackwardPoint x(2.0, {0.25, 0.5, 1.0});
  EXPECT_EQ(projection(x, 1), 0.5);
  EXPECT_THROW(projection(x, 5), PreconditionError);
  EXPECT_EQ(truncate(x, 1), BackwardPoint(2.0, {0.5, 1.0}));
}

TEST(PLevel, Examples) {
  // x_{-p-2} = c with p = 1: coordinates oldest first x_{-4}, ..., x_0.
  const double s = 1.8;
  std::vector<double> c{0.5};
  for (int k = 0; k < 3; ++k) c.push_back(TentMap(s).apply(c.back()));
  const BackwardPoint x(s, {0.5 / s, 0.5, c[1], c[2], c[3]});
  const auto l = p_level(x, 1);
  ASSERT_TRUE(l);
  EXPECT_EQ(*l, Level::finite(2));

  const auto inf = p_level(BackwardPoint::zero(s, 10), 3);
  ASSERT_TRUE(inf);
  EXPECT_TRUE(inf->is_infinite());
  EXPECT_EQ(inf->str(), "inf");
  EXPECT_THROW(inf->value(), PreconditionError);

  EXPECT_FALSE(p_level(BackwardPoint(2.0, {0.1, 0.2, 0.4}), 0));
  EXPECT_EQ(*p_level(BackwardPoint(2.0, {0.25, 0.5, 1.0}), 1), Level::finite(0));
  EXPECT_FALSE(p_level(BackwardPoint(s, {0.1, 0.18}), 0));
}

TEST(FoldingPattern, ArcToSalient) {
  EXPECT_EQ(arc_to_salient(2.0, 1).str(), "∞ 0 1");
  EXPECT_EQ(arc_to_salient(1.8, 2).str(), "∞ 0 1 0 2");
  for (double s : {1.6, 1.8, 2.0}) {
    for (int n = 1; n <= 10; ++n) {
      const FoldingPattern fp = arc_to_salient(s, n);
      EXPECT_TRUE(fp.entries.front().is_infinite());
      EXPECT_EQ(fp.entries.back(), Level::finite(n)) << s << " " << n;
      EXPECT_TRUE(fp.alternates());
    }
  }
}

TEST(FoldingPattern, Prefix) {
  for (double s : {1.5, 1.6, 1.8, 2.0}) {
    EXPECT_EQ(folding_pattern_prefix(s, 7).str(), "∞ 0 1 0 2 0 1") << s;
    EXPECT_EQ(folding_pattern_prefix(s, 2).str("inf"), "inf 0");
  }
}

TEST(FoldingPattern, ParseRoundTrip) {
  const FoldingPattern fp = arc_to_salient(1.8, 5);
  EXPECT_EQ(parse_folding_pattern(fp.str()), fp);
  EXPECT_EQ(parse_folding_pattern(fp.str("inf")), fp);
  EXPECT_EQ(fp.prefix(3).str(), "∞ 0 1");
}

TEST(FoldingPattern, ArcGrowsByPrefix) {
  // The arc [0-bar, s_n] is an initial segment of [0-bar, s_{n+1}].
  for (double s : {1.6, 1.8, 2.0}) {
    for (int n = 1; n <= 8; ++n) {
      const FoldingPattern a = arc_to_salient(s, n);
      const FoldingPattern b = arc_to_salient(s, n + 1);
      ASSERT_GT(b.size(), a.size());
      EXPECT_EQ(b.prefix(a.size()), a) << s << " " << n;
    }
  }
}

TEST(FoldingPattern, FullTentPalindrome) {
  // For s = 2 the arc to s_{n+1} folds back over the arc to s_n:
  // FP[0-bar, s_{n+1}] = FP[0-bar, s_n], then the interior entries reversed,
  // then n+1.
  for (int n = 1; n <= 8; ++n) {
    const auto a = arc_to_salient(2.0, n).entries;
    std::vector<Level> expected = a;
    for (std::size_t i = a.size() - 2; i >= 1; --i) expected.push_back(a[i]);
    expected.push_back(Level::finite(n + 1));
    EXPECT_EQ(arc_to_salient(2.0, n + 1).entries, expected) << n;
  }
}

TEST(Salient, PositionsAndLevels) {
  const std::size_t p = 3;
  for (double s : {1.6, 1.8, 2.0}) {
    const int n = 10;
    const auto pos = salient_positions(s, n);
    ASSERT_EQ(pos.size(), static_cast<std::size_t>(n));
    const auto pts = arc_p_points(s, n);
    for (int i = 1; i <= n; ++i) {
      // Closed form: the first solution of T^{n-i}(t) = c from the left.
      EXPECT_NEAR(pos[i - 1], 0.5 * std::pow(s, -(n - i)), 1e-12);
      const BackwardPoint x = arc_point(s, pos[i - 1], p + n, p + n + 5);
      EXPECT_TRUE(validate(x, 1e-9));
      const auto l = p_level(x, p, 1e-9);
      ASSERT_TRUE(l);
      EXPECT_EQ(*l, Level::finite(i));
      EXPECT_NEAR(projection(x, p + i), 0.5, 1e-9);
      for (const auto& r : pts) {
        if (r.position < pos[i - 1] - 1e-12) {
          EXPECT_LT(r.level.value(), i);
        }
      }
    }
  }
}

TEST(Salient, Example) {
  const auto pos = salient_positions(1.8, 4);
  EXPECT_NEAR(pos[0], 0.0857339, 1e-7);
  EXPECT_NEAR(pos[3], 0.5, 1e-15);
}

TEST(PLevelProperty, LevelSetsProjectTogether) {
  // Members of E_{p,l} share pi_p = c_l.
  const std::size_t p = 2;
  for (double s : {1.6, 1.8, 2.0}) {
    const int n = 8;
    const auto c = critical_orbit(TentMap(s), n);
    for (const auto& r : arc_p_points(s, n)) {
      const BackwardPoint x = arc_point(s, r.position, p + n, p + n + 4);
      const int l = r.level.value();
      const double expected = l == 0 ? 0.5 : c[static_cast<std::size_t>(l - 1)];
      EXPECT_NEAR(projection(x, p), expected, 1e-9) << s << " level " << l;
    }
  }
}

TEST(PLevelProperty, ShiftRaisesLevel) {
  props::Gen g(21);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const double s = g.slope();
    const std::size_t p = static_cast<std::size_t>(g.integer(0, 4));
    const int l = g.integer(0, 8);
    const std::size_t depth = p + static_cast<std::size_t>(l) + 6;
    // Plant c at x_{-p-l} and extend backwards along random branches.
    std::vector<double> newest_first{0.5};
    for (std::size_t k = p + l; k < depth; ++k) {
      const double y = newest_first.back();
      const double right = 1.0 - y / s;
      newest_first.push_back(g.coin() && right <= 0.5 * s ? right : y / s);
    }
    std::vector<double> coords(newest_first.rbegin(), newest_first.rend());
    for (std::size_t k = 0; k < p + static_cast<std::size_t>(l); ++k) coords.push_back(TentMap(s).apply(coords.back()));
    const BackwardPoint x(s, coords);
    const auto before = p_level(x, p, 1e-9);
    ASSERT_TRUE(before);
    if (before->value() != l) continue;  // c periodic under this slope, earlier hit
    const auto after = p_level(shift(x), p, 1e-9);
    ASSERT_TRUE(after);
    EXPECT_EQ(after->value(), l + 1);
    ++checked;
  }
  EXPECT_GT(checked, 900);
}

TEST(MetricProperty, TriangleAndShiftLipschitz) {
  props::Gen g(31);
  for (int i = 0; i < 1000; ++i) {
    const double s = g.slope();
    const std::size_t D = 24;
    const BackwardPoint x = g.point(s, D), y = g.point(s, D), z = g.point(s, D);
    ASSERT_TRUE(validate(x, 1e-9));
    EXPECT_LE(metric(x, z), metric(x, y) + metric(y, z) + 1e-12);
    EXPECT_EQ(metric(x, y), metric(y, x));
    const double dxy = metric(x, y);
    const double dshift = metric(shift(x), shift(y));
    const double Tx = TentMap(s).apply(x.newest());
    const double Ty = TentMap(s).apply(y.newest());
    EXPECT_NEAR(dshift, std::abs(Tx - Ty) + 0.5 * dxy, 1e-12);
    EXPECT_LE(dshift, (s + 0.5) * dxy + 1e-12);
  }
}
