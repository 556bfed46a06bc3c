#include <algorithm>
#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "ilim/chains.hpp"
#include "ilim/error.hpp"

using namespace ilim;

namespace {

bool has_breakpoint(const IntervalChain& ch, double x, double tol = 1e-12) {
  const auto& b = ch.breakpoints();
  return std::any_of(b.begin(), b.end(), [&](double v) { return std::abs(v - x) <= tol; });
}

// ∪_{i<=p} T^{-i}(c) ∩ [0, c_1] by direct pullback.
std::vector<double> mandatory(double s, int p) {
  std::vector<double> level{0.5}, all{0.5};
  for (int i = 1; i <= p; ++i) {
    std::vector<double> next;
    for (double y : level) {
      for (double x : {y / s, 1.0 - y / s}) {
        if (x <= 0.5 * s + 1e-12) next.push_back(x);
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

}  // namespace

TEST(BuildChain, Examples) {
  const IntervalChain c0 = build_chain(2.0, 0, 1.0);
  EXPECT_TRUE(has_breakpoint(c0, 0.5));
  const IntervalChain c1 = build_chain(2.0, 1, 1.0);
  for (double x : {0.25, 0.5, 0.75}) EXPECT_TRUE(has_breakpoint(c1, x)) << x;
  EXPECT_EQ(c1.breakpoints().front(), 0.0);
  EXPECT_EQ(c1.breakpoints().back(), 1.0);
  EXPECT_TRUE(c1.chainable());
  EXPECT_GT(c1.mesh(), 0.0);
  EXPECT_THROW(build_chain(2.0, -1, 1.0), PreconditionError);
  EXPECT_THROW(build_chain(2.0, 1, 0.0), PreconditionError);
}

TEST(BuildChain, ResourceCap) {
  LapOptions o;
  o.max_nodes = 50;
  EXPECT_THROW(build_chain(2.0, 8, 0.01, o), ResourceError);
}

TEST(IntervalChain, RejectsBadBreakpoints) {
  EXPECT_THROW(IntervalChain(1.8, 0, {0.0, 0.5, 0.5, 0.9}), PreconditionError);
  EXPECT_THROW(IntervalChain(1.8, 0, {0.1, 0.9}), PreconditionError);
  EXPECT_THROW(IntervalChain(1.8, 0, {0.0, 0.8}), PreconditionError);
}

TEST(ChainAxioms, MandatoryBreakpointsAndChainability) {
  for (double s : {1.6, 1.8, 2.0}) {
    for (int p = 0; p <= 4; ++p) {
      for (double eps : {1.0, 0.25}) {
        const IntervalChain ch = build_chain(s, p, eps);
        EXPECT_TRUE(ch.chainable());
        for (double x : mandatory(s, p)) EXPECT_TRUE(has_breakpoint(ch, x, 1e-12)) << s << " " << p << " " << x;
        for (std::size_t j = 0; j < ch.link_count(); ++j) {
          EXPECT_LT(ch.link(j).length(), eps * std::pow(s, -p) / 2.0);
        }
      }
    }
  }
}

TEST(ChainAxioms, RefinementLadder) {
  for (double s : {1.6, 1.8, 2.0}) {
    for (int p = 0; p <= 3; ++p) {
      for (double eps : {1.0, 0.5}) {
        EXPECT_TRUE(refines(build_chain(s, p + 1, eps / 2), build_chain(s, p, eps))) << s << " " << p;
      }
    }
  }
}

TEST(Refines, Counterexample) {
  const IntervalChain fine = build_chain(1.8, 1, 1.0);
  const IntervalChain coarse = build_chain(1.8, 0, 1.0);
  ASSERT_TRUE(refines(fine, coarse));
  // Split the image of the first fine link.
  const Interval first = fine.link(0);
  const double mid = 0.5 * 1.8 * (first.lo + first.hi);
  auto b = coarse.breakpoints();
  ASSERT_FALSE(has_breakpoint(coarse, mid));
  b.insert(std::upper_bound(b.begin(), b.end(), mid), mid);
  EXPECT_FALSE(refines(fine, IntervalChain(1.8, 0, b)));
}

TEST(Refines, IndexMismatch) {
  const IntervalChain c = build_chain(1.8, 2, 1.0);
  EXPECT_THROW(refines(c, c), PreconditionError);
  EXPECT_THROW(refines(build_chain(1.8, 3, 1.0), build_chain(1.7, 2, 1.0)), PreconditionError);
}

TEST(LinkOf, Conventions) {
  const IntervalChain ch = build_chain(1.8, 2, 1.0);
  EXPECT_EQ(link_of(ch, BackwardPoint::zero(1.8, 5)), 0u);
  EXPECT_EQ(link_of_value(ch, 0.9), ch.link_count() - 1);
  const double b = ch.breakpoints()[3];
  EXPECT_EQ(link_of_value(ch, b), 3u);
  EXPECT_EQ(link_of_value(ch, std::nextafter(b, 0.0)), 3u);
  EXPECT_EQ(link_of_value(ch, b - 1e-9), 2u);
  EXPECT_EQ(link_of_value(ch, b - 1e-9, 0.0), 2u);
  EXPECT_EQ(link_of_value(ch, std::nextafter(b, 0.0), 0.0), 2u);
  EXPECT_THROW(link_of(ch, BackwardPoint::zero(1.8, 1)), PreconditionError);
}

TEST(ChainMesh, KSpaceBound) {
  props::Gen g(41);
  for (double s : {1.6, 1.8, 2.0}) {
    for (int p = 0; p <= 4; ++p) {
      const double eps = 0.25;
      const IntervalChain ch = build_chain(s, p, eps);
      // Link diameters measured on sampled points stay below the bound.
      std::vector<std::vector<BackwardPoint>> by_link(ch.link_count());
      for (int i = 0; i < 4000; ++i) {
        const BackwardPoint x = truncate(g.point(s, 30 + p), 30 + p);
        by_link[link_of(ch, x)].push_back(x);
      }
      for (const auto& pts : by_link) {
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
          EXPECT_LE(metric(pts[i], pts[i + 1]), ch.kspace_mesh_bound() + 1e-9);
        }
      }
      if (0.5 * s * std::ldexp(1.0, -p) <= eps / 4) {
        EXPECT_LT(ch.kspace_mesh_bound(), eps) << s << " " << p;
      }
    }
  }
}

TEST(ChainCohesion, EqualLevelsShareALink) {
  const int q = 4, n = 8;
  for (double s : {1.6, 1.8, 2.0}) {
    const IntervalChain ch = build_chain(s, q, 1.0);
    std::map<int, std::size_t> link_by_level;
    for (const auto& r : arc_p_points(s, n)) {
      const BackwardPoint x = arc_point(s, r.position, q + n, q + n + 4);
      const std::size_t j = link_of(ch, x);
      const auto [it, fresh] = link_by_level.emplace(r.level.value(), j);
      EXPECT_EQ(it->second, j) << s << " level " << r.level.value();
    }
    EXPECT_EQ(link_by_level.size(), static_cast<std::size_t>(n + 1));
  }
}

TEST(PLevelAlignment, Examples) {
  const AlignmentReport a = verify_plevel_alignment(2.0, 6, 3, 1, 8);
  EXPECT_EQ(a.M, 4);
  EXPECT_TRUE(a.all_pass());
  const AlignmentReport b = verify_plevel_alignment(1.8, 8, 4, 2, 8);
  EXPECT_EQ(b.M, 6);
  EXPECT_TRUE(b.all_pass());
  for (double s : {1.5, 1.8, 2.0}) {
    const AlignmentReport id = verify_plevel_alignment(s, 3, 3, 0, 6);
    EXPECT_EQ(id.M, 0);
    EXPECT_TRUE(id.all_pass());
  }
}

TEST(PLevelAlignment, Preconditions) {
  EXPECT_THROW(verify_plevel_alignment(1.8, 2, 3, 1, 4), PreconditionError);
  EXPECT_THROW(verify_plevel_alignment(1.8, 3, 2, -1, 4), PreconditionError);
  EXPECT_THROW(verify_plevel_alignment(1.8, 3, 2, 1, 0), PreconditionError);
  EXPECT_THROW(verify_plevel_alignment(1.3, 3, 2, 1, 4), PreconditionError);
}
