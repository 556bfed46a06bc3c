#pragma once

// Bowen (n, eps)-separated sets for sigma^R on finite-depth clouds of K_s,
// entropy estimates from their growth, and the itinerary-coding upper bound.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ilim/inverse_limit.hpp"
#include "ilim/lap_entropy.hpp"

namespace ilim {

struct PointCloud {
  double slope = 2.0;
  std::size_t depth = 0;
  /// Sorted lexicographically by (x_0, x_{-1}, ..., x_{-D}).
  std::vector<BackwardPoint> points;

  std::size_t size() const { return points.size(); }
};

struct CloudOptions {
  /// Seeds are midpoints of a uniform partition of the core [c_2, c_1].
  std::size_t seeds = 64;
  LapOptions lap;
  /// Points closer than this are merged; unset means 2^{-depth}, the
  /// truncation scale. 0 merges exact duplicates only.
  std::optional<double> dedup;
};

/// Backward orbits of each seed through [0, c_1]. At every backward step all
/// branches are expanded and then at most per_branch_cap partial orbits per
/// seed are kept, by even-stride subsampling with a seed-dependent phase.
/// Deduplicated at metric distance opts.dedup (default 2^{-depth}).
PointCloud sample_points(double s, std::size_t depth, std::size_t per_branch_cap, CloudOptions opts = {});

/// Greedy maximal (n, eps)-separated subset of the cloud for sigma^R, points
/// scanned in cloud order. Negative R runs the inverse sigma^{-|R|}, which
/// needs depth >= n|R| + 8.
std::size_t separated_count(const PointCloud& cloud, int R, int n, double eps);

/// Indices (into the cloud) of the greedy set.
std::vector<std::size_t> separated_set(const PointCloud& cloud, int R, int n, double eps);

/// max_{k<n} d(sigma^{Rk} x, sigma^{Rk} y) for two cloud points.
double bowen_distance(const BackwardPoint& x, const BackwardPoint& y, int R, int n);

struct SeparationCurve {
  double eps = 0.0;
  /// counts[n-1] = separated_count at n.
  std::vector<std::size_t> counts;
  double estimate = 0.0;
  /// Fitted window [window_lo, window_hi] of n values.
  int window_lo = 0;
  int window_hi = 0;
  double rms_residual = 0.0;
  /// Set when the linear window has fewer than four points.
  bool short_window = false;
};

/// Least-squares slope of log(count) against n over the longest window of
/// consecutive n with RMS residual below `max_rms`, after dropping n whose
/// count exceeds `saturation` or sits on a trailing plateau of a growing
/// curve (both mean the finite cloud is exhausted).
SeparationCurve fit_growth(double eps, std::vector<std::size_t> counts, std::size_t saturation,
                           double max_rms = 0.02);

struct BowenOptions {
  std::vector<double> eps_list{0.0625, 0.03125, 0.015625, 0.0078125};
  std::size_t seeds = 16384;
  std::size_t per_branch_cap = 2;
  double max_rms = 0.02;
  LapOptions lap;
};

struct BowenEstimate {
  double value = 0.0;
  /// The eps whose curve attained the maximum.
  double eps = 0.0;
  std::vector<SeparationCurve> curves;
  std::size_t cloud_size = 0;
  std::vector<std::string> warnings;
};

BowenEstimate entropy_bowen_on(const PointCloud& cloud, int R, int n_max, const BowenOptions& opts = {});
BowenEstimate entropy_bowen(double s, int R, std::size_t depth, int n_max, const BowenOptions& opts = {});

/// Number of distinct codes of sigma^{Rm}-orbits of length n through the
/// G-partition at scale eps0: half-open blocks of links of the pi_q chain,
/// q the least index with c_1 2^{-q} <= eps0, each block of K_s-diameter at
/// most 2 eps0. Dominates separated_count(cloud, R m, n, 2 eps0).
std::size_t itinerary_upper_bound(const PointCloud& cloud, int R, int m, double eps0, int n);

/// Block boundaries (in pi_q coordinates) used by itinerary_upper_bound.
struct GPartition {
  int q = 0;
  std::vector<double> boundaries;
  double block_length = 0.0;
};
GPartition g_partition(double s, double eps0);

}  // namespace ilim
