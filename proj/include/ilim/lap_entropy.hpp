#pragma once

// Exact lap numbers of iterates of unimodal maps via the backward preimage
// tree of the critical point, and topological entropy as their growth rate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ilim/error.hpp"
#include "ilim/maps.hpp"

namespace ilim {

inline constexpr std::uint64_t kDefaultMaxNodes = 100'000'000;

struct LapOptions {
  std::uint64_t max_nodes = kDefaultMaxNodes;
  double tol = kDefaultTol;
};

/// A point x with f^level(x) = critical point; level is the smallest such j.
struct TurningPoint {
  double x;
  int level;
};

/// Backward preimage tree of the critical point, grown one level at a time.
/// After `grow()` has run n times the tree holds every solution of
/// f^j(x) = c for 0 <= j < n, deduplicated within tol.
template <UnimodalMap M>
class PreimageTree {
 public:
  explicit PreimageTree(M map, LapOptions opts = {}) : map_(std::move(map)), opts_(opts), domain_(map_.domain()) {}

  void grow() {
    std::vector<double> next;
    if (levels_ == 0) {
      next.push_back(map_.critical_point());
    } else {
      next.reserve(frontier_.size() * 2);
      for (double y : frontier_) {
        for (double x : map_.preimages(y)) next.push_back(x);
      }
    }
    nodes_ += next.size();
    if (nodes_ > opts_.max_nodes) {
      throw ResourceError("preimage tree exceeded " + std::to_string(opts_.max_nodes) + " nodes at level " +
                          std::to_string(levels_));
    }
    std::sort(next.begin(), next.end());
    std::vector<double> fresh;
    fresh.reserve(next.size());
    for (double x : next) {
      if (!fresh.empty() && x - fresh.back() <= opts_.tol) continue;
      if (is_known(x)) continue;  // periodic critical point: subtree already present
      fresh.push_back(x);
    }
    std::vector<TurningPoint> merged;
    merged.reserve(known_.size() + fresh.size());
    auto it = known_.begin();
    for (double x : fresh) {
      while (it != known_.end() && it->x < x) merged.push_back(*it++);
      merged.push_back({x, levels_});
      if (is_interior(x)) ++interior_;
    }
    merged.insert(merged.end(), it, known_.end());
    known_ = std::move(merged);
    frontier_ = std::move(fresh);
    ++levels_;
  }

  int levels() const { return levels_; }
  std::uint64_t nodes() const { return nodes_; }
  /// Distinct points strictly inside the domain over all grown levels.
  std::uint64_t interior_count() const { return interior_; }
  /// lap(f^levels()) = 1 + interior_count().
  std::uint64_t laps() const { return 1 + interior_; }

  /// Interior turning points sorted by position.
  std::vector<TurningPoint> interior_points() const {
    std::vector<TurningPoint> out;
    out.reserve(interior_);
    for (const auto& tp : known_) {
      if (is_interior(tp.x)) out.push_back(tp);
    }
    return out;
  }

 private:
  bool is_interior(double x) const { return x > domain_.lo + opts_.tol && x < domain_.hi - opts_.tol; }

  bool is_known(double x) const {
    auto it = std::lower_bound(known_.begin(), known_.end(), x - opts_.tol,
                               [](const TurningPoint& tp, double v) { return tp.x < v; });
    return it != known_.end() && it->x <= x + opts_.tol;
  }

  M map_;
  LapOptions opts_;
  Interval domain_;
  int levels_ = 0;
  std::uint64_t nodes_ = 0;
  std::uint64_t interior_ = 0;
  std::vector<double> frontier_;
  std::vector<TurningPoint> known_;
};

/// lap(f^n) for n = 1..n_max.
class LapTable {
 public:
  LapTable() = default;
  explicit LapTable(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {}

  int n_max() const { return static_cast<int>(counts_.size()); }
  /// lap(f^n), 1 <= n <= n_max.
  std::uint64_t lap(int n) const;
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  /// lap(m+n) <= lap(m) lap(n) for every recorded pair.
  bool submultiplicative() const;
  bool nondecreasing() const;

 private:
  std::vector<std::uint64_t> counts_;
};

template <UnimodalMap M>
LapTable lap_table(const M& map, int n_max, LapOptions opts = {}) {
  if (n_max < 1) throw PreconditionError("lap_table needs n_max >= 1");
  PreimageTree<M> tree(map, opts);
  std::vector<std::uint64_t> counts;
  counts.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    tree.grow();
    counts.push_back(tree.laps());
  }
  return LapTable(std::move(counts));
}

/// Number of maximal monotonicity intervals of f^n on the map's domain.
template <UnimodalMap M>
std::uint64_t lap_count(const M& map, int n, LapOptions opts = {}) {
  if (n < 1) throw PreconditionError("lap_count needs n >= 1");
  return lap_table(map, n, opts).lap(n);
}

enum class EntropyMethod { slope, ratio };

std::string to_string(EntropyMethod m);
/// "slope" | "ratio"; PreconditionError otherwise.
EntropyMethod parse_entropy_method(const std::string& s);

/// Entropy in nats.
struct EntropyEstimate {
  double value = 0.0;
  EntropyMethod method = EntropyMethod::ratio;
  int n_used = 0;
  /// Spread (max - min) of the estimates at n_used, n_used - 1, n_used - 2.
  double residual = 0.0;
  int stride = 1;
};

/// slope: log(lap(n))/n. ratio: log(lap(n)/lap(n-stride))/stride.
EntropyEstimate entropy_from_laps(const LapTable& table, EntropyMethod method, int stride = 1);

template <UnimodalMap M>
EntropyEstimate entropy_lap(const M& map, int n_max, EntropyMethod method, LapOptions opts = {}) {
  if (n_max < 4) throw PreconditionError("entropy_lap needs n_max >= 4");
  return entropy_from_laps(lap_table(map, n_max, opts), method, 1);
}

/// Lap growth measured until the tree reaches `node_budget` distinct points
/// or `n_cap` levels, with a strided ratio so that laps oscillating with the
/// renormalization period (2, 3, 4, 6, 12) average out. Zero-entropy maps
/// have polynomial lap growth and a cheap tree, so they reach deep n.
struct AdaptiveLapOptions {
  std::uint64_t node_budget = 1u << 20;
  int n_cap = 400;
  int n_min = 16;
  int stride = 12;
  LapOptions lap;
};

template <UnimodalMap M>
EntropyEstimate adaptive_entropy_lap(const M& map, AdaptiveLapOptions opts = {}) {
  PreimageTree<M> tree(map, opts.lap);
  std::vector<std::uint64_t> counts;
  while (tree.levels() < opts.n_cap &&
         (tree.levels() < opts.n_min || tree.interior_count() < opts.node_budget)) {
    tree.grow();
    counts.push_back(tree.laps());
  }
  const int n = static_cast<int>(counts.size());
  const int stride = std::max(1, std::min(opts.stride, n - 3));
  return entropy_from_laps(LapTable(std::move(counts)), EntropyMethod::ratio, stride);
}

struct SlopeEstimate {
  /// Tent slope s with log s = htop(q_a), clamped to [1, 2].
  double slope = 1.0;
  /// Set when the entropy estimate fell below tol; slope is then 1.
  bool zero_entropy = false;
  EntropyEstimate entropy;
};

/// Slope of the tent map semiconjugate to q_a.
SlopeEstimate tent_slope_of_quadratic(double a, double tol, AdaptiveLapOptions opts = {});

/// Number of laps J of T_s^k on [0, c_1] with |T_s^k(J)| >= 2 delta.
std::uint64_t deep_branch_count(const TentMap& map, int k, double delta, LapOptions opts = {});

}  // namespace ilim
