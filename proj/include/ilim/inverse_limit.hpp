#pragma once

// Finite-depth points of the inverse limit K_s = lim(<- [0,1], T_s), the
// metric, the shift homeomorphism, projections, p-levels and folding patterns
// along the arc-component C of the endpoint (..., 0, 0).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ilim/lap_entropy.hpp"
#include "ilim/maps.hpp"

namespace ilim {

/// A backward orbit (x_{-D}, ..., x_{-1}, x_0) of T_s, stored oldest first.
class BackwardPoint {
 public:
  BackwardPoint(double slope, std::vector<double> coords);

  /// The endpoint 0-bar truncated to the given depth.
  static BackwardPoint zero(double slope, std::size_t depth);

  double slope() const { return slope_; }
  /// D; the point carries D + 1 coordinates.
  std::size_t depth() const { return coords_.size() - 1; }
  /// Oldest first: coords()[0] = x_{-D}, coords().back() = x_0.
  std::span<const double> coords() const { return coords_; }
  /// x_{-k}; PreconditionError when k > depth().
  double at(std::size_t k) const;
  double newest() const { return coords_.back(); }

  friend bool operator==(const BackwardPoint&, const BackwardPoint&) = default;

 private:
  double slope_;
  std::vector<double> coords_;
};

/// True iff T_s(x_{-i-1}) = x_{-i} and x_{-i} in [0, c_1] within tol.
bool validate(const BackwardPoint& pt, double tol = kDefaultTol);

/// sum_{k=0}^{D} 2^{-k} |x_{-k} - y_{-k}|. Truncation error is at most
/// c_1 2^{-D}. Slopes and depths must agree.
double metric(const BackwardPoint& x, const BackwardPoint& y);

/// Keeps x_{-depth}, ..., x_0.
BackwardPoint truncate(const BackwardPoint& x, std::size_t depth);

/// (..., x_0) -> (..., x_0, T_s(x_0)); depth grows by one.
BackwardPoint shift(const BackwardPoint& x);
/// Drops x_0. PreconditionError at depth zero.
BackwardPoint unshift(const BackwardPoint& x);
/// pi_k(x) = x_{-k}.
double projection(const BackwardPoint& x, std::size_t k);

/// A p-level: a natural number or the symbol infinity (for 0-bar).
class Level {
 public:
  static Level finite(int l) { return Level(l); }
  static Level infinite() { return Level(-1); }

  bool is_infinite() const { return value_ < 0; }
  /// PreconditionError for the infinite level.
  int value() const;
  /// "inf" or the decimal value.
  std::string str() const;

  friend bool operator==(const Level&, const Level&) = default;

 private:
  explicit Level(int v) : value_(v) {}
  int value_;
};

/// Smallest l with |x_{-p-l} - c| <= tol and p + l <= D; infinity for the
/// all-zeros point; nullopt when x is not a p-point within the window.
std::optional<Level> p_level(const BackwardPoint& x, std::size_t p, double tol = kDefaultTol);

struct FoldingPattern {
  std::vector<Level> entries;

  std::size_t size() const { return entries.size(); }
  /// Space separated, infinity printed as the given symbol.
  std::string str(const std::string& infinity_symbol = "∞") const;
  /// Consecutive entries never coincide.
  bool alternates() const;
  FoldingPattern prefix(std::size_t count) const;

  friend bool operator==(const FoldingPattern&, const FoldingPattern&) = default;
};

/// Parses "inf 0 1 ..." (or with the infinity symbol).
FoldingPattern parse_folding_pattern(const std::string& text);

/// A p-point on the arc [0-bar, s_n], located by its coordinate t = pi_{p+n}
/// in [0, c]; T_s^preimage_index(t) = c and level = n - preimage_index.
struct PPointRecord {
  double position;
  int preimage_index;
  Level level;
};

/// All p-points of the arc [0-bar, s_n] in arc order (0-bar excluded).
std::vector<PPointRecord> arc_p_points(double s, int n, LapOptions opts = {});

/// FP_p([0-bar, s_n]): infinity followed by the levels of arc_p_points.
FoldingPattern arc_to_salient(double s, int n, LapOptions opts = {});

/// First `count` entries of FP(C).
FoldingPattern folding_pattern_prefix(double s, std::size_t count, LapOptions opts = {});

/// Positions (pi_{p+n} coordinates) of the salient points s_1, ..., s_n.
std::vector<double> salient_positions(double s, int n, LapOptions opts = {});

/// The point of the arc C whose pi_{param_index} coordinate equals t in [0, c].
/// Deeper coordinates follow the left branch t/s^i down to total depth
/// `depth` (>= param_index).
BackwardPoint arc_point(double s, double t, std::size_t param_index, std::size_t depth);

}  // namespace ilim
