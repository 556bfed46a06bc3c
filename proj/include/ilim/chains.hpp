#pragma once

// Chain covers C_p of [0, c_1] by intervals I^j_p whose breakpoints contain
// every point of T_s^{-i}(c), i <= p. The links l^j_p = pi_p^{-1}(I^j_p) of K_s
// are represented through the interval chain and the projection pi_p.

#include <cstddef>
#include <vector>

#include "ilim/inverse_limit.hpp"
#include "ilim/lap_entropy.hpp"
#include "ilim/maps.hpp"

namespace ilim {

class IntervalChain {
 public:
  /// Breakpoints must be strictly increasing from 0 to c_1.
  IntervalChain(double slope, int p, std::vector<double> breakpoints);

  double slope() const { return slope_; }
  int p() const { return p_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  std::size_t link_count() const { return breakpoints_.size() - 1; }
  /// Link j (0-based) is [b_j, b_{j+1}); the last one is closed.
  Interval link(std::size_t j) const { return {breakpoints_[j], breakpoints_[j + 1]}; }
  /// Largest gap between consecutive breakpoints.
  double mesh() const { return mesh_; }
  /// Upper bound on the metric diameter of the links pi_p^{-1}(I^j) in K_s:
  /// mesh * sum_{k<=p} 2^{-k} s^{p-k} for the first p coordinates plus the
  /// unconstrained tail c_1 2^{-p}.
  double kspace_mesh_bound() const;
  /// Closed links meet iff their indices differ by at most one.
  bool chainable() const;

 private:
  double slope_;
  int p_;
  std::vector<double> breakpoints_;
  double mesh_ = 0.0;
};

/// The chain whose breakpoints are the pullbacks T_s^{-i}(A) ∩ [0, c_1],
/// i <= p, of A = {c} ∪ {c_1 k / 2^m}, with m the least integer making
/// c_1 2^{-m} < eps/2. Every gap is then shorter than eps s^{-p} / 2, and
/// the chains built for eps' <= eps at p + 1 refine this one.
IntervalChain build_chain(double s, int p, double eps, LapOptions opts = {});

/// Index of the link containing the value x in [0, c_1] (half-open rule).
/// A value within tol of a breakpoint is treated as that breakpoint, so
/// rounding cannot move it to the left link.
std::size_t link_of_value(const IntervalChain& chain, double x, double tol = kDefaultTol);
/// Index of the link containing pi_p(x).
std::size_t link_of(const IntervalChain& chain, const BackwardPoint& x, double tol = kDefaultTol);

/// True iff T_s maps every link of `fine` into a single link of `coarse`
/// (closure tolerance tol). `fine` must sit at index coarse.p() + 1.
bool refines(const IntervalChain& fine, const IntervalChain& coarse, double tol = kDefaultTol);

struct AlignmentReport {
  int M = 0;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  bool all_pass() const { return checked > 0 && failed == 0; }
};

/// For every q-point x' on [0-bar, s_n] with q-level l (and l + M >= 1),
/// checks that sigma^R(x') is a p-point of level l + M, M = R + q - p, and
/// that pi_p(sigma^R x') lies in the same link of build_chain(s, p, 1) as the
/// salient point s_{l+M}.
AlignmentReport verify_plevel_alignment(double s, int q, int p, int R, int n, LapOptions opts = {});

}  // namespace ilim
