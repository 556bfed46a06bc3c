#pragma once

// Seeded generators for the property tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ilim/inverse_limit.hpp"

namespace ilim::props {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// Slope in (sqrt 2, 2]; sometimes exactly 2.
  double slope() {
    if (integer(0, 7) == 0) return 2.0;
    return uniform(std::sqrt(2.0) + 1e-3, 2.0);
  }

  /// A backward orbit of depth D: x_0 uniform on [0, c_1], then random
  /// preimage branches, falling back to the left branch when the right one
  /// leaves [0, c_1].
  BackwardPoint point(double s, std::size_t depth) {
    const double c1 = 0.5 * s;
    std::vector<double> newest_first{uniform(0.0, c1)};
    for (std::size_t k = 0; k < depth; ++k) {
      const double y = newest_first.back();
      const double left = y / s;
      const double right = 1.0 - y / s;
      newest_first.push_back(coin() && right <= c1 ? right : left);
    }
    return BackwardPoint(s, {newest_first.rbegin(), newest_first.rend()});
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ilim::props
