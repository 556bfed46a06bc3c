#include "ilim/lap_entropy.hpp"

#include <algorithm>
#include <cmath>

namespace ilim {

std::uint64_t LapTable::lap(int n) const {
  if (n < 1 || n > n_max()) {
    throw PreconditionError("lap(" + std::to_string(n) + ") outside recorded range 1.." + std::to_string(n_max()));
  }
  return counts_[static_cast<std::size_t>(n - 1)];
}

bool LapTable::submultiplicative() const {
  for (int m = 1; m <= n_max(); ++m) {
    for (int n = 1; m + n <= n_max(); ++n) {
      if (lap(m + n) > lap(m) * lap(n)) return false;
    }
  }
  return true;
}

bool LapTable::nondecreasing() const {
  if (!counts_.empty() && counts_.front() == 0) return false;
  return std::is_sorted(counts_.begin(), counts_.end());
}

std::string to_string(EntropyMethod m) { return m == EntropyMethod::slope ? "slope" : "ratio"; }

EntropyMethod parse_entropy_method(const std::string& s) {
  if (s == "slope") return EntropyMethod::slope;
  if (s == "ratio") return EntropyMethod::ratio;
  throw PreconditionError("unknown entropy method '" + s + "' (expected slope or ratio)");
}

EntropyEstimate entropy_from_laps(const LapTable& table, EntropyMethod method, int stride) {
  const int n = table.n_max();
  if (stride < 1) throw PreconditionError("entropy stride must be positive");
  const int first = method == EntropyMethod::ratio ? stride + 1 : 1;
  if (n < first) throw PreconditionError("not enough lap counts for the requested estimate");

  auto estimate_at = [&](int k) {
    if (method == EntropyMethod::slope) return std::log(static_cast<double>(table.lap(k))) / k;
    const double ratio = static_cast<double>(table.lap(k)) / static_cast<double>(table.lap(k - stride));
    return std::log(ratio) / stride;
  };

  EntropyEstimate est;
  est.method = method;
  est.n_used = n;
  est.stride = method == EntropyMethod::ratio ? stride : 1;
  est.value = estimate_at(n);
  double lo = est.value;
  double hi = est.value;
  for (int k = n - 1; k >= std::max(first, n - 2); --k) {
    const double v = estimate_at(k);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  est.residual = hi - lo;
  return est;
}

SlopeEstimate tent_slope_of_quadratic(double a, double tol, AdaptiveLapOptions opts) {
  if (!(tol > 0.0)) throw PreconditionError("tent_slope_of_quadratic needs tol > 0");
  const QuadraticMap q(a);
  SlopeEstimate out;
  out.entropy = adaptive_entropy_lap(q, opts);
  if (out.entropy.value < tol) {
    out.zero_entropy = true;
    out.slope = 1.0;
  } else {
    out.slope = std::clamp(std::exp(out.entropy.value), 1.0, 2.0);
  }
  return out;
}

std::uint64_t deep_branch_count(const TentMap& map, int k, double delta, LapOptions opts) {
  if (k < 0) throw PreconditionError("deep_branch_count needs k >= 0");
  if (delta < 0.0) throw PreconditionError("deep_branch_count needs delta >= 0");
  const double c1 = map.critical_value();

  // orbit[m] = c_m = T^m(c), m = 0..k+1
  std::vector<double> orbit{map.critical_point()};
  for (int m = 0; m <= k; ++m) orbit.push_back(map.apply(orbit.back()));

  std::vector<double> breaks{0.0};
  std::vector<double> images{0.0};  // T^k(0) = 0
  if (k > 0) {
    PreimageTree tree(Restricted<TentMap>(map, {0.0, c1}, opts.tol), opts);
    for (int j = 0; j < k; ++j) tree.grow();
    for (const auto& tp : tree.interior_points()) {
      breaks.push_back(tp.x);
      images.push_back(orbit[static_cast<std::size_t>(k - tp.level)]);
    }
  }
  breaks.push_back(c1);
  images.push_back(orbit[static_cast<std::size_t>(k) + 1]);

  std::uint64_t count = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (std::abs(images[i + 1] - images[i]) >= 2.0 * delta) ++count;
  }
  return count;
}

}  // namespace ilim
