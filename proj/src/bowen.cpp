#include "ilim/bowen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "ilim/error.hpp"

namespace ilim {

namespace {

// Lexicographic on (x_0, x_{-1}, ...).
bool newest_first_less(const BackwardPoint& a, const BackwardPoint& b) {
  auto xa = a.coords();
  auto xb = b.coords();
  return std::lexicographical_compare(xa.rbegin(), xa.rend(), xb.rbegin(), xb.rend());
}

// Row-major newest-first coordinates, row i = (x_0, x_{-1}, ..., x_{-D}).
struct FlatCloud {
  std::size_t width = 0;
  std::vector<double> v;

  explicit FlatCloud(const PointCloud& cloud) : width(cloud.depth + 1) {
    v.reserve(cloud.size() * width);
    for (const auto& p : cloud.points) {
      auto xs = p.coords();
      v.insert(v.end(), xs.rbegin(), xs.rend());
    }
  }
  const double* row(std::size_t i) const { return v.data() + i * width; }
};

double flat_metric(const double* x, const double* y, std::size_t width) {
  double sum = 0.0;
  double w = 1.0;
  for (std::size_t k = 0; k < width; ++k) {
    sum += w * std::abs(x[k] - y[k]);
    w *= 0.5;
  }
  return sum;
}

struct CellKey {
  std::int64_t a;
  std::int64_t b;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    return std::hash<std::int64_t>()(k.a * 1000003 + k.b);
  }
};

// Orbit data needed by the distance recurrences for one direction of sigma^R.
class OrbitTable {
 public:
  OrbitTable(const PointCloud& cloud, int R, int n) : flat_(cloud), R_(R), n_(n), steps_(R > 0 ? R * (n - 1) : 0) {
    const TentMap t(cloud.slope);
    if (R < 0 && cloud.depth < static_cast<std::size_t>(n * -R + 8)) {
      throw PreconditionError("inverse direction needs depth >= n|R| + 8, got depth " + std::to_string(cloud.depth));
    }
    if (steps_ > 0) {
      fwd_.resize(cloud.size() * static_cast<std::size_t>(steps_));
      for (std::size_t i = 0; i < cloud.size(); ++i) {
        double x = flat_.row(i)[0];
        for (int m = 0; m < steps_; ++m) {
          x = t.apply(std::clamp(x, 0.0, 1.0));
          fwd_[i * static_cast<std::size_t>(steps_) + static_cast<std::size_t>(m)] = x;
        }
      }
    }
  }

  std::size_t size() const { return flat_.v.size() / flat_.width; }

  // Coordinates bounding the distance from below at time 0 and time n-1.
  double key_a(std::size_t i) const { return flat_.row(i)[0]; }
  double key_b(std::size_t i) const {
    if (R_ > 0 && steps_ > 0) return fwd_[i * static_cast<std::size_t>(steps_) + static_cast<std::size_t>(steps_ - 1)];
    if (R_ < 0) return flat_.row(i)[static_cast<std::size_t>(-R_ * (n_ - 1))];
    return key_a(i);
  }

  // True when max_{k<n} d(sigma^{Rk} x, sigma^{Rk} y) <= eps.
  bool close(std::size_t i, std::size_t j, double eps) const { return distance(i, j, eps) <= eps; }

  // Bowen distance; may stop early once `stop` is exceeded.
  double distance(std::size_t i, std::size_t j, double stop) const {
    const double* x = flat_.row(i);
    const double* y = flat_.row(j);
    if (R_ >= 0) {
      double d = flat_metric(x, y, flat_.width);
      double best = d;
      if (best > stop) return best;
      const double* fx = fwd_.data() + i * static_cast<std::size_t>(steps_);
      const double* fy = fwd_.data() + j * static_cast<std::size_t>(steps_);
      for (int m = 1; m <= steps_; ++m) {
        d = std::abs(fx[m - 1] - fy[m - 1]) + 0.5 * d;
        if (m % R_ == 0) {
          best = std::max(best, d);
          if (best > stop) return best;
        }
      }
      return best;
    }
    // e_m = sum_{k>=m} 2^{-(k-m)} |x_{-k} - y_{-k}|, the distance after m unshifts.
    const auto r = static_cast<std::size_t>(-R_);
    const std::size_t last = r * static_cast<std::size_t>(n_ - 1);
    double e = 0.0;
    double best = 0.0;
    for (std::size_t m = flat_.width; m-- > 0;) {
      e = std::abs(x[m] - y[m]) + 0.5 * e;
      if (m <= last && m % r == 0) best = std::max(best, e);
    }
    return best;
  }

 private:
  FlatCloud flat_;
  int R_;
  int n_;
  int steps_;
  std::vector<double> fwd_;
};

std::vector<std::size_t> greedy(const OrbitTable& table, double eps) {
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> cells;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto ca = static_cast<std::int64_t>(std::floor(table.key_a(i) / eps));
    const auto cb = static_cast<std::int64_t>(std::floor(table.key_b(i) / eps));
    bool separated = true;
    for (std::int64_t da = -1; da <= 1 && separated; ++da) {
      for (std::int64_t db = -1; db <= 1 && separated; ++db) {
        auto it = cells.find({ca + da, cb + db});
        if (it == cells.end()) continue;
        for (std::size_t j : it->second) {
          if (table.close(i, j, eps)) {
            separated = false;
            break;
          }
        }
      }
    }
    if (separated) {
      kept.push_back(i);
      cells[{ca, cb}].push_back(i);
    }
  }
  return kept;
}

void check_separation_args(int n, double eps) {
  if (n < 1) throw PreconditionError("separated_count needs n >= 1");
  if (!(eps > 0.0)) throw PreconditionError("separated_count needs eps > 0");
}

}  // namespace

PointCloud sample_points(double s, std::size_t depth, std::size_t per_branch_cap, CloudOptions opts) {
  const TentMap t(s, opts.lap.tol);
  if (depth > 30) throw PreconditionError("sample_points needs depth <= 30");
  if (per_branch_cap < 1) throw PreconditionError("sample_points needs per_branch_cap >= 1");
  if (opts.seeds < 1) throw PreconditionError("sample_points needs at least one seed");
  if (opts.dedup && !(*opts.dedup >= 0.0)) throw PreconditionError("sample_points needs dedup >= 0");
  const double c1 = t.critical_value();
  const double c2 = t.apply(c1);
  const Restricted<TentMap> r(t, {0.0, c1}, opts.lap.tol);

  PointCloud cloud;
  cloud.slope = s;
  cloud.depth = depth;
  std::uint64_t nodes = 0;
  for (std::size_t i = 0; i < opts.seeds; ++i) {
    const double seed = c2 + (static_cast<double>(i) + 0.5) * (c1 - c2) / static_cast<double>(opts.seeds);
    const double phase = std::fmod(static_cast<double>(i + 1) * 0.6180339887498949, 1.0);
    // Partial orbits, newest first.
    std::vector<std::vector<double>> partial{{seed}};
    for (std::size_t d = 0; d < depth; ++d) {
      std::vector<std::vector<double>> next;
      next.reserve(partial.size() * 2);
      for (const auto& orb : partial) {
        for (double x : r.preimages(orb.back())) {
          next.push_back(orb);
          next.back().push_back(x);
        }
      }
      if (next.size() > per_branch_cap) {
        std::vector<std::vector<double>> picked;
        picked.reserve(per_branch_cap);
        for (std::size_t k = 0; k < per_branch_cap; ++k) {
          const auto idx = static_cast<std::size_t>((static_cast<double>(k) + phase) *
                                                    static_cast<double>(next.size()) /
                                                    static_cast<double>(per_branch_cap));
          picked.push_back(std::move(next[std::min(idx, next.size() - 1)]));
        }
        next = std::move(picked);
      }
      nodes += next.size();
      if (nodes > opts.lap.max_nodes) throw ResourceError("sample_points exceeded node cap");
      partial = std::move(next);
    }
    for (auto& orb : partial) {
      std::reverse(orb.begin(), orb.end());
      cloud.points.emplace_back(s, std::move(orb));
    }
  }

  std::sort(cloud.points.begin(), cloud.points.end(), newest_first_less);
  const double dup = opts.dedup ? *opts.dedup : std::ldexp(1.0, -static_cast<int>(depth));
  std::vector<BackwardPoint> unique;
  unique.reserve(cloud.points.size());
  for (auto& p : cloud.points) {
    bool is_dup = false;
    // Any point within metric dup has x_0 within dup, so a backward scan suffices.
    for (auto it = unique.rbegin(); it != unique.rend() && p.newest() - it->newest() <= dup; ++it) {
      const double d = metric(p, *it);
      if (d < dup || d == 0.0) {
        is_dup = true;
        break;
      }
    }
    if (!is_dup) unique.push_back(std::move(p));
  }
  cloud.points = std::move(unique);
  return cloud;
}

std::vector<std::size_t> separated_set(const PointCloud& cloud, int R, int n, double eps) {
  check_separation_args(n, eps);
  return greedy(OrbitTable(cloud, R, n), eps);
}

std::size_t separated_count(const PointCloud& cloud, int R, int n, double eps) {
  return separated_set(cloud, R, n, eps).size();
}

double bowen_distance(const BackwardPoint& x, const BackwardPoint& y, int R, int n) {
  if (x.depth() != y.depth()) throw PreconditionError("bowen_distance: depths differ");
  PointCloud pair{x.slope(), x.depth(), {x, y}};
  const OrbitTable table(pair, R, n);
  return table.distance(0, 1, INFINITY);
}

SeparationCurve fit_growth(double eps, std::vector<std::size_t> counts, std::size_t saturation, double max_rms) {
  SeparationCurve curve;
  curve.eps = eps;
  curve.counts = std::move(counts);
  const int nmax = static_cast<int>(curve.counts.size());
  // A trailing run of equal counts after a growing phase means the cloud is
  // exhausted: no more points can be told apart at this scale.
  int plateau = nmax + 1;
  if (nmax >= 2 && curve.counts.front() != curve.counts.back()) {
    int k = nmax;
    while (k > 1 && curve.counts[static_cast<std::size_t>(k - 2)] == curve.counts.back()) --k;
    if (k < nmax) plateau = k;
  }
  auto usable = [&](int n) {
    const std::size_t c = curve.counts[static_cast<std::size_t>(n - 1)];
    return c >= 1 && c <= saturation && n < plateau;
  };

  int best_len = 0;
  for (int lo = 1; lo <= nmax; ++lo) {
    if (!usable(lo)) continue;
    const double y0 = std::log(static_cast<double>(curve.counts[static_cast<std::size_t>(lo - 1)]));
    for (int hi = lo; hi <= nmax && usable(hi); ++hi) {
      const int len = hi - lo + 1;
      double slope = 0.0;
      double rms = 0.0;
      if (len >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int k = lo; k <= hi; ++k) {
          const double x = k - lo;
          const double y = std::log(static_cast<double>(curve.counts[static_cast<std::size_t>(k - 1)])) - y0;
          sx += x;
          sy += y;
          sxx += x * x;
          sxy += x * y;
        }
        const double denom = len * sxx - sx * sx;
        slope = (len * sxy - sx * sy) / denom;
        const double icpt = (sy - slope * sx) / len;
        for (int k = lo; k <= hi; ++k) {
          const double y = std::log(static_cast<double>(curve.counts[static_cast<std::size_t>(k - 1)])) - y0;
          const double res = y - (icpt + slope * (k - lo));
          rms += res * res;
        }
        rms = std::sqrt(rms / len);
      }
      if (rms >= max_rms) continue;
      // Longest window wins; among equals the later one, past the transient.
      if (len >= best_len) {
        best_len = len;
        curve.estimate = slope;
        curve.window_lo = lo;
        curve.window_hi = hi;
        curve.rms_residual = rms;
      }
    }
  }
  curve.short_window = best_len < 4;
  return curve;
}

BowenEstimate entropy_bowen_on(const PointCloud& cloud, int R, int n_max, const BowenOptions& opts) {
  if (n_max < 1) throw PreconditionError("entropy_bowen needs n_max >= 1");
  if (opts.eps_list.empty()) throw PreconditionError("entropy_bowen needs a nonempty eps list");
  BowenEstimate est;
  est.cloud_size = cloud.size();
  bool first = true;
  for (double eps : opts.eps_list) {
    std::vector<std::size_t> counts;
    for (int n = 1; n <= n_max; ++n) counts.push_back(separated_count(cloud, R, n, eps));
    SeparationCurve curve = fit_growth(eps, std::move(counts), cloud.size() / 2, opts.max_rms);
    if (curve.short_window) {
      est.warnings.push_back("eps=" + std::to_string(eps) + ": no linear regime of length >= 4 (window " +
                             std::to_string(curve.window_lo) + ".." + std::to_string(curve.window_hi) + ")");
    }
    if (first || curve.estimate > est.value) {
      est.value = curve.estimate;
      est.eps = eps;
      first = false;
    }
    est.curves.push_back(std::move(curve));
  }
  return est;
}

BowenEstimate entropy_bowen(double s, int R, std::size_t depth, int n_max, const BowenOptions& opts) {
  CloudOptions co;
  co.seeds = opts.seeds;
  co.lap = opts.lap;
  return entropy_bowen_on(sample_points(s, depth, opts.per_branch_cap, co), R, n_max, opts);
}

GPartition g_partition(double s, double eps0) {
  const TentMap t(s);
  if (!(eps0 > 0.0)) throw PreconditionError("g_partition needs eps0 > 0");
  const double c1 = t.critical_value();
  GPartition g;
  while (std::ldexp(c1, -g.q) > eps0) ++g.q;
  double head = 0.0;
  for (int k = 0; k <= g.q; ++k) head += std::pow(2.0 * s, -k);
  const double L = (2.0 * eps0 - std::ldexp(c1, -g.q)) / (std::pow(s, g.q) * head);
  const double blocks = std::ceil(c1 / L);
  if (!(blocks >= 1.0) || blocks > 1e7) {
    throw PreconditionError("g_partition: eps0 incompatible with the projection mesh");
  }
  const auto nb = static_cast<std::size_t>(blocks);
  g.block_length = c1 / static_cast<double>(nb);
  for (std::size_t i = 0; i <= nb; ++i) g.boundaries.push_back(c1 * static_cast<double>(i) / static_cast<double>(nb));
  return g;
}

std::size_t itinerary_upper_bound(const PointCloud& cloud, int R, int m, double eps0, int n) {
  if (R < 0 || m < 1 || n < 1) throw PreconditionError("itinerary_upper_bound needs R >= 0, m >= 1, n >= 1");
  const GPartition g = g_partition(cloud.slope, eps0);
  if (static_cast<std::size_t>(g.q) > cloud.depth) {
    throw PreconditionError("itinerary_upper_bound: cloud depth below partition index " + std::to_string(g.q));
  }
  const TentMap t(cloud.slope);
  const std::size_t nb = g.boundaries.size() - 1;
  const double c1 = t.critical_value();
  auto block = [&](double x) {
    const double u = std::clamp(x, 0.0, c1) / c1 * static_cast<double>(nb);
    return static_cast<std::uint32_t>(std::min(static_cast<std::size_t>(u), nb - 1));
  };
  const auto q = static_cast<std::size_t>(g.q);
  const int step = R * m;
  std::set<std::vector<std::uint32_t>> codes;
  std::vector<double> fwd;
  for (const auto& p : cloud.points) {
    // pi_q(sigma^j x) = x_{-(q-j)} for j <= q, else T^{j-q}(x_0).
    const std::size_t horizon = static_cast<std::size_t>(step) * static_cast<std::size_t>(n - 1);
    fwd.assign(1, p.newest());
    for (std::size_t j = q + 1; j <= horizon; ++j) fwd.push_back(t.apply(std::clamp(fwd.back(), 0.0, 1.0)));
    std::vector<std::uint32_t> code;
    code.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const std::size_t j = static_cast<std::size_t>(step) * static_cast<std::size_t>(k);
      code.push_back(block(j <= q ? p.at(q - j) : fwd[j - q]));
    }
    codes.insert(std::move(code));
  }
  return codes.size();
}

}  // namespace ilim
