#include "ilim/renorm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ilim/error.hpp"

namespace ilim {

Interval quad_image(const QuadraticMap& q, Interval I) {
  const double a = q.apply(I.lo);
  const double b = q.apply(I.hi);
  if (I.lo <= 0.0 && I.hi >= 0.0) return {std::min(a, b), 1.0};
  return {std::min(a, b), std::max(a, b)};
}

ReturnMap::ReturnMap(QuadraticMap q, int p, double u, double tol) : q_(q), p_(p), u_(u), tol_(tol) {
  if (p < 1) throw PreconditionError("return map period must be >= 1");
  if (!(u > 0.0 && u <= 1.0)) throw PreconditionError("return map boundary must lie in (0, 1]");
  cycle_.push_back({-u, u});
  for (int k = 1; k < p; ++k) cycle_.push_back(quad_image(q_, cycle_.back()));
}

double ReturnMap::apply(double x) const {
  for (int k = 0; k < p_; ++k) x = q_.apply(x);
  return x;
}

Preimages ReturnMap::preimages(double y) const {
  // Off the central interval q_a is monotone, so each step back to J_k for
  // k >= 1 has a single candidate; only the last step can branch.
  std::vector<double> cur{y};
  bool dbl = false;
  for (int k = p_ - 1; k >= 0; --k) {
    std::vector<double> next;
    for (double z : cur) {
      const Preimages pre = q_.preimages(z);
      for (double x : pre) {
        if (cycle_[static_cast<std::size_t>(k)].contains(x, tol_)) next.push_back(x);
      }
      if (k == 0 && pre.double_root()) dbl = true;
    }
    cur = std::move(next);
    if (cur.empty()) break;
  }
  std::sort(cur.begin(), cur.end());
  Preimages out;
  for (double x : cur) {
    if (out.size() < 2) out.push(x);
  }
  if (dbl && out.size() == 1) out.mark_double_root();
  return out;
}

void check_tower_structure(const RenormTower& tower) {
  const auto& p = tower.periods;
  if (p.empty() || p.front() != 1) throw PreconditionError("invalid tower: p_0 must be 1");
  if (tower.entropies.size() != p.size()) throw PreconditionError("invalid tower: periods and entropies differ in length");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 1) throw PreconditionError("invalid tower: periods must be positive");
    if (i > 0 && (p[i] <= p[i - 1] || p[i] % p[i - 1] != 0)) {
      throw PreconditionError("invalid tower: p_" + std::to_string(i - 1) + " does not divide p_" + std::to_string(i));
    }
    if (!(tower.entropies[i] >= 0.0) || !std::isfinite(tower.entropies[i])) {
      throw PreconditionError("invalid tower: entropies must be finite and nonnegative");
    }
  }
}

void validate_tower(const RenormTower& tower, double slack) {
  check_tower_structure(tower);
  const auto& p = tower.periods;
  const auto& h = tower.entropies;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (h[i] > std::numbers::ln2 + slack) throw PreconditionError("invalid tower: entropy exceeds log 2");
    if (i + 1 < p.size() && h[i] < static_cast<double>(p[i]) / p[i + 1] * h[i + 1] - slack) {
      throw PreconditionError("invalid tower: log s_" + std::to_string(i) + " below (p_i/p_{i+1}) log s_" +
                              std::to_string(i + 1));
    }
  }
}

RenormTower make_tower(std::vector<int> periods, std::vector<double> entropies) {
  RenormTower t;
  t.periods = std::move(periods);
  t.entropies = std::move(entropies);
  check_tower_structure(t);
  return t;
}

namespace {

double qp(const QuadraticMap& q, double x, int p) {
  for (int k = 0; k < p; ++k) x = q.apply(x);
  return x;
}

// No q^k([0, v]), 0 < k < p, meets the interior of [-v, v].
bool avoids_center(const QuadraticMap& q, double v, int p) {
  Interval I{0.0, v};
  for (int k = 1; k < p; ++k) {
    I = quad_image(q, I);
    if (I.lo < 0.0 && I.hi > 0.0) return false;
    if (std::min(std::abs(I.lo), std::abs(I.hi)) < v - 1e-9) return false;
  }
  return true;
}

Symbol side(double x, double tol) {
  if (x > tol) return Symbol::R;
  if (x < -tol) return Symbol::L;
  return Symbol::C;
}

// Unimodal order on itineraries: L < C < R after an even number of R's,
// reversed after an odd number.
int symbol_rank(Symbol s, bool odd) {
  const int r = s == Symbol::L ? 0 : (s == Symbol::C ? 1 : 2);
  return odd ? 2 - r : r;
}

// Kneading test for period p: the sides of c_{kp+i} repeat those of c_i,
// 0 < i < p, and the word A = sides(c_1..c_{p-1}) C is the kneading word of a
// superstable p-cycle (strictly larger than each of its shifts).
bool symbolic_period(const QuadraticMap& q, int p, double tol) {
  const int H = std::max(2 * p + 1, 33);
  const std::vector<double> c = critical_orbit(q, H);  // c[m-1] = c_m
  std::vector<Symbol> A;
  for (int i = 1; i < p; ++i) {
    A.push_back(side(c[static_cast<std::size_t>(i - 1)], tol));
    if (A.back() == Symbol::C) return false;
  }
  A.push_back(Symbol::C);
  for (int m = p + 1; m <= H; ++m) {
    if (m % p == 0) continue;
    if (side(c[static_cast<std::size_t>(m - 1)], tol) != A[static_cast<std::size_t>(m % p - 1)]) return false;
  }
  for (int n = 1; n < p; ++n) {
    bool odd = false;
    for (int k = 0; k < p - n; ++k) {
      const Symbol x = A[static_cast<std::size_t>(n + k)];
      const Symbol y = A[static_cast<std::size_t>(k)];
      if (x != y) {
        if (symbol_rank(x, odd) > symbol_rank(y, odd)) return false;
        break;
      }
      if (x == Symbol::R) odd = !odd;
    }
  }
  return true;
}

CandidateReport try_period(const QuadraticMap& q, int p, double v_last, double tol) {
  CandidateReport rep;
  rep.period = p;
  rep.symbolic_agrees = true;
  const bool symbolic = symbolic_period(q, p, tol);

  auto finish = [&](bool accepted, std::string why) {
    rep.accepted = accepted;
    rep.reason = std::move(why);
    rep.symbolic_agrees = symbolic == accepted;
    return rep;
  };

  double vA = v_last;
  if (!avoids_center(q, vA, p)) {
    double lo = 0.0, hi = v_last;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (avoids_center(q, mid, p) ? lo : hi) = mid;
    }
    vA = lo;
  }
  if (vA <= tol) return finish(false, "no neighbourhood of 0 returns monotonically after " + std::to_string(p) + " steps");

  // Orientation of q^p on (0, vA].
  int sigma = 1;
  double x = 0.5 * vA;
  for (int k = 0; k < p; ++k) {
    if (x > 0.0) sigma = -sigma;
    x = q.apply(x);
  }
  auto g = [&](double v) { return qp(q, v, p) - sigma * v; };

  double u = -1.0;
  if (std::abs(g(vA)) <= tol) {
    u = vA;
  } else {
    constexpr int kGrid = 4096;
    double right = vA;
    double g_right = g(vA);
    for (int i = kGrid - 1; i >= 1; --i) {
      const double left = vA * i / kGrid;
      const double g_left = g(left);
      if (g_left == 0.0) {
        u = left;
        break;
      }
      if ((g_left < 0.0) != (g_right < 0.0)) {
        double lo = left, hi = right;
        const bool lo_neg = g_left < 0.0;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (lo + hi);
          ((g(mid) < 0.0) == lo_neg ? lo : hi) = mid;
        }
        u = 0.5 * (lo + hi);
        break;
      }
      right = left;
      g_right = g_left;
    }
  }
  if (u < 0.0) return finish(false, "q^p has no boundary point of the required orientation below the monotone range");
  rep.boundary = u;
  if (u <= tol) return finish(false, "restrictive interval degenerates to a point");
  if (u >= v_last - tol) return finish(false, "restrictive interval is not proper");
  const double cp = qp(q, 0.0, p);
  if (std::abs(cp) > u + tol) {
    return finish(false, "q^p(0) = " + std::to_string(cp) + " leaves [-u, u], u = " + std::to_string(u));
  }
  return finish(true, "restrictive interval [-u, u] found");
}

double level_entropy(const EntropyEstimate& e, double zero_tol) { return e.value < zero_tol ? 0.0 : e.value; }

}  // namespace

RenormTower detect_renormalization(double a, int max_period, double tol, RenormOptions opts) {
  const QuadraticMap q(a, tol);
  if (max_period < 1 || max_period > 64) throw PreconditionError("max_period must lie in [1, 64]");
  RenormTower tower;
  tower.periods = {1};
  tower.boundaries = {1.0};
  tower.entropies = {level_entropy(adaptive_entropy_lap(q, opts.lap), opts.zero_tol)};

  int P = 1;
  double v_last = 1.0;
  for (int p = 2 * P; p <= max_period;) {
    CandidateReport rep = try_period(q, p, v_last, tol);
    if (!rep.symbolic_agrees) tower.ambiguous = true;
    tower.candidates.push_back(rep);
    if (rep.accepted) {
      const ReturnMap rm(q, p, rep.boundary, std::max(tol, 1e-9));
      tower.periods.push_back(p);
      tower.boundaries.push_back(rep.boundary);
      tower.entropies.push_back(level_entropy(adaptive_entropy_lap(rm, opts.lap), opts.zero_tol));
      P = p;
      v_last = rep.boundary;
      p = 2 * P;
    } else {
      p += P;
    }
  }
  return tower;
}

long admissible_n_min(const RenormTower& tower, int j, int i) {
  const auto& p = tower.periods;
  const auto& h = tower.entropies;
  if (j < 0 || j > i || i >= static_cast<int>(p.size())) throw PreconditionError("admissible_n_min needs 0 <= j <= i < levels");
  if (h[static_cast<std::size_t>(i)] <= 0.0) return 0;
  double need = 1.0;
  for (int k = j; k <= i; ++k) {
    need = std::max(need, static_cast<double>(p[static_cast<std::size_t>(i)]) / p[static_cast<std::size_t>(k)] *
                              (h[static_cast<std::size_t>(k)] / h[static_cast<std::size_t>(i)]));
  }
  return std::max(1L, static_cast<long>(std::ceil(need - 1e-9)));
}

std::vector<double> entropy_spectrum(const RenormTower& tower, double h_max, double dedup_tol) {
  check_tower_structure(tower);
  if (!(h_max > 0.0)) throw PreconditionError("entropy_spectrum needs h_max > 0");
  std::vector<double> vals{0.0};
  const int levels = static_cast<int>(tower.levels());
  for (int i = 0; i < levels; ++i) {
    const double hi = tower.entropies[static_cast<std::size_t>(i)];
    if (hi <= 0.0) continue;
    for (int j = 0; j <= i; ++j) {
      const double base = static_cast<double>(tower.periods[static_cast<std::size_t>(j)]) /
                          tower.periods[static_cast<std::size_t>(i)] * hi;
      for (long N = admissible_n_min(tower, j, i); N * base <= h_max + 1e-12; ++N) vals.push_back(N * base);
    }
  }
  std::sort(vals.begin(), vals.end());
  std::vector<double> out;
  for (double v : vals) {
    if (out.empty() || v - out.back() > dedup_tol) out.push_back(v);
  }
  return out;
}

Membership spectrum_membership(const RenormTower& tower, double value, double tol) {
  check_tower_structure(tower);
  if (!(value >= 0.0)) throw PreconditionError("spectrum_membership needs value >= 0");
  Membership m;
  if (value <= tol) {
    m.member = true;
    return m;
  }
  const int levels = static_cast<int>(tower.levels());
  for (int i = 0; i < levels; ++i) {
    const double hi = tower.entropies[static_cast<std::size_t>(i)];
    if (hi <= 0.0) continue;
    for (int j = 0; j <= i; ++j) {
      const double base = static_cast<double>(tower.periods[static_cast<std::size_t>(j)]) /
                          tower.periods[static_cast<std::size_t>(i)] * hi;
      const long N = std::lround(value / base);
      if (N >= admissible_n_min(tower, j, i) && std::abs(N * base - value) <= tol) {
        m.member = true;
        m.witness = SpectrumWitness{j, i, N};
        return m;
      }
    }
  }
  return m;
}

std::vector<std::vector<int>> rotation_orbits(int R, int p) {
  if (p < 1) throw PreconditionError("rotation_orbits needs p >= 1");
  std::vector<std::vector<int>> orbits;
  std::vector<bool> seen(static_cast<std::size_t>(p), false);
  const int r = ((R % p) + p) % p;
  for (int k = 0; k < p; ++k) {
    if (seen[static_cast<std::size_t>(k)]) continue;
    std::vector<int> orb;
    for (int l = k; !seen[static_cast<std::size_t>(l)]; l = (l + r) % p) {
      seen[static_cast<std::size_t>(l)] = true;
      orb.push_back(l);
    }
    std::sort(orb.begin(), orb.end());
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

double block_model_entropy(const RenormTower& tower, const BlockModel& model) {
  check_tower_structure(tower);
  if (model.level != 0) {
    throw PreconditionError("block models are supported with the first layer permuted (level 0) only");
  }
  if (model.R < 0) throw PreconditionError("block model needs R >= 0");
  const double shift_part = model.R * tower.entropies[0];
  if (model.powers.empty()) return shift_part;
  if (tower.levels() < 2) throw PreconditionError("block model with powers needs a tower of at least two levels");
  const int p = tower.periods[1];
  if (static_cast<int>(model.powers.size()) != p) {
    throw PreconditionError("block model needs one power per subcontinuum (" + std::to_string(p) + ")");
  }
  for (long N : model.powers) {
    if (N < 0) throw PreconditionError("block model powers must be nonnegative");
  }
  const auto expected = rotation_orbits(model.R, p);
  if (!model.orbits.empty()) {
    auto given = model.orbits;
    for (auto& o : given) std::sort(o.begin(), o.end());
    std::sort(given.begin(), given.end());
    auto want = expected;
    std::sort(want.begin(), want.end());
    if (given != want) throw PreconditionError("orbit partition is inconsistent with rotation by R");
  }
  double best = shift_part;
  for (const auto& orb : expected) {
    double sum = 0.0;
    for (int l : orb) sum += static_cast<double>(model.powers[static_cast<std::size_t>(l)]);
    best = std::max(best, sum / static_cast<double>(orb.size()) * tower.entropies[1]);
  }
  return best;
}

}  // namespace ilim
