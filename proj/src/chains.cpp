#include "ilim/chains.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ilim/error.hpp"

namespace ilim {

namespace {

void sort_unique(std::vector<double>& v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  v = std::move(out);
}

}  // namespace

IntervalChain::IntervalChain(double slope, int p, std::vector<double> breakpoints)
    : slope_(slope), p_(p), breakpoints_(std::move(breakpoints)) {
  const TentMap t(slope);
  if (p < 0) throw PreconditionError("chain index p must be nonnegative");
  if (breakpoints_.size() < 2) throw PreconditionError("a chain needs at least two breakpoints");
  if (breakpoints_.front() != 0.0 || std::abs(breakpoints_.back() - t.critical_value()) > kDefaultTol) {
    throw PreconditionError("chain breakpoints must run from 0 to c_1");
  }
  for (std::size_t j = 1; j < breakpoints_.size(); ++j) {
    const double gap = breakpoints_[j] - breakpoints_[j - 1];
    if (!(gap > 0.0)) throw PreconditionError("chain breakpoints must be strictly increasing");
    mesh_ = std::max(mesh_, gap);
  }
}

double IntervalChain::kspace_mesh_bound() const {
  double head = 0.0;
  for (int k = 0; k <= p_; ++k) head += std::ldexp(std::pow(slope_, p_ - k), -k);
  return mesh_ * head + 0.5 * slope_ * std::ldexp(1.0, -p_);
}

bool IntervalChain::chainable() const {
  // Closed links [b_j, b_{j+1}] share exactly the endpoint b_{j+1} with their
  // right neighbour; strict monotonicity keeps non-neighbours disjoint.
  for (std::size_t j = 0; j + 2 < breakpoints_.size(); ++j) {
    if (!(breakpoints_[j + 1] < breakpoints_[j + 2])) return false;
  }
  return true;
}

IntervalChain build_chain(double s, int p, double eps, LapOptions opts) {
  const TentMap t(s, opts.tol);
  if (p < 0) throw PreconditionError("build_chain needs p >= 0");
  if (!(eps > 0.0)) throw PreconditionError("build_chain needs eps > 0");
  const double c1 = t.critical_value();

  int m = 0;
  while (!(std::ldexp(c1, -m) < 0.5 * eps)) ++m;
  if (m > 40) throw ResourceError("build_chain: eps too small");
  const std::uint64_t grid = std::uint64_t{1} << m;
  if (grid + 1 > opts.max_nodes) throw ResourceError("build_chain: grid exceeds node cap");

  std::vector<double> level;
  level.reserve(grid + 2);
  for (std::uint64_t k = 0; k <= grid; ++k) level.push_back(c1 * static_cast<double>(k) / static_cast<double>(grid));
  level.push_back(0.5);
  sort_unique(level, opts.tol);

  std::vector<double> all = level;
  const Restricted<TentMap> r(t, {0.0, c1}, opts.tol);
  for (int i = 1; i <= p; ++i) {
    std::vector<double> next;
    next.reserve(level.size() * 2);
    for (double y : level) {
      for (double x : r.preimages(y)) next.push_back(x);
    }
    sort_unique(next, opts.tol);
    if (all.size() + next.size() > opts.max_nodes) {
      throw ResourceError("build_chain exceeded " + std::to_string(opts.max_nodes) + " breakpoints");
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  sort_unique(all, opts.tol);
  all.front() = 0.0;
  all.back() = c1;
  return IntervalChain(s, p, std::move(all));
}

std::size_t link_of_value(const IntervalChain& chain, double x, double tol) {
  const auto& b = chain.breakpoints();
  // Values within tol below a breakpoint count as the breakpoint itself.
  auto it = std::upper_bound(b.begin(), b.end(), x + tol);
  if (it == b.begin()) return 0;
  const auto j = static_cast<std::size_t>(it - b.begin()) - 1;
  return std::min(j, chain.link_count() - 1);
}

std::size_t link_of(const IntervalChain& chain, const BackwardPoint& x, double tol) {
  if (static_cast<std::size_t>(chain.p()) > x.depth()) throw PreconditionError("link_of: chain index exceeds point depth");
  return link_of_value(chain, x.at(static_cast<std::size_t>(chain.p())), tol);
}

bool refines(const IntervalChain& fine, const IntervalChain& coarse, double tol) {
  if (fine.slope() != coarse.slope()) throw PreconditionError("refines: slopes differ");
  if (fine.p() != coarse.p() + 1) {
    throw PreconditionError("refines: fine chain must have index p + 1, got " + std::to_string(fine.p()) + " vs " +
                            std::to_string(coarse.p()));
  }
  const TentMap t(fine.slope());
  const auto& cb = coarse.breakpoints();
  for (std::size_t j = 0; j < fine.link_count(); ++j) {
    const Interval I = fine.link(j);
    double lo = std::min(t.apply(I.lo), t.apply(I.hi));
    double hi = std::max(t.apply(I.lo), t.apply(I.hi));
    if (I.lo < 0.5 - tol && I.hi > 0.5 + tol) hi = t.critical_value();
    // Some coarse breakpoint strictly inside (lo, hi) splits the image.
    auto it = std::upper_bound(cb.begin(), cb.end(), lo + tol);
    if (it != cb.end() && *it < hi - tol) return false;
  }
  return true;
}

AlignmentReport verify_plevel_alignment(double s, int q, int p, int R, int n, LapOptions opts) {
  const TentMap t(s, opts.tol);
  t.require_non_renormalizable();
  if (p < 0 || q < p || R < 0 || n < 1) {
    throw PreconditionError("verify_plevel_alignment needs q >= p >= 0, R >= 0, n >= 1");
  }
  AlignmentReport rep;
  rep.M = R + q - p;
  const int top = n + rep.M;
  const std::vector<double> salient = salient_positions(s, top, opts);
  const auto depth = static_cast<std::size_t>(std::max(q + n, p + top) + 4);
  const IntervalChain chain = build_chain(s, p, 1.0, opts);

  for (const auto& rec : arc_p_points(s, n, opts)) {
    const int l = rec.level.value();
    if (l + rep.M < 1) continue;
    BackwardPoint x = arc_point(s, rec.position, static_cast<std::size_t>(q + n), depth);
    for (int k = 0; k < R; ++k) x = shift(x);
    const BackwardPoint sal = arc_point(s, salient[static_cast<std::size_t>(l + rep.M - 1)],
                                        static_cast<std::size_t>(p + top), depth);
    ++rep.checked;
    const auto lv = p_level(x, static_cast<std::size_t>(p), 1e-9);
    const bool ok = lv && !lv->is_infinite() && lv->value() == l + rep.M && link_of(chain, x) == link_of(chain, sal);
    ok ? ++rep.passed : ++rep.failed;
  }
  return rep;
}

}  // namespace ilim
