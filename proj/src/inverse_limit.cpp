#include "ilim/inverse_limit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ilim/error.hpp"

namespace ilim {

BackwardPoint::BackwardPoint(double slope, std::vector<double> coords) : slope_(slope), coords_(std::move(coords)) {
  if (!(slope > 1.0 && slope <= 2.0)) throw DomainError("slope must lie in (1, 2]");
  if (coords_.empty()) throw PreconditionError("a backward point needs at least one coordinate");
}

BackwardPoint BackwardPoint::zero(double slope, std::size_t depth) {
  return BackwardPoint(slope, std::vector<double>(depth + 1, 0.0));
}

double BackwardPoint::at(std::size_t k) const {
  if (k > depth()) {
    throw PreconditionError("projection index " + std::to_string(k) + " exceeds depth " + std::to_string(depth()));
  }
  return coords_[coords_.size() - 1 - k];
}

bool validate(const BackwardPoint& pt, double tol) {
  const TentMap t(pt.slope());
  const double c1 = t.critical_value();
  auto xs = pt.coords();
  for (double x : xs) {
    if (x < -tol || x > c1 + tol) return false;
  }
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double x = std::clamp(xs[i], 0.0, 1.0);
    if (std::abs(t.apply(x) - xs[i + 1]) > tol) return false;
  }
  return true;
}

double metric(const BackwardPoint& x, const BackwardPoint& y) {
  if (x.slope() != y.slope()) throw PreconditionError("metric: slopes differ");
  if (x.depth() != y.depth()) throw PreconditionError("metric: depths differ; truncate first");
  double sum = 0.0;
  double w = 1.0;
  for (std::size_t k = 0; k <= x.depth(); ++k) {
    sum += w * std::abs(x.at(k) - y.at(k));
    w *= 0.5;
  }
  return sum;
}

BackwardPoint truncate(const BackwardPoint& x, std::size_t depth) {
  if (depth > x.depth()) throw PreconditionError("truncate: requested depth exceeds point depth");
  auto xs = x.coords();
  return BackwardPoint(x.slope(), std::vector<double>(xs.end() - static_cast<std::ptrdiff_t>(depth + 1), xs.end()));
}

BackwardPoint shift(const BackwardPoint& x) {
  const TentMap t(x.slope());
  std::vector<double> v(x.coords().begin(), x.coords().end());
  v.push_back(t.apply(std::clamp(v.back(), 0.0, 1.0)));
  return BackwardPoint(x.slope(), std::move(v));
}

BackwardPoint unshift(const BackwardPoint& x) {
  if (x.depth() == 0) throw PreconditionError("unshift of a depth-zero point");
  std::vector<double> v(x.coords().begin(), x.coords().end() - 1);
  return BackwardPoint(x.slope(), std::move(v));
}

double projection(const BackwardPoint& x, std::size_t k) { return x.at(k); }

int Level::value() const {
  if (is_infinite()) throw PreconditionError("infinite level has no value");
  return value_;
}

std::string Level::str() const { return is_infinite() ? "inf" : std::to_string(value_); }

std::optional<Level> p_level(const BackwardPoint& x, std::size_t p, double tol) {
  if (p > x.depth()) throw PreconditionError("p_level: p exceeds depth");
  bool all_zero = true;
  for (double v : x.coords()) {
    if (v != 0.0) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) return Level::infinite();
  for (std::size_t k = p; k <= x.depth(); ++k) {
    if (std::abs(x.at(k) - 0.5) <= tol) return Level::finite(static_cast<int>(k - p));
  }
  return std::nullopt;
}

std::string FoldingPattern::str(const std::string& infinity_symbol) const {
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ' ';
    out += entries[i].is_infinite() ? infinity_symbol : std::to_string(entries[i].value());
  }
  return out;
}

bool FoldingPattern::alternates() const {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i] == entries[i - 1]) return false;
  }
  return true;
}

FoldingPattern FoldingPattern::prefix(std::size_t count) const {
  if (count > entries.size()) throw PreconditionError("prefix longer than pattern");
  return {std::vector<Level>(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(count))};
}

FoldingPattern parse_folding_pattern(const std::string& text) {
  std::istringstream in(text);
  FoldingPattern fp;
  std::string tok;
  while (in >> tok) {
    if (tok == "inf" || tok == "∞") {
      fp.entries.push_back(Level::infinite());
      continue;
    }
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v < 0) throw PreconditionError("bad folding-pattern entry '" + tok + "'");
    fp.entries.push_back(Level::finite(v));
  }
  return fp;
}

std::vector<PPointRecord> arc_p_points(double s, int n, LapOptions opts) {
  if (n < 1) throw PreconditionError("arc_to_salient needs n >= 1");
  const TentMap t(s, opts.tol);
  // Preimages outside [0, c_1] never return to c, so pruning there is exact.
  PreimageTree<Restricted<TentMap>> tree(Restricted<TentMap>(t, {0.0, t.critical_value()}, opts.tol), opts);
  for (int j = 0; j <= n; ++j) tree.grow();
  std::vector<PPointRecord> out;
  for (const auto& tp : tree.interior_points()) {
    if (tp.x > 0.5 + opts.tol) break;
    out.push_back({tp.x, tp.level, Level::finite(n - tp.level)});
  }
  return out;
}

FoldingPattern arc_to_salient(double s, int n, LapOptions opts) {
  FoldingPattern fp;
  fp.entries.push_back(Level::infinite());
  for (const auto& r : arc_p_points(s, n, opts)) fp.entries.push_back(r.level);
  return fp;
}

FoldingPattern folding_pattern_prefix(double s, std::size_t count, LapOptions opts) {
  if (count < 1) throw PreconditionError("folding_pattern_prefix needs count >= 1");
  std::optional<FoldingPattern> prev;
  for (int n = 1;; ++n) {
    if (n > 4096) throw ResourceError("folding pattern prefix did not stabilize by n = 4096");
    FoldingPattern fp = arc_to_salient(s, n, opts);
    if (fp.size() >= count) {
      FoldingPattern cur = fp.prefix(count);
      if (prev && *prev == cur) return cur;
      prev = std::move(cur);
    }
  }
}

std::vector<double> salient_positions(double s, int n, LapOptions opts) {
  std::vector<double> pos(static_cast<std::size_t>(n), -1.0);
  int found = 0;
  for (const auto& r : arc_p_points(s, n, opts)) {
    const int l = r.level.value();
    if (l >= 1 && pos[static_cast<std::size_t>(l - 1)] < 0.0) {
      pos[static_cast<std::size_t>(l - 1)] = r.position;
      ++found;
    }
  }
  if (found != n) throw DomainError("salient points missing; tolerance too coarse for this slope");
  return pos;
}

BackwardPoint arc_point(double s, double t, std::size_t param_index, std::size_t depth) {
  if (depth < param_index) throw PreconditionError("arc_point: depth below parametrization index");
  if (t < 0.0 || t > 0.5) throw DomainError("arc parameter must lie in [0, c]");
  const TentMap map(s);
  std::vector<double> v(depth + 1);
  // v is oldest first: v[depth - k] = x_{-k}.
  const std::size_t at = depth - param_index;
  v[at] = t;
  for (std::size_t i = at; i-- > 0;) v[i] = v[i + 1] / s;
  for (std::size_t i = at + 1; i <= depth; ++i) v[i] = map.apply(v[i - 1]);
  return BackwardPoint(s, std::move(v));
}

}  // namespace ilim
