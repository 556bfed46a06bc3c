#include "ilim/maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ilim/error.hpp"

namespace ilim {

namespace {

std::string fmt_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

TentMap::TentMap(double slope, double tol) : slope_(slope), tol_(tol) {
  if (!(slope > 1.0 && slope <= 2.0)) {
    throw DomainError("tent slope must lie in (1, 2], got " + fmt_value(slope));
  }
}

double TentMap::eval(double x) const {
  if (x < -tol_ || x > 1.0 + tol_) {
    throw DomainError("tent map evaluated outside [0,1]: " + fmt_value(x));
  }
  return apply(std::clamp(x, 0.0, 1.0));
}

Preimages TentMap::preimages(double y) const {
  Preimages out;
  if (y < -tol_) throw DomainError("tent preimage of negative value " + fmt_value(y));
  const double c1 = critical_value();
  if (y > c1 + tol_) return out;
  if (y >= c1 - tol_) {
    out.push(0.5);
    out.mark_double_root();
    return out;
  }
  y = std::max(y, 0.0);
  out.push(y / slope_);
  out.push(1.0 - y / slope_);
  return out;
}

bool TentMap::non_renormalizable() const { return slope_ > std::numbers::sqrt2; }

void TentMap::require_non_renormalizable() const {
  if (!non_renormalizable()) {
    throw PreconditionError("operation requires slope in (sqrt 2, 2], got " + fmt_value(slope_));
  }
}

QuadraticMap::QuadraticMap(double a, double tol) : a_(a), tol_(tol) {
  if (!(a > 0.0 && a <= 2.0)) {
    throw DomainError("quadratic parameter must lie in (0, 2], got " + fmt_value(a));
  }
}

double QuadraticMap::eval(double x) const {
  if (x < -1.0 - tol_ || x > 1.0 + tol_) {
    throw DomainError("quadratic map evaluated outside [-1,1]: " + fmt_value(x));
  }
  return apply(std::clamp(x, -1.0, 1.0));
}

Preimages QuadraticMap::preimages(double y) const {
  Preimages out;
  if (y > 1.0 + tol_) return out;
  if (y >= 1.0 - tol_) {
    out.push(0.0);
    out.mark_double_root();
    return out;
  }
  const double r = std::sqrt((1.0 - y) / a_);
  if (r > 1.0 + tol_) return out;
  const double x = std::min(r, 1.0);
  out.push(-x);
  out.push(x);
  return out;
}

double QuadraticMap::fixed_point() const { return (-1.0 + std::sqrt(1.0 + 4.0 * a_)) / (2.0 * a_); }

std::string SymbolSequence::str() const {
  std::string s;
  s.reserve(symbols.size());
  for (Symbol sym : symbols) s.push_back(static_cast<char>(sym));
  return s;
}

double tent_eval(const TentMap& map, double x) { return map.eval(x); }

std::vector<double> tent_preimages(const TentMap& map, double y) { return map.preimages(y).to_vector(); }

double quad_eval(const QuadraticMap& map, double x) { return map.eval(x); }

namespace {

template <class M>
std::vector<double> orbit_of_critical(const M& map, int n) {
  if (n < 1) throw PreconditionError("critical_orbit needs n >= 1");
  std::vector<double> orbit;
  orbit.reserve(static_cast<std::size_t>(n));
  double x = map.critical_point();
  for (int k = 0; k < n; ++k) {
    x = map.apply(x);
    orbit.push_back(x);
  }
  return orbit;
}

}  // namespace

std::vector<double> critical_orbit(const TentMap& map, int n) { return orbit_of_critical(map, n); }
std::vector<double> critical_orbit(const QuadraticMap& map, int n) { return orbit_of_critical(map, n); }

Interval core_interval(const TentMap& map) {
  const double s = map.slope();
  return {s - 0.5 * s * s, 0.5 * s};
}

}  // namespace ilim
