#pragma once

// Tent maps T_s(x) = min(sx, s(1-x)) on [0,1] and quadratic maps
// q_a(x) = 1 - a x^2 on [-1,1]: evaluation, preimages, critical orbits and
// kneading itineraries.

#include <array>
#include <concepts>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ilim {

inline constexpr double kDefaultTol = 1e-12;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// At most two preimages, ascending. A double root at the critical point is
/// stored once with `double_root` set.
class Preimages {
 public:
  Preimages() = default;

  void push(double x) { pts_[count_++] = x; }
  void mark_double_root() { double_root_ = true; }

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool double_root() const { return double_root_; }
  double operator[](std::size_t i) const { return pts_[i]; }
  const double* begin() const { return pts_.data(); }
  const double* end() const { return pts_.data() + count_; }
  std::vector<double> to_vector() const { return {begin(), end()}; }

 private:
  std::array<double, 2> pts_{};
  std::size_t count_ = 0;
  bool double_root_ = false;
};

class TentMap {
 public:
  /// Throws DomainError unless slope lies in (1, 2].
  explicit TentMap(double slope, double tol = kDefaultTol);

  double slope() const { return slope_; }
  double tol() const { return tol_; }
  double critical_point() const { return 0.5; }
  double critical_value() const { return 0.5 * slope_; }
  Interval domain() const { return {0.0, 1.0}; }

  /// Unchecked evaluation; callers guarantee x in the domain.
  double apply(double x) const { return x <= 0.5 ? slope_ * x : slope_ * (1.0 - x); }
  /// Checked evaluation (DomainError outside [0,1] beyond tolerance).
  double eval(double x) const;
  /// {y/s, 1 - y/s}, ascending. Empty when y > c_1.
  Preimages preimages(double y) const;

  /// True for s in (sqrt 2, 2], where the map is not renormalizable.
  bool non_renormalizable() const;
  /// Throws PreconditionError when the slope is at most sqrt 2.
  void require_non_renormalizable() const;

 private:
  double slope_;
  double tol_;
};

class QuadraticMap {
 public:
  /// Throws DomainError unless a lies in (0, 2].
  explicit QuadraticMap(double a, double tol = kDefaultTol);

  double parameter() const { return a_; }
  double tol() const { return tol_; }
  double critical_point() const { return 0.0; }
  double critical_value() const { return 1.0; }
  Interval domain() const { return {-1.0, 1.0}; }

  double apply(double x) const { return 1.0 - a_ * x * x; }
  double eval(double x) const;
  /// +-sqrt((1-y)/a) intersected with [-1,1].
  Preimages preimages(double y) const;
  /// d/dx q_a = -2 a x.
  double derivative(double x) const { return -2.0 * a_ * x; }
  /// Right fixed point (-1 + sqrt(1+4a)) / 2a; orientation reversing.
  double fixed_point() const;

 private:
  double a_;
  double tol_;
};

/// Anything with a single turning point on a compact interval and computable
/// branch inverses. Used for lap counting and renormalization.
template <class M>
concept UnimodalMap = requires(const M& m, double x) {
  { m.apply(x) } -> std::convertible_to<double>;
  { m.preimages(x) } -> std::same_as<Preimages>;
  { m.critical_point() } -> std::convertible_to<double>;
  { m.domain() } -> std::same_as<Interval>;
};

/// A map restricted to a forward-invariant subinterval of its domain.
template <UnimodalMap M>
class Restricted {
 public:
  Restricted(M map, Interval sub, double tol = kDefaultTol) : map_(std::move(map)), sub_(sub), tol_(tol) {}

  double apply(double x) const { return map_.apply(x); }
  double critical_point() const { return map_.critical_point(); }
  Interval domain() const { return sub_; }
  Preimages preimages(double y) const {
    Preimages out;
    Preimages all = map_.preimages(y);
    for (double x : all) {
      if (sub_.contains(x, tol_)) out.push(x);
    }
    if (all.double_root() && !out.empty()) out.mark_double_root();
    return out;
  }
  const M& base() const { return map_; }

 private:
  M map_;
  Interval sub_;
  double tol_;
};

enum class Symbol : char { L = 'L', C = 'C', R = 'R' };

struct SymbolSequence {
  std::vector<Symbol> symbols;

  std::size_t size() const { return symbols.size(); }
  Symbol operator[](std::size_t i) const { return symbols[i]; }
  /// "CRLL"
  std::string str() const;
  friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;
};

double tent_eval(const TentMap& map, double x);
std::vector<double> tent_preimages(const TentMap& map, double y);
double quad_eval(const QuadraticMap& map, double x);

/// [c_1, ..., c_n] with c_k = f^k(critical point).
std::vector<double> critical_orbit(const TentMap& map, int n);
std::vector<double> critical_orbit(const QuadraticMap& map, int n);

/// Classifies x, f(x), ..., f^{n-1}(x) against the critical point. |x - c| <= tol
/// gives C.
template <UnimodalMap M>
SymbolSequence itinerary(const M& map, double x, int n, double tol = kDefaultTol) {
  SymbolSequence seq;
  seq.symbols.reserve(static_cast<std::size_t>(n > 0 ? n : 0));
  const double c = map.critical_point();
  for (int k = 0; k < n; ++k) {
    if (x - c > tol) {
      seq.symbols.push_back(Symbol::R);
    } else if (c - x > tol) {
      seq.symbols.push_back(Symbol::L);
    } else {
      seq.symbols.push_back(Symbol::C);
    }
    x = map.apply(x);
  }
  return seq;
}

/// The core [c_2, c_1] = [s - s^2/2, s/2].
Interval core_interval(const TentMap& map);

}  // namespace ilim
