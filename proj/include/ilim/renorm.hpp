#pragma once

// Renormalization towers of quadratic maps q_a, the admissible entropies of
// homeomorphisms of their inverse limits, and the block-model entropy.

#include <optional>
#include <string>
#include <vector>

#include "ilim/lap_entropy.hpp"
#include "ilim/maps.hpp"

namespace ilim {

/// The first-return map q_a^p on the restrictive interval J = [-u, u], with
/// J_k = q_a^k(J) the cycle of intervals.
class ReturnMap {
 public:
  ReturnMap(QuadraticMap q, int p, double u, double tol = 1e-9);

  int period() const { return p_; }
  double boundary() const { return u_; }
  const std::vector<Interval>& cycle() const { return cycle_; }

  double apply(double x) const;
  /// Preimages in J, pulled back p steps through the cycle J_{p-1}, ..., J_0.
  Preimages preimages(double y) const;
  double critical_point() const { return 0.0; }
  Interval domain() const { return {-u_, u_}; }

 private:
  QuadraticMap q_;
  int p_;
  double u_;
  double tol_;
  std::vector<Interval> cycle_;
};

/// Exact image of an interval under q_a.
Interval quad_image(const QuadraticMap& q, Interval I);

struct CandidateReport {
  int period = 0;
  bool accepted = false;
  /// Boundary u of the restrictive interval, when one was found.
  double boundary = 0.0;
  bool symbolic_agrees = true;
  std::string reason;
};

struct RenormTower {
  std::vector<int> periods{1};
  /// log s_i in nats.
  std::vector<double> entropies;
  /// Restrictive-interval boundaries u_i (u_0 = 1 for the whole interval).
  std::vector<double> boundaries;
  /// Set when the numeric and symbolic criteria disagreed for some candidate.
  bool ambiguous = false;
  std::vector<CandidateReport> candidates;

  std::size_t levels() const { return periods.size(); }
};

/// Structure only: p_0 = 1, p_i | p_{i+1}, matching lengths, log s_i >= 0.
void check_tower_structure(const RenormTower& tower);
/// PreconditionError unless p_0 = 1, p_i | p_{i+1}, log s_i in [0, log 2]
/// and log s_i >= (p_i / p_{i+1}) log s_{i+1} - slack.
void validate_tower(const RenormTower& tower, double slack = 1e-9);
RenormTower make_tower(std::vector<int> periods, std::vector<double> entropies);

struct RenormOptions {
  /// Entropies below this are reported as 0.
  double zero_tol = 0.01;
  AdaptiveLapOptions lap;
};

/// Checks candidate periods (multiples of the last accepted one, up to
/// max_period) for a restrictive interval, and measures the entropy of each
/// accepted return map.
RenormTower detect_renormalization(double a, int max_period, double tol = 1e-9, RenormOptions opts = {});

/// {0} ∪ {N (p_j/p_i) log s_i <= h_max : j <= i, N >= admissible_n_min(j, i)},
/// sorted and deduplicated at dedup_tol. Only the tower structure is checked.
std::vector<double> entropy_spectrum(const RenormTower& tower, double h_max, double dedup_tol = 1e-12);

/// Smallest admissible N for the pair (j, i); 0 when log s_i = 0.
long admissible_n_min(const RenormTower& tower, int j, int i);

struct SpectrumWitness {
  int j = 0;
  int i = 0;
  long N = 0;
};

struct Membership {
  bool member = false;
  std::optional<SpectrumWitness> witness;
};

Membership spectrum_membership(const RenormTower& tower, double value, double tol = 1e-9);

/// h permutes the p_1 subcontinua G_k of the first layer like rotation by R
/// and maps G_k to G_{k+R} as the N_k-th power of the shift.
struct BlockModel {
  int level = 0;
  int R = 0;
  std::vector<long> powers;
  /// Optional explicit orbit partition; checked against the rotation.
  std::vector<std::vector<int>> orbits;
};

/// Orbits of k -> k + R mod p on {0, ..., p-1}, each sorted, ordered by
/// smallest element.
std::vector<std::vector<int>> rotation_orbits(int R, int p);

/// max(R log s_0, max_O (1/|O|) sum_{l in O} N_l log s_1).
double block_model_entropy(const RenormTower& tower, const BlockModel& model);

}  // namespace ilim
