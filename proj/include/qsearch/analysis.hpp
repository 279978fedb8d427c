#pragma once

// Success probability of Grover runs with a uniformly random iteration
// count, its worst case over the number of marked elements, and the
// resulting schedule and query budget of the search for an unknown number
// of marked elements.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qsearch/exact_grover.hpp"
#include "qsearch/subspace.hpp"

namespace qsearch {

/// Iteration count drawn uniformly from {0, ..., k-1}.
struct RandomRunLaw {
  std::uint64_t k = 1;

  /// Throws std::invalid_argument for k = 0.
  explicit RandomRunLaw(std::uint64_t k);
};

/// Average of sin^2(theta/2 + n theta) over n in {0, ..., k-1}, i.e.
/// (1 - sin(2k theta) / (2k sin theta)) / 2, continued to 0 at theta = 0
/// and to 1 at theta = pi.
double avg_success(RandomRunLaw law, double theta);

struct LocalMinimum {
  std::uint64_t t = 0;
  double theta = 0.0;
  double p = 0.0;
};

struct WorstCaseReport {
  double p_min = 1.0;
  std::uint64_t t_at_min = 0;
  std::vector<LocalMinimum> local_minima;
};

/// Minimum of avg_success(k, theta(t)) over integer t in [t_lo, t_hi]
/// (t_hi defaults to N). Exact scan for N <= 2^16; above that a grid in
/// theta locates every basin and an integer golden-section search refines
/// it. Ties resolve to the lowest t. Throws std::invalid_argument for an
/// empty range or t_lo = 0.
WorstCaseReport worst_case_p(RandomRunLaw law, std::uint64_t t_lo, std::uint64_t n_total,
                             std::optional<std::uint64_t> t_hi = std::nullopt);

/// Limits k -> infinity of the two relevant local minima of avg_success.
/// x_edge and x_inner are the first two positive roots of tan x = x.
struct AsymptoticConstants {
  double x_edge = 0.0;
  double x_inner = 0.0;
  /// Interior minimum (1 - sin(x_inner)/x_inner) / 2.
  double p1 = 0.0;
  /// Minimum next to theta = pi, (1 + sin(x_edge)/x_edge) / 2.
  double p2 = 0.0;
};

const AsymptoticConstants& asymptotic_minima();

struct PlanOptions {
  bool include_part3 = true;
  /// Exact Grover is used in part 1 when eps is below this; default 1/N.
  std::optional<double> exact_threshold;
  ExactMode exact_mode = ExactMode::PhaseFix;
};

struct AlgorithmPlan {
  std::uint64_t n_total = 1;
  double eps = 0.0;
  std::uint64_t t0 = 1;
  bool include_part3 = true;
  bool use_exact = false;
  double p_used = 0.0;
  /// Iteration count of the part-1 run for t = 1..t0 (standard Grover).
  std::vector<std::uint64_t> part1_iterations;
  /// Exact schedules for t = 1..t0, filled only when use_exact.
  std::vector<ExactSchedule> part1_exact;
  std::uint64_t part2_runs = 0;
  std::uint64_t part2_k = 1;
  std::uint64_t part3_checks = 0;

  /// Oracle queries of part 1 excluding verification.
  std::uint64_t part1_queries() const;
  /// Worst-case oracle queries of the whole plan excluding verification.
  std::uint64_t iteration_budget() const;
  /// Number of verification queries when every run fails.
  std::uint64_t verification_budget() const;
};

/// Throws std::invalid_argument unless 0 < eps < 1 and N >= 1.
AlgorithmPlan plan(std::uint64_t n_total, double eps, const PlanOptions& options = {});

/// Nearest-integer iteration count maximizing sin^2(theta0 + n theta).
std::uint64_t part1_iterations(const SearchInstance& inst);

struct QueryEstimate {
  double simple_T = 0.0;
  double improved_T = 0.0;
  /// eps ~ exp(-c T^2) for the improved algorithm.
  double c_coefficient = 0.0;
};

QueryEstimate predicted_queries(std::uint64_t n_total, double eps);

struct Part1Cost {
  double exact_sum = 0.0;
  /// (pi/2) sqrt(N t0), the integral approximation of the sum.
  double analytic = 0.0;
  double relative_gap = 0.0;
};

/// Summed part-1 query count for t = 1..t0; with use_exact the exact
/// schedules' total_queries are summed instead of nearest-integer counts.
Part1Cost part1_cost(std::uint64_t n_total, std::uint64_t t0, bool use_exact = false);

/// n_samples points theta = pi (i+1)/(n_samples+1), p = avg_success(k, theta).
std::vector<std::pair<double, double>> curve_p_vs_theta(RandomRunLaw law, std::size_t n_samples);

/// (n, sin^2(theta0 + n theta)) for n = 0..n_max.
std::vector<std::pair<std::uint64_t, double>> curve_success_vs_iterations(std::uint64_t n_total,
                                                                          std::uint64_t t,
                                                                          std::uint64_t n_max);

/// Marked counts where a plan is most likely to fail: 0, 1, t0, t0+1, N/2,
/// the part-2 interior minimum below N/2, the minimum above N/2, N-1, N.
/// Sorted, deduplicated, within [0, N].
std::vector<std::uint64_t> critical_marked_counts(const AlgorithmPlan& plan);

}  // namespace qsearch
