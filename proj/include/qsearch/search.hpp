#pragma once

// Search procedures for an unknown number of marked elements, run against
// a query-counting black box. Every candidate is verified with one more
// query before it is reported, so the only possible error is reporting
// that nothing is marked.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "qsearch/analysis.hpp"
#include "qsearch/statevector.hpp"
#include "qsearch/subspace.hpp"

namespace qsearch {

using Rng = std::mt19937_64;

/// Hidden marked set plus a query counter. Algorithms see only size() and
/// queries(). Grover runs are simulated in the invariant plane and the
/// measurement picks the marked/unmarked class by its mass, then a uniform
/// element of that class; both classes stay uniform under every iteration,
/// so this has the same distribution as measuring the full state.
class BlackBoxOracle {
 public:
  /// Throws std::invalid_argument if N = 0 or a marked index is >= N.
  BlackBoxOracle(std::uint64_t n_total, MarkedSet marked);

  std::uint64_t size() const { return n_total_; }
  std::uint64_t queries() const { return queries_; }

  /// Classical evaluation of f(x). Costs 1.
  bool query(std::uint64_t x);

  /// n standard iterations from the uniform state, then a measurement. Costs n.
  std::uint64_t grover_measure(std::uint64_t n, Rng& rng);

  /// Generalized iterations from the uniform state, then a measurement.
  /// Costs steps.size(); a bare oracle step (diffusion phase 0) is one query.
  std::uint64_t grover_measure(std::span<const PhasePair> steps, Rng& rng);

 private:
  std::uint64_t sample_class(double p_marked, Rng& rng) const;

  std::uint64_t n_total_;
  MarkedSet marked_;
  SearchInstance instance_;
  RotationAngles angles_;
  std::uint64_t queries_ = 0;
};

enum class RunKind { Classical, Grover, Exact };

struct RunRecord {
  RunKind kind = RunKind::Grover;
  /// 1..3 for the improved algorithm's parts, 0 otherwise.
  int part = 0;
  /// Iterations for Grover runs, the assumed t for exact runs, 0 for classical probes.
  std::uint64_t parameter = 0;
  std::uint64_t candidate = 0;
  bool verified = false;
  /// Queries charged for this entry, verification included.
  std::uint64_t cost = 0;
};

struct SearchResult {
  std::optional<std::uint64_t> found;
  std::uint64_t queries_used = 0;
  std::uint64_t verification_queries = 0;
  std::vector<RunRecord> trace;
};

/// m uniform probes with replacement; stops at the first marked one.
SearchResult classical_check(BlackBoxOracle& oracle, std::uint64_t m, Rng& rng);

/// One Grover run of n iterations, a measurement and a verification query.
/// Costs n + 1.
RunRecord grover_measure_run(BlackBoxOracle& oracle, std::uint64_t n, Rng& rng);

/// Repeated runs with n uniform in {0, ..., ceil(pi/4 sqrt(N)) - 1},
/// ceil(ln eps / ln(1 - p2)) rounds at most.
SearchResult simple_search(BlackBoxOracle& oracle, double eps, Rng& rng);

/// Number of rounds simple_search performs before giving up.
std::uint64_t simple_rounds(double eps);

/// Part 1 tries t = 1..t0 in turn, part 2 makes 2 t0 runs with n uniform in
/// {0, ..., k-1}, part 3 probes classically. The plan must be for oracle.size().
SearchResult improved_search(BlackBoxOracle& oracle, const AlgorithmPlan& plan, Rng& rng);
SearchResult improved_search(BlackBoxOracle& oracle, double eps, Rng& rng,
                             const PlanOptions& options = {});

/// Classical probes needed so that a single marked element is missed with
/// probability at most eps.
std::uint64_t classical_checks(std::uint64_t n_total, double eps);

enum class Algorithm { Classical, Simple, Improved };

/// Throws std::invalid_argument for an unknown id.
Algorithm parse_algorithm(std::string_view id);
std::string_view algorithm_name(Algorithm algo);

/// Uniformly random t-subset of {0, ..., N-1}.
MarkedSet random_marked_set(std::uint64_t n_total, std::uint64_t t, Rng& rng);

/// Seed of the per-trial stream (splitmix64 of the master seed and index).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct MonteCarloConfig {
  Algorithm algorithm = Algorithm::Improved;
  std::uint64_t n_total = 1;
  std::uint64_t n_marked = 0;
  double eps = 0.05;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  PlanOptions plan_options;
};

struct MonteCarloSummary {
  MonteCarloConfig config;
  std::uint64_t failures = 0;
  /// Reported elements that were not marked. Must always be zero.
  std::uint64_t false_positives = 0;
  double failure_rate = 0.0;
  double mean_queries = 0.0;
  std::uint64_t max_queries = 0;
  /// Mean queries excluding verification queries.
  double mean_iteration_queries = 0.0;
};

/// Runs `trials` independent searches. Deterministic given the config:
/// trial i uses Rng(trial_seed(seed, i)) for both the hidden marked set and
/// the algorithm's randomness. Throws std::invalid_argument for trials = 0.
MonteCarloSummary monte_carlo(const MonteCarloConfig& config);

}  // namespace qsearch
