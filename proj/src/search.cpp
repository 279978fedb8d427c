#include "qsearch/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace qsearch {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t uniform_below(std::uint64_t n, Rng& rng) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

void append(SearchResult& result, const RunRecord& rec) {
  result.trace.push_back(rec);
  if (rec.kind != RunKind::Classical) ++result.verification_queries;
  if (rec.verified) result.found = rec.candidate;
}

RunRecord verified_run(BlackBoxOracle& oracle, RunKind kind, int part, std::uint64_t parameter,
                       std::uint64_t iteration_cost, std::uint64_t candidate) {
  RunRecord rec;
  rec.kind = kind;
  rec.part = part;
  rec.parameter = parameter;
  rec.candidate = candidate;
  rec.verified = oracle.query(candidate);
  rec.cost = iteration_cost + 1;
  return rec;
}

bool classical_probe(BlackBoxOracle& oracle, SearchResult& result, int part, Rng& rng) {
  RunRecord rec;
  rec.kind = RunKind::Classical;
  rec.part = part;
  rec.candidate = uniform_below(oracle.size(), rng);
  rec.verified = oracle.query(rec.candidate);
  rec.cost = 1;
  append(result, rec);
  return rec.verified;
}

}  // namespace

BlackBoxOracle::BlackBoxOracle(std::uint64_t n_total, MarkedSet marked)
    : n_total_(n_total),
      marked_(std::move(marked)),
      instance_(n_total, marked_.size()),
      angles_(rotation_angles(instance_)) {
  if (marked_.bound() > n_total_) {
    throw std::invalid_argument("marked index outside [0, " + std::to_string(n_total_) + ")");
  }
}

bool BlackBoxOracle::query(std::uint64_t x) {
  ++queries_;
  return marked_.contains(x);
}

std::uint64_t BlackBoxOracle::grover_measure(std::uint64_t n, Rng& rng) {
  queries_ += n;
  return sample_class(success_probability(state_after(instance_, n)), rng);
}

std::uint64_t BlackBoxOracle::grover_measure(std::span<const PhasePair> steps, Rng& rng) {
  queries_ += steps.size();
  return sample_class(success_probability(evolve(instance_, steps)), rng);
}

std::uint64_t BlackBoxOracle::sample_class(double p_marked, Rng& rng) const {
  const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const auto marked = marked_.indices();
  const std::uint64_t t = marked.size();
  if (t > 0 && (r < p_marked || t == n_total_)) return marked[uniform_below(t, rng)];
  // r-th unmarked index: the unmarked count below marked[j] is marked[j] - j.
  const std::uint64_t rank = uniform_below(n_total_ - t, rng);
  std::uint64_t lo = 0;
  std::uint64_t hi = t;
  while (lo < hi) {
    const std::uint64_t mid = (lo + hi) / 2;
    if (marked[mid] - mid <= rank) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return rank + lo;
}

SearchResult classical_check(BlackBoxOracle& oracle, std::uint64_t m, Rng& rng) {
  SearchResult result;
  const std::uint64_t before = oracle.queries();
  for (std::uint64_t i = 0; i < m; ++i) {
    if (classical_probe(oracle, result, 0, rng)) break;
  }
  result.queries_used = oracle.queries() - before;
  return result;
}

RunRecord grover_measure_run(BlackBoxOracle& oracle, std::uint64_t n, Rng& rng) {
  const std::uint64_t candidate = oracle.grover_measure(n, rng);
  return verified_run(oracle, RunKind::Grover, 0, n, n, candidate);
}

std::uint64_t simple_rounds(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const double rounds = std::log(eps) / std::log(1.0 - asymptotic_minima().p2);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(rounds - 1e-9)));
}

SearchResult simple_search(BlackBoxOracle& oracle, double eps, Rng& rng) {
  const std::uint64_t rounds = simple_rounds(eps);
  const auto k = static_cast<std::uint64_t>(
      std::max(1.0, std::ceil(kPi / 4 * std::sqrt(static_cast<double>(oracle.size())))));
  SearchResult result;
  const std::uint64_t before = oracle.queries();
  for (std::uint64_t r = 0; r < rounds && !result.found; ++r) {
    append(result, grover_measure_run(oracle, uniform_below(k, rng), rng));
  }
  result.queries_used = oracle.queries() - before;
  return result;
}

SearchResult improved_search(BlackBoxOracle& oracle, const AlgorithmPlan& plan, Rng& rng) {
  if (plan.n_total != oracle.size()) {
    throw std::invalid_argument("plan is for N = " + std::to_string(plan.n_total) +
                                ", oracle has N = " + std::to_string(oracle.size()));
  }
  SearchResult result;
  const std::uint64_t before = oracle.queries();
  auto done = [&] {
    result.queries_used = oracle.queries() - before;
    return result;
  };

  // Part 1: one run per assumed marked count. A failed verification means
  // the count is not t, and the sweep moves on.
  for (std::uint64_t t = 1; t <= plan.t0; ++t) {
    RunRecord rec;
    if (plan.use_exact) {
      const ExactSchedule& sched = plan.part1_exact[t - 1];
      const auto steps = sched.steps();
      const std::uint64_t candidate = oracle.grover_measure(steps, rng);
      rec = verified_run(oracle, RunKind::Exact, 1, t, steps.size(), candidate);
    } else {
      const std::uint64_t n = plan.part1_iterations[t - 1];
      const std::uint64_t candidate = oracle.grover_measure(n, rng);
      rec = verified_run(oracle, RunKind::Grover, 1, n, n, candidate);
    }
    append(result, rec);
    if (result.found) return done();
  }

  // Part 2: random iteration counts below the last part-1 run.
  for (std::uint64_t r = 0; r < plan.part2_runs; ++r) {
    RunRecord rec = grover_measure_run(oracle, uniform_below(plan.part2_k, rng), rng);
    rec.part = 2;
    append(result, rec);
    if (result.found) return done();
  }

  // Part 3: classical probes for the case of very few unmarked elements.
  for (std::uint64_t i = 0; i < plan.part3_checks; ++i) {
    if (classical_probe(oracle, result, 3, rng)) break;
  }
  return done();
}

SearchResult improved_search(BlackBoxOracle& oracle, double eps, Rng& rng,
                             const PlanOptions& options) {
  return improved_search(oracle, plan(oracle.size(), eps, options), rng);
}

std::uint64_t classical_checks(std::uint64_t n_total, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (n_total <= 1) return 1;
  const double m = std::log(eps) / std::log1p(-1.0 / static_cast<double>(n_total));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(m - 1e-9)));
}

Algorithm parse_algorithm(std::string_view id) {
  if (id == "classical") return Algorithm::Classical;
  if (id == "simple") return Algorithm::Simple;
  if (id == "improved") return Algorithm::Improved;
  throw std::invalid_argument("unknown algorithm '" + std::string(id) +
                              "' (expected classical, simple or improved)");
}

std::string_view algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::Classical: return "classical";
    case Algorithm::Simple: return "simple";
    case Algorithm::Improved: return "improved";
  }
  return "unknown";
}

MarkedSet random_marked_set(std::uint64_t n_total, std::uint64_t t, Rng& rng) {
  if (t > n_total) throw std::invalid_argument("cannot mark more than N elements");
  if (t == n_total) return MarkedSet::first(t);
  // Floyd's sampling.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(t);
  std::vector<std::uint64_t> out;
  out.reserve(t);
  for (std::uint64_t j = n_total - t; j < n_total; ++j) {
    const std::uint64_t v = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
    const std::uint64_t pick = chosen.insert(v).second ? v : j;
    if (pick == j) chosen.insert(j);
    out.push_back(pick);
  }
  return MarkedSet(std::move(out));
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  auto splitmix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return splitmix(splitmix(seed) ^ trial);
}

MonteCarloSummary monte_carlo(const MonteCarloConfig& config) {
  if (config.trials == 0) throw std::invalid_argument("Monte Carlo needs at least one trial");
  const SearchInstance inst(config.n_total, config.n_marked);
  std::optional<AlgorithmPlan> improved_plan;
  if (config.algorithm == Algorithm::Improved) {
    improved_plan = plan(config.n_total, config.eps, config.plan_options);
  }
  const std::uint64_t probes =
      config.algorithm == Algorithm::Classical ? classical_checks(config.n_total, config.eps) : 0;

  MonteCarloSummary s;
  s.config = config;
  double total_queries = 0.0;
  double total_iteration_queries = 0.0;
  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    Rng rng(trial_seed(config.seed, trial));
    const MarkedSet marked = random_marked_set(inst.n_total, inst.n_marked, rng);
    BlackBoxOracle oracle(inst.n_total, marked);
    SearchResult r;
    switch (config.algorithm) {
      case Algorithm::Classical: r = classical_check(oracle, probes, rng); break;
      case Algorithm::Simple: r = simple_search(oracle, config.eps, rng); break;
      case Algorithm::Improved: r = improved_search(oracle, *improved_plan, rng); break;
    }
    if (r.found && !marked.contains(*r.found)) ++s.false_positives;
    if (!r.found && inst.n_marked > 0) ++s.failures;
    total_queries += static_cast<double>(r.queries_used);
    total_iteration_queries += static_cast<double>(r.queries_used - r.verification_queries);
    s.max_queries = std::max(s.max_queries, r.queries_used);
  }
  const auto trials = static_cast<double>(config.trials);
  s.failure_rate = static_cast<double>(s.failures) / trials;
  s.mean_queries = total_queries / trials;
  s.mean_iteration_queries = total_iteration_queries / trials;
  return s;
}

}  // namespace qsearch
