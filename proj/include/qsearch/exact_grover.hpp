#pragma once

// Grover search with success probability exactly one for a known number of
// marked elements. Standard Grover overshoots or undershoots pi/2 by a
// fraction of a rotation; one iteration with tuned phases absorbs the
// remainder.

#include <cstdint>
#include <optional>
#include <vector>

#include "qsearch/statevector.hpp"
#include "qsearch/subspace.hpp"

namespace qsearch {

enum class ExactMode {
  /// Tuned oracle phase with a standard diffusion on the first iteration,
  /// then one bare oracle query to realign the relative phase.
  PhaseFix,
  /// Oracle and diffusion phases tuned together on the last iteration so
  /// that no realignment query is needed.
  Matched,
};

struct ExactSchedule {
  SearchInstance instance{1, 1};
  std::uint64_t standard_iterations = 0;
  PhasePair modified_phases;
  /// Oracle phase of the extra realignment query, when one is needed.
  std::optional<double> phase_fix;
  /// Order of execution. true: modified, [fix], standard...;
  /// false: standard..., modified, [fix].
  bool modified_first = true;
  std::uint64_t total_queries = 0;

  /// The schedule as a flat list of iterations. The phase fix appears as
  /// PhasePair::oracle_only(fix).
  std::vector<PhasePair> steps() const;
};

/// Smallest J with theta0 + J * theta >= pi/2. Throws for t = 0.
std::uint64_t min_iterations(const SearchInstance& inst);

/// Builds a schedule that reaches the marked subspace with certainty.
/// total_queries never exceeds min_iterations + 1. Throws
/// std::invalid_argument for t = 0 and std::logic_error if the constructed
/// schedule misses success probability 1 by more than 1e-10.
ExactSchedule exact_schedule(const SearchInstance& inst, ExactMode mode = ExactMode::PhaseFix);

/// Statevector simulation of the schedule with the first t indices marked.
/// Throws std::invalid_argument if the schedule was built for another instance.
double run_exact(const SearchInstance& inst, const ExactSchedule& sched);

/// Statevector simulation with an explicit marked set; the set may differ
/// in size from the schedule's t (used to check the "t or 0" promise).
double run_exact(std::uint64_t n_total, const MarkedSet& marked, const ExactSchedule& sched);

}  // namespace qsearch
