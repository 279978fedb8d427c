#pragma once

// Grover dynamics restricted to the two-dimensional plane spanned by the
// uniform superposition of unmarked elements and the uniform superposition
// of marked elements. Every standard iteration maps this plane to itself, so
// a search over N elements with t marked ones is fully described by a pair
// of complex amplitudes.

#include <complex>
#include <cstdint>
#include <numbers>
#include <span>

namespace qsearch {

using Complex = std::complex<double>;

/// Database size N and number of marked elements t.
struct SearchInstance {
  std::uint64_t n_total = 1;
  std::uint64_t n_marked = 0;

  /// Throws std::invalid_argument unless 1 <= n_total and n_marked <= n_total.
  SearchInstance(std::uint64_t n_total, std::uint64_t n_marked);

  std::uint64_t n_unmarked() const { return n_total - n_marked; }
  bool operator==(const SearchInstance&) const = default;
};

/// Rotation angle of one standard iteration and the initial angle.
/// theta0 is always exactly theta / 2.
struct RotationAngles {
  double theta = 0.0;
  double theta0 = 0.0;
};

/// Amplitudes on the normalized uniform-unmarked and uniform-marked states.
/// For t = 0 (t = N) the marked (unmarked) amplitude is identically zero.
struct SubspaceState {
  Complex amp_unmarked{1.0, 0.0};
  Complex amp_marked{0.0, 0.0};

  double norm() const;
};

/// Phases of one generalized iteration: the oracle multiplies marked
/// elements by exp(i * oracle_phase), then the diffusion multiplies the
/// complement of the uniform state by exp(i * diffusion_phase).
/// A diffusion phase of 0 makes the diffusion the identity, which is how a
/// bare oracle query (phase fix) is expressed.
struct PhasePair {
  double oracle_phase = std::numbers::pi;
  double diffusion_phase = std::numbers::pi;

  static constexpr PhasePair standard() { return {std::numbers::pi, std::numbers::pi}; }
  static constexpr PhasePair oracle_only(double phase) { return {phase, 0.0}; }
  bool is_standard() const;
  bool operator==(const PhasePair&) const = default;
};

/// 2x2 complex matrix acting on (amp_unmarked, amp_marked), row major.
struct IterationMatrix {
  Complex uu, um, mu, mm;

  SubspaceState apply(const SubspaceState& s) const;
};

RotationAngles rotation_angles(const SearchInstance& inst);

SubspaceState initial_state(const SearchInstance& inst);

/// Restriction of one generalized iteration to the invariant plane. Exact,
/// no global phase dropped: standard phases give the rotation matrix by theta.
IterationMatrix iteration_matrix(const RotationAngles& angles, const PhasePair& phases);

/// Throws std::invalid_argument if |state| deviates from 1 by more than 1e-9.
SubspaceState apply_iteration(const SubspaceState& state, const RotationAngles& angles,
                              const PhasePair& phases);

/// Real rotation of the plane by `angle`. n standard iterations equal
/// rotate(state, n * theta), also for complex amplitudes.
SubspaceState rotate(const SubspaceState& state, double angle);

/// Closed form after n standard iterations: (cos(theta0 + n theta), sin(theta0 + n theta)).
SubspaceState state_after(const SearchInstance& inst, std::uint64_t n);

double success_probability(const SubspaceState& state);

/// sin^2(theta0 + n theta), the marked mass after n standard iterations.
double success_probability_after(const RotationAngles& angles, std::uint64_t n);

/// Runs a sequence of generalized iterations from the initial state of `inst`.
SubspaceState evolve(const SearchInstance& inst, std::span<const PhasePair> steps);

/// |<a|b>|, which is 1 exactly when the states agree up to a global phase.
double overlap(const SubspaceState& a, const SubspaceState& b);

}  // namespace qsearch
