#pragma once

// Dense N-amplitude simulation of Grover iterations. Slow on purpose: it is
// the brute-force reference every closed form in the subspace model is
// checked against. Intended for N up to about 2^20.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qsearch/subspace.hpp"

namespace qsearch {

/// Sorted set of distinct marked indices.
class MarkedSet {
 public:
  MarkedSet() = default;
  /// Throws std::invalid_argument on duplicate indices.
  explicit MarkedSet(std::vector<std::uint64_t> indices);

  /// The first `count` indices, 0..count-1.
  static MarkedSet first(std::uint64_t count);

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::uint64_t x) const;
  /// Largest index plus one, or 0 for the empty set.
  std::uint64_t bound() const { return indices_.empty() ? 0 : indices_.back() + 1; }
  std::span<const std::uint64_t> indices() const { return indices_; }

 private:
  std::vector<std::uint64_t> indices_;
};

class StateVector {
 public:
  explicit StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {}

  std::size_t size() const { return amps_.size(); }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  double norm() const;

 private:
  std::vector<Complex> amps_;
};

/// Every amplitude 1/sqrt(N). Throws std::invalid_argument for N = 0.
StateVector init_uniform(std::size_t n);

/// Basis state e_k of dimension n.
StateVector basis_state(std::size_t n, std::size_t k);

/// Multiplies each marked amplitude by exp(i * phase).
/// Throws std::out_of_range if a marked index is not below sv.size().
StateVector apply_oracle_phase(StateVector sv, const MarkedSet& marked, double phase);

/// |s><s| + exp(i * phase) (I - |s><s|) with |s> the uniform state. Works for
/// any N; phase = pi is the reflection about the uniform state.
StateVector apply_diffusion(StateVector sv, double phase);

/// H on every qubit. Requires size() = 2^l with l <= 20.
StateVector apply_hadamard_all(StateVector sv);

/// Multiplies every amplitude except index 0 by exp(i * phase).
StateVector apply_nonzero_phase(StateVector sv, double phase);

/// Gate-level diffusion: H^l, phase on x != 0, H^l. Cross-check only,
/// restricted to N = 2^l with l <= 10.
StateVector apply_diffusion_hadamard(StateVector sv, double phase);

/// One generalized iteration: oracle phase, then diffusion.
StateVector apply_grover_step(StateVector sv, const MarkedSet& marked, const PhasePair& phases);

/// Sum of |amp|^2 over the marked indices.
double marked_mass(const StateVector& sv, const MarkedSet& marked);

/// Runs n standard iterations from the uniform state and returns the marked mass.
double grover_success_probability(std::size_t n_total, const MarkedSet& marked, std::uint64_t n);

/// Projection onto the normalized uniform-unmarked and uniform-marked states.
SubspaceState project_to_subspace(const StateVector& sv, const MarkedSet& marked);

/// Draws an index with probability |amp|^2.
std::size_t measure_sample(const StateVector& sv, std::mt19937_64& rng);

}  // namespace qsearch
