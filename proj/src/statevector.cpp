#include "qsearch/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qsearch {

MarkedSet::MarkedSet(std::vector<std::uint64_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw std::invalid_argument("marked set contains duplicate indices");
  }
}

MarkedSet MarkedSet::first(std::uint64_t count) {
  std::vector<std::uint64_t> idx(count);
  std::iota(idx.begin(), idx.end(), std::uint64_t{0});
  return MarkedSet(std::move(idx));
}

bool MarkedSet::contains(std::uint64_t x) const {
  return std::binary_search(indices_.begin(), indices_.end(), x);
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

StateVector init_uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("state vector needs N >= 1");
  return StateVector(std::vector<Complex>(n, Complex{1.0 / std::sqrt(static_cast<double>(n))}));
}

StateVector basis_state(std::size_t n, std::size_t k) {
  if (k >= n) throw std::out_of_range("basis index out of range");
  std::vector<Complex> amps(n);
  amps[k] = 1.0;
  return StateVector(std::move(amps));
}

StateVector apply_oracle_phase(StateVector sv, const MarkedSet& marked, double phase) {
  if (marked.bound() > sv.size()) {
    throw std::out_of_range("marked index " + std::to_string(marked.bound() - 1) +
                            " outside state of size " + std::to_string(sv.size()));
  }
  const Complex f = std::polar(1.0, phase);
  for (auto i : marked.indices()) sv[i] *= f;
  return sv;
}

StateVector apply_diffusion(StateVector sv, double phase) {
  auto amps = sv.amplitudes();
  const Complex mean =
      std::accumulate(amps.begin(), amps.end(), Complex{}) / static_cast<double>(amps.size());
  if (phase == std::numbers::pi) {
    for (auto& a : amps) a = 2.0 * mean - a;
    return sv;
  }
  const Complex f = std::polar(1.0, phase);
  const Complex w = (1.0 - f) * mean;
  for (auto& a : amps) a = f * a + w;
  return sv;
}

StateVector apply_hadamard_all(StateVector sv) {
  const std::size_t n = sv.size();
  if (!std::has_single_bit(n) || n > (std::size_t{1} << 20)) {
    throw std::invalid_argument("Hadamard transform needs N = 2^l, l <= 20");
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t half = 1; half < n; half <<= 1) {
    for (std::size_t block = 0; block < n; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const Complex a = sv[i];
        const Complex b = sv[i + half];
        sv[i] = r * (a + b);
        sv[i + half] = r * (a - b);
      }
    }
  }
  return sv;
}

StateVector apply_nonzero_phase(StateVector sv, double phase) {
  const Complex f = std::polar(1.0, phase);
  for (std::size_t i = 1; i < sv.size(); ++i) sv[i] *= f;
  return sv;
}

StateVector apply_diffusion_hadamard(StateVector sv, double phase) {
  if (sv.size() > (std::size_t{1} << 10)) {
    throw std::invalid_argument("gate-level diffusion is limited to l <= 10 qubits");
  }
  return apply_hadamard_all(apply_nonzero_phase(apply_hadamard_all(std::move(sv)), phase));
}

StateVector apply_grover_step(StateVector sv, const MarkedSet& marked, const PhasePair& phases) {
  return apply_diffusion(apply_oracle_phase(std::move(sv), marked, phases.oracle_phase),
                         phases.diffusion_phase);
}

double marked_mass(const StateVector& sv, const MarkedSet& marked) {
  double sum = 0.0;
  for (auto i : marked.indices()) sum += std::norm(sv[i]);
  return sum;
}

double grover_success_probability(std::size_t n_total, const MarkedSet& marked, std::uint64_t n) {
  StateVector sv = init_uniform(n_total);
  for (std::uint64_t i = 0; i < n; ++i) sv = apply_grover_step(std::move(sv), marked, PhasePair::standard());
  return marked_mass(sv, marked);
}

SubspaceState project_to_subspace(const StateVector& sv, const MarkedSet& marked) {
  const std::size_t t = marked.size();
  const std::size_t u = sv.size() - t;
  Complex sum_marked{};
  for (auto i : marked.indices()) sum_marked += sv[i];
  const auto amps = sv.amplitudes();
  const Complex sum_all = std::accumulate(amps.begin(), amps.end(), Complex{});
  SubspaceState s{Complex{}, Complex{}};
  if (t > 0) s.amp_marked = sum_marked / std::sqrt(static_cast<double>(t));
  if (u > 0) s.amp_unmarked = (sum_all - sum_marked) / std::sqrt(static_cast<double>(u));
  return s;
}

std::size_t measure_sample(const StateVector& sv, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double r = uniform(rng) * sv.norm() * sv.norm();
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < sv.size(); ++i) {
    const double p = std::norm(sv[i]);
    if (p == 0.0) continue;
    acc += p;
    last_nonzero = i;
    if (r < acc) return i;
  }
  return last_nonzero;
}

}  // namespace qsearch
