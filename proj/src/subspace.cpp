#include "qsearch/subspace.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsearch {

namespace {

constexpr double kNormTolerance = 1e-9;

// cos(theta0), sin(theta0) with the degenerate axes snapped to exact values.
std::pair<double, double> uniform_components(const RotationAngles& angles) {
  if (angles.theta0 == 0.0) return {1.0, 0.0};
  if (angles.theta0 == std::numbers::pi / 2) return {0.0, 1.0};
  return {std::cos(angles.theta0), std::sin(angles.theta0)};
}

}  // namespace

SearchInstance::SearchInstance(std::uint64_t n_total, std::uint64_t n_marked)
    : n_total(n_total), n_marked(n_marked) {
  if (n_total < 1) throw std::invalid_argument("search instance needs N >= 1");
  if (n_marked > n_total) {
    throw std::invalid_argument("marked count " + std::to_string(n_marked) +
                                " exceeds N = " + std::to_string(n_total));
  }
}

double SubspaceState::norm() const {
  return std::sqrt(std::norm(amp_unmarked) + std::norm(amp_marked));
}

bool PhasePair::is_standard() const {
  return oracle_phase == std::numbers::pi && diffusion_phase == std::numbers::pi;
}

SubspaceState IterationMatrix::apply(const SubspaceState& s) const {
  return {uu * s.amp_unmarked + um * s.amp_marked, mu * s.amp_unmarked + mm * s.amp_marked};
}

RotationAngles rotation_angles(const SearchInstance& inst) {
  const double n = static_cast<double>(inst.n_total);
  const double t = static_cast<double>(inst.n_marked);
  const double u = static_cast<double>(inst.n_unmarked());
  // N - 2t and t(N - t) are formed from exact integers before dividing.
  const double sin_theta = 2.0 * std::sqrt(t) * std::sqrt(u) / n;
  const double cos_theta = (u - t) / n;
  RotationAngles a;
  a.theta = std::atan2(sin_theta, cos_theta);
  a.theta0 = a.theta / 2.0;
  return a;
}

SubspaceState initial_state(const SearchInstance& inst) {
  const auto [c, s] = uniform_components(rotation_angles(inst));
  return {Complex{c, 0.0}, Complex{s, 0.0}};
}

IterationMatrix iteration_matrix(const RotationAngles& angles, const PhasePair& phases) {
  if (phases.is_standard()) {
    const double c = std::cos(angles.theta);
    const double s = std::sin(angles.theta);
    return {Complex{c}, Complex{-s}, Complex{s}, Complex{c}};
  }
  // Diffusion D = e^{i chi} I + (1 - e^{i chi}) |s><s|, oracle O = diag(1, e^{i phi});
  // the iteration is D * O.
  const auto [c, s] = uniform_components(angles);
  const Complex e_chi = std::polar(1.0, phases.diffusion_phase);
  const Complex e_phi = std::polar(1.0, phases.oracle_phase);
  const Complex w = 1.0 - e_chi;
  return {e_chi + w * c * c, w * c * s * e_phi, w * c * s, (e_chi + w * s * s) * e_phi};
}

SubspaceState apply_iteration(const SubspaceState& state, const RotationAngles& angles,
                              const PhasePair& phases) {
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw std::invalid_argument("subspace state is not normalized (norm " +
                                std::to_string(norm) + ")");
  }
  return iteration_matrix(angles, phases).apply(state);
}

SubspaceState rotate(const SubspaceState& state, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * state.amp_unmarked - s * state.amp_marked,
          s * state.amp_unmarked + c * state.amp_marked};
}

SubspaceState state_after(const SearchInstance& inst, std::uint64_t n) {
  if (inst.n_marked == 0) return {Complex{1.0}, Complex{0.0}};
  const RotationAngles a = rotation_angles(inst);
  const double angle = a.theta0 + static_cast<double>(n) * a.theta;
  if (inst.n_marked == inst.n_total) {
    // theta0 = pi/2, theta = pi: the sign alternates, the unmarked part is absent.
    return {Complex{0.0}, Complex{n % 2 == 0 ? 1.0 : -1.0}};
  }
  return {Complex{std::cos(angle)}, Complex{std::sin(angle)}};
}

double success_probability(const SubspaceState& state) { return std::norm(state.amp_marked); }

double success_probability_after(const RotationAngles& angles, std::uint64_t n) {
  const double s = std::sin(angles.theta0 + static_cast<double>(n) * angles.theta);
  return s * s;
}

SubspaceState evolve(const SearchInstance& inst, std::span<const PhasePair> steps) {
  const RotationAngles angles = rotation_angles(inst);
  const IterationMatrix standard = iteration_matrix(angles, PhasePair::standard());
  SubspaceState state = initial_state(inst);
  for (const auto& step : steps) {
    state = step.is_standard() ? standard.apply(state) : iteration_matrix(angles, step).apply(state);
  }
  if (inst.n_marked == 0) state.amp_marked = 0.0;
  if (inst.n_marked == inst.n_total) state.amp_unmarked = 0.0;
  return state;
}

double overlap(const SubspaceState& a, const SubspaceState& b) {
  return std::abs(std::conj(a.amp_unmarked) * b.amp_unmarked +
                  std::conj(a.amp_marked) * b.amp_marked);
}

}  // namespace qsearch
