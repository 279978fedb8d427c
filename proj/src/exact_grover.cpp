#include "qsearch/exact_grover.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace qsearch {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResidualTolerance = 1e-12;
constexpr double kSnapTolerance = 1e-12;
// Slack on the ceiling so that exact boundary cases (e.g. N = 4t) are not
// pushed to the next integer by rounding noise.
constexpr double kCeilSlack = 1e-9;

// Root of a monotone function on [lo, hi] by bisection. The caller has
// checked that f(lo) and f(hi) bracket zero.
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  const bool increasing = f(lo) < f(hi);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double v = f(mid);
    if (std::abs(v) < 0.1 * kResidualTolerance || mid == lo || mid == hi) return mid;
    if ((v < 0.0) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double snap_to_pi(double phase) { return std::abs(phase - kPi) < kSnapTolerance ? kPi : phase; }

// Tuned first iteration with a standard diffusion: its marked amplitude
// moves continuously from sin(theta0) (oracle phase 0, state unchanged) to
// sin(3 theta0) (oracle phase pi). Returns nullopt if `target` lies outside
// that range.
std::optional<double> leading_oracle_phase(const SearchInstance& inst, double target) {
  const RotationAngles angles = rotation_angles(inst);
  const SubspaceState start = initial_state(inst);
  auto residual = [&](double phi) {
    return std::abs(iteration_matrix(angles, {phi, kPi}).apply(start).amp_marked) - target;
  };
  const double r0 = residual(0.0);
  const double r1 = residual(kPi);
  if (std::abs(r1) < kResidualTolerance) return kPi;
  if (std::abs(r0) < kResidualTolerance) return 0.0;
  if ((r0 < 0.0) == (r1 < 0.0)) return std::nullopt;
  return bisect(residual, 0.0, kPi);
}

// Phases for one iteration that sends the real state (cos a, sin a) fully
// into the marked subspace. With w = 1 - e^{i chi} and
// z = cos(a) sin(theta0) - cos(theta0) sin(a) e^{i phi}, the unmarked output
// vanishes when w = cos(a) / (sin(theta0) z). Such a w lies on the circle
// |w - 1| = 1 exactly when Re(sin(theta0) z / cos(a)) = 1/2, which fixes phi;
// chi then follows from w.
std::optional<PhasePair> matched_phases(const RotationAngles& angles, double a) {
  const double ca = std::cos(a);
  const double sa = std::sin(a);
  const double c0 = std::cos(angles.theta0);
  const double s0 = std::sin(angles.theta0);
  auto z = [&](double phi) { return ca * s0 - c0 * sa * std::polar(1.0, phi); };
  auto matching = [&](double phi) { return s0 * z(phi).real() / ca - 0.5; };

  double phi = 0.0;
  const double g0 = matching(0.0);
  const double g1 = matching(kPi);
  if (std::abs(g1) < kSnapTolerance) {
    phi = kPi;
  } else if (std::abs(g0) < kSnapTolerance) {
    phi = 0.0;
  } else if ((g0 < 0.0) != (g1 < 0.0)) {
    phi = bisect(matching, 0.0, kPi);
  } else {
    return std::nullopt;
  }
  const Complex w = ca / (s0 * z(phi));
  const double chi = std::arg(1.0 - w);
  return PhasePair{snap_to_pi(phi), snap_to_pi(chi < 0.0 ? chi + 2.0 * kPi : chi)};
}

ExactSchedule finish(ExactSchedule s) {
  s.total_queries = s.standard_iterations + 1 + (s.phase_fix ? 1 : 0);
  const double mass = success_probability(evolve(s.instance, s.steps()));
  if (mass < 1.0 - 1e-10) {
    throw std::logic_error("exact schedule for N=" + std::to_string(s.instance.n_total) +
                           ", t=" + std::to_string(s.instance.n_marked) +
                           " reaches success probability " + std::to_string(mass));
  }
  return s;
}

ExactSchedule matched_schedule(const SearchInstance& inst, std::uint64_t iterations) {
  const RotationAngles angles = rotation_angles(inst);
  ExactSchedule s;
  s.instance = inst;
  s.standard_iterations = iterations == 0 ? 0 : iterations - 1;
  s.modified_first = false;
  const double a = angles.theta0 + static_cast<double>(s.standard_iterations) * angles.theta;
  const auto phases = matched_phases(angles, a);
  if (!phases) {
    throw std::logic_error("no matched phases for N=" + std::to_string(inst.n_total) +
                           ", t=" + std::to_string(inst.n_marked));
  }
  s.modified_phases = *phases;
  return finish(s);
}

}  // namespace

std::vector<PhasePair> ExactSchedule::steps() const {
  std::vector<PhasePair> out;
  out.reserve(total_queries);
  auto append_modified = [&] {
    out.push_back(modified_phases);
    if (phase_fix) out.push_back(PhasePair::oracle_only(*phase_fix));
  };
  if (modified_first) append_modified();
  out.insert(out.end(), standard_iterations, PhasePair::standard());
  if (!modified_first) append_modified();
  return out;
}

std::uint64_t min_iterations(const SearchInstance& inst) {
  if (inst.n_marked == 0) {
    throw std::invalid_argument("exact Grover needs at least one marked element");
  }
  const RotationAngles a = rotation_angles(inst);
  const double x = (kPi / 2 - a.theta0) / a.theta;
  return static_cast<std::uint64_t>(std::max(0.0, std::ceil(x - kCeilSlack)));
}

ExactSchedule exact_schedule(const SearchInstance& inst, ExactMode mode) {
  const std::uint64_t iterations = min_iterations(inst);

  if (inst.n_marked == inst.n_total) {
    // Already entirely marked; an untuned identity step keeps the schedule shape.
    ExactSchedule s;
    s.instance = inst;
    s.modified_phases = {0.0, kPi};
    return finish(s);
  }

  if (mode == ExactMode::Matched || iterations <= 1) return matched_schedule(inst, iterations);

  // Tune the first iteration so that the remaining J - 1 standard rotations
  // land exactly on pi/2.
  const RotationAngles angles = rotation_angles(inst);
  const double remaining = static_cast<double>(iterations - 1) * angles.theta;
  const double target = std::sin(kPi / 2 - remaining);
  const auto phi = leading_oracle_phase(inst, target);
  if (!phi) return matched_schedule(inst, iterations);

  ExactSchedule s;
  s.instance = inst;
  s.modified_first = true;
  s.standard_iterations = iterations - 1;
  s.modified_phases = {snap_to_pi(*phi), kPi};
  const SubspaceState after = iteration_matrix(angles, s.modified_phases).apply(initial_state(inst));
  double fix = std::arg(after.amp_unmarked) - std::arg(after.amp_marked);
  if (fix < 0.0) fix += 2.0 * kPi;
  if (std::abs(fix) > kSnapTolerance && std::abs(fix - 2.0 * kPi) > kSnapTolerance) {
    s.phase_fix = fix;
  }
  return finish(s);
}

double run_exact(const SearchInstance& inst, const ExactSchedule& sched) {
  if (!(sched.instance == inst)) {
    throw std::invalid_argument("schedule was built for N=" +
                                std::to_string(sched.instance.n_total) +
                                ", t=" + std::to_string(sched.instance.n_marked));
  }
  return run_exact(inst.n_total, MarkedSet::first(inst.n_marked), sched);
}

double run_exact(std::uint64_t n_total, const MarkedSet& marked, const ExactSchedule& sched) {
  StateVector sv = init_uniform(n_total);
  for (const auto& step : sched.steps()) sv = apply_grover_step(std::move(sv), marked, step);
  return marked_mass(sv, marked);
}

}  // namespace qsearch
