#include "qsearch/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsearch {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kExactScanLimit = std::uint64_t{1} << 16;
constexpr double kCeilSlack = 1e-9;

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("eps must lie in (0, 1), got " + std::to_string(eps));
  }
}

void check_n(std::uint64_t n_total) {
  if (n_total == 0) throw std::invalid_argument("N must be at least 1");
}

std::uint64_t ceil_count(double x) {
  return static_cast<std::uint64_t>(std::max(0.0, std::ceil(x - kCeilSlack)));
}

// sin x - x cos x has the same positive roots as tan x - x without the poles.
double tan_fixed_point(double lo, double hi) {
  auto f = [](double x) { return std::sin(x) - x * std::cos(x); };
  const bool increasing = f(lo) < f(hi);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if ((f(mid) < 0.0) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

class MarkedCountProfile {
 public:
  MarkedCountProfile(RandomRunLaw law, std::uint64_t n_total) : law_(law), n_(n_total) {}

  double theta(std::uint64_t t) const { return rotation_angles({n_, t}).theta; }
  double p(std::uint64_t t) const { return avg_success(law_, theta(t)); }

  // Nearest integer t with theta(t) = theta, computed from the closer end.
  std::uint64_t t_at(double theta) const {
    const double n = static_cast<double>(n_);
    std::uint64_t t;
    if (theta <= kPi / 2) {
      const double s = std::sin(theta / 2);
      t = static_cast<std::uint64_t>(std::llround(n * s * s));
    } else {
      const double c = std::cos(theta / 2);
      t = n_ - std::min<std::uint64_t>(n_, static_cast<std::uint64_t>(std::llround(n * c * c)));
    }
    return std::min(t, n_);
  }

  // Golden-section search for the minimum of p over integers in [lo, hi],
  // assuming a single basin.
  std::uint64_t refine(std::uint64_t lo, std::uint64_t hi) const {
    constexpr double kInvPhi = 0.6180339887498949;
    while (hi - lo > 4) {
      const auto span = static_cast<double>(hi - lo);
      const std::uint64_t m1 = hi - static_cast<std::uint64_t>(std::llround(kInvPhi * span));
      const std::uint64_t m2 = lo + static_cast<std::uint64_t>(std::llround(kInvPhi * span));
      if (m1 >= m2) break;
      if (p(m1) <= p(m2)) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
    std::uint64_t best = lo;
    double best_p = p(lo);
    for (std::uint64_t t = lo + 1; t <= hi; ++t) {
      const double v = p(t);
      if (v < best_p) {
        best_p = v;
        best = t;
      }
    }
    return best;
  }

 private:
  RandomRunLaw law_;
  std::uint64_t n_;
};

void add_minimum(WorstCaseReport& r, const MarkedCountProfile& prof, std::uint64_t t) {
  const double p = prof.p(t);
  r.local_minima.push_back({t, prof.theta(t), p});
  if (p < r.p_min || (p == r.p_min && t < r.t_at_min)) {
    r.p_min = p;
    r.t_at_min = t;
  }
}

WorstCaseReport exact_scan(const MarkedCountProfile& prof, std::uint64_t lo, std::uint64_t hi) {
  WorstCaseReport r;
  r.p_min = 2.0;
  std::vector<double> p;
  p.reserve(hi - lo + 1);
  for (std::uint64_t t = lo; t <= hi; ++t) p.push_back(prof.p(t));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool below_left = i == 0 || p[i] < p[i - 1];
    const bool below_right = i + 1 == p.size() || p[i] <= p[i + 1];
    if (below_left && below_right) add_minimum(r, prof, lo + i);
  }
  return r;
}

WorstCaseReport grid_scan(const MarkedCountProfile& prof, RandomRunLaw law, std::uint64_t lo,
                          std::uint64_t hi) {
  const double th_lo = prof.theta(lo);
  const double th_hi = prof.theta(hi);
  // The average oscillates with period pi/k in theta; 32 samples per period
  // separate neighbouring basins.
  const double periods = (th_hi - th_lo) * static_cast<double>(law.k) / kPi;
  const auto samples = static_cast<std::size_t>(std::max(4096.0, 32.0 * periods));

  std::vector<std::uint64_t> ts{lo};
  for (std::size_t i = 1; i < samples; ++i) {
    const double th = th_lo + (th_hi - th_lo) * static_cast<double>(i) / static_cast<double>(samples);
    const std::uint64_t t = std::clamp(prof.t_at(th), lo, hi);
    if (t > ts.back()) ts.push_back(t);
  }
  if (hi > ts.back()) ts.push_back(hi);

  std::vector<double> p(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) p[i] = prof.p(ts[i]);

  WorstCaseReport r;
  r.p_min = 2.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const bool below_left = i == 0 || p[i] < p[i - 1];
    const bool below_right = i + 1 == ts.size() || p[i] <= p[i + 1];
    if (!(below_left && below_right)) continue;
    const std::uint64_t a = i == 0 ? ts[i] : ts[i - 1];
    const std::uint64_t b = i + 1 == ts.size() ? ts[i] : ts[i + 1];
    add_minimum(r, prof, prof.refine(a, b));
  }
  return r;
}

}  // namespace

RandomRunLaw::RandomRunLaw(std::uint64_t k) : k(k) {
  if (k == 0) throw std::invalid_argument("random run law needs k >= 1");
}

double avg_success(RandomRunLaw law, double theta) {
  if (theta <= 0.0) return 0.0;
  if (theta >= kPi) return 1.0;
  const double two_k = 2.0 * static_cast<double>(law.k);
  // Above pi/2 work with the distance to pi, which is what the ratio
  // depends on there: sin(2k(pi - d)) / sin(pi - d) = -sin(2kd) / sin d.
  double ratio;
  if (theta <= kPi / 2) {
    ratio = std::sin(two_k * theta) / (two_k * std::sin(theta));
  } else {
    const double d = kPi - theta;
    ratio = -std::sin(two_k * d) / (two_k * std::sin(d));
  }
  return 0.5 * (1.0 - ratio);
}

WorstCaseReport worst_case_p(RandomRunLaw law, std::uint64_t t_lo, std::uint64_t n_total,
                             std::optional<std::uint64_t> t_hi) {
  check_n(n_total);
  const std::uint64_t hi = t_hi.value_or(n_total);
  if (t_lo == 0 || t_lo > hi || hi > n_total) {
    throw std::invalid_argument("empty or invalid marked-count range [" + std::to_string(t_lo) +
                                ", " + std::to_string(hi) + "] for N = " +
                                std::to_string(n_total));
  }
  const MarkedCountProfile prof(law, n_total);
  if (n_total <= kExactScanLimit) return exact_scan(prof, t_lo, hi);
  return grid_scan(prof, law, t_lo, hi);
}

const AsymptoticConstants& asymptotic_minima() {
  static const AsymptoticConstants constants = [] {
    AsymptoticConstants c;
    c.x_edge = tan_fixed_point(kPi, 1.5 * kPi);
    c.x_inner = tan_fixed_point(2.0 * kPi, 2.5 * kPi);
    c.p1 = 0.5 * (1.0 - std::sin(c.x_inner) / c.x_inner);
    c.p2 = 0.5 * (1.0 + std::sin(c.x_edge) / c.x_edge);
    return c;
  }();
  return constants;
}

std::uint64_t part1_iterations(const SearchInstance& inst) {
  if (inst.n_marked == 0) throw std::invalid_argument("part-1 run needs t >= 1");
  const RotationAngles a = rotation_angles(inst);
  return static_cast<std::uint64_t>(std::llround((kPi / 2 - a.theta0) / a.theta));
}

std::uint64_t AlgorithmPlan::part1_queries() const {
  std::uint64_t sum = 0;
  if (use_exact) {
    for (const auto& s : part1_exact) sum += s.total_queries;
  } else {
    for (auto n : part1_iterations) sum += n;
  }
  return sum;
}

std::uint64_t AlgorithmPlan::iteration_budget() const {
  return part1_queries() + part2_runs * (part2_k - 1) + part3_checks;
}

std::uint64_t AlgorithmPlan::verification_budget() const { return t0 + part2_runs; }

AlgorithmPlan plan(std::uint64_t n_total, double eps, const PlanOptions& options) {
  check_n(n_total);
  check_eps(eps);
  const auto& c = asymptotic_minima();
  AlgorithmPlan p;
  p.n_total = n_total;
  p.eps = eps;
  p.include_part3 = options.include_part3;
  p.p_used = options.include_part3 ? c.p1 : c.p2;
  // eps = (1 - p)^(2 t0) solved for t0.
  p.t0 = std::clamp<std::uint64_t>(ceil_count(std::log(eps) / (2.0 * std::log(1.0 - p.p_used))), 1,
                                   n_total);
  const double threshold = options.exact_threshold.value_or(1.0 / static_cast<double>(n_total));
  p.use_exact = eps < threshold;

  p.part1_iterations.reserve(p.t0);
  for (std::uint64_t t = 1; t <= p.t0; ++t) {
    p.part1_iterations.push_back(part1_iterations({n_total, t}));
    if (p.use_exact) p.part1_exact.push_back(exact_schedule({n_total, t}, options.exact_mode));
  }

  p.part2_runs = 2 * p.t0;
  p.part2_k = static_cast<std::uint64_t>(
      std::ceil(kPi / 4 * std::sqrt(static_cast<double>(n_total) / static_cast<double>(p.t0))));
  p.part2_k = std::max<std::uint64_t>(p.part2_k, 1);
  // Each uniform classical probe hits a marked element with probability
  // t/N >= 1/2 once t >= N/2.
  p.part3_checks = options.include_part3 ? ceil_count(std::log(eps) / std::log(0.5)) : 0;
  return p;
}

QueryEstimate predicted_queries(std::uint64_t n_total, double eps) {
  check_n(n_total);
  check_eps(eps);
  const auto& c = asymptotic_minima();
  const double root_n = std::sqrt(static_cast<double>(n_total));
  const double log_eps = std::log(eps);
  QueryEstimate q;
  q.simple_T = kPi / 4 * root_n * log_eps / std::log(1.0 - c.p2);
  q.improved_T = kPi * root_n * std::sqrt(log_eps / (2.0 * std::log(1.0 - c.p1)));
  q.c_coefficient = 2.0 * std::log(1.0 / (1.0 - c.p1)) / (kPi * kPi * static_cast<double>(n_total));
  return q;
}

Part1Cost part1_cost(std::uint64_t n_total, std::uint64_t t0, bool use_exact) {
  check_n(n_total);
  if (t0 == 0 || t0 > n_total) {
    throw std::invalid_argument("t0 must lie in [1, N], got " + std::to_string(t0));
  }
  Part1Cost c;
  for (std::uint64_t t = 1; t <= t0; ++t) {
    const SearchInstance inst{n_total, t};
    c.exact_sum += static_cast<double>(use_exact ? exact_schedule(inst).total_queries
                                                 : part1_iterations(inst));
  }
  c.analytic = kPi / 2 * std::sqrt(static_cast<double>(n_total) * static_cast<double>(t0));
  c.relative_gap = std::abs(c.exact_sum - c.analytic) / c.analytic;
  return c;
}

std::vector<std::pair<double, double>> curve_p_vs_theta(RandomRunLaw law, std::size_t n_samples) {
  if (n_samples < 2) throw std::invalid_argument("curve needs at least 2 samples");
  std::vector<std::pair<double, double>> out;
  out.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double theta = kPi * static_cast<double>(i + 1) / static_cast<double>(n_samples + 1);
    out.emplace_back(theta, avg_success(law, theta));
  }
  return out;
}

std::vector<std::pair<std::uint64_t, double>> curve_success_vs_iterations(std::uint64_t n_total,
                                                                          std::uint64_t t,
                                                                          std::uint64_t n_max) {
  const SearchInstance inst{n_total, t};
  std::vector<std::pair<std::uint64_t, double>> out;
  out.reserve(n_max + 1);
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    out.emplace_back(n, success_probability(state_after(inst, n)));
  }
  return out;
}

std::vector<std::uint64_t> critical_marked_counts(const AlgorithmPlan& plan) {
  const std::uint64_t n = plan.n_total;
  const std::uint64_t half = n / 2;
  std::vector<std::uint64_t> ts{0, 1, plan.t0, plan.t0 + 1, half, n - 1, n};
  const RandomRunLaw law(plan.part2_k);
  const std::uint64_t lo = std::min(plan.t0 + 1, n);
  if (lo <= half) ts.push_back(worst_case_p(law, lo, n, half).t_at_min);
  if (half + 1 <= n) ts.push_back(worst_case_p(law, std::max(lo, half + 1), n).t_at_min);
  std::erase_if(ts, [n](std::uint64_t t) { return t > n; });
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

}  // namespace qsearch
