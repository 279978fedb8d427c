#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "qsearch/analysis.hpp"
#include "qsearch/search.hpp"

namespace qsearch::cli {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::vector<std::uint64_t> n_values;
  double eps = 0.05;
  bool no_part3 = false;
  std::optional<double> exact_threshold;
  std::string out_path;

  PlanOptions plan_options() const {
    PlanOptions o;
    o.include_part3 = !no_part3;
    o.exact_threshold = exact_threshold;
    return o;
  }
};

struct RunOptions {
  std::vector<std::string> algorithms{"improved"};
  std::vector<std::string> t_specs;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
};

struct CurveOptions {
  std::string kind;
  std::uint64_t k = 7;
  std::size_t samples = 1000;
  std::uint64_t t = 1;
  std::optional<std::uint64_t> n_max;
};

struct AnalyzeOptions {
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> t0;
};

// Writes to --out when given, otherwise to the tool's output stream.
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw IoError("write to '" + path + "' failed");
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

void cmd_plan(const CommonOptions& common, std::ostream& out) {
  if (common.n_values.size() != 1) throw std::invalid_argument("plan takes exactly one --n");
  const std::uint64_t n = common.n_values.front();
  const AlgorithmPlan p = plan(n, common.eps, common.plan_options());
  const QueryEstimate q = predicted_queries(n, common.eps);

  emit(common.out_path, out, [&](std::ostream& os) {
    os << "# plan N=" << n << " eps=" << format_real(common.eps)
       << " part3=" << format_bool(p.include_part3) << "\n";
    os << "# t0 = " << p.t0 << ", exact Grover in part 1: " << (p.use_exact ? "yes" : "no") << "\n";
    os << "# part 1: " << p.t0 << " runs, " << p.part1_queries() << " oracle queries\n";
    os << "# part 2: " << p.part2_runs << " runs, iterations uniform in [0, " << p.part2_k - 1
       << "]\n";
    os << "# part 3: " << p.part3_checks << " classical checks\n";
    os << "# worst-case success per part-2 run: " << format_real(p.p_used) << "\n";
    os << "# predicted queries: simple " << format_real(q.simple_T) << ", improved "
       << format_real(q.improved_T) << "\n";
    os << "N,eps,t0,use_exact,p_used,part1_queries,part2_runs,part2_k,part3_checks,"
          "iteration_budget,verification_budget,simple_T,improved_T,c_coefficient\n";
    os << n << ',' << format_real(common.eps) << ',' << p.t0 << ',' << format_bool(p.use_exact)
       << ',' << format_real(p.p_used) << ',' << p.part1_queries() << ',' << p.part2_runs << ','
       << p.part2_k << ',' << p.part3_checks << ',' << p.iteration_budget() << ','
       << p.verification_budget() << ',' << format_real(q.simple_T) << ','
       << format_real(q.improved_T) << ',' << format_real(q.c_coefficient) << "\n";
  });
}

std::vector<std::uint64_t> expand_marked_counts(const std::vector<std::string>& specs,
                                                std::uint64_t n, double eps,
                                                const PlanOptions& options) {
  std::vector<std::uint64_t> ts;
  for (const auto& spec : specs) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "worst") {
        const auto critical = critical_marked_counts(plan(n, eps, options));
        ts.insert(ts.end(), critical.begin(), critical.end());
        continue;
      }
      std::size_t used = 0;
      std::uint64_t t = 0;
      try {
        t = std::stoull(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size()) {
        throw std::invalid_argument("bad marked count '" + item + "'");
      }
      if (t > n) {
        throw std::invalid_argument("marked count " + item + " exceeds N = " + std::to_string(n));
      }
      ts.push_back(t);
    }
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

void cmd_run(const CommonOptions& common, const RunOptions& run, std::ostream& out) {
  if (common.n_values.empty()) throw std::invalid_argument("run needs --n");
  if (run.t_specs.empty()) throw std::invalid_argument("run needs --t");
  if (run.trials == 0) throw std::invalid_argument("--trials must be at least 1");
  std::vector<Algorithm> algos;
  for (const auto& a : run.algorithms) algos.push_back(parse_algorithm(a));
  // Validates eps before any work is done.
  std::ignore = predicted_queries(1, common.eps);

  std::vector<MonteCarloSummary> rows;
  for (const auto algo : algos) {
    for (const auto n : common.n_values) {
      for (const auto t : expand_marked_counts(run.t_specs, n, common.eps, common.plan_options())) {
        MonteCarloConfig cfg;
        cfg.algorithm = algo;
        cfg.n_total = n;
        cfg.n_marked = t;
        cfg.eps = common.eps;
        cfg.trials = run.trials;
        cfg.seed = run.seed;
        cfg.plan_options = common.plan_options();
        rows.push_back(monte_carlo(cfg));
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::make_tuple(algorithm_name(a.config.algorithm), a.config.n_total, a.config.n_marked) <
           std::make_tuple(algorithm_name(b.config.algorithm), b.config.n_total, b.config.n_marked);
  });

  emit(common.out_path, out, [&](std::ostream& os) {
    os << "# qsearch run algo=";
    for (std::size_t i = 0; i < run.algorithms.size(); ++i) os << (i ? ";" : "") << run.algorithms[i];
    os << " n=";
    for (std::size_t i = 0; i < common.n_values.size(); ++i) os << (i ? ";" : "") << common.n_values[i];
    os << " t=";
    for (std::size_t i = 0; i < run.t_specs.size(); ++i) os << (i ? ";" : "") << run.t_specs[i];
    os << " eps=" << format_real(common.eps) << " trials=" << run.trials << " seed=" << run.seed
       << " part3=" << format_bool(!common.no_part3) << " exact_threshold="
       << (common.exact_threshold ? format_real(*common.exact_threshold) : std::string("1/N"))
       << "\n";
    os << "algorithm,N,t,eps,trials,failures,failure_rate,mean_queries,max_queries,"
          "mean_iteration_queries,false_positives,seed\n";
    for (const auto& r : rows) {
      os << algorithm_name(r.config.algorithm) << ',' << r.config.n_total << ','
         << r.config.n_marked << ',' << format_real(r.config.eps) << ',' << r.config.trials << ','
         << r.failures << ',' << format_real(r.failure_rate) << ',' << format_real(r.mean_queries)
         << ',' << r.max_queries << ',' << format_real(r.mean_iteration_queries) << ','
         << r.false_positives << ',' << r.config.seed << "\n";
    }
  });
}

void cmd_curves(const CommonOptions& common, const CurveOptions& curve, std::ostream& out) {
  if (curve.kind == "p-vs-theta") {
    const auto series = curve_p_vs_theta(RandomRunLaw(curve.k), curve.samples);
    emit(common.out_path, out, [&](std::ostream& os) {
      os << "theta,p\n";
      for (const auto& [theta, p] : series) os << format_real(theta) << ',' << format_real(p) << "\n";
    });
    return;
  }
  if (curve.kind == "success-vs-n") {
    if (common.n_values.size() != 1) throw std::invalid_argument("success-vs-n takes exactly one --n");
    const std::uint64_t n = common.n_values.front();
    if (curve.t > n) throw std::invalid_argument("--t exceeds --n");
    const std::uint64_t n_max = curve.n_max.value_or(static_cast<std::uint64_t>(
        std::ceil(std::numbers::pi / 4 * std::sqrt(static_cast<double>(n)))));
    const auto series = curve_success_vs_iterations(n, curve.t, n_max);
    emit(common.out_path, out, [&](std::ostream& os) {
      os << "n,probability\n";
      for (const auto& [it, p] : series) os << it << ',' << format_real(p) << "\n";
    });
    return;
  }
  throw std::invalid_argument("unknown curve kind '" + curve.kind +
                              "' (expected p-vs-theta or success-vs-n)");
}

void cmd_analyze(const CommonOptions& common, const AnalyzeOptions& analyze, std::ostream& out) {
  const AsymptoticConstants& c = asymptotic_minima();
  emit(common.out_path, out, [&](std::ostream& os) {
    os << "# asymptotic minima of the random-run success probability\n";
    os << "x_edge,x_inner,p1,p2\n";
    os << format_real(c.x_edge) << ',' << format_real(c.x_inner) << ',' << format_real(c.p1) << ','
       << format_real(c.p2) << "\n";
    if (common.n_values.empty()) return;
    if (common.n_values.size() != 1) throw std::invalid_argument("analyze takes at most one --n");
    const std::uint64_t n = common.n_values.front();
    const AlgorithmPlan p = plan(n, common.eps, common.plan_options());
    const std::uint64_t k = analyze.k.value_or(p.part2_k);
    const std::uint64_t t0 = analyze.t0.value_or(p.t0);
    const WorstCaseReport report = worst_case_p(RandomRunLaw(k), t0, n);
    os << "# worst case over t in [" << t0 << ", " << n << "] for k = " << k << "\n";
    os << "p_min,t_at_min\n";
    os << format_real(report.p_min) << ',' << report.t_at_min << "\n";
    os << "# local minima\n";
    os << "t,theta,p\n";
    for (const auto& m : report.local_minima) {
      os << m.t << ',' << format_real(m.theta) << ',' << format_real(m.p) << "\n";
    }
  });
}

}  // namespace

std::string format_real(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  int decimals = 12;
  if (x != 0.0) {
    const int magnitude = static_cast<int>(std::floor(std::log10(std::abs(x))));
    decimals = std::max(12, 11 - magnitude);
  }
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(decimals) << x;
  return ss.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum search for an unknown number of marked elements: plans, "
               "Monte Carlo experiments and probability curves"};
  app.name("qsearch");
  app.require_subcommand(1);

  CommonOptions common;
  RunOptions run_opts;
  CurveOptions curve_opts;
  AnalyzeOptions analyze_opts;

  auto add_common = [&](CLI::App* sub, bool with_plan_flags) {
    sub->add_option("--n", common.n_values, "database size N (repeatable in run)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", common.out_path, "write output to PATH instead of stdout");
    if (with_plan_flags) {
      sub->add_option("--eps", common.eps, "maximal error probability")->capture_default_str();
      sub->add_flag("--no-part3", common.no_part3, "skip the classical third part");
      sub->add_option("--exact-threshold", common.exact_threshold,
                      "use exact Grover in part 1 when eps is below this (default 1/N)");
    }
  };

  auto* plan_cmd = app.add_subcommand("plan", "print the algorithm plan and predicted queries");
  add_common(plan_cmd, true);

  auto* run_cmd = app.add_subcommand("run", "Monte Carlo failure rates and query counts as CSV");
  add_common(run_cmd, true);
  run_cmd->add_option("--algo", run_opts.algorithms, "classical, simple or improved (repeatable)")
      ->capture_default_str();
  run_cmd->add_option("--t", run_opts.t_specs, "marked counts: list like 0,1,5 or 'worst'");
  run_cmd->add_option("--trials", run_opts.trials, "trials per row")->capture_default_str();
  run_cmd->add_option("--seed", run_opts.seed, "64-bit master seed")->capture_default_str();

  auto* curves_cmd = app.add_subcommand("curves", "emit probability curves as CSV");
  add_common(curves_cmd, false);
  curves_cmd->add_option("--kind", curve_opts.kind, "p-vs-theta or success-vs-n")->required();
  curves_cmd->add_option("--k", curve_opts.k, "range size of the random iteration count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  curves_cmd->add_option("--samples", curve_opts.samples, "number of theta samples")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}))
      ->capture_default_str();
  curves_cmd->add_option("--t", curve_opts.t, "marked count for success-vs-n")->capture_default_str();
  curves_cmd->add_option("--n-max", curve_opts.n_max, "last iteration count for success-vs-n");

  auto* analyze_cmd = app.add_subcommand("analyze", "asymptotic minima and worst-case report");
  add_common(analyze_cmd, true);
  analyze_cmd->add_option("--k", analyze_opts.k, "override the plan's part-2 range")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--t0", analyze_opts.t0, "override the lower end of the t range")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*plan_cmd) cmd_plan(common, out);
    if (*run_cmd) cmd_run(common, run_opts, out);
    if (*curves_cmd) cmd_curves(common, curve_opts, out);
    if (*analyze_cmd) cmd_analyze(common, analyze_opts, out);
  } catch (const IoError& e) {
    err << "qsearch: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "qsearch: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace qsearch::cli
