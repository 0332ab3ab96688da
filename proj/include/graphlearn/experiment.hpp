#pragma once

// Configuration-driven experiment protocol:
//   for each trial: sample a ground-truth graph, generate smooth signals on
//   it (unit-spectral-radius Laplacian), add relative Gaussian noise,
//   compute pairwise distances; then learn graphs with every model over its
//   parameter grid and evaluate against the truth. For each model and
//   metric, the grid point with the best trial-averaged value is reported.
//
// Seeding: trial t uses derive_seed(master_seed, t), from which the graph,
// signal and noise streams are derived with fixed purpose tags; signal
// column j further derives its own seed. Jobs are pure functions of those
// seeds, so serial and parallel runs produce bitwise-identical results.
//
// Distances are rescaled to unit mean before the grid search (the learned
// models' solutions are equivariant under that rescaling and all reported
// metrics are scale invariant), which keeps fixed default grids meaningful
// across signal types.

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "graphlearn/edge_space.hpp"
#include "graphlearn/generators.hpp"
#include "graphlearn/io.hpp"
#include "graphlearn/metrics.hpp"
#include "graphlearn/random.hpp"
#include "graphlearn/solvers.hpp"
#include "graphlearn/spectral.hpp"

namespace graphlearn {

[[nodiscard]] inline std::vector<double> logspace(double exp_lo, double exp_hi, int count) {
  if (count < 1) throw std::invalid_argument("logspace: count >= 1");
  std::vector<double> values(static_cast<std::size_t>(count));
  if (count == 1) {
    values[0] = std::pow(10.0, 0.5 * (exp_lo + exp_hi));
    return values;
  }
  for (int i = 0; i < count; ++i)
    values[static_cast<std::size_t>(i)] =
        std::pow(10.0, exp_lo + (exp_hi - exp_lo) * i / (count - 1));
  return values;
}

// Linear-interpolation quantile of the values at level q in (0, 1).
[[nodiscard]] inline double quantile(Vector values, double q) {
  if (values.size() == 0) throw std::invalid_argument("quantile: empty input");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const Index lo = static_cast<Index>(std::floor(pos));
  const Index hi = std::min<Index>(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

struct ExperimentSpec {
  GraphModelSpec graph;
  FilterSpec filter;
  int n = 1000;              // signals per trial
  double noise_ratio = 0.1;  // Frobenius-relative noise level
  int trials = 20;
  std::uint64_t master_seed = 1;

  bool run_log_degree = true;
  bool run_l2_degree = true;
  bool run_baseline = true;
  std::vector<double> log_degree_beta_grid = logspace(-3.0, 2.0, 21);  // alpha fixed to 1
  std::vector<double> l2_degree_alpha_grid = logspace(-3.0, 2.0, 21);
  double l2_scale = 0.0;  // trace scale s; 0 = node count
  std::vector<double> gaussian_sigma_grid = logspace(-2.0, 1.0, 25);
  int threshold_count = 25;  // quantile levels for the pattern baseline

  bool normalize_distances = true;
  double rel_threshold = kDefaultRelThreshold;
  bool per_trial_best = false;  // sensitivity variant: best grid point per trial
  SolverConfig solver{.gamma = 0.0, .epsilon = 1e-4, .max_iterations = 100000,
                      .record_trace = false, .l2_lipschitz = 0.0};
};

struct ResultRecord {
  std::string graph;
  std::string signal;
  std::string model;
  std::string metric;
  double parameter = 0.0;  // chosen grid value (quantile level for the pattern baseline)
  double value = 0.0;      // per-trial values averaged at the chosen parameter
  std::vector<double> per_trial;
};

struct TrialArtifacts {
  EdgeVector truth;
  Matrix coords;
  DistanceVector distances;
};

struct ExperimentResult {
  std::vector<ResultRecord> records;
  std::vector<TrialArtifacts> trials;
  int non_converged_solves = 0;
};

[[nodiscard]] inline std::string graph_kind_name(GraphKind k) {
  switch (k) {
    case GraphKind::rgg: return "rgg";
    case GraphKind::nonuniform: return "nonuniform";
    case GraphKind::erdos_renyi: return "erdos_renyi";
    case GraphKind::barabasi_albert: return "barabasi_albert";
  }
  throw std::logic_error("unknown graph kind");
}

[[nodiscard]] inline GraphKind graph_kind_from_name(const std::string& name) {
  if (name == "rgg") return GraphKind::rgg;
  if (name == "nonuniform") return GraphKind::nonuniform;
  if (name == "erdos_renyi" || name == "er") return GraphKind::erdos_renyi;
  if (name == "barabasi_albert" || name == "ba") return GraphKind::barabasi_albert;
  throw std::invalid_argument("unknown graph kind: " + name);
}

[[nodiscard]] inline std::string filter_kind_name(FilterKind k) {
  switch (k) {
    case FilterKind::tikhonov: return "tikhonov";
    case FilterKind::generative: return "generative";
    case FilterKind::heat: return "heat";
  }
  throw std::logic_error("unknown filter kind");
}

[[nodiscard]] inline FilterKind filter_kind_from_name(const std::string& name) {
  if (name == "tikhonov") return FilterKind::tikhonov;
  if (name == "generative") return FilterKind::generative;
  if (name == "heat") return FilterKind::heat;
  throw std::invalid_argument("unknown filter kind: " + name);
}

namespace detail {

// Purpose tags for per-trial sub-streams.
inline constexpr std::uint64_t kGraphStream = 1;
inline constexpr std::uint64_t kSignalStream = 2;
inline constexpr std::uint64_t kNoiseStream = 3;

inline constexpr int kMetricCount = 5;
inline constexpr const char* kMetricNames[kMetricCount] = {"fmeasure", "edge_l1", "edge_l2",
                                                           "degree_l1", "degree_l2"};
// true = larger is better
inline constexpr bool kMetricMaximize[kMetricCount] = {true, false, false, false, false};

[[nodiscard]] inline double metric_value(const EvaluationReport& r, int metric) {
  switch (metric) {
    case 0: return r.f_measure;
    case 1: return r.edge_l1;
    case 2: return r.edge_l2;
    case 3: return r.degree_l1;
    case 4: return r.degree_l2;
  }
  throw std::logic_error("bad metric index");
}

}  // namespace detail

template <class F>
inline void parallel_for(int jobs, int threads, F&& body) {
  if (threads <= 1 || jobs <= 1) {
    for (int i = 0; i < jobs; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  const int workers = std::min(threads, jobs);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= jobs) return;
        try {
          body(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

[[nodiscard]] inline TrialArtifacts prepare_trial(const ExperimentSpec& spec, int trial) {
  const std::uint64_t trial_seed = derive_seed(spec.master_seed,
                                               static_cast<std::uint64_t>(trial));
  GeneratedGraph g = generate_graph(spec.graph, derive_seed(trial_seed, detail::kGraphStream));
  const Matrix L = laplacian_from_edges(g.edges);
  const GraphSpectrum s = normalize_spectral_scale(spectrum(L));
  Matrix X = generate_smooth_signals(s, spec.filter, spec.n,
                                     derive_seed(trial_seed, detail::kSignalStream));
  X = add_noise(X, spec.noise_ratio, derive_seed(trial_seed, detail::kNoiseStream));
  DistanceVector dist = pairwise_distances(X);
  if (spec.normalize_distances) {
    const double mean = dist.z.mean();
    if (mean > 0.0) dist.z /= mean;
  }
  return {std::move(g.edges), std::move(g.coords), std::move(dist)};
}

struct MetricBest {
  double value = 0.0;
  double parameter = 0.0;
};

struct GaussianBaselineBest {
  MetricBest edge_l1, edge_l2, degree_l1, degree_l2;
};

// Kernel-weight baseline: evaluates w = exp(-z/(2 sigma^2)) on every grid
// sigma (no thresholding) and keeps the best value per error metric.
[[nodiscard]] inline GaussianBaselineBest baseline_gaussian(
    const DistanceVector& dist, const std::vector<double>& sigma_grid,
    const EdgeVector& truth) {
  if (sigma_grid.empty()) throw std::invalid_argument("baseline_gaussian: empty grid");
  GaussianBaselineBest best;
  bool first = true;
  for (const double sigma : sigma_grid) {
    const EdgeVector w = gaussian_kernel_weights(dist, sigma);
    const double e1 = relative_edge_error(w, truth, 1);
    const double e2 = relative_edge_error(w, truth, 2);
    const double d1 = relative_degree_error(w, truth, 1);
    const double d2 = relative_degree_error(w, truth, 2);
    if (first || e1 < best.edge_l1.value) best.edge_l1 = {e1, sigma};
    if (first || e2 < best.edge_l2.value) best.edge_l2 = {e2, sigma};
    if (first || d1 < best.degree_l1.value) best.degree_l1 = {d1, sigma};
    if (first || d2 < best.degree_l2.value) best.degree_l2 = {d2, sigma};
    first = false;
  }
  return best;
}

struct ThresholdBaselineBest {
  double value = 0.0;      // best F-measure
  double parameter = 0.0;  // threshold achieving it
};

// Pattern baseline: thresholds the kernel weights at each grid value and
// keeps the best F-measure against the truth.
[[nodiscard]] inline ThresholdBaselineBest baseline_threshold_fmeasure(
    const DistanceVector& dist, double sigma, const std::vector<double>& thresholds,
    const EdgeVector& truth, double rel_threshold = kDefaultRelThreshold) {
  if (thresholds.empty())
    throw std::invalid_argument("baseline_threshold_fmeasure: empty grid");
  const EdgeVector w = gaussian_kernel_weights(dist, sigma);
  ThresholdBaselineBest best;
  bool first = true;
  for (const double tau : thresholds) {
    EdgeVector pattern = EdgeVector::zeros(dist.m);
    for (Index e = 0; e < w.w.size(); ++e) pattern.w[e] = w.w[e] > tau ? 1.0 : 0.0;
    const double f = pattern.w.maxCoeff() > 0.0 ? f_measure(pattern, truth, rel_threshold) : 0.0;
    if (first || f > best.value) best = {f, tau};
    first = false;
  }
  return best;
}

namespace detail {

struct GridRun {
  std::string name;
  std::vector<double> grid;
  int kind = 0;  // 0 log-degree, 1 l2-degree, 2 kernel baseline, 3 pattern baseline
};

}  // namespace detail

[[nodiscard]] inline ExperimentResult run_experiment(const ExperimentSpec& spec,
                                                     int threads = 1) {
  if (spec.trials < 1) throw std::invalid_argument("run_experiment: trials >= 1");
  if (spec.n < 1) throw std::invalid_argument("run_experiment: n >= 1");
  if (!(spec.noise_ratio >= 0.0)) throw std::invalid_argument("run_experiment: noise >= 0");
  validate(spec.filter);
  for (const double b : spec.log_degree_beta_grid)
    if (!(b >= 0.0)) throw std::invalid_argument("run_experiment: beta grid values >= 0");
  for (const double a : spec.l2_degree_alpha_grid)
    if (!(a > 0.0)) throw std::invalid_argument("run_experiment: alpha grid values > 0");
  for (const double s : spec.gaussian_sigma_grid)
    if (!(s > 0.0)) throw std::invalid_argument("run_experiment: sigma grid values > 0");
  if (spec.threshold_count < 1) throw std::invalid_argument("run_experiment: thresholds >= 1");

  const int T = spec.trials;
  ExperimentResult result;
  result.trials.resize(static_cast<std::size_t>(T));
  parallel_for(T, threads,
               [&](int t) { result.trials[static_cast<std::size_t>(t)] = prepare_trial(spec, t); });

  // The pattern baseline thresholds exp(-z), i.e. the kernel at sigma =
  // 1/sqrt(2); its grid entries are quantile levels of the weight
  // distribution, which makes the grid adaptive per trial while keeping the
  // level shared across trials.
  const double kPatternSigma = 1.0 / std::sqrt(2.0);
  std::vector<double> levels(static_cast<std::size_t>(spec.threshold_count));
  for (int k = 0; k < spec.threshold_count; ++k)
    levels[static_cast<std::size_t>(k)] = (k + 1.0) / (spec.threshold_count + 1.0);

  std::vector<detail::GridRun> runs;
  if (spec.run_baseline) {
    runs.push_back({"baseline_kernel", spec.gaussian_sigma_grid, 2});
    runs.push_back({"baseline_pattern", levels, 3});
  }
  if (spec.run_l2_degree) runs.push_back({"l2_degree", spec.l2_degree_alpha_grid, 1});
  if (spec.run_log_degree) runs.push_back({"log_degree", spec.log_degree_beta_grid, 0});

  struct Cell {
    EvaluationReport report;
    bool converged = true;
  };
  std::vector<std::vector<std::vector<Cell>>> cells(runs.size());
  struct Job {
    int run, g, t;
  };
  std::vector<Job> jobs;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    cells[r].resize(runs[r].grid.size());
    for (std::size_t g = 0; g < runs[r].grid.size(); ++g) {
      cells[r][g].resize(static_cast<std::size_t>(T));
      for (int t = 0; t < T; ++t)
        jobs.push_back({static_cast<int>(r), static_cast<int>(g), t});
    }
  }

  SolverConfig solver_cfg = spec.solver;
  solver_cfg.record_trace = false;
  const double s_scale = spec.l2_scale > 0.0 ? spec.l2_scale : spec.graph.m;

  parallel_for(static_cast<int>(jobs.size()), threads, [&](int idx) {
    const Job job = jobs[static_cast<std::size_t>(idx)];
    const detail::GridRun& run = runs[static_cast<std::size_t>(job.run)];
    const double param = run.grid[static_cast<std::size_t>(job.g)];
    const TrialArtifacts& trial = result.trials[static_cast<std::size_t>(job.t)];
    Cell& cell = cells[static_cast<std::size_t>(job.run)][static_cast<std::size_t>(job.g)]
                      [static_cast<std::size_t>(job.t)];
    switch (run.kind) {
      case 0: {
        const SolverResult r = learn_log_degree_unit_alpha(trial.distances, param, solver_cfg);
        cell.report = evaluate_graph(r.weights, trial.truth, spec.rel_threshold);
        cell.converged = r.converged;
        break;
      }
      case 1: {
        const SolverResult r = learn_l2_degree(trial.distances, param, s_scale, solver_cfg);
        cell.report = evaluate_graph(r.weights, trial.truth, spec.rel_threshold);
        cell.converged = r.converged;
        break;
      }
      case 2: {
        const EdgeVector w = gaussian_kernel_weights(trial.distances, param);
        cell.report = evaluate_graph(w, trial.truth, spec.rel_threshold);
        break;
      }
      case 3: {
        const EdgeVector w = gaussian_kernel_weights(trial.distances, kPatternSigma);
        const double tau = quantile(w.w, param);
        EdgeVector pattern = EdgeVector::zeros(trial.truth.m);
        for (Index e = 0; e < w.w.size(); ++e) pattern.w[e] = w.w[e] > tau ? 1.0 : 0.0;
        cell.report.f_measure =
            pattern.w.maxCoeff() > 0.0 ? f_measure(pattern, trial.truth, spec.rel_threshold) : 0.0;
        break;
      }
      default:
        throw std::logic_error("run_experiment: bad run kind");
    }
  });

  for (std::size_t r = 0; r < runs.size(); ++r)
    for (std::size_t g = 0; g < cells[r].size(); ++g)
      for (int t = 0; t < T; ++t)
        if (!cells[r][g][static_cast<std::size_t>(t)].converged) ++result.non_converged_solves;

  const std::string graph_name = graph_kind_name(spec.graph.kind);
  const std::string signal_name = filter_kind_name(spec.filter.kind);

  // Per metric: average over trials at each grid point and keep the argbest
  // (ties resolved toward the lower grid index). The per-trial-best variant
  // instead averages each trial's own best value; no single parameter exists
  // then and NaN is recorded.
  const auto aggregate = [&](std::size_t r, int metric) {
    const detail::GridRun& run = runs[r];
    ResultRecord record;
    record.graph = graph_name;
    record.signal = signal_name;
    record.metric = detail::kMetricNames[metric];
    const bool maximize = detail::kMetricMaximize[metric];
    if (spec.per_trial_best) {
      record.parameter = std::numeric_limits<double>::quiet_NaN();
      record.per_trial.resize(static_cast<std::size_t>(T));
      for (int t = 0; t < T; ++t) {
        double best = detail::metric_value(cells[r][0][static_cast<std::size_t>(t)].report, metric);
        for (std::size_t g = 1; g < run.grid.size(); ++g) {
          const double v =
              detail::metric_value(cells[r][g][static_cast<std::size_t>(t)].report, metric);
          if (maximize ? v > best : v < best) best = v;
        }
        record.per_trial[static_cast<std::size_t>(t)] = best;
      }
    } else {
      std::size_t best_g = 0;
      double best_mean = 0.0;
      for (std::size_t g = 0; g < run.grid.size(); ++g) {
        double mean = 0.0;
        for (int t = 0; t < T; ++t)
          mean += detail::metric_value(cells[r][g][static_cast<std::size_t>(t)].report, metric);
        mean /= T;
        if (g == 0 || (maximize ? mean > best_mean : mean < best_mean)) {
          best_mean = mean;
          best_g = g;
        }
      }
      record.parameter = run.grid[best_g];
      record.per_trial.resize(static_cast<std::size_t>(T));
      for (int t = 0; t < T; ++t)
        record.per_trial[static_cast<std::size_t>(t)] =
            detail::metric_value(cells[r][best_g][static_cast<std::size_t>(t)].report, metric);
    }
    double mean = 0.0;
    for (const double v : record.per_trial) mean += v;
    record.value = mean / T;
    return record;
  };

  for (std::size_t r = 0; r < runs.size(); ++r) {
    const int kind = runs[r].kind;
    if (kind == 2) {
      // kernel baseline: error metrics only; the pattern baseline supplies
      // the F-measure row under the shared "baseline" model name
      for (int metric = 1; metric < detail::kMetricCount; ++metric) {
        ResultRecord record = aggregate(r, metric);
        record.model = "baseline";
        result.records.push_back(std::move(record));
      }
    } else if (kind == 3) {
      ResultRecord record = aggregate(r, 0);
      record.model = "baseline";
      result.records.push_back(std::move(record));
    } else {
      for (int metric = 0; metric < detail::kMetricCount; ++metric) {
        ResultRecord record = aggregate(r, metric);
        record.model = runs[r].name;
        result.records.push_back(std::move(record));
      }
    }
  }
  return result;
}

[[nodiscard]] inline const ResultRecord* find_record(const std::vector<ResultRecord>& records,
                                                     std::string_view model,
                                                     std::string_view metric) {
  for (const ResultRecord& r : records)
    if (r.model == model && r.metric == metric) return &r;
  return nullptr;
}

[[nodiscard]] inline std::string records_to_csv(const std::vector<ResultRecord>& records) {
  std::string out = "graph,signal,model,metric,param,value\n";
  for (const ResultRecord& r : records) {
    out += r.graph;
    out += ',';
    out += r.signal;
    out += ',';
    out += r.model;
    out += ',';
    out += r.metric;
    out += ',';
    out += format_double(r.parameter);
    out += ',';
    out += format_double(r.value);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON configuration

inline void to_json(nlohmann::json& j, const GraphModelSpec& g) {
  j = {{"kind", graph_kind_name(g.kind)}, {"m", g.m}};
  switch (g.kind) {
    case GraphKind::rgg:
      j["sigma"] = g.sigma;
      j["threshold"] = g.threshold;
      break;
    case GraphKind::nonuniform:
      j["sigma"] = g.sigma;
      j["density_param"] = g.density_param;
      break;
    case GraphKind::erdos_renyi:
      if (g.p) j["p"] = *g.p;
      break;
    case GraphKind::barabasi_albert:
      j["edges_per_node"] = g.edges_per_node;
      break;
  }
}

inline void from_json(const nlohmann::json& j, GraphModelSpec& g) {
  g = GraphModelSpec{};
  g.kind = graph_kind_from_name(j.at("kind").get<std::string>());
  g.m = j.value("m", 100);
  g.sigma = j.value("sigma", 0.2);
  g.threshold = j.value("threshold", 0.6);
  g.density_param = j.value("density_param", 10.0);
  if (j.contains("p")) g.p = j.at("p").get<double>();
  g.edges_per_node = j.value("edges_per_node", 2);
}

inline void to_json(nlohmann::json& j, const FilterSpec& f) {
  j = {{"kind", filter_kind_name(f.kind)}, {"param", f.param}};
}

inline void from_json(const nlohmann::json& j, FilterSpec& f) {
  f.kind = filter_kind_from_name(j.at("kind").get<std::string>());
  f.param = j.value("param", 10.0);
}

inline void to_json(nlohmann::json& j, const SolverConfig& c) {
  j = {{"gamma", c.gamma},
       {"epsilon", c.epsilon},
       {"max_iterations", c.max_iterations},
       {"l2_lipschitz", c.l2_lipschitz}};
}

inline void from_json(const nlohmann::json& j, SolverConfig& c) {
  c = SolverConfig{};
  c.gamma = j.value("gamma", 0.0);
  c.epsilon = j.value("epsilon", 1e-4);
  c.max_iterations = j.value("max_iterations", 100000);
  c.l2_lipschitz = j.value("l2_lipschitz", 0.0);
  c.record_trace = false;
}

// Grids may be given as an explicit array or as {"logspace": [lo, hi, count]}
// with decade exponents lo and hi.
[[nodiscard]] inline std::vector<double> grid_from_json(const nlohmann::json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  if (j.is_object() && j.contains("logspace")) {
    const auto& spec = j.at("logspace");
    if (!spec.is_array() || spec.size() != 3)
      throw std::invalid_argument("grid: logspace expects [lo, hi, count]");
    return logspace(spec[0].get<double>(), spec[1].get<double>(), spec[2].get<int>());
  }
  throw std::invalid_argument("grid: expected an array or {\"logspace\": [lo, hi, count]}");
}

inline void to_json(nlohmann::json& j, const ExperimentSpec& s) {
  j = nlohmann::json{{"graph", s.graph},
                     {"filter", s.filter},
                     {"n", s.n},
                     {"noise_ratio", s.noise_ratio},
                     {"trials", s.trials},
                     {"master_seed", s.master_seed},
                     {"normalize_distances", s.normalize_distances},
                     {"rel_threshold", s.rel_threshold},
                     {"per_trial_best", s.per_trial_best},
                     {"solver", s.solver}};
  nlohmann::json models = nlohmann::json::object();
  if (s.run_log_degree) models["log_degree"] = {{"beta_grid", s.log_degree_beta_grid}};
  if (s.run_l2_degree)
    models["l2_degree"] = {{"alpha_grid", s.l2_degree_alpha_grid}, {"scale", s.l2_scale}};
  if (s.run_baseline)
    models["baseline"] = {{"sigma_grid", s.gaussian_sigma_grid},
                          {"threshold_count", s.threshold_count}};
  j["models"] = std::move(models);
}

inline void from_json(const nlohmann::json& j, ExperimentSpec& s) {
  s = ExperimentSpec{};
  s.graph = j.at("graph").get<GraphModelSpec>();
  s.filter = j.at("filter").get<FilterSpec>();
  s.n = j.value("n", 1000);
  s.noise_ratio = j.value("noise_ratio", 0.1);
  s.trials = j.value("trials", 20);
  s.master_seed = j.value("master_seed", std::uint64_t{1});
  s.normalize_distances = j.value("normalize_distances", true);
  s.rel_threshold = j.value("rel_threshold", kDefaultRelThreshold);
  s.per_trial_best = j.value("per_trial_best", false);
  if (j.contains("solver")) s.solver = j.at("solver").get<SolverConfig>();
  if (j.contains("models")) {
    const auto& models = j.at("models");
    s.run_log_degree = models.contains("log_degree");
    s.run_l2_degree = models.contains("l2_degree");
    s.run_baseline = models.contains("baseline");
    if (s.run_log_degree && models.at("log_degree").contains("beta_grid"))
      s.log_degree_beta_grid = grid_from_json(models.at("log_degree").at("beta_grid"));
    if (s.run_l2_degree) {
      const auto& l2 = models.at("l2_degree");
      if (l2.contains("alpha_grid")) s.l2_degree_alpha_grid = grid_from_json(l2.at("alpha_grid"));
      s.l2_scale = l2.value("scale", 0.0);
    }
    if (s.run_baseline) {
      const auto& base = models.at("baseline");
      if (base.contains("sigma_grid")) s.gaussian_sigma_grid = grid_from_json(base.at("sigma_grid"));
      s.threshold_count = base.value("threshold_count", 25);
    }
  }
}

[[nodiscard]] inline nlohmann::json summary_json(const ExperimentSpec& spec,
                                                 const ExperimentResult& result) {
  nlohmann::json records = nlohmann::json::array();
  for (const ResultRecord& r : result.records)
    records.push_back({{"graph", r.graph},
                       {"signal", r.signal},
                       {"model", r.model},
                       {"metric", r.metric},
                       {"param", r.parameter},
                       {"value", r.value},
                       {"per_trial", r.per_trial}});
  return {{"graph", graph_kind_name(spec.graph.kind)},
          {"signal", filter_kind_name(spec.filter.kind)},
          {"trials", spec.trials},
          {"non_converged_solves", result.non_converged_solves},
          {"records", std::move(records)}};
}

inline void write_experiment_outputs(const std::string& out_dir, const ExperimentSpec& spec,
                                     const ExperimentResult& result) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(out_dir) / "trials");
  write_text_file((fs::path(out_dir) / "config.json").string(),
                  nlohmann::json(spec).dump(2) + "\n");
  write_text_file((fs::path(out_dir) / "records.csv").string(), records_to_csv(result.records));
  write_text_file((fs::path(out_dir) / "summary.json").string(),
                  summary_json(spec, result).dump(2) + "\n");
  for (std::size_t t = 0; t < result.trials.size(); ++t) {
    char name[64];
    std::snprintf(name, sizeof(name), "trial_%03zu", t);
    const fs::path base = fs::path(out_dir) / "trials" / name;
    write_edge_list(base.string() + ".edges", result.trials[t].truth);
    if (result.trials[t].coords.size() > 0)
      write_csv_matrix(base.string() + "_coords.csv", result.trials[t].coords);
  }
}

}  // namespace graphlearn
