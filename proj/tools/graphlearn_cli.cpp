// Command-line front end: graph generation, smooth-signal synthesis, graph
// learning, evaluation, the full experiment protocol, and a self-test of the
// edge-space identities. Exit codes: 0 success, 1 invalid input, 2 runtime
// failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "graphlearn/graphlearn.hpp"

namespace gl = graphlearn;

namespace {

struct GenerateGraphArgs {
  std::string kind = "rgg";
  int m = 100;
  std::uint64_t seed = 0;
  double sigma = 0.2;
  double threshold = 0.6;
  double density_param = 10.0;
  std::optional<double> p;
  int edges_per_node = 2;
  std::string out;
  std::string coords_out;
};

int run_generate_graph(const GenerateGraphArgs& args) {
  gl::GraphModelSpec spec;
  spec.kind = gl::graph_kind_from_name(args.kind);
  spec.m = args.m;
  spec.sigma = args.sigma;
  spec.threshold = args.threshold;
  spec.density_param = args.density_param;
  spec.p = args.p;
  spec.edges_per_node = args.edges_per_node;
  const gl::GeneratedGraph g = gl::generate_graph(spec, args.seed);
  gl::write_edge_list(args.out, g.edges);
  if (!args.coords_out.empty()) {
    if (g.coords.size() == 0)
      throw std::invalid_argument("this graph model has no coordinates to write");
    gl::write_csv_matrix(args.coords_out, g.coords);
  }
  std::cout << "wrote " << args.out << " (" << (g.edges.w.array() != 0.0).count()
            << " edges on " << spec.m << " nodes)\n";
  return 0;
}

struct GenerateSignalsArgs {
  std::string graph;
  std::string filter = "tikhonov";
  double param = 10.0;
  int n = 1000;
  std::uint64_t seed = 0;
  double noise = 0.0;
  std::string out;
};

int run_generate_signals(const GenerateSignalsArgs& args) {
  const gl::EdgeVector g = gl::read_edge_list(args.graph);
  const gl::Matrix L = gl::laplacian_from_edges(g);
  const gl::GraphSpectrum s = gl::normalize_spectral_scale(gl::spectrum(L));
  const gl::FilterSpec filter{gl::filter_kind_from_name(args.filter), args.param};
  gl::Matrix X = gl::generate_smooth_signals(s, filter, args.n,
                                             gl::derive_seed(args.seed, 1));
  if (args.noise > 0.0) X = gl::add_noise(X, args.noise, gl::derive_seed(args.seed, 2));
  gl::write_csv_matrix(args.out, X);
  std::cout << "wrote " << args.out << " (" << X.rows() << " x " << X.cols() << ")\n";
  return 0;
}

struct LearnArgs {
  std::string data;
  std::string distances;
  std::string model = "log";
  double alpha = 1.0;
  double beta = 0.0;
  double scale = 0.0;  // 0 = node count
  double sigma = 0.2;
  int k = 5;
  double tol = 1e-4;
  int max_iter = 100000;
  std::uint64_t seed = 0;  // reserved; current models are deterministic
  bool normalize = false;
  std::string out;
  std::string summary;
};

gl::DistanceVector load_distances(const LearnArgs& args) {
  if (!args.data.empty() && !args.distances.empty())
    throw std::invalid_argument("pass either --data or --distances, not both");
  if (!args.data.empty()) return gl::pairwise_distances(gl::read_csv_matrix(args.data));
  if (!args.distances.empty()) {
    const gl::Matrix Z = gl::read_csv_matrix(args.distances);
    const gl::EdgeVector z = gl::vector_form(Z);
    return gl::DistanceVector{z.m, z.w};
  }
  throw std::invalid_argument("one of --data or --distances is required");
}

int run_learn(const LearnArgs& args) {
  gl::DistanceVector dist = load_distances(args);
  if (args.normalize) {
    const double mean = dist.z.mean();
    if (mean > 0.0) dist.z /= mean;
  }
  gl::SolverConfig cfg;
  cfg.epsilon = args.tol;
  cfg.max_iterations = args.max_iter;
  cfg.record_trace = false;

  gl::EdgeVector weights;
  nlohmann::json summary;
  if (args.model == "log") {
    const gl::SolverResult r = gl::learn_log_degree(dist, args.alpha, args.beta, cfg);
    weights = r.weights;
    summary = {{"weights_path", args.out},
               {"iterations", r.iterations},
               {"converged", r.converged},
               {"final_objective", r.final_objective}};
    if (!r.converged)
      std::cerr << "warning: not converged within " << args.max_iter << " iterations\n";
  } else if (args.model == "l2") {
    const double s = args.scale > 0.0 ? args.scale : dist.m;
    const gl::SolverResult r = gl::learn_l2_degree(dist, args.alpha, s, cfg);
    weights = r.weights;
    summary = {{"weights_path", args.out},
               {"iterations", r.iterations},
               {"converged", r.converged},
               {"final_objective", r.final_objective}};
    if (!r.converged)
      std::cerr << "warning: not converged within " << args.max_iter << " iterations\n";
  } else if (args.model == "gaussian") {
    weights = gl::gaussian_kernel_weights(dist, args.sigma);
    summary = {{"weights_path", args.out}, {"iterations", 0}, {"converged", true}};
  } else if (args.model == "knn") {
    weights = gl::knn_edges(dist, args.k);
    summary = {{"weights_path", args.out}, {"iterations", 0}, {"converged", true}};
  } else {
    throw std::invalid_argument("unknown model: " + args.model +
                                " (expected log, l2, gaussian or knn)");
  }
  gl::write_edge_list(args.out, weights);
  if (!args.summary.empty()) gl::write_text_file(args.summary, summary.dump(2) + "\n");
  std::cout << "wrote " << args.out << " (" << (weights.w.array() != 0.0).count()
            << " edges)\n";
  return 0;
}

struct EvaluateArgs {
  std::string learned;
  std::string truth;
  double rel_threshold = gl::kDefaultRelThreshold;
  std::string out;
  bool csv = false;
};

int run_evaluate(const EvaluateArgs& args) {
  const gl::EdgeVector learned = gl::read_edge_list(args.learned);
  const gl::EdgeVector truth = gl::read_edge_list(args.truth);
  const gl::EvaluationReport r = gl::evaluate_graph(learned, truth, args.rel_threshold);
  std::string text;
  if (args.csv) {
    text = "fmeasure,edge_l1,edge_l2,degree_l1,degree_l2,components,disconnected_nodes\n" +
           gl::format_double(r.f_measure) + ',' + gl::format_double(r.edge_l1) + ',' +
           gl::format_double(r.edge_l2) + ',' + gl::format_double(r.degree_l1) + ',' +
           gl::format_double(r.degree_l2) + ',' + std::to_string(r.component_count) + ',' +
           std::to_string(r.disconnected_node_count) + '\n';
  } else {
    const nlohmann::json j = {{"fmeasure", r.f_measure},
                              {"edge_l1", r.edge_l1},
                              {"edge_l2", r.edge_l2},
                              {"degree_l1", r.degree_l1},
                              {"degree_l2", r.degree_l2},
                              {"components", r.component_count},
                              {"disconnected_nodes", r.disconnected_node_count}};
    text = j.dump(2) + "\n";
  }
  if (args.out.empty())
    std::cout << text;
  else
    gl::write_text_file(args.out, text);
  return 0;
}

struct ExperimentArgs {
  std::string config;
  std::string out_dir;
  int threads = 0;  // 0 = hardware concurrency
};

int run_experiment_cmd(const ExperimentArgs& args) {
  const nlohmann::json j = nlohmann::json::parse(gl::read_text_file(args.config));
  const gl::ExperimentSpec spec = j.get<gl::ExperimentSpec>();
  int threads = args.threads;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 0) threads = 1;
  const gl::ExperimentResult result = gl::run_experiment(spec, threads);
  gl::write_experiment_outputs(args.out_dir, spec, result);
  std::cout << gl::records_to_csv(result.records);
  if (result.non_converged_solves > 0)
    std::cerr << "warning: " << result.non_converged_solves << " solves did not converge\n";
  std::cout << "wrote " << args.out_dir << "\n";
  return 0;
}

struct NormsCheckArgs {
  int m = 50;
  std::uint64_t seed = 7;
  double tol = 1e-9;
};

// Self-test of the equivalences between the Laplacian, adjacency and
// edge-vector representations on a random weighted graph.
int run_norms_check(const NormsCheckArgs& args) {
  gl::RandomStream stream(args.seed);
  gl::EdgeVector g = gl::EdgeVector::zeros(args.m);
  for (gl::Index e = 0; e < g.w.size(); ++e) g.w[e] = stream.uniform();
  gl::Matrix X(args.m, 5);
  for (gl::Index j = 0; j < X.cols(); ++j)
    for (gl::Index i = 0; i < X.rows(); ++i) X(i, j) = stream.normal();

  const gl::Matrix W = gl::matrix_form(g);
  const gl::Matrix L = gl::laplacian_from_edges(g);
  const gl::DistanceVector dist = gl::pairwise_distances(X);
  const gl::Matrix Z = gl::matrix_form(gl::EdgeVector{args.m, dist.z});
  const gl::Vector d = gl::degree_map(g);

  bool ok = true;
  const auto check = [&](const char* name, double lhs, double rhs) {
    const double rel = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-30});
    const bool pass = rel <= args.tol;
    ok = ok && pass;
    std::cout << (pass ? "[ok]   " : "[FAIL] ") << name << "  lhs=" << lhs << " rhs=" << rhs
              << " rel=" << rel << "\n";
  };

  check("2 tr(X'LX) = ||W o Z||_1", 2.0 * (X.transpose() * (L * X)).trace(),
        (W.array() * Z.array()).sum());
  check("||W o Z||_1 = 2 w'z", (W.array() * Z.array()).sum(), 2.0 * g.w.dot(dist.z));
  check("tr(L) = ||W||_1", L.trace(), W.array().abs().sum());
  check("tr(L) = 2 ||w||_1", L.trace(), 2.0 * g.w.lpNorm<1>());
  check("||W||_F^2 = 2 ||w||_2^2", W.squaredNorm(), 2.0 * g.w.squaredNorm());
  check("||L||_F^2 = 2||w||^2 + ||Sw||^2", L.squaredNorm(),
        2.0 * g.w.squaredNorm() + d.squaredNorm());
  check("diag(L) = Sw", (L.diagonal() - d).cwiseAbs().maxCoeff() + 1.0, 1.0);
  check("W1 = Sw", (W * gl::Vector::Ones(args.m) - d).cwiseAbs().maxCoeff() + 1.0, 1.0);

  gl::Vector v(args.m);
  for (int i = 0; i < args.m; ++i) v[i] = stream.normal();
  check("<Sw, v> = <w, S'v>", d.dot(v), g.w.dot(gl::degree_adjoint(v)));

  std::cout << (ok ? "all identities hold" : "identity check FAILED") << "\n";
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph learning from smooth signals"};
  app.require_subcommand(1);

  GenerateGraphArgs graph_args;
  auto* gen_graph = app.add_subcommand("generate-graph", "sample a ground-truth graph");
  gen_graph->add_option("--kind", graph_args.kind,
                        "rgg | nonuniform | erdos_renyi | barabasi_albert");
  gen_graph->add_option("--m", graph_args.m, "node count");
  gen_graph->add_option("--seed", graph_args.seed, "random seed");
  gen_graph->add_option("--sigma", graph_args.sigma, "kernel width (rgg, nonuniform)");
  gen_graph->add_option("--threshold", graph_args.threshold, "rgg weight cut");
  gen_graph->add_option("--density-param", graph_args.density_param,
                        "nonuniform strip decay rate");
  double p_value = -1.0;
  gen_graph->add_option("--p", p_value, "erdos_renyi edge probability (default 3/m)");
  gen_graph->add_option("--edges-per-node", graph_args.edges_per_node,
                        "barabasi_albert attachments");
  gen_graph->add_option("--out", graph_args.out, "edge-list output path")->required();
  gen_graph->add_option("--coords-out", graph_args.coords_out, "coordinates CSV path");

  GenerateSignalsArgs signal_args;
  auto* gen_signals =
      app.add_subcommand("generate-signals", "filter white noise into smooth signals");
  gen_signals->add_option("--graph", signal_args.graph, "edge-list input")->required();
  gen_signals->add_option("--filter", signal_args.filter, "tikhonov | generative | heat");
  gen_signals->add_option("--param", signal_args.param, "filter parameter");
  gen_signals->add_option("--n", signal_args.n, "number of signals");
  gen_signals->add_option("--seed", signal_args.seed, "random seed");
  gen_signals->add_option("--noise", signal_args.noise, "relative noise level");
  gen_signals->add_option("--out", signal_args.out, "CSV output path")->required();

  LearnArgs learn_args;
  auto* learn = app.add_subcommand("learn", "learn a graph from data or distances");
  learn->add_option("--data", learn_args.data, "CSV data matrix, rows = nodes");
  learn->add_option("--distances", learn_args.distances, "CSV squared-distance matrix");
  learn->add_option("--model", learn_args.model, "log | l2 | gaussian | knn");
  learn->add_option("--alpha", learn_args.alpha, "barrier / degree-penalty weight");
  learn->add_option("--beta", learn_args.beta, "quadratic edge penalty (log model)");
  learn->add_option("--scale", learn_args.scale, "trace scale s (l2 model, default m)");
  learn->add_option("--sigma", learn_args.sigma, "kernel width (gaussian model)");
  learn->add_option("--k", learn_args.k, "neighbor count (knn model)");
  learn->add_option("--tol", learn_args.tol, "solver stopping tolerance");
  learn->add_option("--max-iter", learn_args.max_iter, "solver iteration cap");
  learn->add_option("--seed", learn_args.seed,
                    "reserved; the provided models are deterministic");
  learn->add_flag("--normalize", learn_args.normalize, "rescale distances to unit mean");
  learn->add_option("--out", learn_args.out, "edge-list output path")->required();
  learn->add_option("--summary", learn_args.summary, "solver summary JSON path");

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "compare a learned graph to ground truth");
  evaluate->add_option("--learned", eval_args.learned, "edge-list input")->required();
  evaluate->add_option("--truth", eval_args.truth, "edge-list input")->required();
  evaluate->add_option("--rel-threshold", eval_args.rel_threshold,
                       "relative binarization threshold");
  evaluate->add_option("--out", eval_args.out, "report path (stdout if omitted)");
  evaluate->add_flag("--csv", eval_args.csv, "emit one CSV row instead of JSON");

  ExperimentArgs exp_args;
  auto* experiment = app.add_subcommand("experiment", "run a full experiment protocol");
  experiment->add_option("--config", exp_args.config, "experiment JSON config")->required();
  experiment->add_option("--out-dir", exp_args.out_dir, "output directory")->required();
  experiment->add_option("--threads", exp_args.threads, "worker threads (0 = all cores)");

  NormsCheckArgs norms_args;
  auto* norms = app.add_subcommand("norms-check", "self-test of representation identities");
  norms->add_option("--m", norms_args.m, "node count");
  norms->add_option("--seed", norms_args.seed, "random seed");
  norms->add_option("--tol", norms_args.tol, "relative tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_graph->parsed()) {
      if (p_value >= 0.0) graph_args.p = p_value;
      return run_generate_graph(graph_args);
    }
    if (gen_signals->parsed()) return run_generate_signals(signal_args);
    if (learn->parsed()) return run_learn(learn_args);
    if (evaluate->parsed()) return run_evaluate(eval_args);
    if (experiment->parsed()) return run_experiment_cmd(exp_args);
    if (norms->parsed()) return run_norms_check(norms_args);
  } catch (const std::invalid_argument& err) {
    std::cerr << "invalid input: " << err.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& err) {
    std::cerr << "invalid config: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
