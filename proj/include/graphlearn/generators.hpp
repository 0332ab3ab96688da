#pragma once

// Seeded random-graph generators used as ground truth in experiments:
//   rgg              uniform points on [0,1]^2, Gaussian kernel weights,
//                    weights below a fixed cut removed
//   nonuniform_strip points on [0,1] x [0,5] with density decaying in the
//                    second coordinate, Gaussian weights, adaptive cut at
//                    the best connection of the most isolated node
//   erdos_renyi      each edge present independently with probability p
//   barabasi_albert  preferential attachment, two edges per new node
// All generators are pure functions of (parameters, seed).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "graphlearn/edge_space.hpp"
#include "graphlearn/random.hpp"

namespace graphlearn {

enum class GraphKind { rgg, nonuniform, erdos_renyi, barabasi_albert };

struct GraphModelSpec {
  GraphKind kind = GraphKind::rgg;
  int m = 100;
  double sigma = 0.2;          // kernel width (rgg, nonuniform)
  double threshold = 0.6;      // rgg weight cut
  double density_param = 10.0; // nonuniform strip decay rate
  std::optional<double> p;     // erdos_renyi edge probability; default 3/m
  int edges_per_node = 2;      // barabasi_albert
};

struct GeneratedGraph {
  EdgeVector edges;
  Matrix coords;  // m x 2 point coordinates; 0 x 0 when the model has none
};

// w_e = exp(-||p_i - p_j||^2 / (2 sigma^2)) for rows of `points`.
[[nodiscard]] inline EdgeVector gaussian_edges_from_points(const Matrix& points,
                                                           double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_edges_from_points: sigma > 0");
  const DistanceVector dist = pairwise_distances(points);
  EdgeVector g{dist.m, (-dist.z.array() / (2.0 * sigma * sigma)).exp()};
  return g;
}

[[nodiscard]] inline GeneratedGraph rgg(int m, double sigma, double threshold,
                                        std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("rgg: m >= 2");
  if (!(sigma > 0.0)) throw std::invalid_argument("rgg: sigma > 0");
  if (!(threshold >= 0.0 && threshold < 1.0))
    throw std::invalid_argument("rgg: threshold in [0, 1)");
  RandomStream stream(seed);
  Matrix points(m, 2);
  for (int i = 0; i < m; ++i) {
    points(i, 0) = stream.uniform();
    points(i, 1) = stream.uniform();
  }
  EdgeVector g = gaussian_edges_from_points(points, sigma);
  g.w = (g.w.array() < threshold).select(0.0, g.w);
  return {std::move(g), std::move(points)};
}

// Inverse CDF of the strip density p(t) ~ 1/(1 + a t) on [0, height].
[[nodiscard]] inline double nonuniform_strip_inverse_cdf(double u, double a,
                                                         double height = 5.0) {
  return (std::pow(1.0 + a * height, u) - 1.0) / a;
}

[[nodiscard]] inline GeneratedGraph nonuniform_strip(int m, double sigma,
                                                     double density_param,
                                                     std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("nonuniform_strip: m >= 2");
  if (!(sigma > 0.0)) throw std::invalid_argument("nonuniform_strip: sigma > 0");
  if (!(density_param > 0.0))
    throw std::invalid_argument("nonuniform_strip: density_param > 0");
  RandomStream stream(seed);
  Matrix points(m, 2);
  for (int i = 0; i < m; ++i) {
    points(i, 0) = stream.uniform();
    points(i, 1) = nonuniform_strip_inverse_cdf(stream.uniform(), density_param);
  }
  EdgeVector g = gaussian_edges_from_points(points, sigma);
  // Adaptive cut: keep everything at least as strong as the best connection
  // of the most isolated node, so every node keeps at least one edge.
  Vector node_best = Vector::Zero(m);
  for_each_edge(m, [&](Index e, int i, int j) {
    node_best[i] = std::max(node_best[i], g.w[e]);
    node_best[j] = std::max(node_best[j], g.w[e]);
  });
  const double cut = node_best.minCoeff();
  g.w = (g.w.array() < cut).select(0.0, g.w);
  return {std::move(g), std::move(points)};
}

[[nodiscard]] inline GeneratedGraph erdos_renyi(int m, double p, std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("erdos_renyi: m >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erdos_renyi: p in [0, 1]");
  RandomStream stream(seed);
  EdgeVector g = EdgeVector::zeros(m);
  for (Index e = 0; e < g.w.size(); ++e)
    if (stream.uniform() < p) g.w[e] = 1.0;
  return {std::move(g), Matrix()};
}

// Grows from a single edge {0, 1}; each later node attaches `edges_per_node`
// edges (fewer only if not enough targets exist) to distinct existing nodes
// chosen with probability proportional to their degree. Degrees are
// snapshotted before each node's attachments.
[[nodiscard]] inline GeneratedGraph barabasi_albert(int m, int edges_per_node,
                                                    std::uint64_t seed) {
  if (m < 3) throw std::invalid_argument("barabasi_albert: m >= 3");
  if (edges_per_node < 1) throw std::invalid_argument("barabasi_albert: edges_per_node >= 1");
  RandomStream stream(seed);
  EdgeVector g = EdgeVector::zeros(m);
  std::vector<double> degree(static_cast<std::size_t>(m), 0.0);
  g.w[edge_index(m, 0, 1)] = 1.0;
  degree[0] = degree[1] = 1.0;
  std::vector<int> targets;
  for (int v = 2; v < m; ++v) {
    const int want = std::min(edges_per_node, v);
    double total = 0.0;
    for (int u = 0; u < v; ++u) total += degree[u];
    targets.clear();
    while (static_cast<int>(targets.size()) < want) {
      double r = stream.uniform() * total;
      int pick = v - 1;
      for (int u = 0; u < v; ++u) {
        r -= degree[u];
        if (r < 0.0) {
          pick = u;
          break;
        }
      }
      if (std::find(targets.begin(), targets.end(), pick) != targets.end()) continue;
      targets.push_back(pick);
    }
    for (const int u : targets) {
      g.w[edge_index(m, u, v)] = 1.0;
      degree[u] += 1.0;
      degree[v] += 1.0;
    }
  }
  return {std::move(g), Matrix()};
}

[[nodiscard]] inline GeneratedGraph generate_graph(const GraphModelSpec& spec,
                                                   std::uint64_t seed) {
  switch (spec.kind) {
    case GraphKind::rgg:
      return rgg(spec.m, spec.sigma, spec.threshold, seed);
    case GraphKind::nonuniform:
      return nonuniform_strip(spec.m, spec.sigma, spec.density_param, seed);
    case GraphKind::erdos_renyi:
      return erdos_renyi(spec.m, spec.p.value_or(3.0 / spec.m), seed);
    case GraphKind::barabasi_albert:
      return barabasi_albert(spec.m, spec.edges_per_node, seed);
  }
  throw std::logic_error("generate_graph: unknown graph kind");
}

}  // namespace graphlearn
