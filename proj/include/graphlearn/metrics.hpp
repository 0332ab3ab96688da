#pragma once

// Evaluation of a learned graph against ground truth. The F-measure and
// connectivity diagnostics look only at the binary edge pattern; the
// relative errors compare weights after matching the learned graph's lp
// norm to the ground truth's, so they are invariant to positive rescaling.

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "graphlearn/edge_space.hpp"

namespace graphlearn {

inline constexpr double kDefaultRelThreshold = 1e-4;

// Edge present iff w_e > rel_threshold * max(w). An all-zero input yields
// the empty pattern.
[[nodiscard]] inline EdgeVector binarize_edges(const EdgeVector& g,
                                               double rel_threshold = kDefaultRelThreshold) {
  validate(g);
  if (!(rel_threshold >= 0.0 && rel_threshold < 1.0))
    throw std::invalid_argument("binarize_edges: rel_threshold in [0, 1)");
  EdgeVector out = EdgeVector::zeros(g.m);
  const double max_w = g.w.maxCoeff();
  if (max_w <= 0.0) return out;
  const double cut = rel_threshold * max_w;
  for (Index e = 0; e < g.w.size(); ++e) out.w[e] = g.w[e] > cut ? 1.0 : 0.0;
  return out;
}

// Harmonic mean of edge precision and recall over binarized patterns.
[[nodiscard]] inline double f_measure(const EdgeVector& learned, const EdgeVector& truth,
                                      double rel_threshold = kDefaultRelThreshold) {
  if (learned.m != truth.m) throw std::invalid_argument("f_measure: node count mismatch");
  const EdgeVector a = binarize_edges(learned, rel_threshold);
  const EdgeVector b = binarize_edges(truth, rel_threshold);
  long tp = 0, fp = 0, fn = 0;
  for (Index e = 0; e < a.w.size(); ++e) {
    const bool in_a = a.w[e] > 0.0, in_b = b.w[e] > 0.0;
    tp += in_a && in_b;
    fp += in_a && !in_b;
    fn += !in_a && in_b;
  }
  const double precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  const double recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

namespace detail {

[[nodiscard]] inline double lp_norm(const Vector& v, int p) {
  if (p == 1) return v.lpNorm<1>();
  if (p == 2) return v.norm();
  throw std::invalid_argument("relative error: p must be 1 or 2");
}

}  // namespace detail

// ||w_hat - w_true||_p / ||w_true||_p after rescaling the learned weights so
// that their lp norm matches the truth's; 1 when the learned graph is empty.
[[nodiscard]] inline double relative_edge_error(const EdgeVector& learned,
                                                const EdgeVector& truth, int p) {
  validate(learned);
  validate(truth);
  if (learned.m != truth.m)
    throw std::invalid_argument("relative_edge_error: node count mismatch");
  const double truth_norm = detail::lp_norm(truth.w, p);
  if (truth_norm == 0.0)
    throw std::invalid_argument("relative_edge_error: ground truth has no edges");
  const double learned_norm = detail::lp_norm(learned.w, p);
  if (learned_norm == 0.0) return 1.0;
  const Vector scaled = learned.w * (truth_norm / learned_norm);
  return detail::lp_norm(scaled - truth.w, p) / truth_norm;
}

// Same comparison on the weighted degrees Sw, after the identical edge-space
// normalization.
[[nodiscard]] inline double relative_degree_error(const EdgeVector& learned,
                                                  const EdgeVector& truth, int p) {
  validate(learned);
  validate(truth);
  if (learned.m != truth.m)
    throw std::invalid_argument("relative_degree_error: node count mismatch");
  const double truth_norm = detail::lp_norm(truth.w, p);
  if (truth_norm == 0.0)
    throw std::invalid_argument("relative_degree_error: ground truth has no edges");
  const double learned_norm = detail::lp_norm(learned.w, p);
  if (learned_norm == 0.0) return 1.0;
  Vector truth_deg(truth.m), learned_deg(learned.m);
  degree_map_into(truth.m, truth.w, truth_deg);
  const Vector scaled = learned.w * (truth_norm / learned_norm);
  degree_map_into(learned.m, scaled, learned_deg);
  return detail::lp_norm(learned_deg - truth_deg, p) / detail::lp_norm(truth_deg, p);
}

struct Connectivity {
  int component_count = 0;        // connected components of the binary pattern
  int disconnected_node_count = 0;  // nodes with zero binarized degree
};

[[nodiscard]] inline Connectivity connectivity(const EdgeVector& g,
                                               double rel_threshold = kDefaultRelThreshold) {
  const EdgeVector pattern = binarize_edges(g, rel_threshold);
  const int m = g.m;
  std::vector<int> parent(static_cast<std::size_t>(m));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<char> has_edge(static_cast<std::size_t>(m), 0);
  for_each_edge(m, [&](Index e, int i, int j) {
    if (pattern.w[e] > 0.0) {
      has_edge[i] = has_edge[j] = 1;
      parent[find(i)] = find(j);
    }
  });
  Connectivity c;
  for (int i = 0; i < m; ++i) {
    if (find(i) == i) ++c.component_count;
    if (!has_edge[i]) ++c.disconnected_node_count;
  }
  return c;
}

struct EvaluationReport {
  double f_measure = 0.0;
  double edge_l1 = 0.0;
  double edge_l2 = 0.0;
  double degree_l1 = 0.0;
  double degree_l2 = 0.0;
  int component_count = 0;
  int disconnected_node_count = 0;
};

[[nodiscard]] inline EvaluationReport evaluate_graph(
    const EdgeVector& learned, const EdgeVector& truth,
    double rel_threshold = kDefaultRelThreshold) {
  EvaluationReport report;
  report.f_measure = f_measure(learned, truth, rel_threshold);
  report.edge_l1 = relative_edge_error(learned, truth, 1);
  report.edge_l2 = relative_edge_error(learned, truth, 2);
  report.degree_l1 = relative_degree_error(learned, truth, 1);
  report.degree_l2 = relative_degree_error(learned, truth, 2);
  const Connectivity c = connectivity(learned, rel_threshold);
  report.component_count = c.component_count;
  report.disconnected_node_count = c.disconnected_node_count;
  return report;
}

}  // namespace graphlearn
