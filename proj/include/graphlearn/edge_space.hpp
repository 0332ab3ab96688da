#pragma once

// Edge-vector view of weighted undirected graphs.
//
// A graph on m nodes has three equivalent representations: the Laplacian
// L = D - W, the adjacency matrix W, and the vector w of the m(m-1)/2
// upper-triangular weights. The vector form is the canonical one here;
// matrices are derived views. The edge order is fixed globally: pairs
// (i, j) with i < j, 0-indexed, enumerated lexicographically
//   (0,1), (0,2), ..., (0,m-1), (1,2), ..., (m-2,m-1).
// Everything that touches edge vectors assumes this order.
//
// The degree operator S maps edge weights to weighted node degrees,
// Sw = W1. It is never materialized; degree_map / degree_adjoint are
// index-arithmetic loops with O(m^2) work and no matrix storage.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphlearn {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

[[nodiscard]] inline Index edge_count(int m) {
  return static_cast<Index>(m) * (m - 1) / 2;
}

// Flat index of the pair (i, j); requires 0 <= i < j < m.
[[nodiscard]] inline Index edge_index(int m, int i, int j) {
  return static_cast<Index>(i) * m - static_cast<Index>(i) * (i + 1) / 2 + (j - i - 1);
}

// Visits (e, i, j) for every pair i < j in edge order.
template <class F>
inline void for_each_edge(int m, F&& visit) {
  Index e = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j, ++e) visit(e, i, j);
}

// Nonnegative edge weights in the fixed order above.
struct EdgeVector {
  int m = 0;  // node count
  Vector w;   // length edge_count(m)

  [[nodiscard]] static EdgeVector zeros(int m) { return {m, Vector::Zero(edge_count(m))}; }
};

// Squared pairwise distances in the same order as EdgeVector.
struct DistanceVector {
  int m = 0;
  Vector z;
};

inline void validate(const EdgeVector& g) {
  if (g.m < 2) throw std::invalid_argument("EdgeVector: node count must be at least 2");
  if (g.w.size() != edge_count(g.m))
    throw std::invalid_argument("EdgeVector: weight length does not match node count");
  if (!g.w.allFinite() || (g.w.array() < 0.0).any())
    throw std::invalid_argument("EdgeVector: weights must be finite and nonnegative");
}

inline void validate(const DistanceVector& d) {
  if (d.m < 2) throw std::invalid_argument("DistanceVector: node count must be at least 2");
  if (d.z.size() != edge_count(d.m))
    throw std::invalid_argument("DistanceVector: length does not match node count");
  if (!d.z.allFinite() || (d.z.array() < 0.0).any())
    throw std::invalid_argument("DistanceVector: entries must be finite and nonnegative");
}

namespace detail {

inline void check_square_symmetric_nonneg_zero_diag(const Matrix& A, const char* what) {
  const auto n = A.rows();
  if (n < 2 || A.cols() != n)
    throw std::invalid_argument(std::string(what) + ": need a square matrix, m >= 2");
  if (!A.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
  for (Index i = 0; i < n; ++i) {
    if (A(i, i) != 0.0) throw std::invalid_argument(std::string(what) + ": nonzero diagonal");
    for (Index j = i + 1; j < n; ++j) {
      if (A(i, j) != A(j, i))
        throw std::invalid_argument(std::string(what) + ": matrix is not symmetric");
      if (A(i, j) < 0.0)
        throw std::invalid_argument(std::string(what) + ": negative entries");
    }
  }
}

}  // namespace detail

// Upper triangle of a valid adjacency matrix, in edge order.
[[nodiscard]] inline EdgeVector vector_form(const Matrix& W) {
  detail::check_square_symmetric_nonneg_zero_diag(W, "vector_form");
  const int m = static_cast<int>(W.rows());
  EdgeVector g{m, Vector(edge_count(m))};
  for_each_edge(m, [&](Index e, int i, int j) { g.w[e] = W(i, j); });
  return g;
}

[[nodiscard]] inline Matrix matrix_form(const EdgeVector& g) {
  validate(g);
  Matrix W = Matrix::Zero(g.m, g.m);
  for_each_edge(g.m, [&](Index e, int i, int j) {
    W(i, j) = g.w[e];
    W(j, i) = g.w[e];
  });
  return W;
}

// out = S w. No validation; `out` must have size m.
inline void degree_map_into(int m, const Vector& w, Vector& out) {
  out.setZero();
  Index e = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j, ++e) {
      out[i] += w[e];
      out[j] += w[e];
    }
}

// out = S^T v. No validation; `out` must have size edge_count(m).
inline void degree_adjoint_into(int m, const Vector& v, Vector& out) {
  Index e = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j, ++e) out[e] = v[i] + v[j];
}

// Weighted node degrees d = Sw = W1.
[[nodiscard]] inline Vector degree_map(const EdgeVector& g) {
  validate(g);
  Vector d(g.m);
  degree_map_into(g.m, g.w, d);
  return d;
}

// Adjoint of the degree operator: the entry for pair (i, j) is v_i + v_j.
[[nodiscard]] inline Vector degree_adjoint(const Vector& v) {
  const int m = static_cast<int>(v.size());
  if (m < 2) throw std::invalid_argument("degree_adjoint: need at least 2 nodes");
  if (!v.allFinite()) throw std::invalid_argument("degree_adjoint: non-finite input");
  Vector out(edge_count(m));
  degree_adjoint_into(m, v, out);
  return out;
}

// Spectral norm of the degree operator, ||S||_2 = sqrt(2(m-1)).
[[nodiscard]] inline double degree_operator_norm(int m) {
  if (m < 2) throw std::invalid_argument("degree_operator_norm: need at least 2 nodes");
  return std::sqrt(2.0 * (m - 1));
}

// L = D - W assembled directly from the edge vector.
[[nodiscard]] inline Matrix laplacian_from_edges(const EdgeVector& g) {
  validate(g);
  Matrix L = Matrix::Zero(g.m, g.m);
  for_each_edge(g.m, [&](Index e, int i, int j) {
    const double wij = g.w[e];
    L(i, j) = -wij;
    L(j, i) = -wij;
    L(i, i) += wij;
    L(j, j) += wij;
  });
  return L;
}

// Squared Euclidean distances between the rows of X, in edge order.
// Differences are formed before squaring to avoid the cancellation of the
// expanded inner-product formula.
[[nodiscard]] inline DistanceVector pairwise_distances(const Matrix& X) {
  const int m = static_cast<int>(X.rows());
  if (m < 2) throw std::invalid_argument("pairwise_distances: need at least 2 rows");
  if (!X.allFinite()) throw std::invalid_argument("pairwise_distances: non-finite data");
  DistanceVector d{m, Vector(edge_count(m))};
  for_each_edge(m, [&](Index e, int i, int j) {
    d.z[e] = (X.row(i) - X.row(j)).squaredNorm();
  });
  return d;
}

// Dirichlet energy tr(X^T L X) of the rows of X on the graph.
[[nodiscard]] inline double smoothness_value(const Matrix& X, const EdgeVector& g) {
  validate(g);
  if (X.rows() != g.m)
    throw std::invalid_argument("smoothness_value: row count does not match node count");
  const Matrix L = laplacian_from_edges(g);
  return (X.transpose() * (L * X)).trace();
}

// Symmetrized union k-nearest-neighbor pattern from distances: an edge is
// present iff i is among j's k closest or vice versa. Ties are broken in
// favor of the lower node index.
[[nodiscard]] inline EdgeVector knn_edges(const DistanceVector& dist, int k) {
  validate(dist);
  const int m = dist.m;
  if (k < 1 || k > m - 1) throw std::invalid_argument("knn_edges: k must be in [1, m-1]");
  EdgeVector out = EdgeVector::zeros(m);
  std::vector<std::pair<double, int>> neighbors;
  neighbors.reserve(m - 1);
  for (int i = 0; i < m; ++i) {
    neighbors.clear();
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const double zij = dist.z[edge_index(m, std::min(i, j), std::max(i, j))];
      neighbors.emplace_back(zij, j);
    }
    std::partial_sort(neighbors.begin(), neighbors.begin() + k, neighbors.end());
    for (int t = 0; t < k; ++t) {
      const int j = neighbors[t].second;
      out.w[edge_index(m, std::min(i, j), std::max(i, j))] = 1.0;
    }
  }
  return out;
}

}  // namespace graphlearn
