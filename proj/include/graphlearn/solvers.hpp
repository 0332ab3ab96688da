#pragma once

// Graph learning from pairwise distances.
//
// Given the vector z of squared pairwise distances between data rows, both
// learned models minimize a sum f1(w) + f2(Kw) + f3(w) over edge vectors,
// where f1(w) = 1{w >= 0} + 2 w'z carries the weighted-l1 data term and the
// positivity constraint, f2 is a prior acting through a linear map K, and
// f3 is smooth. They are solved with a primal-dual forward-backward-forward
// splitting: one forward (gradient) step, proximal steps on f1 and on the
// convex conjugate of f2, and a forward correction step.
//
// Log-degree model (dual variable d = Sw, the node degrees):
//   minimize  2 w'z - alpha * sum_i log((Sw)_i) + beta * ||w||^2,  w >= 0
// The logarithmic barrier keeps every node degree strictly positive without
// forbidding individual edges to vanish; beta controls edge density.
// Note the vector-form convention: the quadratic penalty is beta * ||w||^2.
// A matrix-form Frobenius penalty beta_m * ||W||_F^2 equals 2 * beta_m *
// ||w||^2, so beta here is twice the matrix-form coefficient.
//
// l2-degree model (scalar dual c = 2 * sum(w) = ||W||_1,1):
//   minimize  2 w'z + alpha * (2 ||w||^2 + ||Sw||^2)
//   subject to  w >= 0,  2 * sum(w) = s
// For alpha = 0 this is a linear program putting all mass on the smallest
// distance; large alpha evens out the node degrees.
//
// Steps default to gamma = 0.99 / (zeta + ||K||_2) with zeta the Lipschitz
// constant of grad f3 (2*beta, resp. 4*alpha*m from ||4 I + 2 S'S||_2 =
// 4 + 4(m-1)) and ||K||_2 = sqrt(2(m-1)) resp. 2*sqrt(m(m-1)/2).
//
// Iterates start from w = 0 with dual d = 1 (log-degree) or c = s
// (l2-degree). The iteration stops once the relative change of both the
// primal and the dual iterate falls below `epsilon` (absolute change where
// the previous iterate is zero). The reported weights are the latest
// proximal point, which is feasible (nonnegative) and exactly sparse,
// unlike the raw primal iterate whose entries only approach zero.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphlearn/edge_space.hpp"

namespace graphlearn {

struct SolverConfig {
  double gamma = 0.0;        // step size; 0 selects the default bound above
  double epsilon = 1e-4;     // relative-change stopping tolerance
  int max_iterations = 100000;
  bool record_trace = true;  // per-iteration objective / relative change
  double l2_lipschitz = 0.0; // override for the l2 model's zeta; 0 = 4*alpha*m
};

struct SolverResult {
  EdgeVector weights;
  Vector dual_degrees;      // log-degree model: final node-space dual iterate
  double dual_scale = 0.0;  // l2-degree model: final scalar dual iterate
  int iterations = 0;
  bool converged = false;
  double final_objective = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> objective_trace;   // objective at each proximal point
  std::vector<double> rel_change_trace;  // max of primal/dual relative change
};

// prox of gamma * f1 with f1(w) = 1{w >= 0} + 2 w'z: max(0, y - 2*gamma*z).
[[nodiscard]] inline Vector prox_nonneg_weighted_l1(const Vector& y, const Vector& z,
                                                    double gamma) {
  if (y.size() != z.size())
    throw std::invalid_argument("prox_nonneg_weighted_l1: size mismatch");
  if (!(gamma >= 0.0)) throw std::invalid_argument("prox_nonneg_weighted_l1: gamma >= 0");
  return (y - 2.0 * gamma * z).cwiseMax(0.0);
}

// prox of gamma * f2* for f2(d) = -alpha * sum_i log(d_i), elementwise
// (ybar - sqrt(ybar^2 + 4*alpha*gamma)) / 2. By the Moreau decomposition this
// equals ybar - gamma * prox_{f2/gamma}(ybar/gamma), with
// prox_{lambda f2}(y) = (y + sqrt(y^2 + 4*alpha*lambda)) / 2.
[[nodiscard]] inline Vector prox_log_barrier_conjugate(const Vector& ybar, double alpha,
                                                       double gamma) {
  if (!(alpha > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("prox_log_barrier_conjugate: alpha, gamma > 0");
  return 0.5 *
         (ybar.array() - (ybar.array().square() + 4.0 * alpha * gamma).sqrt()).matrix();
}

namespace detail {

[[nodiscard]] inline double log_degree_objective_raw(int m, const Vector& z, const Vector& w,
                                                     double alpha, double beta) {
  if ((w.array() < 0.0).any()) return std::numeric_limits<double>::infinity();
  Vector deg(m);
  degree_map_into(m, w, deg);
  if ((deg.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
  return 2.0 * w.dot(z) - alpha * deg.array().log().sum() + beta * w.squaredNorm();
}

[[nodiscard]] inline double l2_degree_objective_raw(int m, const Vector& z, const Vector& w,
                                                    double alpha) {
  if ((w.array() < 0.0).any()) return std::numeric_limits<double>::infinity();
  Vector deg(m);
  degree_map_into(m, w, deg);
  return 2.0 * w.dot(z) + alpha * (2.0 * w.squaredNorm() + deg.squaredNorm());
}

[[nodiscard]] inline double relative_change(double delta, double previous_norm) {
  return previous_norm > 0.0 ? delta / previous_norm : delta;
}

inline void check_finite(double primal_delta, double dual_delta, const char* solver,
                         int iteration) {
  if (!std::isfinite(primal_delta) || !std::isfinite(dual_delta))
    throw std::runtime_error(std::string(solver) + ": non-finite iterate at iteration " +
                             std::to_string(iteration));
}

}  // namespace detail

[[nodiscard]] inline SolverResult learn_log_degree(const DistanceVector& dist, double alpha,
                                                   double beta, SolverConfig cfg = {}) {
  validate(dist);
  if (!(alpha > 0.0)) throw std::invalid_argument("learn_log_degree: alpha > 0 required");
  if (!(beta >= 0.0)) throw std::invalid_argument("learn_log_degree: beta >= 0 required");
  if (cfg.max_iterations < 0) throw std::invalid_argument("learn_log_degree: bad iteration cap");
  const int m = dist.m;
  const Index ne = edge_count(m);
  const Vector& z = dist.z;
  const double zeta = 2.0 * beta;
  const double gamma = cfg.gamma > 0.0 ? cfg.gamma : 0.99 / (zeta + degree_operator_norm(m));
  if (!std::isfinite(gamma) || !(gamma > 0.0))
    throw std::invalid_argument("learn_log_degree: invalid step size");

  Vector w = Vector::Zero(ne);
  Vector d = Vector::Ones(m);
  Vector w_prev(ne), d_prev(m);
  Vector y(ne), p(ne), q(ne), edge_buf(ne);
  Vector ybar(m), pbar(m), qbar(m), node_buf(m);
  p.setZero();

  SolverResult result;
  int it = 0;
  for (it = 1; it <= cfg.max_iterations; ++it) {
    w_prev = w;
    d_prev = d;

    degree_adjoint_into(m, d, edge_buf);                       // S'd
    y = w - gamma * (2.0 * beta * w + edge_buf);
    degree_map_into(m, w, node_buf);                           // Sw
    ybar = d + gamma * node_buf;

    p = (y - 2.0 * gamma * z).cwiseMax(0.0);
    pbar = 0.5 * (ybar.array() - (ybar.array().square() + 4.0 * alpha * gamma).sqrt()).matrix();

    degree_adjoint_into(m, pbar, edge_buf);                    // S'pbar
    q = p - gamma * (2.0 * beta * p + edge_buf);
    degree_map_into(m, p, node_buf);                           // Sp
    qbar = pbar + gamma * node_buf;

    w += q - y;
    d += qbar - ybar;

    const double dw = (w - w_prev).norm();
    const double dd = (d - d_prev).norm();
    detail::check_finite(dw, dd, "learn_log_degree", it);
    const double rel_w = detail::relative_change(dw, w_prev.norm());
    const double rel_d = detail::relative_change(dd, d_prev.norm());
    if (cfg.record_trace) {
      result.objective_trace.push_back(detail::log_degree_objective_raw(m, z, p, alpha, beta));
      result.rel_change_trace.push_back(std::max(rel_w, rel_d));
    }
    if (rel_w < cfg.epsilon && rel_d < cfg.epsilon) {
      result.converged = true;
      break;
    }
  }
  result.iterations = std::min(it, cfg.max_iterations);
  result.weights = EdgeVector{m, p};
  result.dual_degrees = d;
  result.final_objective = detail::log_degree_objective_raw(m, z, p, alpha, beta);
  return result;
}

// One-effective-parameter form: by the scaling equivariance of the model,
// the solution for (alpha, beta) is alpha times the solution for
// (1, alpha*beta), so grid searches only need to sweep beta_eff at alpha = 1.
[[nodiscard]] inline SolverResult learn_log_degree_unit_alpha(const DistanceVector& dist,
                                                              double beta_eff,
                                                              SolverConfig cfg = {}) {
  return learn_log_degree(dist, 1.0, beta_eff, cfg);
}

[[nodiscard]] inline SolverResult learn_l2_degree(const DistanceVector& dist, double alpha,
                                                  double s, SolverConfig cfg = {}) {
  validate(dist);
  if (!(alpha >= 0.0)) throw std::invalid_argument("learn_l2_degree: alpha >= 0 required");
  if (!(s > 0.0)) throw std::invalid_argument("learn_l2_degree: s > 0 required");
  if (cfg.max_iterations < 0) throw std::invalid_argument("learn_l2_degree: bad iteration cap");
  const int m = dist.m;
  const Index ne = edge_count(m);
  const Vector& z = dist.z;
  const double zeta = cfg.l2_lipschitz > 0.0 ? cfg.l2_lipschitz : 4.0 * alpha * m;
  const double k_norm = 2.0 * std::sqrt(static_cast<double>(ne));  // ||2*1||_2
  const double gamma = cfg.gamma > 0.0 ? cfg.gamma : 0.99 / (zeta + k_norm);
  if (!std::isfinite(gamma) || !(gamma > 0.0))
    throw std::invalid_argument("learn_l2_degree: invalid step size");

  Vector w = Vector::Zero(ne);
  double c = s;
  Vector w_prev(ne);
  Vector y(ne), p(ne), q(ne), grad_buf(ne), edge_buf(ne);
  Vector node_buf(m);
  p.setZero();

  // grad f3(v) = alpha * (4 v + 2 S'S v), written into grad_buf
  const auto gradient = [&](const Vector& v) {
    degree_map_into(m, v, node_buf);
    degree_adjoint_into(m, node_buf, edge_buf);
    grad_buf = alpha * (4.0 * v + 2.0 * edge_buf);
  };

  SolverResult result;
  int it = 0;
  for (it = 1; it <= cfg.max_iterations; ++it) {
    w_prev = w;
    const double c_prev = c;

    gradient(w);
    y = w - gamma * (grad_buf.array() + 2.0 * c).matrix();
    const double ybar = c + gamma * 2.0 * w.sum();

    p = (y - 2.0 * gamma * z).cwiseMax(0.0);
    const double pbar = ybar - gamma * s;

    gradient(p);
    q = p - gamma * (grad_buf.array() + 2.0 * pbar).matrix();
    const double qbar = pbar + gamma * 2.0 * p.sum();

    w += q - y;
    c += qbar - ybar;

    const double dw = (w - w_prev).norm();
    const double dc = std::abs(c - c_prev);
    detail::check_finite(dw, dc, "learn_l2_degree", it);
    const double rel_w = detail::relative_change(dw, w_prev.norm());
    const double rel_c = detail::relative_change(dc, std::abs(c_prev));
    if (cfg.record_trace) {
      result.objective_trace.push_back(detail::l2_degree_objective_raw(m, z, p, alpha));
      result.rel_change_trace.push_back(std::max(rel_w, rel_c));
    }
    if (rel_w < cfg.epsilon && rel_c < cfg.epsilon) {
      result.converged = true;
      break;
    }
  }
  result.iterations = std::min(it, cfg.max_iterations);
  result.weights = EdgeVector{m, p};
  result.dual_scale = c;
  result.final_objective = detail::l2_degree_objective_raw(m, z, p, alpha);
  return result;
}

// Closed-form kernel weights w = exp(-z / (2 sigma^2)); the minimizer of the
// weighted-l1 data term plus the entropy-like edge prior
// sum_e [w_e z_e + 2 sigma^2 w_e (log w_e - 1)].
[[nodiscard]] inline EdgeVector gaussian_kernel_weights(const DistanceVector& dist,
                                                        double sigma) {
  validate(dist);
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_kernel_weights: sigma > 0");
  return EdgeVector{dist.m, (-dist.z.array() / (2.0 * sigma * sigma)).exp()};
}

// Objective of the log-degree model; +infinity when some degree is zero.
[[nodiscard]] inline double log_degree_objective(const DistanceVector& dist,
                                                 const EdgeVector& g, double alpha,
                                                 double beta) {
  validate(dist);
  validate(g);
  if (dist.m != g.m) throw std::invalid_argument("log_degree_objective: size mismatch");
  return detail::log_degree_objective_raw(g.m, dist.z, g.w, alpha, beta);
}

// Smooth part of the l2-degree model (the scale constraint is not included).
[[nodiscard]] inline double l2_degree_objective(const DistanceVector& dist,
                                                const EdgeVector& g, double alpha) {
  validate(dist);
  validate(g);
  if (dist.m != g.m) throw std::invalid_argument("l2_degree_objective: size mismatch");
  return detail::l2_degree_objective_raw(g.m, dist.z, g.w, alpha);
}

}  // namespace graphlearn
