#include <doctest.h>

#include <cmath>
#include <limits>

#include "graphlearn/random.hpp"
#include "graphlearn/solvers.hpp"
#include "oracles.hpp"

using namespace graphlearn;

namespace {

DistanceVector random_distances(int m, std::uint64_t seed, double lo = 0.1, double hi = 2.0) {
  RandomStream stream(seed);
  DistanceVector d{m, Vector(edge_count(m))};
  for (Index e = 0; e < d.z.size(); ++e) d.z[e] = lo + (hi - lo) * stream.uniform();
  return d;
}

SolverConfig tight() {
  SolverConfig cfg;
  cfg.epsilon = 1e-10;
  cfg.max_iterations = 500000;
  cfg.record_trace = false;
  return cfg;
}

}  // namespace

TEST_CASE("prox of the nonnegative weighted-l1 term") {
  Vector y(1), z(1);
  y << 5.0;
  z << 1.0;
  CHECK(prox_nonneg_weighted_l1(y, z, 1.0)[0] == doctest::Approx(3.0).epsilon(1e-14));
  y << 1.0;
  CHECK(prox_nonneg_weighted_l1(y, z, 1.0)[0] == 0.0);
  y << -2.5;
  z << 0.0;
  CHECK(prox_nonneg_weighted_l1(y, z, 1.0)[0] == 0.0);
  y << 2.5;
  CHECK(prox_nonneg_weighted_l1(y, z, 1.0)[0] == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("prox of the log-barrier conjugate") {
  Vector ybar(1);
  ybar << 0.0;
  CHECK(prox_log_barrier_conjugate(ybar, 1.0, 1.0)[0] == doctest::Approx(-1.0).epsilon(1e-14));
  ybar << 3.0;
  CHECK(prox_log_barrier_conjugate(ybar, 1.0, 1.0)[0] ==
        doctest::Approx((3.0 - std::sqrt(13.0)) / 2.0).epsilon(1e-14));
  // vanishing barrier: the prox approaches min(y, 0)
  ybar << 2.0;
  CHECK(prox_log_barrier_conjugate(ybar, 1e-18, 1.0)[0] == doctest::Approx(0.0).epsilon(1e-9));
  ybar << -2.0;
  CHECK(prox_log_barrier_conjugate(ybar, 1e-18, 1.0)[0] == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("moreau identity links the conjugate prox to the barrier prox") {
  RandomStream stream(8);
  for (int rep = 0; rep < 50; ++rep) {
    const double alpha = 0.2 + 2.0 * stream.uniform();
    const double gamma = 0.1 + stream.uniform();
    Vector ybar(1);
    ybar << 6.0 * (stream.uniform() - 0.5);
    const double conj = prox_log_barrier_conjugate(ybar, alpha, gamma)[0];
    const double v = ybar[0] / gamma;
    const double prox_scaled = (v + std::sqrt(v * v + 4.0 * alpha / gamma)) / 2.0;
    CHECK(std::abs(conj + gamma * prox_scaled - ybar[0]) <=
          1e-12 * std::max(1.0, std::abs(ybar[0])));
  }
}

TEST_CASE("both prox operators are nonexpansive") {
  RandomStream stream(12);
  Vector z(6);
  for (Index e = 0; e < 6; ++e) z[e] = stream.uniform();
  for (int rep = 0; rep < 20; ++rep) {
    Vector a(6), b(6);
    for (Index e = 0; e < 6; ++e) {
      a[e] = 4.0 * (stream.uniform() - 0.5);
      b[e] = 4.0 * (stream.uniform() - 0.5);
    }
    const double gamma = 0.1 + stream.uniform();
    CHECK((prox_nonneg_weighted_l1(a, z, gamma) - prox_nonneg_weighted_l1(b, z, gamma)).norm() <=
          (a - b).norm() * (1.0 + 1e-12));
    CHECK((prox_log_barrier_conjugate(a, 1.3, gamma) - prox_log_barrier_conjugate(b, 1.3, gamma))
              .norm() <= (a - b).norm() * (1.0 + 1e-12));
  }
}

TEST_CASE("log-degree model on a single edge has closed-form solutions") {
  DistanceVector z{2, Vector::Zero(1)};
  SUBCASE("alpha = beta = 1 gives w = 1") {
    const SolverResult r = learn_log_degree(z, 1.0, 1.0, tight());
    CHECK(r.converged);
    CHECK(r.weights.w[0] == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("alpha = 4, beta = 1 gives w = 2") {
    const SolverResult r = learn_log_degree(z, 4.0, 1.0, tight());
    CHECK(r.converged);
    CHECK(r.weights.w[0] == doctest::Approx(2.0).epsilon(1e-6));
  }
}

TEST_CASE("log-degree model matches the slow projected-gradient oracle") {
  const DistanceVector z = random_distances(3, 77);
  const SolverResult fast = learn_log_degree(z, 1.0, 1.0, tight());
  const oracles::SlowResult slow = oracles::slow_log_degree(3, z.z, 1.0, 1.0);
  CHECK(fast.converged);
  CHECK((fast.weights.w - slow.w).norm() <= 1e-3 * slow.w.norm());
  const double fast_obj = log_degree_objective(z, fast.weights, 1.0, 1.0);
  CHECK(fast_obj <= slow.objective + 1e-3 * std::abs(slow.objective));
}

TEST_CASE("l2-degree model with alpha = 0 concentrates mass on the closest pair") {
  DistanceVector z{3, Vector(3)};
  z.z << 0.7, 0.2, 0.9;
  const double s = 2.0;
  SolverConfig cfg = tight();
  cfg.max_iterations = 2000000;
  const SolverResult r = learn_l2_degree(z, 0.0, s, cfg);
  CHECK(r.weights.w[1] == doctest::Approx(s / 2.0).epsilon(1e-4));
  CHECK(r.weights.w[0] <= 1e-4 * s);
  CHECK(r.weights.w[2] <= 1e-4 * s);
}

TEST_CASE("l2-degree model is invariant to constant distance shifts") {
  const DistanceVector z = random_distances(5, 13);
  DistanceVector shifted = z;
  shifted.z.array() += 0.75;
  const SolverResult a = learn_l2_degree(z, 1.0, 5.0, tight());
  const SolverResult b = learn_l2_degree(shifted, 1.0, 5.0, tight());
  CHECK((a.weights.w - b.weights.w).norm() <= 1e-6 * std::max(a.weights.w.norm(), 1e-12));
}

TEST_CASE("l2-degree model matches the slow simplex-projection oracle") {
  const DistanceVector z = random_distances(3, 99);
  const SolverResult fast = learn_l2_degree(z, 1.0, 1.0, tight());
  const oracles::SlowResult slow = oracles::slow_l2_degree(3, z.z, 1.0, 1.0);
  CHECK(fast.converged);
  CHECK((fast.weights.w - slow.w).norm() <= 1e-3 * slow.w.norm());
}

TEST_CASE("l2-degree solutions satisfy the scale constraint") {
  const DistanceVector z = random_distances(8, 101);
  for (const double s : {1.0, 8.0}) {
    const SolverResult r = learn_l2_degree(z, 0.5, s, tight());
    CHECK(r.converged);
    CHECK(std::abs(2.0 * r.weights.w.sum() - s) <= 1e-6 * s);
  }
}

TEST_CASE("scaling equivariance: F(z, a, b) = a F(z, 1, ab) and the gamma form") {
  const DistanceVector z = random_distances(10, 555, 0.3, 1.8);
  const double alpha = 1.7, beta = 0.21;
  SolverConfig cfg = tight();
  const Vector direct = learn_log_degree(z, alpha, beta, cfg).weights.w;
  const Vector unit = learn_log_degree_unit_alpha(z, alpha * beta, cfg).weights.w;
  CHECK((direct - alpha * unit).cwiseAbs().maxCoeff() <=
        1e-4 * direct.cwiseAbs().maxCoeff());
  const double gamma = 3.0;
  const Vector scaled = learn_log_degree(z, alpha / gamma, beta * gamma, cfg).weights.w;
  CHECK((direct - gamma * scaled).cwiseAbs().maxCoeff() <=
        1e-4 * direct.cwiseAbs().maxCoeff());
}

TEST_CASE("pure log barrier keeps every degree strictly positive") {
  const DistanceVector z = random_distances(10, 202, 0.2, 3.0);
  const SolverResult r = learn_log_degree(z, 1.0, 0.0, tight());
  CHECK(r.converged);
  Vector d(10);
  degree_map_into(10, r.weights.w, d);
  CHECK(d.minCoeff() > 0.0);
}

TEST_CASE("objective values") {
  DistanceVector z{2, Vector::Constant(1, 1.0)};
  CHECK(log_degree_objective(z, EdgeVector::zeros(2), 1.0, 1.0) ==
        std::numeric_limits<double>::infinity());
  EdgeVector one{2, Vector::Constant(1, 1.0)};
  CHECK(log_degree_objective(z, one, 1.0, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(l2_degree_objective(z, one, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("f3 gradients match central finite differences") {
  const int m = 6;
  RandomStream stream(404);
  Vector w(edge_count(m));
  for (Index e = 0; e < w.size(); ++e) w[e] = 0.2 + stream.uniform();

  SUBCASE("log-degree model: grad of beta ||w||^2 is 2 beta w") {
    const double beta = 0.8;
    const auto f = [&](const Vector& v) { return beta * v.squaredNorm(); };
    const Vector grad = 2.0 * beta * w;
    const Vector fd = oracles::finite_difference_gradient(f, w);
    CHECK((grad - fd).norm() <= 1e-6 * grad.norm());
  }
  SUBCASE("l2-degree model: grad of alpha(2||w||^2 + ||Sw||^2) is alpha(4w + 2S'Sw)") {
    const double alpha = 1.3;
    const auto f = [&](const Vector& v) {
      Vector d(m);
      degree_map_into(m, v, d);
      return alpha * (2.0 * v.squaredNorm() + d.squaredNorm());
    };
    Vector d(m), sts(edge_count(m));
    degree_map_into(m, w, d);
    degree_adjoint_into(m, d, sts);
    const Vector grad = alpha * (4.0 * w + 2.0 * sts);
    const Vector fd = oracles::finite_difference_gradient(f, w);
    CHECK((grad - fd).norm() <= 1e-6 * grad.norm());
  }
}

TEST_CASE("solver traces record per-iteration progress") {
  const DistanceVector z = random_distances(8, 30);
  SolverConfig cfg;
  cfg.epsilon = 1e-6;
  cfg.max_iterations = 100000;
  cfg.record_trace = true;
  const SolverResult r = learn_log_degree(z, 1.0, 1.0, cfg);
  REQUIRE(r.converged);
  CHECK(r.objective_trace.size() == static_cast<std::size_t>(r.iterations));
  CHECK(r.rel_change_trace.size() == r.objective_trace.size());
  CHECK(r.objective_trace.back() == r.final_objective);
  CHECK(r.rel_change_trace.back() < cfg.epsilon);
  CHECK(std::isfinite(r.final_objective));

  const SolverResult l2 = learn_l2_degree(z, 1.0, 4.0, cfg);
  REQUIRE(l2.converged);
  CHECK(l2.objective_trace.size() == static_cast<std::size_t>(l2.iterations));
  CHECK(l2.objective_trace.back() == l2.final_objective);
}

TEST_CASE("solver output is deterministic") {
  const DistanceVector z = random_distances(7, 31);
  const SolverResult a = learn_log_degree(z, 1.0, 0.5, {});
  const SolverResult b = learn_log_degree(z, 1.0, 0.5, {});
  CHECK(a.weights.w == b.weights.w);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("hitting the iteration cap reports non-convergence without throwing") {
  const DistanceVector z = random_distances(6, 32);
  SolverConfig cfg;
  cfg.max_iterations = 3;
  const SolverResult r = learn_log_degree(z, 1.0, 0.5, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
}

TEST_CASE("a wildly invalid step produces a diagnostic error") {
  const DistanceVector z = random_distances(6, 33);
  SolverConfig cfg;
  cfg.gamma = 1e12;
  cfg.max_iterations = 100000;
  CHECK_THROWS_AS((void)learn_log_degree(z, 1.0, 1.0, cfg), std::runtime_error);
}

TEST_CASE("solver rejects invalid parameters") {
  const DistanceVector z = random_distances(4, 34);
  CHECK_THROWS_AS((void)learn_log_degree(z, 0.0, 1.0, {}), std::invalid_argument);
  CHECK_THROWS_AS((void)learn_log_degree(z, 1.0, -1.0, {}), std::invalid_argument);
  CHECK_THROWS_AS((void)learn_l2_degree(z, -0.1, 1.0, {}), std::invalid_argument);
  CHECK_THROWS_AS((void)learn_l2_degree(z, 1.0, 0.0, {}), std::invalid_argument);
  CHECK_THROWS_AS((void)gaussian_kernel_weights(z, 0.0), std::invalid_argument);
}

TEST_CASE("gaussian kernel weights") {
  DistanceVector z{2, Vector::Zero(1)};
  CHECK(gaussian_kernel_weights(z, 0.4).w[0] == doctest::Approx(1.0).epsilon(1e-14));
  z.z[0] = 2.0 * 0.4 * 0.4;
  CHECK(gaussian_kernel_weights(z, 0.4).w[0] ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("gaussian kernel minimizes the entropy-prior objective") {
  const DistanceVector z = random_distances(6, 606, 0.05, 2.0);
  const double sigma = 0.7;
  const EdgeVector w = gaussian_kernel_weights(z, sigma);
  const auto objective = [&](const Vector& v) {
    double acc = 0.0;
    for (Index e = 0; e < v.size(); ++e)
      acc += v[e] * z.z[e] + 2.0 * sigma * sigma * v[e] * (std::log(v[e]) - 1.0);
    return acc;
  };
  const double base = objective(w.w);
  Vector probe = w.w;
  for (Index e = 0; e < probe.size(); ++e) {
    const double delta = 1e-3 * w.w[e];
    probe[e] = w.w[e] + delta;
    CHECK(objective(probe) >= base - 1e-12 * std::abs(base));
    probe[e] = w.w[e] - delta;
    CHECK(objective(probe) >= base - 1e-12 * std::abs(base));
    probe[e] = w.w[e];
  }
}
