#pragma once

// Spectral filtering of graph signals.
//
// A filter h acts on a signal x through the eigendecomposition of the
// Laplacian: y = h(L) x = sum_i u_i h(lambda_i) (u_i^T x). Three low-pass
// families are provided:
//   tikhonov    h(lambda) = 1 / (1 + a*lambda)
//   generative  h(lambda) = lambda^{-1/2} for lambda > 0, h(0) = 0
//   heat        h(lambda) = exp(-t*lambda)
// Filters are meant to be evaluated on the spectrum of a Laplacian scaled
// to unit spectral radius, so lambda lives in [0, 1].

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "graphlearn/edge_space.hpp"
#include "graphlearn/random.hpp"

namespace graphlearn {

// Eigenvalues at or below this magnitude are treated as exact zero modes.
inline constexpr double kZeroEigenvalueTol = 1e-10;

enum class FilterKind { tikhonov, generative, heat };

struct FilterSpec {
  FilterKind kind = FilterKind::tikhonov;
  double param = 10.0;  // a for tikhonov, t for heat; unused by generative
};

inline void validate(const FilterSpec& f) {
  if (f.kind != FilterKind::generative && !(f.param > 0.0))
    throw std::invalid_argument("FilterSpec: parameter must be positive");
}

struct GraphSpectrum {
  Vector eigenvalues;   // ascending; entries within kZeroEigenvalueTol of 0 are clamped
  Matrix eigenvectors;  // orthonormal columns
};

// Full symmetric eigendecomposition of a Laplacian.
[[nodiscard]] inline GraphSpectrum spectrum(const Matrix& L) {
  const auto n = L.rows();
  if (n < 1 || L.cols() != n) throw std::invalid_argument("spectrum: need a square matrix");
  if (!L.allFinite()) throw std::invalid_argument("spectrum: non-finite entries");
  const double scale = L.cwiseAbs().maxCoeff();
  if ((L - L.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale))
    throw std::invalid_argument("spectrum: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(L);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectrum: eigendecomposition failed");
  GraphSpectrum s{solver.eigenvalues(), solver.eigenvectors()};
  for (Index i = 0; i < s.eigenvalues.size(); ++i)
    if (std::abs(s.eigenvalues[i]) < kZeroEigenvalueTol) s.eigenvalues[i] = 0.0;
  return s;
}

// L scaled so that its largest eigenvalue is 1.
[[nodiscard]] inline Matrix normalize_laplacian_scale(const Matrix& L) {
  const GraphSpectrum s = spectrum(L);
  const double lambda_max = s.eigenvalues[s.eigenvalues.size() - 1];
  if (!(lambda_max > 0.0))
    throw std::invalid_argument("normalize_laplacian_scale: zero Laplacian");
  return L / lambda_max;
}

// Same rescaling applied directly to a spectrum (eigenvectors are shared).
[[nodiscard]] inline GraphSpectrum normalize_spectral_scale(GraphSpectrum s) {
  const double lambda_max = s.eigenvalues[s.eigenvalues.size() - 1];
  if (!(lambda_max > 0.0))
    throw std::invalid_argument("normalize_spectral_scale: zero Laplacian");
  s.eigenvalues /= lambda_max;
  return s;
}

[[nodiscard]] inline double filter_response(const FilterSpec& f, double lambda) {
  switch (f.kind) {
    case FilterKind::tikhonov:
      return 1.0 / (1.0 + f.param * lambda);
    case FilterKind::generative:
      return lambda > kZeroEigenvalueTol ? 1.0 / std::sqrt(lambda) : 0.0;
    case FilterKind::heat:
      return std::exp(-f.param * lambda);
  }
  throw std::logic_error("filter_response: unknown filter kind");
}

[[nodiscard]] inline Vector filter_signal(const GraphSpectrum& s, const FilterSpec& f,
                                          const Vector& x0) {
  validate(f);
  if (x0.size() != s.eigenvectors.rows())
    throw std::invalid_argument("filter_signal: signal length does not match spectrum");
  Vector coeffs = s.eigenvectors.transpose() * x0;
  for (Index i = 0; i < coeffs.size(); ++i) coeffs[i] *= filter_response(f, s.eigenvalues[i]);
  return s.eigenvectors * coeffs;
}

// m x n matrix whose column j is the filtered version of an independent
// standard-normal vector drawn with sub-seed derive_seed(seed, j); columns
// can therefore be regenerated (or generated in parallel) independently.
[[nodiscard]] inline Matrix generate_smooth_signals(const GraphSpectrum& s,
                                                    const FilterSpec& f, int n,
                                                    std::uint64_t seed) {
  validate(f);
  if (n < 1) throw std::invalid_argument("generate_smooth_signals: need at least 1 signal");
  const Index m = s.eigenvectors.rows();
  Matrix X(m, n);
  Vector x0(m);
  for (int j = 0; j < n; ++j) {
    RandomStream stream(derive_seed(seed, static_cast<std::uint64_t>(j)));
    for (Index i = 0; i < m; ++i) x0[i] = stream.normal();
    X.col(j) = filter_signal(s, f, x0);
  }
  return X;
}

// X + E with i.i.d. Gaussian E rescaled so that ||E||_F = ratio * ||X||_F.
[[nodiscard]] inline Matrix add_noise(const Matrix& X, double ratio, std::uint64_t seed) {
  if (!(ratio >= 0.0) || !std::isfinite(ratio))
    throw std::invalid_argument("add_noise: ratio must be finite and nonnegative");
  if (ratio == 0.0) return X;
  RandomStream stream(seed);
  Matrix E(X.rows(), X.cols());
  for (Index j = 0; j < E.cols(); ++j)
    for (Index i = 0; i < E.rows(); ++i) E(i, j) = stream.normal();
  const double noise_norm = E.norm();
  if (noise_norm == 0.0) return X;
  return X + (ratio * X.norm() / noise_norm) * E;
}

}  // namespace graphlearn
