#pragma once

// Spectral gaps of symmetric generators: dense eigensolve for small state
// spaces, matrix-free Lanczos with the constant vector deflated for large ones.

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "specgap/generator.hpp"

namespace specgap {

inline constexpr std::size_t kDefaultDenseThreshold = 2000;
inline constexpr double kDefaultTolerance = 1e-9;

enum class SolverMethod { automatic, dense, lanczos };

const char* to_string(SolverMethod method);

struct SolverOptions {
  /// Bound on ||Qf + gap f|| / ||f|| for the returned eigenpair.
  double tolerance = kDefaultTolerance;
  /// State spaces up to this size are solved densely.
  std::size_t dense_threshold = kDefaultDenseThreshold;
  std::uint64_t seed = 1;
  /// Cap on operator applications per Lanczos attempt.
  std::size_t max_iterations = 5000;
  /// Lanczos basis size before a thick restart; bounds memory at
  /// max_basis * |W| doubles.
  std::size_t max_basis = 120;
  /// Ritz vectors retained across a restart.
  std::size_t restart_keep = 24;
  SolverMethod method = SolverMethod::automatic;
};

struct SpectrumResult {
  double gap = 0.0;
  std::vector<double> eigenvector;  // unit norm, orthogonal to constants
  double residual = 0.0;
  SolverMethod method = SolverMethod::dense;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
};

/// Smallest nonzero eigenvalue of -Q with a residual certificate.
///
/// Throws ReducibleChain when a second zero eigenvalue shows up, and
/// ConvergenceError when Lanczos fails twice (second attempt uses seed + 1).
SpectrumResult spectral_gap(const Generator& gen, const SolverOptions& options = {});

/// All eigenvalues of -Q, ascending, with multiplicity. Dense only.
std::vector<double> full_spectrum(const Generator& gen, std::size_t dense_threshold = kDefaultDenseThreshold);

/// Eigenvalues (ascending) and orthonormal eigenvectors of -Q.
struct Eigensystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // column i pairs with values[i]
};

Eigensystem eigensystem(const Generator& gen, std::size_t dense_threshold = kDefaultDenseThreshold);

/// ||Qf + lambda f||_2 / ||f||_2. Throws InvalidArgument for f = 0.
double check_eigenpair(const Generator& gen, std::span<const double> f, double lambda);

/// Groups ascending eigenvalues into clusters whose members lie within
/// `tol` of the cluster's first value; returns [begin, end) index pairs.
std::vector<std::pair<std::size_t, std::size_t>> eigenvalue_clusters(const Eigen::VectorXd& values, double tol);

/// True if `sub` is a sub-multiset of `full` (both ascending) within `tol`.
bool is_sub_multiset(std::span<const double> sub, std::span<const double> full, double tol);

}  // namespace specgap
