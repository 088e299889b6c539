#pragma once

// Interchange versus random-walk gaps: the prefix lower bound
// lambda_IP(G) >= alpha_n = min_{2<=j<=n} lambda_RW(G_j), the batch check of
// lambda_IP = lambda_RW over small connected graphs, and the per-eigenvector
// audit of the inductive step.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "specgap/graph.hpp"
#include "specgap/spectral.hpp"

namespace specgap {

struct AldousOptions {
  SolverOptions solver;
  /// Interchange gaps are computed only when n! fits.
  std::size_t state_budget = kDefaultStateBudget;
  double tolerance = 1e-8;
};

struct LabelingAudit {
  Graph graph;
  /// prefix_gaps[k-2] = lambda_RW(G_k), k = 2..n.
  std::vector<double> prefix_gaps;
  /// alpha[k-2] = min_{2<=j<=k} lambda_RW(G_j).
  std::vector<double> alpha;
  std::optional<double> lambda_ip;
  bool alpha_nonincreasing = true;
  /// lambda_IP >= alpha_n - tolerance; true when lambda_IP was not computed.
  bool lemma_holds = true;

  double alpha_n() const { return alpha.back(); }
  double lambda_rw() const { return prefix_gaps.back(); }
};

/// Throws GraphError naming the first disconnected prefix.
LabelingAudit alpha_sequence(const Graph& g, const AldousOptions& options = {});

/// First k in 2..n whose induced prefix is disconnected, if any.
std::optional<std::size_t> first_disconnected_prefix(const Graph& g);

struct ConjectureCheck {
  double lambda_rw = 0.0;
  double lambda_ip = 0.0;
  double relative_difference = 0.0;
  bool pass = false;
};

ConjectureCheck verify_conjecture(const Graph& g, double tolerance, const AldousOptions& options = {});

struct BatchRow {
  std::string graph6;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  double lambda_rw = 0.0;
  double lambda_ip = 0.0;
  double relative_difference = 0.0;
  double alpha_n = 0.0;
  bool pass = false;
};

struct BatchSummary {
  double tolerance = 0.0;
  std::size_t n_max = 0;
  std::vector<BatchRow> rows;
  double worst_relative_difference = 0.0;
  std::size_t failures = 0;
};

/// verify_conjecture over enumerate_connected(n) for n = 2..n_max (<= 7).
/// alpha_n uses the canonical labeling when its prefixes are connected and
/// a breadth-first relabeling otherwise.
BatchSummary batch_verify(std::size_t n_max, double tolerance, const AldousOptions& options = {});

/// Uniform random labeling of g with every prefix connected (rejection
/// sampling). Throws GraphError for disconnected g.
Graph random_connected_labeling(const Graph& g, std::mt19937_64& rng);

/// Breadth-first relabeling from `root`: every prefix is connected, and for
/// a tree each new vertex is a leaf of the prefix.
Graph bfs_labeling(const Graph& g, Vertex root = 0);

/// Seeded random connected graph on n vertices (random spanning tree plus
/// independent extra edges with probability `extra_edge_probability`).
Graph random_connected_graph(std::size_t n, double extra_edge_probability, std::mt19937_64& rng);

// ---- case audit -----------------------------------------------------------

enum class EigenCase { constant, projection_nonzero, projections_vanish };

const char* to_string(EigenCase c);

struct EigenpairAudit {
  double lambda = 0.0;
  EigenCase classification = EigenCase::constant;
  /// Nonzero projection branch: particle whose position projection h is
  /// nonzero, and the residual of h as a random-walk eigenvector.
  std::optional<std::size_t> particle;
  double projection_residual = 0.0;
  bool lambda_at_least_rw_gap = true;
  /// Vanishing projection branch: the chain of (in)equalities.
  double full_energy = 0.0;        // n! E(f,f)
  double class_energy = 0.0;       // (1/2) sum_k sum_{W_k x W_k} (f1 - f2)^2 Q
  double class_energy_sum = 0.0;   // sum_k (n-1)! E_k(f,f)
  double alpha_weighted = 0.0;     // alpha_n sum_k (n-1)! var_k(f)
  double alpha_squares = 0.0;      // alpha_n sum_k sum_{W_k} f^2
  double alpha_variance = 0.0;     // alpha_n n! var(f)
  double max_class_sum = 0.0;      // max_k |sum_{W_k} f|
  bool per_class_bound = true;     // E_k >= alpha_{n-1} var_k >= alpha_n var_k for all k
  bool verified = false;
};

struct CaseAudit {
  Graph graph;
  double alpha_n = 0.0;
  double alpha_n_minus_1 = 0.0;
  double lambda_rw = 0.0;
  std::vector<EigenpairAudit> pairs;
  std::size_t nonzero_projection_count = 0;
  std::size_t vanishing_projection_count = 0;
  bool all_verified = true;
};

/// Dense audit of every interchange eigenvector (n <= 6). Projections count
/// as zero when ||h||_inf <= 1e-9 ||f||_inf.
CaseAudit case2_audit(const Graph& g, const AldousOptions& options = {});

}  // namespace specgap
