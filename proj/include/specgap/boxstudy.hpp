#pragma once

// Quantities behind the box estimate: the path gap gamma_L, the worst gap
// beta_L over the graphs met while growing B_{L-1} into B_L, the numeric audit
// of the boundary-graph bound, and the finite-L asymptotic table.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "specgap/graph.hpp"
#include "specgap/spectral.hpp"

namespace specgap {

struct BoxOptions {
  SolverOptions solver;
  std::size_t state_budget = kDefaultStateBudget;
  /// Largest box (in vertices) for which the interchange column is computed.
  std::size_t interchange_vertex_limit = 9;
};

/// Paths up to this length are solved by eigensolve; beyond, the closed form.
inline constexpr std::size_t kGammaEigensolveLimit = 60;

/// 4 sin^2(pi / (2(L+1))).
double gamma_closed_form(std::size_t L);

/// lambda_RW of the path with L+1 vertices; L >= 1.
double gamma(std::size_t L, const SolverOptions& solver = {});

struct SnapshotGap {
  std::size_t vertices = 0;
  std::size_t direction = 0;
  double gap = 0.0;
};

struct BoxReport {
  std::size_t d = 0;
  std::size_t L = 0;
  double gamma = 0.0;
  double beta = 0.0;
  double ratio = 0.0;       // beta / gamma
  double normalized = 0.0;  // gamma L^2 / pi^2
  std::vector<SnapshotGap> snapshots;
};

BoxReport beta(std::size_t d, std::size_t L, const BoxOptions& options = {});

/// One numeric inequality lhs <= rhs (or lhs >= rhs, per `relation`).
struct InequalityCheck {
  std::string name;
  std::string relation;  // "<=" or ">="
  double lhs = 0.0;
  double rhs = 0.0;
  bool applicable = true;
  bool holds = true;
  std::string note;
};

/// Audit of one eigenvector of the boundary graph G'(L, k).
///
/// Energies here are unnormalised: E(f) = sum over edges (f(u)-f(v))^2, so
/// E(f) = lambda sum f^2 for an eigenvector.
struct EigenvectorAudit {
  double lambda = 0.0;
  std::vector<double> profile;  // h(j) = sum of f over the slice with coordinate k = j
  double profile_residual = 0.0;
  double s_sum = 0.0;           // sum_{x in S} f(x)
  double total_squares = 0.0;   // sum_{V'} f^2
  double s_squares = 0.0;
  double good_squares = 0.0;
  double bad_squares = 0.0;
  double energy = 0.0;
  double s_energy = 0.0;
  std::size_t good_count = 0;
  std::size_t bad_count = 0;
  /// Bad vertices for which f(x)^2 <= (4/M) sum_{j=1..M} f(x - j e_k)^2 fails
  /// (the two descriptions of "bad" disagree); flagged, never repaired.
  std::size_t bad_formulation_mismatches = 0;
  std::vector<InequalityCheck> checks;
  bool all_applicable_hold = true;
};

struct CorollaryAudit {
  std::size_t d = 0;
  std::size_t L = 0;
  std::size_t k = 0;
  std::size_t M = 0;
  /// 1 - (1 - 4/M)^2; meaningful only for M > 4.
  std::optional<double> epsilon;
  double gamma = 0.0;
  double lambda_rw_boundary = 0.0;
  std::optional<double> lambda_rw_inner;  // lambda_RW(H_{k-1}); absent for a single vertex
  std::size_t s_size = 0;
  std::size_t boundary_size = 0;
  std::vector<EigenvectorAudit> eigenvectors;  // orthonormal basis of the gap eigenspace
  bool all_applicable_hold = true;
};

/// Requires 1 <= k <= d and 1 <= M <= L; G'(L, k) must be dense-solvable.
CorollaryAudit corollary_audit(std::size_t d, std::size_t L, std::size_t k, std::size_t M,
                               const BoxOptions& options = {});

struct AsymptoticRow {
  std::size_t d = 0;
  std::size_t L = 0;
  double gamma = 0.0;
  double beta = 0.0;
  double beta_over_gamma = 0.0;
  double normalized = 0.0;
  std::optional<double> lambda_ip;
  std::optional<double> ip_over_rw;
  std::string notice;
};

/// Rows L = 1..L_max. The interchange column is filled for boxes with at
/// most `interchange_vertex_limit` vertices when with_ip is set.
std::vector<AsymptoticRow> asymptotic_report(std::size_t d, std::size_t L_max, bool with_ip,
                                             const BoxOptions& options = {});

}  // namespace specgap
