#pragma once

// Quotient chains: a map g on states is lumpable when every state of a block
// sends the same total rate into each block; g(X_t) is then Markov with rates
// Q'(U, U') = sum_{y in U'} Q(u, y), and block sums of eigenvectors of Q are
// eigenvectors of Q' with the same eigenvalue (or vanish).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "specgap/generator.hpp"
#include "specgap/spectral.hpp"

namespace specgap {

inline constexpr double kLumpabilityTolerance = 1e-10;

class LumpingMap {
 public:
  /// block_of[x] in 0..block_count-1; every block must be nonempty.
  LumpingMap(std::vector<std::size_t> block_of, std::size_t block_count, std::string label);

  std::size_t source_size() const { return block_of_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t block(std::size_t state) const { return block_of_.at(state); }
  /// States of each block, ascending; blocks()[u][0] is the representative.
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  const std::string& label() const { return label_; }
  bool equal_block_sizes() const;

 private:
  std::vector<std::size_t> block_of_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::string label_;
};

LumpingMap identity_map(std::size_t states);
LumpingMap constant_map(std::size_t states);

/// On the permutation states of n vertices: block = vertex holding `particle`
/// (0-based). Blocks are indexed by vertex, matching rw_generator.
LumpingMap position_map(std::size_t n_vertices, std::size_t particle);

/// On the permutation states of n vertices: block = set of vertices holding
/// particles 0..red_count-1, indexed by the combinadic rank used by
/// exclusion_generator.
LumpingMap occupancy_map(std::size_t n_vertices, std::size_t red_count);

struct QuotientChain {
  LumpingMap map;
  Generator qprime;
};

/// Checks lumpability (throws LumpabilityError with the witness) and builds
/// Q' from the lowest-ranked state of each block. Throws InvalidArgument if
/// Q' is not symmetric (unequal block sizes).
QuotientChain build_quotient(const Generator& gen, const LumpingMap& map,
                             double tolerance = kLumpabilityTolerance);

/// h(U) = sum_{x in U} f(x).
std::vector<double> project_eigenvector(std::span<const double> f, const LumpingMap& map);

/// Projection check over a full eigenbasis of the source generator: every
/// block-sum vector h must satisfy ||Q'h + lambda h|| <= residual_tol * max(1, ||h||),
/// and the quotient spectrum must be a sub-multiset of the source spectrum.
struct ProjectionAudit {
  std::size_t eigenpairs = 0;
  std::size_t eigenvector_branch = 0;  // h nonzero, so an eigenvector of Q'
  std::size_t zero_branch = 0;         // h vanishes (||h|| <= 1e-10)
  double worst_scaled_residual = 0.0;  // max ||Q'h + lambda h|| / max(1, ||h||)
  std::vector<double> quotient_spectrum;
  bool spectrum_contained = false;
  bool pass = false;
};

ProjectionAudit audit_projection(const Eigensystem& source, const QuotientChain& quotient,
                                 double residual_tol = 1e-9, double spectrum_tol = 1e-8);

}  // namespace specgap
