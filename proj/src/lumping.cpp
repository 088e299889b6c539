#include "specgap/lumping.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "specgap/errors.hpp"

namespace specgap {

LumpingMap::LumpingMap(std::vector<std::size_t> block_of, std::size_t block_count, std::string label)
    : block_of_(std::move(block_of)), blocks_(block_count), label_(std::move(label)) {
  for (std::size_t x = 0; x < block_of_.size(); ++x) {
    if (block_of_[x] >= block_count) throw InvalidArgument("block label out of range");
    blocks_[block_of_[x]].push_back(x);
  }
  for (const auto& b : blocks_)
    if (b.empty()) throw InvalidArgument("lumping map has an empty block");
}

bool LumpingMap::equal_block_sizes() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [&](const auto& b) { return b.size() == blocks_.front().size(); });
}

LumpingMap identity_map(std::size_t states) {
  std::vector<std::size_t> block_of(states);
  for (std::size_t x = 0; x < states; ++x) block_of[x] = x;
  return LumpingMap(std::move(block_of), states, "identity");
}

LumpingMap constant_map(std::size_t states) {
  return LumpingMap(std::vector<std::size_t>(states, 0), 1, "constant");
}

LumpingMap position_map(std::size_t n_vertices, std::size_t particle) {
  const auto indexer = StateIndexer::permutations(n_vertices);
  if (particle >= n_vertices) throw InvalidArgument("particle label out of range");
  std::vector<std::size_t> block_of(indexer.size());
  StateBuffer buffer{};
  const std::span<std::uint8_t> pi(buffer.data(), n_vertices);
  for (std::size_t s = 0; s < indexer.size(); ++s) {
    unrank_permutation(s, pi);
    block_of[s] = pi[particle];
  }
  return LumpingMap(std::move(block_of), n_vertices, "position of particle " + std::to_string(particle));
}

LumpingMap occupancy_map(std::size_t n_vertices, std::size_t red_count) {
  const auto indexer = StateIndexer::permutations(n_vertices);
  if (red_count < 1 || red_count + 1 > n_vertices)
    throw InvalidArgument("red particle count must lie in 1..n-1");
  std::vector<std::size_t> block_of(indexer.size());
  StateBuffer buffer{};
  const std::span<std::uint8_t> pi(buffer.data(), n_vertices);
  for (std::size_t s = 0; s < indexer.size(); ++s) {
    unrank_permutation(s, pi);
    std::uint32_t mask = 0;
    for (std::size_t p = 0; p < red_count; ++p) mask |= 1u << pi[p];
    block_of[s] = rank_subset(mask);
  }
  return LumpingMap(std::move(block_of), static_cast<std::size_t>(binomial(n_vertices, red_count)),
                    "occupancy of particles 0.." + std::to_string(red_count - 1));
}

namespace {

// Total rate from `state` into each block, diagonal included.
std::map<std::size_t, double> block_rates(const Generator& gen, const LumpingMap& map, std::size_t state) {
  std::map<std::size_t, double> rates;
  double exit = 0.0;
  gen.for_each_transition(state, [&](std::size_t y, double rate) {
    rates[map.block(y)] += rate;
    exit += rate;
  });
  rates[map.block(state)] -= exit;
  return rates;
}

}  // namespace

QuotientChain build_quotient(const Generator& gen, const LumpingMap& map, double tolerance) {
  if (map.source_size() != gen.size()) throw InvalidArgument("lumping map does not match the state space");
  const std::size_t blocks = map.block_count();
  Eigen::MatrixXd qprime = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(blocks), static_cast<Eigen::Index>(blocks));

  for (std::size_t u = 0; u < blocks; ++u) {
    const auto& members = map.blocks()[u];
    const std::size_t rep = members.front();
    const auto reference = block_rates(gen, map, rep);
    for (auto x : members) {
      if (x == rep) continue;
      auto rates = block_rates(gen, map, x);
      for (const auto& [b, r] : reference) rates[b] -= r;
      for (const auto& [b, diff] : rates)
        if (std::abs(diff) > tolerance) throw LumpabilityError(rep, x, b, diff);
    }
    for (const auto& [b, r] : reference)
      if (b != u) qprime(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(b)) = r;
  }
  for (Eigen::Index u = 0; u < qprime.rows(); ++u)
    for (Eigen::Index v = u + 1; v < qprime.cols(); ++v)
      if (std::abs(qprime(u, v) - qprime(v, u)) > tolerance)
        throw InvalidArgument("quotient rate matrix is not symmetric (blocks of unequal size?) under " +
                              map.label());
  return {map, Generator::from_dense(qprime, "quotient of " + gen.describe() + " by " + map.label(), tolerance)};
}

std::vector<double> project_eigenvector(std::span<const double> f, const LumpingMap& map) {
  if (f.size() != map.source_size()) throw InvalidArgument("vector length does not match the lumping map");
  std::vector<double> h(map.block_count(), 0.0);
  for (std::size_t u = 0; u < map.block_count(); ++u)
    for (auto x : map.blocks()[u]) h[u] += f[x];
  return h;
}

ProjectionAudit audit_projection(const Eigensystem& source, const QuotientChain& quotient,
                                 double residual_tol, double spectrum_tol) {
  ProjectionAudit audit;
  const auto& map = quotient.map;
  for (Eigen::Index i = 0; i < source.values.size(); ++i) {
    const Eigen::VectorXd col = source.vectors.col(i);
    const auto h = project_eigenvector(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())), map);
    double h_norm = 0.0;
    for (double v : h) h_norm += v * v;
    h_norm = std::sqrt(h_norm);
    auto r = quotient.qprime.apply(h);
    double r_norm = 0.0;
    for (std::size_t u = 0; u < h.size(); ++u) {
      const double ru = r[u] + source.values[i] * h[u];
      r_norm += ru * ru;
    }
    r_norm = std::sqrt(r_norm);
    audit.worst_scaled_residual = std::max(audit.worst_scaled_residual, r_norm / std::max(1.0, h_norm));
    if (h_norm <= 1e-10)
      ++audit.zero_branch;
    else
      ++audit.eigenvector_branch;
    ++audit.eigenpairs;
  }
  audit.quotient_spectrum = full_spectrum(quotient.qprime, quotient.qprime.size());
  const std::vector<double> source_spectrum(source.values.data(), source.values.data() + source.values.size());
  audit.spectrum_contained = is_sub_multiset(audit.quotient_spectrum, source_spectrum, spectrum_tol);
  audit.pass = audit.spectrum_contained && audit.worst_scaled_residual <= residual_tol;
  return audit;
}

}  // namespace specgap
