#pragma once

// Matrix-free symmetric rate operators Q for the random walk, interchange,
// exclusion and suppressed-interchange processes on a graph, plus the
// Dirichlet-form / variance functionals.

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "specgap/graph.hpp"
#include "specgap/indexer.hpp"

namespace specgap {

inline constexpr std::size_t kDefaultStateBudget = 4'000'000;

/// Symmetric transition-rate operator on an indexed finite state space.
///
/// Off-diagonal rates are visited per state; the diagonal is always minus the
/// total off-diagonal rate, so Q annihilates constants.
class Generator {
 public:
  struct RandomWalk {
    Graph graph;
  };
  /// When `suppressed` is set, edges incident to that vertex never fire.
  struct Interchange {
    Graph graph;
    std::optional<Vertex> suppressed;
  };
  struct Exclusion {
    Graph graph;
    std::size_t particles = 0;
  };
  /// Explicit sparse symmetric rates (quotients, restrictions).
  struct Explicit {
    std::vector<std::vector<std::pair<std::size_t, double>>> rows;
    std::string label;
  };
  using Process = std::variant<RandomWalk, Interchange, Exclusion, Explicit>;

  Generator(StateIndexer indexer, Process process);

  /// Builds an explicit generator from a dense rate matrix. The diagonal of
  /// `rates` is ignored and rebuilt from the row sums. Throws InvalidArgument
  /// if the off-diagonal part is not symmetric to `symmetry_tol`.
  static Generator from_dense(const Eigen::MatrixXd& rates, std::string label,
                              double symmetry_tol = 1e-10);

  const StateIndexer& indexer() const { return indexer_; }
  std::size_t size() const { return indexer_.size(); }
  const Process& process() const { return process_; }
  std::string describe() const;
  bool symmetric() const { return true; }

  /// Calls fn(target, rate) for every off-diagonal transition out of `state`.
  template <class Fn>
  void for_each_transition(std::size_t state, Fn&& fn) const;

  /// Total off-diagonal rate out of `state` (= -Q(state, state)).
  double exit_rate(std::size_t state) const;

  /// out = Q f. Parallel over output entries; each entry is written by one
  /// worker, so the result does not depend on the worker count.
  void apply(std::span<const double> f, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> f) const;

  /// Materialised Q.
  Eigen::MatrixXd dense() const;

 private:
  StateIndexer indexer_;
  Process process_;
};

Generator rw_generator(const Graph& g);
Generator interchange_generator(const Graph& g, std::size_t state_budget = kDefaultStateBudget);
Generator exclusion_generator(const Graph& g, std::size_t particles,
                              std::size_t state_budget = kDefaultStateBudget);
/// Interchange process with every move touching the last vertex disabled.
Generator suppressed_generator(const Graph& g, std::size_t state_budget = kDefaultStateBudget);

/// Restriction of a generator to a closed set of states (listed in the order
/// they will be indexed). Throws InvalidArgument if a transition leaves the set.
Generator restrict_to_states(const Generator& gen, std::span<const std::size_t> states);

/// States of a permutation space with particle `particle` at vertex `vertex`,
/// ascending.
std::vector<std::size_t> permutation_class(const StateIndexer& indexer, std::size_t particle,
                                           Vertex vertex);

struct FormValues {
  double dirichlet = 0.0;
  double variance = 0.0;
  double mean = 0.0;
  std::optional<double> rayleigh;  // absent when the variance vanishes
};

/// E(f,f) = (1/2|W|) sum (f(x)-f(y))^2 Q(x,y), var(f), E(f) and E/var.
FormValues rayleigh_quotient(const Generator& gen, std::span<const double> f);

/// Forms restricted to one irreducible class W_k of the suppressed process:
/// W_k holds the states whose particle k sits on the suppressed vertex.
struct ClassFormValues {
  double dirichlet = 0.0;      // (1/2(n-1)!) sum_{W_k x W_k} (f(x)-f(y))^2 Q(x,y)
  double second_moment = 0.0;  // (1/(n-1)!) sum_{W_k} f^2, no mean subtraction
  double class_sum = 0.0;      // sum_{W_k} f
  std::size_t class_size = 0;
};

ClassFormValues class_forms(const Generator& suppressed, std::span<const double> f, std::size_t k);

// ---- implementation -------------------------------------------------------

template <class Fn>
void Generator::for_each_transition(std::size_t state, Fn&& fn) const {
  std::visit(
      [&](const auto& proc) {
        using P = std::decay_t<decltype(proc)>;
        if constexpr (std::is_same_v<P, RandomWalk>) {
          for (Vertex w : proc.graph.neighbors(static_cast<Vertex>(state))) fn(std::size_t{w}, 1.0);
        } else if constexpr (std::is_same_v<P, Interchange>) {
          const std::size_t n = proc.graph.vertex_count();
          StateBuffer position{};  // particle -> vertex
          StateBuffer occupant{};  // vertex -> particle
          const std::span<std::uint8_t> pi(position.data(), n);
          unrank_permutation(state, pi);
          for (std::size_t p = 0; p < n; ++p) occupant[position[p]] = static_cast<std::uint8_t>(p);
          for (const auto& e : proc.graph.edges()) {
            if (proc.suppressed && (e.u == *proc.suppressed || e.v == *proc.suppressed)) continue;
            const auto a = occupant[e.u];
            const auto b = occupant[e.v];
            position[a] = static_cast<std::uint8_t>(e.v);
            position[b] = static_cast<std::uint8_t>(e.u);
            fn(rank_permutation(pi), 1.0);
            position[a] = static_cast<std::uint8_t>(e.u);
            position[b] = static_cast<std::uint8_t>(e.v);
          }
        } else if constexpr (std::is_same_v<P, Exclusion>) {
          const std::uint32_t occupied = unrank_subset(state, proc.particles);
          for (const auto& e : proc.graph.edges()) {
            const bool at_u = (occupied >> e.u) & 1u;
            const bool at_v = (occupied >> e.v) & 1u;
            if (at_u != at_v) fn(rank_subset(occupied ^ (1u << e.u) ^ (1u << e.v)), 1.0);
          }
        } else {
          for (const auto& [target, rate] : proc.rows[state]) fn(target, rate);
        }
      },
      process_);
}

}  // namespace specgap
