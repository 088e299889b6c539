#include "specgap/aldous.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "specgap/errors.hpp"
#include "specgap/lumping.hpp"

namespace specgap {

std::optional<std::size_t> first_disconnected_prefix(const Graph& g) {
  for (std::size_t k = 2; k <= g.vertex_count(); ++k)
    if (!induced_subgraph(g, k).connected()) return k;
  return std::nullopt;
}

LabelingAudit alpha_sequence(const Graph& g, const AldousOptions& options) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw InvalidArgument("the prefix bound needs at least two vertices");
  if (auto bad = first_disconnected_prefix(g))
    throw GraphError("prefix G_" + std::to_string(*bad) + " (vertices 0.." + std::to_string(*bad - 1) +
                     ") is disconnected");
  LabelingAudit audit;
  audit.graph = g;
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t k = 2; k <= n; ++k) {
    const double gap = spectral_gap(rw_generator(induced_subgraph(g, k)), options.solver).gap;
    audit.prefix_gaps.push_back(gap);
    running = std::min(running, gap);
    audit.alpha.push_back(running);
  }
  for (std::size_t i = 1; i < audit.alpha.size(); ++i)
    if (audit.alpha[i] > audit.alpha[i - 1]) audit.alpha_nonincreasing = false;

  if (n <= kMaxIndexedVertices && factorial(n) <= options.state_budget) {
    audit.lambda_ip = spectral_gap(interchange_generator(g, options.state_budget), options.solver).gap;
    audit.lemma_holds = *audit.lambda_ip >= audit.alpha_n() - options.tolerance;
  }
  return audit;
}

ConjectureCheck verify_conjecture(const Graph& g, double tolerance, const AldousOptions& options) {
  ConjectureCheck check;
  check.lambda_rw = spectral_gap(rw_generator(g), options.solver).gap;
  check.lambda_ip = spectral_gap(interchange_generator(g, options.state_budget), options.solver).gap;
  check.relative_difference = std::abs(check.lambda_ip - check.lambda_rw) / check.lambda_rw;
  check.pass = check.relative_difference <= tolerance;
  return check;
}

Graph bfs_labeling(const Graph& g, Vertex root) {
  const std::size_t n = g.vertex_count();
  if (root >= n) throw InvalidArgument("root out of range");
  std::vector<Vertex> perm(n, std::numeric_limits<Vertex>::max());
  std::deque<Vertex> queue{root};
  perm[root] = 0;
  Vertex next = 1;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v)) {
      if (perm[w] != std::numeric_limits<Vertex>::max()) continue;
      perm[w] = next++;
      queue.push_back(w);
    }
  }
  if (next != n) throw GraphError("breadth-first labeling needs a connected graph");
  return relabel(g, perm);
}

Graph random_connected_labeling(const Graph& g, std::mt19937_64& rng) {
  if (!g.connected()) throw GraphError("cannot label a disconnected graph with connected prefixes");
  std::vector<Vertex> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  while (true) {
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph candidate = relabel(g, perm);
    if (!first_disconnected_prefix(candidate)) return candidate;
  }
}

Graph random_connected_graph(std::size_t n, double extra_edge_probability, std::mt19937_64& rng) {
  if (n == 0) throw InvalidArgument("vertex count must be positive");
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    std::uniform_int_distribution<Vertex> parent(0, v - 1);
    edges.push_back({parent(rng), v});
  }
  std::bernoulli_distribution extra(extra_edge_probability);
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) {
      const bool present = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
        return std::min(e.u, e.v) == i && std::max(e.u, e.v) == j;
      });
      if (!present && extra(rng)) edges.push_back({i, j});
    }
  return Graph(n, std::move(edges));
}

BatchSummary batch_verify(std::size_t n_max, double tolerance, const AldousOptions& options) {
  if (n_max > kMaxEnumerationVertices)
    throw InvalidArgument("batch verification is limited to n <= " + std::to_string(kMaxEnumerationVertices));
  BatchSummary summary;
  summary.tolerance = tolerance;
  summary.n_max = n_max;
  AldousOptions no_ip = options;
  no_ip.state_budget = 0;
  for (std::size_t n = 2; n <= n_max; ++n) {
    for (const auto& g : enumerate_connected(n)) {
      const Graph labeled = first_disconnected_prefix(g) ? bfs_labeling(g) : g;
      const auto check = verify_conjecture(g, tolerance, options);
      BatchRow row;
      row.graph6 = emit_graph6(g);
      row.vertices = n;
      row.edges = g.edge_count();
      row.lambda_rw = check.lambda_rw;
      row.lambda_ip = check.lambda_ip;
      row.relative_difference = check.relative_difference;
      row.alpha_n = alpha_sequence(labeled, no_ip).alpha_n();
      row.pass = check.pass;
      summary.worst_relative_difference = std::max(summary.worst_relative_difference, row.relative_difference);
      if (!row.pass) ++summary.failures;
      summary.rows.push_back(std::move(row));
    }
  }
  return summary;
}

const char* to_string(EigenCase c) {
  switch (c) {
    case EigenCase::constant:
      return "constant";
    case EigenCase::projection_nonzero:
      return "projection_nonzero";
    case EigenCase::projections_vanish:
      return "projections_vanish";
  }
  return "?";
}

namespace {

inline constexpr double kZeroProjection = 1e-9;

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double l2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

CaseAudit case2_audit(const Graph& g, const AldousOptions& options) {
  const std::size_t n = g.vertex_count();
  if (n < 2 || n > 6) throw InvalidArgument("the dense case audit supports 2 <= n <= 6");
  const auto ip = interchange_generator(g, options.state_budget);
  const auto suppressed = suppressed_generator(g, options.state_budget);
  const auto rw = rw_generator(g);
  const auto sys = eigensystem(ip, std::max(options.solver.dense_threshold, ip.size()));

  CaseAudit audit;
  audit.graph = g;
  AldousOptions no_ip = options;
  no_ip.state_budget = 0;
  const auto labeling = alpha_sequence(g, no_ip);
  audit.alpha_n = labeling.alpha_n();
  audit.alpha_n_minus_1 = n >= 3 ? labeling.alpha[n - 3] : std::numeric_limits<double>::infinity();
  audit.lambda_rw = labeling.lambda_rw();

  std::vector<LumpingMap> positions;
  for (std::size_t m = 0; m < n; ++m) positions.push_back(position_map(n, m));
  const auto last = static_cast<Vertex>(n - 1);
  // Class of each state: the particle sitting on the suppressed vertex.
  std::vector<std::size_t> class_of(ip.size());
  {
    StateBuffer buffer{};
    const std::span<std::uint8_t> pi(buffer.data(), n);
    for (std::size_t s = 0; s < ip.size(); ++s) {
      unrank_permutation(s, pi);
      for (std::size_t p = 0; p < n; ++p)
        if (pi[p] == last) class_of[s] = p;
    }
  }
  const double n_fact = static_cast<double>(factorial(n));
  const double n1_fact = static_cast<double>(factorial(n - 1));
  const double scale = std::max(1.0, sys.values[sys.values.size() - 1]);
  const double tol = options.tolerance * scale;

  for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
    EigenpairAudit pair;
    pair.lambda = sys.values[i];
    const Eigen::VectorXd col = sys.vectors.col(i);
    const std::vector<double> f(col.data(), col.data() + col.size());
    const double f_inf = max_abs(f);

    if (std::abs(pair.lambda) <= 1e-9 * scale) {
      pair.classification = EigenCase::constant;
      const double mean = std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
      pair.verified = std::all_of(f.begin(), f.end(), [&](double x) { return std::abs(x - mean) <= 1e-9; });
      audit.all_verified = audit.all_verified && pair.verified;
      audit.pairs.push_back(pair);
      continue;
    }

    double best = 0.0;
    std::vector<double> best_h;
    for (std::size_t m = 0; m < n; ++m) {
      auto h = project_eigenvector(f, positions[m]);
      const double h_inf = max_abs(h);
      if (h_inf > best) {
        best = h_inf;
        best_h = std::move(h);
        pair.particle = m;
      }
    }

    if (best > kZeroProjection * f_inf) {
      pair.classification = EigenCase::projection_nonzero;
      const double h_norm = l2(best_h);
      pair.projection_residual = check_eigenpair(rw, best_h, pair.lambda) * h_norm;
      pair.lambda_at_least_rw_gap = pair.lambda >= audit.lambda_rw - tol;
      pair.verified = pair.projection_residual <= 1e-9 * std::max(1.0, h_norm) && pair.lambda_at_least_rw_gap;
      ++audit.nonzero_projection_count;
    } else {
      pair.classification = EigenCase::projections_vanish;
      pair.particle.reset();
      pair.full_energy = rayleigh_quotient(ip, f).dirichlet * n_fact;

      double within = 0.0;
      for (std::size_t x = 0; x < ip.size(); ++x)
        ip.for_each_transition(x, [&](std::size_t y, double rate) {
          if (class_of[x] != class_of[y]) return;
          const double diff = f[x] - f[y];
          within += diff * diff * rate;
        });
      pair.class_energy = 0.5 * within;

      double squares_by_class = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const auto forms = class_forms(suppressed, f, k);
        pair.class_energy_sum += n1_fact * forms.dirichlet;
        squares_by_class += n1_fact * forms.second_moment;
        pair.max_class_sum = std::max(pair.max_class_sum, std::abs(forms.class_sum));
        if (n >= 3) {
          const double slack = options.tolerance * std::max(1.0, forms.dirichlet);
          if (forms.dirichlet < audit.alpha_n_minus_1 * forms.second_moment - slack ||
              audit.alpha_n_minus_1 < audit.alpha_n - options.tolerance)
            pair.per_class_bound = false;
        }
      }
      pair.alpha_weighted = audit.alpha_n * squares_by_class;
      double squares = 0.0;
      for (double x : f) squares += x * x;
      pair.alpha_squares = audit.alpha_n * squares;
      pair.alpha_variance = audit.alpha_n * n_fact * rayleigh_quotient(ip, f).variance;

      const bool chain = pair.full_energy >= pair.class_energy - tol &&
                         std::abs(pair.class_energy - pair.class_energy_sum) <= tol &&
                         pair.class_energy_sum >= pair.alpha_weighted - tol &&
                         std::abs(pair.alpha_weighted - pair.alpha_squares) <= tol &&
                         std::abs(pair.alpha_squares - pair.alpha_variance) <= tol;
      pair.lambda_at_least_rw_gap = pair.lambda >= audit.alpha_n - tol;
      pair.verified = chain && pair.per_class_bound && pair.max_class_sum <= 1e-9 * std::max(1.0, f_inf) &&
                      pair.lambda_at_least_rw_gap;
      ++audit.vanishing_projection_count;
    }
    audit.all_verified = audit.all_verified && pair.verified;
    audit.pairs.push_back(pair);
  }
  return audit;
}

}  // namespace specgap
