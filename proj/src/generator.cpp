#include "specgap/generator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "specgap/errors.hpp"
#include "specgap/parallel.hpp"

namespace specgap {

namespace {

std::size_t g_workers = 0;

void check_budget(const char* what, std::uint64_t states, std::size_t budget) {
  if (states > budget) throw BudgetExceeded(what, states, budget);
}

std::uint64_t permutation_count(std::size_t n) {
  if (n > kMaxIndexedVertices) return ~std::uint64_t{0};
  return factorial(n);
}

}  // namespace

void set_worker_count(std::size_t workers) { g_workers = workers; }

std::size_t worker_count() {
  if (g_workers != 0) return g_workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

Generator::Generator(StateIndexer indexer, Process process)
    : indexer_(std::move(indexer)), process_(std::move(process)) {}

Generator Generator::from_dense(const Eigen::MatrixXd& rates, std::string label, double symmetry_tol) {
  const auto size = static_cast<std::size_t>(rates.rows());
  if (rates.cols() != rates.rows()) throw InvalidArgument("rate matrix must be square");
  Explicit proc{std::vector<std::vector<std::pair<std::size_t, double>>>(size), std::move(label)};
  for (Eigen::Index i = 0; i < rates.rows(); ++i) {
    for (Eigen::Index j = 0; j < rates.cols(); ++j) {
      if (i == j) continue;
      const double r = rates(i, j);
      if (std::abs(r - rates(j, i)) > symmetry_tol)
        throw InvalidArgument("rate matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (r != 0.0) proc.rows[static_cast<std::size_t>(i)].emplace_back(static_cast<std::size_t>(j), r);
    }
  }
  return Generator(StateIndexer::vertices(size), std::move(proc));
}

std::string Generator::describe() const {
  std::ostringstream out;
  std::visit(
      [&](const auto& proc) {
        using P = std::decay_t<decltype(proc)>;
        if constexpr (std::is_same_v<P, RandomWalk>) {
          out << "random walk on graph " << emit_graph6(proc.graph);
        } else if constexpr (std::is_same_v<P, Interchange>) {
          out << (proc.suppressed ? "suppressed interchange" : "interchange") << " on graph "
              << emit_graph6(proc.graph);
        } else if constexpr (std::is_same_v<P, Exclusion>) {
          out << "exclusion with " << proc.particles << " particles on graph " << emit_graph6(proc.graph);
        } else {
          out << "explicit: " << proc.label;
        }
      },
      process_);
  out << " (" << size() << " states)";
  return out.str();
}

double Generator::exit_rate(std::size_t state) const {
  double total = 0.0;
  for_each_transition(state, [&](std::size_t, double rate) { total += rate; });
  return total;
}

void Generator::apply(std::span<const double> f, std::span<double> out) const {
  const std::size_t n = size();
  if (f.size() != n || out.size() != n) throw InvalidArgument("vector length does not match state count");
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t x = begin; x < end; ++x) {
      double acc = 0.0;
      double exit = 0.0;
      const double fx = f[x];
      for_each_transition(x, [&](std::size_t y, double rate) {
        acc += rate * f[y];
        exit += rate;
      });
      out[x] = acc - exit * fx;
    }
  });
}

std::vector<double> Generator::apply(std::span<const double> f) const {
  std::vector<double> out(size());
  apply(f, out);
  return out;
}

Eigen::MatrixXd Generator::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    double exit = 0.0;
    for_each_transition(static_cast<std::size_t>(x), [&](std::size_t y, double rate) {
      q(x, static_cast<Eigen::Index>(y)) += rate;
      exit += rate;
    });
    q(x, x) -= exit;
  }
  return q;
}

Generator rw_generator(const Graph& g) {
  if (g.vertex_count() == 0) throw InvalidArgument("random walk on an empty graph");
  if (!g.connected()) throw GraphError("random walk requires a connected graph");
  return Generator(StateIndexer::vertices(g.vertex_count()), Generator::RandomWalk{g});
}

Generator interchange_generator(const Graph& g, std::size_t state_budget) {
  check_budget("interchange state", permutation_count(g.vertex_count()), state_budget);
  return Generator(StateIndexer::permutations(g.vertex_count()), Generator::Interchange{g, std::nullopt});
}

Generator exclusion_generator(const Graph& g, std::size_t particles, std::size_t state_budget) {
  const std::size_t n = g.vertex_count();
  if (particles < 1 || particles + 1 > n)
    throw InvalidArgument("exclusion needs 1 <= m <= n-1 particles");
  if (n > kMaxIndexedVertices) throw BudgetExceeded("exclusion state", ~std::size_t{0}, state_budget);
  check_budget("exclusion state", binomial(n, particles), state_budget);
  return Generator(StateIndexer::subsets(n, particles), Generator::Exclusion{g, particles});
}

Generator suppressed_generator(const Graph& g, std::size_t state_budget) {
  check_budget("interchange state", permutation_count(g.vertex_count()), state_budget);
  const auto last = static_cast<Vertex>(g.vertex_count() - 1);
  return Generator(StateIndexer::permutations(g.vertex_count()), Generator::Interchange{g, last});
}

Generator restrict_to_states(const Generator& gen, std::span<const std::size_t> states) {
  std::vector<std::size_t> local(gen.size(), ~std::size_t{0});
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] >= gen.size()) throw InvalidArgument("state index out of range");
    local[states[i]] = i;
  }
  Generator::Explicit proc{std::vector<std::vector<std::pair<std::size_t, double>>>(states.size()),
                           "restriction of " + gen.describe()};
  for (std::size_t i = 0; i < states.size(); ++i) {
    gen.for_each_transition(states[i], [&](std::size_t y, double rate) {
      if (local[y] == ~std::size_t{0})
        throw InvalidArgument("state set is not closed under the generator's transitions");
      proc.rows[i].emplace_back(local[y], rate);
    });
  }
  return Generator(StateIndexer::vertices(states.size()), std::move(proc));
}

std::vector<std::size_t> permutation_class(const StateIndexer& indexer, std::size_t particle, Vertex vertex) {
  if (indexer.kind() != StateKind::permutation) throw InvalidArgument("classes need a permutation state space");
  const std::size_t n = indexer.vertex_count();
  if (particle >= n || vertex >= n) throw InvalidArgument("particle or vertex out of range");
  std::vector<std::size_t> states;
  StateBuffer buffer{};
  const std::span<std::uint8_t> pi(buffer.data(), n);
  for (std::size_t s = 0; s < indexer.size(); ++s) {
    unrank_permutation(s, pi);
    if (pi[particle] == vertex) states.push_back(s);
  }
  return states;
}

FormValues rayleigh_quotient(const Generator& gen, std::span<const double> f) {
  const std::size_t n = gen.size();
  if (f.size() != n) throw InvalidArgument("vector length does not match state count");
  FormValues out;
  double energy = 0.0;
  double sum = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    sum += f[x];
    gen.for_each_transition(x, [&](std::size_t y, double rate) {
      const double diff = f[x] - f[y];
      energy += diff * diff * rate;
    });
  }
  out.dirichlet = energy / (2.0 * static_cast<double>(n));
  out.mean = sum / static_cast<double>(n);
  double spread = 0.0;
  for (double v : f) spread += (v - out.mean) * (v - out.mean);
  out.variance = spread / static_cast<double>(n);
  double scale = 0.0;
  for (double v : f) scale = std::max(scale, std::abs(v));
  if (out.variance > 1e-28 * std::max(1.0, scale * scale)) out.rayleigh = out.dirichlet / out.variance;
  return out;
}

ClassFormValues class_forms(const Generator& suppressed, std::span<const double> f, std::size_t k) {
  const auto* proc = std::get_if<Generator::Interchange>(&suppressed.process());
  if (proc == nullptr || !proc->suppressed) throw InvalidArgument("class forms need a suppressed generator");
  const std::size_t n = proc->graph.vertex_count();
  if (k >= n) throw InvalidArgument("class index out of range");
  if (f.size() != suppressed.size()) throw InvalidArgument("vector length does not match state count");

  const auto members = permutation_class(suppressed.indexer(), k, *proc->suppressed);
  std::vector<char> in_class(suppressed.size(), 0);
  for (auto s : members) in_class[s] = 1;

  ClassFormValues out;
  out.class_size = members.size();
  double energy = 0.0;
  double squares = 0.0;
  for (auto x : members) {
    out.class_sum += f[x];
    squares += f[x] * f[x];
    suppressed.for_each_transition(x, [&](std::size_t y, double rate) {
      if (!in_class[y]) return;
      const double diff = f[x] - f[y];
      energy += diff * diff * rate;
    });
  }
  const auto norm = static_cast<double>(factorial(n - 1));
  out.dirichlet = energy / (2.0 * norm);
  out.second_moment = squares / norm;
  return out;
}

}  // namespace specgap
