#include "specgap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "specgap/errors.hpp"
#include "specgap/parallel.hpp"

namespace specgap {

namespace {

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(std::span<double> x, double alpha) {
  for (double& v : x) v *= alpha;
}

void remove_mean(std::span<double> x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

// w = -Q v
void apply_negated(const Generator& gen, std::span<const double> v, std::span<double> w) {
  gen.apply(v, w);
  scale(w, -1.0);
}

double zero_tolerance(double largest) { return 1e-9 * std::max(1.0, std::abs(largest)); }

SpectrumResult finish(const Generator& gen, Vec f, SolverMethod method, std::size_t iterations,
                      std::uint64_t seed) {
  remove_mean(f);
  scale(f, 1.0 / norm(f));
  Vec qf = gen.apply(f);
  SpectrumResult out;
  out.gap = -dot(f, qf);
  for (std::size_t i = 0; i < f.size(); ++i) qf[i] += out.gap * f[i];
  out.residual = norm(qf);
  out.eigenvector = std::move(f);
  out.method = method;
  out.iterations = iterations;
  out.seed = seed;
  return out;
}

SpectrumResult dense_gap(const Generator& gen, const SolverOptions& options) {
  const auto sys = eigensystem(gen, std::max(options.dense_threshold, gen.size()));
  if (sys.values.size() < 2) throw ReducibleChain("a single-state chain has no spectral gap");
  const double tol = zero_tolerance(sys.values[sys.values.size() - 1]);
  if (sys.values[1] <= tol)
    throw ReducibleChain("second zero eigenvalue of -Q (" + std::to_string(sys.values[1]) +
                         "): chain is reducible for " + gen.describe());
  const Eigen::VectorXd col = sys.vectors.col(1);
  return finish(gen, Vec(col.data(), col.data() + col.size()), SolverMethod::dense, 0, options.seed);
}

// Lanczos on A = -Q restricted to the complement of the constants, with full
// reorthogonalisation (classical Gram-Schmidt, two passes) and thick restart:
// when the basis fills up, the lowest Ritz vectors are kept and the
// projected matrix becomes diagonal plus a coupling row to the next vector.
struct LanczosOutcome {
  bool converged = false;
  Vec vector;
  std::size_t iterations = 0;
};

LanczosOutcome lanczos_attempt(const Generator& gen, const SolverOptions& options, std::uint64_t seed) {
  const std::size_t n = gen.size();
  const std::size_t dim_limit = n - 1;
  const std::size_t max_basis = std::max<std::size_t>(2, std::min(options.max_basis, dim_limit));
  const std::size_t keep = std::clamp<std::size_t>(options.restart_keep, 1, max_basis / 2);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  auto random_unit = [&](const std::vector<Vec>& basis) {
    Vec v(n);
    for (double& x : v) x = uniform(rng);
    remove_mean(v);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) axpy(-dot(b, v), b, v);
    scale(v, 1.0 / norm(v));
    return v;
  };

  std::vector<Vec> basis;
  basis.reserve(max_basis + 1);
  basis.push_back(random_unit(basis));
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(max_basis),
                                            static_cast<Eigen::Index>(max_basis));
  Vec w(n);
  Vec coeff;
  LanczosOutcome out;

  while (out.iterations < options.max_iterations) {
    const std::size_t j = basis.size() - 1;
    apply_negated(gen, basis[j], w);
    ++out.iterations;

    coeff.assign(j + 1, 0.0);
    for (int pass = 0; pass < 2; ++pass) {
      Vec c(j + 1);
      parallel_for(j + 1, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) c[i] = dot(basis[i], w);
      }, 1);
      parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = 0; i <= j; ++i)
          for (std::size_t x = b; x < e; ++x) w[x] -= c[i] * basis[i][x];
      });
      for (std::size_t i = 0; i <= j; ++i) coeff[i] += c[i];
      remove_mean(w);
    }
    for (std::size_t i = 0; i <= j; ++i) {
      t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = coeff[i];
      t(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = coeff[i];
    }
    const double beta = norm(w);
    const auto m = static_cast<Eigen::Index>(j + 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(t.topLeftCorner(m, m));
    const Eigen::VectorXd& theta = ritz.eigenvalues();
    const Eigen::MatrixXd& y = ritz.eigenvectors();
    const double estimate = beta * std::abs(y(m - 1, 0));
    const bool exhausted = beta <= 1e-12 * std::max(1.0, std::abs(theta[m - 1]));

    if (estimate <= 0.5 * options.tolerance || exhausted) {
      Vec x(n, 0.0);
      for (Eigen::Index i = 0; i < m; ++i) axpy(y(i, 0), basis[static_cast<std::size_t>(i)], x);
      Vec ax(n);
      apply_negated(gen, x, ax);
      const double xnorm = norm(x);
      const double rq = dot(x, ax) / (xnorm * xnorm);
      axpy(-rq, x, ax);
      if (norm(ax) / xnorm <= options.tolerance) {
        out.converged = true;
        out.vector = std::move(x);
        return out;
      }
    }

    if (exhausted) {
      // Invariant subspace reached without a certified pair; extend with a
      // fresh direction orthogonal to the basis.
      if (basis.size() >= dim_limit) return out;
      w = random_unit(basis);
    } else {
      scale(w, 1.0 / beta);
    }

    if (basis.size() == max_basis) {
      const auto k = static_cast<Eigen::Index>(keep);
      std::vector<Vec> kept(keep, Vec(n, 0.0));
      parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (Eigen::Index c = 0; c < k; ++c)
          for (Eigen::Index i = 0; i < m; ++i) {
            const double yic = y(i, c);
            const auto& src = basis[static_cast<std::size_t>(i)];
            auto& dst = kept[static_cast<std::size_t>(c)];
            for (std::size_t x = b; x < e; ++x) dst[x] += yic * src[x];
          }
      });
      basis = std::move(kept);
      t.setZero();
      for (Eigen::Index c = 0; c < k; ++c) t(c, c) = theta[c];
    }
    basis.push_back(w);
  }
  return out;
}

SpectrumResult lanczos_gap(const Generator& gen, const SolverOptions& options) {
  if (gen.size() < 2) throw ReducibleChain("a single-state chain has no spectral gap");
  std::size_t total = 0;
  for (std::uint64_t attempt = 0; attempt < 2; ++attempt) {
    const std::uint64_t seed = options.seed + attempt;
    auto outcome = lanczos_attempt(gen, options, seed);
    total += outcome.iterations;
    if (!outcome.converged) continue;
    auto result = finish(gen, std::move(outcome.vector), SolverMethod::lanczos, total, seed);
    if (result.gap <= zero_tolerance(1.0))
      throw ReducibleChain("second zero eigenvalue of -Q found by Lanczos: chain is reducible for " +
                           gen.describe());
    return result;
  }
  throw ConvergenceError("Lanczos did not reach residual " + std::to_string(options.tolerance) + " within " +
                         std::to_string(options.max_iterations) + " iterations (two seeds) for " +
                         gen.describe());
}

}  // namespace

const char* to_string(SolverMethod method) {
  switch (method) {
    case SolverMethod::automatic:
      return "automatic";
    case SolverMethod::dense:
      return "dense";
    case SolverMethod::lanczos:
      return "lanczos";
  }
  return "?";
}

SpectrumResult spectral_gap(const Generator& gen, const SolverOptions& options) {
  switch (options.method) {
    case SolverMethod::dense:
      if (gen.size() > options.dense_threshold)
        throw BudgetExceeded("dense solver", gen.size(), options.dense_threshold);
      return dense_gap(gen, options);
    case SolverMethod::lanczos:
      return lanczos_gap(gen, options);
    case SolverMethod::automatic:
      break;
  }
  return gen.size() <= options.dense_threshold ? dense_gap(gen, options) : lanczos_gap(gen, options);
}

Eigensystem eigensystem(const Generator& gen, std::size_t dense_threshold) {
  if (gen.size() > dense_threshold) throw BudgetExceeded("dense solver", gen.size(), dense_threshold);
  const Eigen::MatrixXd a = -gen.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw ConvergenceError("dense symmetric eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<double> full_spectrum(const Generator& gen, std::size_t dense_threshold) {
  const auto sys = eigensystem(gen, dense_threshold);
  return {sys.values.data(), sys.values.data() + sys.values.size()};
}

double check_eigenpair(const Generator& gen, std::span<const double> f, double lambda) {
  const double fnorm = norm(f);
  if (fnorm == 0.0) throw InvalidArgument("eigenpair check on the zero vector");
  Vec r = gen.apply(f);
  axpy(lambda, f, r);
  return norm(r) / fnorm;
}

std::vector<std::pair<std::size_t, std::size_t>> eigenvalue_clusters(const Eigen::VectorXd& values, double tol) {
  std::vector<std::pair<std::size_t, std::size_t>> clusters;
  const auto n = static_cast<std::size_t>(values.size());
  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = begin + 1;
    while (end < n && values[static_cast<Eigen::Index>(end)] - values[static_cast<Eigen::Index>(begin)] <= tol)
      ++end;
    clusters.emplace_back(begin, end);
    begin = end;
  }
  return clusters;
}

bool is_sub_multiset(std::span<const double> sub, std::span<const double> full, double tol) {
  std::size_t j = 0;
  for (double s : sub) {
    while (j < full.size() && full[j] < s - tol) ++j;
    if (j == full.size() || full[j] > s + tol) return false;
    ++j;
  }
  return true;
}

}  // namespace specgap
