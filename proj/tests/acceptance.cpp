// Acceptance run: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "specgap/aldous.hpp"
#include "specgap/boxstudy.hpp"
#include "specgap/cli.hpp"
#include "specgap/generator.hpp"
#include "specgap/lumping.hpp"
#include "specgap/spectral.hpp"

using namespace specgap;

namespace {

// Pinned tolerances.
constexpr double kConjectureTol = 1e-8;
constexpr double kSquareGapTol = 1e-9;
constexpr double kBoxTwoGapTol = 1e-6;
constexpr double kProjectionResidualTol = 1e-9;
constexpr double kSpectrumTol = 1e-8;
constexpr double kLemmaTol = 1e-8;
constexpr double kTreeTol = 1e-8;
constexpr double kGammaEigensolveTol = 1e-10;
constexpr double kGamma100Tol = 1e-3;
constexpr double kGamma1000Tol = 1e-4;
constexpr double kExactTol = 1e-12;
constexpr double kPropertySlack = 1e-9;

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o, double seconds) {
  std::printf("[%s] %d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), seconds);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

template <class Fn>
void criterion(int id, const std::string& title, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  report(id, title, o, elapsed.count());
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

bool is_tree(const Graph& g) { return g.connected() && g.edge_count() + 1 == g.vertex_count(); }

// Contraction ordering lambda_IP <= lambda_RW + slack, gathered from every criterion that computes both.
struct ContractionLog {
  std::size_t cases = 0;
  double worst_excess = -1e300;
  void add(double ip, double rw) {
    ++cases;
    worst_excess = std::max(worst_excess, ip - rw);
  }
} contraction;

Outcome conjecture_equality() {
  const auto summary = batch_verify(6, kConjectureTol);
  std::size_t six = 0;
  for (const auto& row : summary.rows) {
    six += row.vertices == 6;
    contraction.add(row.lambda_ip, row.lambda_rw);
  }
  Outcome o;
  o.pass = summary.failures == 0 && six == 112 && summary.rows.size() == 142;
  o.detail = fmt("%zu graphs (%zu on 6 vertices), %zu failures, worst relative difference %.3e <= %.0e",
                 summary.rows.size(), six, summary.failures, summary.worst_relative_difference, kConjectureTol);
  return o;
}

Outcome box_gaps() {
  SolverOptions dense;
  dense.method = SolverMethod::dense;
  const auto small = spectral_gap(interchange_generator(make_box(2, 1)), dense);
  SolverOptions lanczos;
  lanczos.method = SolverMethod::lanczos;
  lanczos.seed = 1;
  const auto big_gen = interchange_generator(make_box(2, 2));
  const auto big = spectral_gap(big_gen, lanczos);
  contraction.add(small.gap, specgap::gamma(1));
  contraction.add(big.gap, specgap::gamma(2));
  Outcome o;
  o.pass = std::abs(small.gap - 2.0) <= kSquareGapTol && std::abs(big.gap - 1.0) <= kBoxTwoGapTol &&
           small.method == SolverMethod::dense && big.method == SolverMethod::lanczos && big_gen.size() == 362880;
  o.detail = fmt("B_1: %.15f (24 states, dense, |err| %.2e <= %.0e); B_2: %.15f (%zu states, Lanczos, %zu iterations, "
                 "residual %.2e, |err| %.2e <= %.0e)",
                 small.gap, std::abs(small.gap - 2.0), kSquareGapTol, big.gap, big_gen.size(), big.iterations,
                 big.residual, std::abs(big.gap - 1.0), kBoxTwoGapTol);
  return o;
}

Outcome projection_suite() {
  std::size_t graphs = 0;
  std::size_t maps = 0;
  std::size_t pairs = 0;
  std::size_t zero_branch = 0;
  double worst = 0.0;
  bool pass = true;
  for (std::size_t n = 2; n <= 5; ++n)
    for (const auto& g : enumerate_connected(n)) {
      ++graphs;
      const auto ip = interchange_generator(g);
      const auto sys = eigensystem(ip);
      std::vector<LumpingMap> candidates;
      for (std::size_t m = 0; m < n; ++m) candidates.push_back(position_map(n, m));
      for (std::size_t m = 1; m < n; ++m) candidates.push_back(occupancy_map(n, m));
      for (const auto& map : candidates) {
        const auto audit = audit_projection(sys, build_quotient(ip, map), kProjectionResidualTol, kSpectrumTol);
        ++maps;
        pairs += audit.eigenpairs;
        zero_branch += audit.zero_branch;
        worst = std::max(worst, audit.worst_scaled_residual);
        pass = pass && audit.pass;
      }
    }
  Outcome o;
  o.pass = pass && graphs == 30;
  o.detail = fmt("%zu graphs, %zu maps, %zu projected eigenpairs (%zu vanishing), worst ||Q'h + lambda h||/max(1,||h||) "
                 "%.2e <= %.0e, all quotient spectra contained at %.0e",
                 graphs, maps, pairs, zero_branch, worst, kProjectionResidualTol, kSpectrumTol);
  return o;
}

Outcome lemma_suite() {
  std::mt19937_64 rng(kSeed);
  std::size_t random_cases = 0;
  double worst_margin = 1e300;
  bool pass = true;
  while (random_cases < 100) {
    const std::size_t n = 2 + rng() % 5;
    const Graph g = random_connected_graph(n, 0.35, rng);
    const Graph labeled = random_connected_labeling(g, rng);
    const auto audit = alpha_sequence(labeled);
    const double margin = *audit.lambda_ip - audit.alpha_n();
    worst_margin = std::min(worst_margin, margin);
    pass = pass && margin >= -kLemmaTol && audit.alpha_nonincreasing;
    contraction.add(*audit.lambda_ip, audit.lambda_rw());
    ++random_cases;
  }
  std::size_t trees = 0;
  std::size_t labelings = 0;
  double worst_tree = 0.0;
  for (std::size_t n = 2; n <= 6; ++n)
    for (const auto& g : enumerate_connected(n)) {
      if (!is_tree(g)) continue;
      ++trees;
      for (Vertex root = 0; root < n; ++root) {
        const auto audit = alpha_sequence(bfs_labeling(g, root));
        ++labelings;
        const double gap = std::max(std::abs(*audit.lambda_ip - audit.lambda_rw()),
                                    std::abs(audit.alpha_n() - audit.lambda_rw()));
        worst_tree = std::max(worst_tree, gap);
        pass = pass && gap <= kTreeTol;
      }
    }
  Outcome o;
  o.pass = pass && trees == 1 + 1 + 2 + 3 + 6;
  o.detail = fmt("100 random labeled graphs: min(lambda_IP - alpha_n) = %.3e >= -%.0e; %zu trees x roots = %zu "
                 "leaf-last labelings, worst |lambda_IP - lambda_RW| or |alpha_n - lambda_RW| = %.2e <= %.0e",
                 worst_margin, kLemmaTol, trees, labelings, worst_tree, kTreeTol);
  return o;
}

Outcome gamma_suite() {
  double worst = 0.0;
  for (std::size_t L = 1; L <= 60; ++L) {
    const double eig = spectral_gap(rw_generator(make_path(L))).gap;
    worst = std::max(worst, std::abs(eig - gamma_closed_form(L)));
  }
  const auto normalized = [](std::size_t L) {
    return specgap::gamma(L) * double(L) * double(L) / (std::numbers::pi * std::numbers::pi);
  };
  bool increasing = true;
  for (std::size_t L = 2; L <= 1000; ++L) increasing = increasing && normalized(L) > normalized(L - 1);
  const double n100 = normalized(100);
  const double n1000 = normalized(1000);
  // the closed form beyond the dense range, checked once more against Lanczos
  const double lanczos100 = spectral_gap(rw_generator(make_path(100))).gap;
  Outcome o;
  o.pass = worst <= kGammaEigensolveTol && std::abs(n100 - 0.9802) <= kGamma100Tol &&
           std::abs(n1000 - 0.9980) <= kGamma1000Tol && increasing &&
           std::abs(lanczos100 - gamma_closed_form(100)) <= kGammaEigensolveTol;
  o.detail = fmt("max |eigensolve - 4sin^2(pi/(2(L+1)))| over L<=60 = %.2e <= %.0e; L=100: %.6f (target 0.9802 +- %.0e); "
                 "L=1000: %.6f (target 0.9980 +- %.0e); increasing on 1..1000: %s",
                 worst, kGammaEigensolveTol, n100, kGamma100Tol, n1000, kGamma1000Tol, increasing ? "yes" : "no");
  return o;
}

Outcome beta_suite() {
  std::vector<BoxReport> reports;
  for (std::size_t L = 1; L <= 6; ++L) reports.push_back(beta(2, L));
  std::string table;
  for (const auto& r : reports) table += fmt("%s%.4f", table.empty() ? "" : " ", r.ratio);
  Outcome o;
  o.pass = reports[5].ratio > reports[0].ratio && std::abs(reports[0].beta - 1.0) <= kExactTol &&
           std::abs(reports[0].gamma - 2.0) <= kExactTol;
  o.detail = fmt("beta_L/gamma_L for L=1..6: %s; beta_1 = %.15f, gamma_1 = %.15f", table.c_str(), reports[0].beta,
                 reports[0].gamma);
  return o;
}

Outcome corollary_suite() {
  std::size_t audits = 0;
  std::size_t vectors = 0;
  std::size_t applicable = 0;
  std::size_t inapplicable = 0;
  std::size_t violated = 0;
  for (std::size_t L : {4u, 5u, 6u})
    for (std::size_t k = 1; k <= 2; ++k)
      for (std::size_t M : {2u, 3u}) {
        const auto audit = corollary_audit(2, L, k, M);
        ++audits;
        for (const auto& ev : audit.eigenvectors) {
          ++vectors;
          for (const auto& c : ev.checks) {
            if (!c.applicable) {
              ++inapplicable;
              continue;
            }
            ++applicable;
            if (!c.holds) {
              ++violated;
              std::printf("    violated: L=%zu k=%zu M=%zu %s: %.6e %s %.6e\n", L, k, M, c.name.c_str(), c.lhs,
                          c.relation.c_str(), c.rhs);
            }
          }
        }
      }
  Outcome o;
  o.pass = violated == 0 && audits == 12;
  o.detail = fmt("%zu audits, %zu gap eigenvectors, %zu applicable checks (%zu violated), %zu reported inapplicable",
                 audits, vectors, applicable, violated, inapplicable);
  return o;
}

Outcome structural_suite() {
  std::mt19937_64 rng(kSeed + 1);
  std::size_t edge_cases = 0;
  std::size_t pendant_cases = 0;
  double worst_edge = 1e300;
  double worst_pendant = 1e300;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    const Graph g = random_connected_graph(n, 0.3, rng);
    const double base = spectral_gap(rw_generator(g)).gap;
    std::vector<Edge> missing;
    for (Vertex j = 1; j < n; ++j)
      for (Vertex i = 0; i < j; ++i)
        if (!g.has_edge(i, j)) missing.push_back({i, j});
    if (!missing.empty()) {
      const Edge e = missing[rng() % missing.size()];
      const double added = spectral_gap(rw_generator(add_edge(g, e.u, e.v))).gap;
      worst_edge = std::min(worst_edge, added - base);
      ++edge_cases;
    }
    std::vector<Edge> pendant;
    for (const auto& e : g.edges())
      if ((g.degree(e.u) == 1 || g.degree(e.v) == 1) && n > 2) pendant.push_back(e);
    if (!pendant.empty()) {
      const Edge e = pendant[rng() % pendant.size()];
      const double removed = spectral_gap(rw_generator(remove_pendant_edge(g, e.u, e.v))).gap;
      worst_pendant = std::min(worst_pendant, removed - base);
      ++pendant_cases;
    }
  }

  std::vector<Graph> family;
  for (std::size_t L = 1; L <= 5; ++L) family.push_back(make_path(L));
  for (std::size_t n = 3; n <= 6; ++n) family.push_back(make_cycle(n));
  for (std::size_t n = 2; n <= 6; ++n) family.push_back(make_complete(n));
  std::vector<double> gaps;
  for (const auto& h : family) gaps.push_back(spectral_gap(rw_generator(h)).gap);
  double worst_product = 0.0;
  std::size_t products = 0;
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = 0; b < family.size(); ++b) {
      const double gap = spectral_gap(rw_generator(cartesian_product(family[a], family[b]))).gap;
      worst_product = std::max(worst_product, std::abs(gap - std::min(gaps[a], gaps[b])));
      ++products;
    }

  Outcome o;
  o.pass = edge_cases > 0 && pendant_cases > 0 && worst_edge >= -kPropertySlack && worst_pendant >= -kPropertySlack &&
           worst_product <= kPropertySlack && contraction.cases > 0 && contraction.worst_excess <= kPropertySlack;
  o.detail = fmt("edge addition: %zu cases, min change %.3e; pendant removal: %zu cases, min change %.3e; product "
                 "min-rule: %zu pairs, max error %.2e; contraction: %zu graphs, max(lambda_IP - lambda_RW) = %.3e "
                 "(slack %.0e)",
                 edge_cases, worst_edge, pendant_cases, worst_pendant, products, worst_product, contraction.cases,
                 contraction.worst_excess, kPropertySlack);
  return o;
}

Outcome determinism_suite() {
  const std::vector<std::vector<std::string>> commands{
      {"gap", "--process", "rw", "--graph", "path:2"},
      {"gap", "--process", "ip", "--graph", "g6:Bw"},
      {"--seed", "7", "gap", "--process", "ip", "--graph", "path:6", "--method", "lanczos"},
      {"--jobs", "2", "gap", "--process", "ex", "--particles", "4", "--graph", "box:2:2", "--method", "lanczos"},
      {"verify-aldous", "--nmax", "5"},
      {"--format", "csv", "verify-aldous", "--nmax", "4"},
      {"alpha", "--graph", "box:2:2"},
      {"case-audit", "--graph", "cycle:5"},
      {"box-study", "--dim", "1", "--lmax", "6", "--with-ip"},
      {"box-study", "--dim", "2", "--lmax", "4"},
      {"--format", "csv", "box-study", "--dim", "3", "--lmax", "2"},
      {"corollary-audit", "--dim", "2", "--L", "6", "--k", "2", "--M", "3"},
      {"lump-audit", "--graph", "complete:4", "--map", "occupancy:2"},
  };
  std::size_t identical = 0;
  std::size_t bad_exit = 0;
  for (const auto& cmd : commands) {
    std::ostringstream out1, err1, out2, err2;
    const int a = run_cli(cmd, out1, err1);
    const int b = run_cli(cmd, out2, err2);
    identical += out1.str() == out2.str() && !out1.str().empty();
    bad_exit += a != 0 || b != 0;
  }
  Outcome o;
  o.pass = identical == commands.size() && bad_exit == 0;
  o.detail = fmt("%zu/%zu commands byte-identical across two runs, %zu nonzero exits", identical, commands.size(),
                 bad_exit);
  return o;
}

}  // namespace

int main() {
  criterion(1, "conjecture equality on all connected graphs n <= 6", conjecture_equality);
  criterion(2, "interchange gap of the boxes B_1, B_2 in d = 2", box_gaps);
  criterion(3, "eigenvector projection under position and occupancy maps, n <= 5", projection_suite);
  criterion(4, "prefix lower bound and tree tightness", lemma_suite);
  criterion(5, "path gap closed form and asymptotics", gamma_suite);
  criterion(6, "beta_L / gamma_L for d = 2, L = 1..6", beta_suite);
  criterion(7, "boundary-graph inequality audit, d = 2, L in {4,5,6}, M in {2,3}", corollary_suite);
  criterion(8, "monotonicity, product rule and contraction ordering", structural_suite);
  criterion(9, "byte-identical CLI output for repeated runs", determinism_suite);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
