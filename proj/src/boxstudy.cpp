#include "specgap/boxstudy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "specgap/errors.hpp"
#include "specgap/lumping.hpp"

namespace specgap {

double gamma_closed_form(std::size_t L) {
  const double s = std::sin(std::numbers::pi / (2.0 * static_cast<double>(L + 1)));
  return 4.0 * s * s;
}

double gamma(std::size_t L, const SolverOptions& solver) {
  if (L == 0) throw InvalidArgument("gamma_L needs L >= 1");
  if (L > kGammaEigensolveLimit) return gamma_closed_form(L);
  return spectral_gap(rw_generator(make_path(L)), solver).gap;
}

BoxReport beta(std::size_t d, std::size_t L, const BoxOptions& options) {
  const auto seq = intermediate_sequence(d, L, options.state_budget);
  BoxReport report;
  report.d = d;
  report.L = L;
  report.gamma = gamma(L, options.solver);
  report.beta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < seq.snapshots.size(); ++i) {
    const auto& snap = seq.snapshots[i];
    const double gap = spectral_gap(rw_generator(snap), options.solver).gap;
    report.snapshots.push_back({snap.vertex_count(), seq.stages[i].direction, gap});
    report.beta = std::min(report.beta, gap);
  }
  report.ratio = report.beta / report.gamma;
  report.normalized = report.gamma * static_cast<double>(L * L) / (std::numbers::pi * std::numbers::pi);
  return report;
}

namespace {

// Relative slack for numeric comparisons of quantities of size ~value.
double slack(double a, double b) { return 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

InequalityCheck at_most(std::string name, double lhs, double rhs) {
  InequalityCheck c{std::move(name), "<=", lhs, rhs, true, lhs <= rhs + slack(lhs, rhs), ""};
  return c;
}

InequalityCheck at_least(std::string name, double lhs, double rhs) {
  InequalityCheck c{std::move(name), ">=", lhs, rhs, true, lhs >= rhs - slack(lhs, rhs), ""};
  return c;
}

InequalityCheck inapplicable(std::string name, std::string relation, std::string note) {
  InequalityCheck c;
  c.name = std::move(name);
  c.relation = std::move(relation);
  c.applicable = false;
  c.holds = true;
  c.note = std::move(note);
  return c;
}

double sum_squares(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

CorollaryAudit corollary_audit(std::size_t d, std::size_t L, std::size_t k, std::size_t M,
                               const BoxOptions& options) {
  if (d == 0 || L == 0) throw InvalidArgument("dimension and side length must be positive");
  if (k < 1 || k > d) throw InvalidArgument("direction index k must lie in 1..d");
  if (M < 1 || M > L) throw InvalidArgument("the bad-vertex bound needs 1 <= M <= L");

  const Graph boundary = boundary_graph(d, L, k);
  const std::size_t n = boundary.vertex_count();
  const std::size_t s_size = intermediate_size(d, L, k - 1);
  const std::size_t axis = k - 1;
  const auto& coords = boundary.coords();

  CorollaryAudit audit;
  audit.d = d;
  audit.L = L;
  audit.k = k;
  audit.M = M;
  audit.s_size = s_size;
  audit.boundary_size = n - s_size;
  audit.gamma = gamma(L, options.solver);
  const double m_real = static_cast<double>(M);
  if (M > 4) audit.epsilon = 1.0 - (1.0 - 4.0 / m_real) * (1.0 - 4.0 / m_real);
  if (s_size >= 2) audit.lambda_rw_inner = spectral_gap(rw_generator(intermediate_graph(d, L, k - 1)), options.solver).gap;

  const auto rw = rw_generator(boundary);
  const auto sys = eigensystem(rw, std::max(options.solver.dense_threshold, n));
  audit.lambda_rw_boundary = sys.values[1];

  // Slices along direction k lump the walk on G' onto the path 0..L.
  std::vector<std::size_t> slice(n);
  for (std::size_t v = 0; v < n; ++v) slice[v] = static_cast<std::size_t>(coords[v][axis]);
  const LumpingMap slices(slice, L + 1, "coordinate " + std::to_string(k));
  const auto quotient = build_quotient(rw, slices);

  std::map<LatticePoint, std::size_t> label_of;
  for (std::size_t v = 0; v < n; ++v) label_of.emplace(coords[v], v);
  auto shifted = [&](std::size_t v, std::size_t steps) {
    LatticePoint p = coords[v];
    p[axis] -= static_cast<int>(steps);
    return label_of.at(p);
  };

  const double scale = std::max(1.0, sys.values[sys.values.size() - 1]);
  std::size_t end = 2;
  while (end < static_cast<std::size_t>(sys.values.size()) &&
         sys.values[static_cast<Eigen::Index>(end)] - sys.values[1] <= 1e-8 * scale)
    ++end;

  for (std::size_t col = 1; col < end; ++col) {
    EigenvectorAudit ev;
    ev.lambda = sys.values[static_cast<Eigen::Index>(col)];
    const Eigen::VectorXd fv = sys.vectors.col(static_cast<Eigen::Index>(col));
    const std::vector<double> f(fv.data(), fv.data() + fv.size());

    ev.profile = project_eigenvector(f, slices);
    double profile_norm = std::sqrt(sum_squares(ev.profile));
    ev.profile_residual = profile_norm > 0.0 ? check_eigenpair(quotient.qprime, ev.profile, ev.lambda) * profile_norm : 0.0;
    ev.checks.push_back(at_most("profile_eigenvector", ev.profile_residual, 1e-9 * std::max(1.0, profile_norm)));

    for (std::size_t v = 0; v < s_size; ++v) {
      ev.s_sum += f[v];
      ev.s_squares += f[v] * f[v];
    }
    ev.total_squares = sum_squares(f);
    for (const auto& e : boundary.edges()) {
      const double diff = f[e.u] - f[e.v];
      ev.energy += diff * diff;
      if (e.u < s_size && e.v < s_size) ev.s_energy += diff * diff;
    }

    // Good/bad split of the new vertices.
    for (std::size_t x = s_size; x < n; ++x) {
      bool good = false;
      double column_squares = 0.0;
      for (std::size_t i = 1; i <= M; ++i) {
        const double fy = f[shifted(x, i)];
        column_squares += fy * fy;
        if (std::abs(fy) <= std::abs(f[x]) / 2.0) good = true;
      }
      if (good) {
        ++ev.good_count;
        ev.good_squares += f[x] * f[x];
      } else {
        ++ev.bad_count;
        ev.bad_squares += f[x] * f[x];
        if (f[x] * f[x] > (4.0 / m_real) * column_squares + slack(f[x] * f[x], column_squares))
          ++ev.bad_formulation_mismatches;
      }
    }

    const bool below_gamma = ev.lambda < audit.gamma - slack(ev.lambda, audit.gamma);
    const double zero_bound = 1e-9 * std::max(1.0, profile_norm);
    if (below_gamma) {
      double profile_inf = 0.0;
      for (double h : ev.profile) profile_inf = std::max(profile_inf, std::abs(h));
      ev.checks.push_back(at_most("profile_vanishes", profile_inf, zero_bound));
      ev.checks.push_back(at_most("s_sum_vanishes", std::abs(ev.s_sum), zero_bound));
    } else {
      ev.checks.push_back(inapplicable("profile_vanishes", "<=", "lambda >= gamma_L: dichotomy is vacuous"));
      ev.checks.push_back(inapplicable("s_sum_vanishes", "<=", "lambda >= gamma_L: dichotomy is vacuous"));
    }

    // (eqb): E_S / sum_S f^2 >= lambda_RW(H_{k-1}) >= gamma_L.
    if (!below_gamma) {
      ev.checks.push_back(inapplicable("eqb_inner_gap", ">=", "needs sum_S f = 0, which needs lambda < gamma_L"));
    } else if (ev.s_squares <= 1e-24 || !audit.lambda_rw_inner) {
      ev.checks.push_back(inapplicable("eqb_inner_gap", ">=", "f vanishes on S or S is a single vertex"));
    } else {
      ev.checks.push_back(at_least("eqb_inner_gap", ev.s_energy / ev.s_squares, *audit.lambda_rw_inner));
    }
    if (audit.lambda_rw_inner)
      ev.checks.push_back(at_least("eqb_product_rule", *audit.lambda_rw_inner, audit.gamma));
    else
      ev.checks.push_back(inapplicable("eqb_product_rule", ">=", "S is a single vertex"));

    // (eqc): bad mass is at most (4/M) of the total.
    ev.checks.push_back(at_most("eqc_bad_mass", ev.bad_squares, (4.0 / m_real) * ev.total_squares));
    {
      auto c = at_most("bad_definitions_agree", static_cast<double>(ev.bad_formulation_mismatches), 0.0);
      ev.checks.push_back(c);
    }

    // (eqa): E / sum_G f^2 >= 1/(4 M^2).
    if (ev.good_squares > 0.0)
      ev.checks.push_back(at_least("eqa_good_mass", ev.energy / ev.good_squares, 1.0 / (4.0 * m_real * m_real)));
    else
      ev.checks.push_back(inapplicable("eqa_good_mass", ">=", "no good vertex carries mass"));

    const double coefficient = 1.0 / audit.gamma + 4.0 * m_real * m_real;
    if (below_gamma) {
      ev.checks.push_back(at_most("combined_bound", ev.total_squares,
                                  coefficient * ev.energy + (4.0 / m_real) * ev.total_squares));
    } else {
      ev.checks.push_back(inapplicable("combined_bound", "<=", "needs lambda < gamma_L"));
    }

    // (starrr) divides by 1 - 4/M, so it only makes sense for M > 4.
    if (M <= 4) {
      ev.checks.push_back(inapplicable("starrr", "<=", "1 - 4/M <= 0 for M <= 4"));
      ev.checks.push_back(inapplicable("gap_ratio", ">=", "epsilon undefined for M <= 4"));
    } else {
      const double factor = 1.0 / (1.0 - 4.0 / m_real);
      if (below_gamma)
        ev.checks.push_back(at_most("starrr", ev.total_squares, factor * coefficient * ev.energy));
      else
        ev.checks.push_back(inapplicable("starrr", "<=", "needs lambda < gamma_L"));
      const double root = std::pow(1.0 - *audit.epsilon, -0.5);
      if (coefficient <= root / audit.gamma)
        ev.checks.push_back(at_least("gap_ratio", ev.lambda / audit.gamma, 1.0 - *audit.epsilon));
      else
        ev.checks.push_back(inapplicable("gap_ratio", ">=", "L too small: 1/gamma_L + 4M^2 > (1-eps)^(-1/2)/gamma_L"));
    }

    for (const auto& c : ev.checks)
      if (c.applicable && !c.holds) ev.all_applicable_hold = false;
    audit.all_applicable_hold = audit.all_applicable_hold && ev.all_applicable_hold;
    audit.eigenvectors.push_back(std::move(ev));
  }
  return audit;
}

std::vector<AsymptoticRow> asymptotic_report(std::size_t d, std::size_t L_max, bool with_ip,
                                             const BoxOptions& options) {
  std::vector<AsymptoticRow> rows;
  for (std::size_t L = 1; L <= L_max; ++L) {
    AsymptoticRow row;
    row.d = d;
    row.L = L;
    const auto report = beta(d, L, options);
    row.gamma = report.gamma;
    row.beta = report.beta;
    row.beta_over_gamma = report.ratio;
    row.normalized = report.normalized;
    if (with_ip) {
      const std::size_t vertices = intermediate_size(d, L, d);
      if (vertices > options.interchange_vertex_limit) {
        row.notice = "interchange skipped: " + std::to_string(vertices) + " vertices exceeds limit " +
                     std::to_string(options.interchange_vertex_limit);
      } else {
        try {
          const auto ip = interchange_generator(make_box(d, L), options.state_budget);
          row.lambda_ip = spectral_gap(ip, options.solver).gap;
          row.ip_over_rw = *row.lambda_ip / row.gamma;
        } catch (const BudgetExceeded& e) {
          row.notice = std::string("interchange skipped: ") + e.what();
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace specgap
