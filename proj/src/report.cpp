#include "specgap/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace specgap {

namespace {

Json number_or_null(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

template <class T>
Json optional_number(const std::optional<T>& value) {
  return value ? number_or_null(static_cast<double>(*value)) : Json(nullptr);
}

}  // namespace

SolverOptions RunConfig::solver() const {
  SolverOptions options;
  options.seed = seed;
  options.dense_threshold = dense_threshold;
  options.tolerance = tolerance;
  return options;
}

std::string format_double(double value) {
  if (!std::isfinite(value)) return "";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

Json to_json(const RunConfig& config) {
  return Json{{"seed", config.seed},
              {"dense_threshold", config.dense_threshold},
              {"state_budget", config.state_budget},
              {"tolerance", config.tolerance},
              {"format", config.format}};
}

Json to_json(const SpectrumResult& result, bool include_eigenvector) {
  Json j{{"gap", result.gap},
         {"residual", result.residual},
         {"method", to_string(result.method)},
         {"iterations", result.iterations},
         {"seed", result.seed}};
  if (include_eigenvector) j["eigenvector"] = result.eigenvector;
  return j;
}

Json to_json(const LabelingAudit& audit) {
  return Json{{"graph6", emit_graph6(audit.graph)},
              {"prefix_gaps", audit.prefix_gaps},
              {"alpha", audit.alpha},
              {"alpha_n", audit.alpha_n()},
              {"lambda_rw", audit.lambda_rw()},
              {"lambda_ip", optional_number(audit.lambda_ip)},
              {"alpha_nonincreasing", audit.alpha_nonincreasing},
              {"lemma_holds", audit.lemma_holds}};
}

Json to_json(const BatchRow& row) {
  return Json{{"graph6", row.graph6},
              {"vertices", row.vertices},
              {"edges", row.edges},
              {"lambda_rw", row.lambda_rw},
              {"lambda_ip", row.lambda_ip},
              {"relative_difference", row.relative_difference},
              {"alpha_n", row.alpha_n},
              {"pass", row.pass}};
}

Json to_json(const BatchSummary& summary) {
  Json rows = Json::array();
  for (const auto& r : summary.rows) rows.push_back(to_json(r));
  return Json{{"n_max", summary.n_max},
              {"tolerance", summary.tolerance},
              {"graphs", summary.rows.size()},
              {"failures", summary.failures},
              {"worst_relative_difference", summary.worst_relative_difference},
              {"rows", std::move(rows)}};
}

Json to_json(const CaseAudit& audit) {
  Json pairs = Json::array();
  for (const auto& p : audit.pairs) {
    Json j{{"lambda", p.lambda}, {"case", to_string(p.classification)}, {"verified", p.verified}};
    if (p.classification == EigenCase::projection_nonzero) {
      j["particle"] = optional_number(p.particle);
      j["projection_residual"] = p.projection_residual;
      j["lambda_at_least_rw_gap"] = p.lambda_at_least_rw_gap;
    } else if (p.classification == EigenCase::projections_vanish) {
      j["full_energy"] = p.full_energy;
      j["class_energy"] = p.class_energy;
      j["class_energy_sum"] = p.class_energy_sum;
      j["alpha_weighted"] = p.alpha_weighted;
      j["alpha_squares"] = p.alpha_squares;
      j["alpha_variance"] = p.alpha_variance;
      j["max_class_sum"] = p.max_class_sum;
      j["per_class_bound"] = p.per_class_bound;
    }
    pairs.push_back(std::move(j));
  }
  return Json{{"graph6", emit_graph6(audit.graph)},
              {"alpha_n", audit.alpha_n},
              {"lambda_rw", audit.lambda_rw},
              {"nonzero_projection", audit.nonzero_projection_count},
              {"vanishing_projection", audit.vanishing_projection_count},
              {"all_verified", audit.all_verified},
              {"pairs", std::move(pairs)}};
}

Json to_json(const BoxReport& report) {
  Json snaps = Json::array();
  for (const auto& s : report.snapshots)
    snaps.push_back(Json{{"vertices", s.vertices}, {"direction", s.direction}, {"gap", s.gap}});
  return Json{{"d", report.d},
              {"L", report.L},
              {"gamma", report.gamma},
              {"beta", report.beta},
              {"beta_over_gamma", report.ratio},
              {"gamma_L2_over_pi2", report.normalized},
              {"snapshots", std::move(snaps)}};
}

Json to_json(const InequalityCheck& check) {
  Json j{{"name", check.name}, {"relation", check.relation}, {"applicable", check.applicable}};
  if (check.applicable) {
    j["lhs"] = number_or_null(check.lhs);
    j["rhs"] = number_or_null(check.rhs);
    j["holds"] = check.holds;
  } else {
    j["note"] = check.note;
  }
  return j;
}

Json to_json(const CorollaryAudit& audit) {
  Json vectors = Json::array();
  for (const auto& ev : audit.eigenvectors) {
    Json checks = Json::array();
    for (const auto& c : ev.checks) checks.push_back(to_json(c));
    vectors.push_back(Json{{"lambda", ev.lambda},
                           {"profile", ev.profile},
                           {"s_sum", ev.s_sum},
                           {"total_squares", ev.total_squares},
                           {"s_squares", ev.s_squares},
                           {"good_squares", ev.good_squares},
                           {"bad_squares", ev.bad_squares},
                           {"energy", ev.energy},
                           {"s_energy", ev.s_energy},
                           {"good", ev.good_count},
                           {"bad", ev.bad_count},
                           {"bad_formulation_mismatches", ev.bad_formulation_mismatches},
                           {"all_applicable_hold", ev.all_applicable_hold},
                           {"checks", std::move(checks)}});
  }
  return Json{{"d", audit.d},
              {"L", audit.L},
              {"k", audit.k},
              {"M", audit.M},
              {"epsilon", optional_number(audit.epsilon)},
              {"gamma", audit.gamma},
              {"lambda_rw_boundary", audit.lambda_rw_boundary},
              {"lambda_rw_inner", optional_number(audit.lambda_rw_inner)},
              {"s_size", audit.s_size},
              {"boundary_size", audit.boundary_size},
              {"all_applicable_hold", audit.all_applicable_hold},
              {"eigenvectors", std::move(vectors)}};
}

Json to_json(const AsymptoticRow& row) {
  Json j{{"d", row.d},
         {"L", row.L},
         {"gamma", row.gamma},
         {"beta", row.beta},
         {"beta_over_gamma", row.beta_over_gamma},
         {"gamma_L2_over_pi2", row.normalized},
         {"lambda_ip", optional_number(row.lambda_ip)},
         {"ip_over_rw", optional_number(row.ip_over_rw)}};
  if (!row.notice.empty()) j["notice"] = row.notice;
  return j;
}

std::string batch_csv(const BatchSummary& summary) {
  std::ostringstream out;
  out << "graph6,lambda_rw,lambda_ip,relative_difference,alpha_n\n";
  for (const auto& r : summary.rows)
    out << r.graph6 << ',' << format_double(r.lambda_rw) << ',' << format_double(r.lambda_ip) << ','
        << format_double(r.relative_difference) << ',' << format_double(r.alpha_n) << '\n';
  return out.str();
}

std::string box_csv(const std::vector<AsymptoticRow>& rows) {
  std::ostringstream out;
  out << "d,L,gamma,beta,beta_over_gamma,gamma_L2_over_pi2,lambda_ip,ip_over_rw\n";
  for (const auto& r : rows) {
    out << r.d << ',' << r.L << ',' << format_double(r.gamma) << ',' << format_double(r.beta) << ','
        << format_double(r.beta_over_gamma) << ',' << format_double(r.normalized) << ','
        << (r.lambda_ip ? format_double(*r.lambda_ip) : "") << ','
        << (r.ip_over_rw ? format_double(*r.ip_over_rw) : "") << '\n';
  }
  return out.str();
}

}  // namespace specgap
