#pragma once

// JSON and CSV renderings of the library's result types.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "specgap/aldous.hpp"
#include "specgap/boxstudy.hpp"
#include "specgap/lumping.hpp"
#include "specgap/spectral.hpp"

namespace specgap {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t dense_threshold = kDefaultDenseThreshold;
  std::size_t state_budget = kDefaultStateBudget;
  double tolerance = kDefaultTolerance;
  std::size_t jobs = 0;  // 0 = all cores
  std::string output_path;  // empty = stdout
  std::string format = "json";

  SolverOptions solver() const;
};

Json to_json(const RunConfig& config);
Json to_json(const SpectrumResult& result, bool include_eigenvector = false);
Json to_json(const LabelingAudit& audit);
Json to_json(const BatchRow& row);
Json to_json(const BatchSummary& summary);
Json to_json(const CaseAudit& audit);
Json to_json(const BoxReport& report);
Json to_json(const InequalityCheck& check);
Json to_json(const CorollaryAudit& audit);
Json to_json(const AsymptoticRow& row);

/// Header: graph6,lambda_rw,lambda_ip,relative_difference,alpha_n
std::string batch_csv(const BatchSummary& summary);

/// Header: d,L,gamma,beta,beta_over_gamma,gamma_L2_over_pi2,lambda_ip,ip_over_rw
std::string box_csv(const std::vector<AsymptoticRow>& rows);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace specgap
