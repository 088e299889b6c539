#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "specgap/boxstudy.hpp"
#include "specgap/errors.hpp"
#include "specgap/generator.hpp"

using namespace specgap;

namespace {

const InequalityCheck* find_check(const EigenvectorAudit& ev, const std::string& name) {
  for (const auto& c : ev.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("gamma") {
  CHECK(specgap::gamma(1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(specgap::gamma(2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gamma_closed_form(1) == doctest::Approx(2.0).epsilon(1e-15));
  for (std::size_t L = 1; L <= 60; ++L) CHECK(std::abs(specgap::gamma(L) - gamma_closed_form(L)) <= 1e-10);
  const double norm100 = specgap::gamma(100) * 100.0 * 100.0 / (std::numbers::pi * std::numbers::pi);
  CHECK(std::abs(norm100 - 0.9802) <= 1e-3);
  CHECK_THROWS_AS(specgap::gamma(0), InvalidArgument);
}

TEST_CASE("gamma against the Jacobi oracle") {
  for (int L = 1; L <= 12; ++L) {
    oracle::EdgeList edges;
    for (int i = 0; i < L; ++i) edges.emplace_back(i, i + 1);
    CHECK(std::abs(specgap::gamma(std::size_t(L)) - oracle::gap_of(oracle::jacobi_eigenvalues(oracle::laplacian(L + 1, edges)))) <=
          1e-10);
  }
}

TEST_CASE("gamma is decreasing and the normalised value increases") {
  double previous_gamma = specgap::gamma(1);
  double previous_norm = 0.0;
  for (std::size_t L = 1; L <= 2000; ++L) {
    const double g = gamma_closed_form(L);
    const double norm = g * double(L * L) / (std::numbers::pi * std::numbers::pi);
    if (L > 1) CHECK(g < previous_gamma);
    CHECK(norm > previous_norm);
    CHECK(norm < 1.0);
    if (L >= 3) CHECK(norm > 0.5);
    previous_gamma = g;
    previous_norm = norm;
  }
}

TEST_CASE("beta in one dimension") {
  for (std::size_t L = 1; L <= 5; ++L) {
    const auto r = beta(1, L);
    CHECK(r.snapshots.size() == 1);
    CHECK(r.beta == doctest::Approx(r.gamma).epsilon(1e-12));
    CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("beta for the unit square") {
  const auto r = beta(2, 1);
  REQUIRE(r.snapshots.size() == 3);
  CHECK(r.snapshots[0].gap == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.snapshots[1].gap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.snapshots[2].gap == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.beta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.gamma == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.ratio == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("beta properties") {
  for (std::size_t d = 2; d <= 3; ++d) {
    const auto first = beta(d, 1);
    const auto sixth = beta(d, 6);
    CHECK(sixth.ratio > first.ratio);
    for (std::size_t L = 1; L <= (d == 2 ? 6u : 3u); ++L) {
      const auto r = beta(d, L);
      CHECK(r.beta <= r.gamma + 1e-9);
      CHECK(r.snapshots.back().gap == doctest::Approx(r.gamma).epsilon(1e-9));
      // each H_k contains a full-length path factor
      for (std::size_t k = 1; k <= d; ++k)
        CHECK(spectral_gap(rw_generator(intermediate_graph(d, L, k))).gap == doctest::Approx(r.gamma).epsilon(1e-9));
    }
  }
}

TEST_CASE("snapshot gaps dominate the boundary graph gap") {
  for (std::size_t L = 1; L <= 5; ++L) {
    const auto seq = intermediate_sequence(2, L);
    const auto r = beta(2, L);
    for (std::size_t k = 1; k <= 2; ++k) {
      const double boundary = spectral_gap(rw_generator(boundary_graph(2, L, k))).gap;
      const std::size_t begin = k == 1 ? 0 : seq.stage_ends[0] + 1;
      for (std::size_t i = begin; i <= seq.stage_ends[k - 1]; ++i) CHECK(r.snapshots[i].gap >= boundary - 1e-9);
    }
  }
}

TEST_CASE("corollary audit in one dimension") {
  for (std::size_t L = 1; L <= 5; ++L) {
    const auto audit = corollary_audit(1, L, 1, 1);
    CHECK(audit.boundary_size == 1);
    CHECK(audit.s_size == L);
    CHECK(audit.all_applicable_hold);
  }
}

TEST_CASE("corollary audit d=2, L=4, k=1, M=2") {
  const auto audit = corollary_audit(2, 4, 1, 2);
  CHECK(audit.all_applicable_hold);
  CHECK_FALSE(audit.epsilon.has_value());
  CHECK(audit.s_size + audit.boundary_size == 25 - 5);
  REQUIRE_FALSE(audit.eigenvectors.empty());
  for (const auto& ev : audit.eigenvectors) {
    CHECK(ev.good_count + ev.bad_count == audit.boundary_size);
    CHECK(ev.good_squares + ev.bad_squares + ev.s_squares == doctest::Approx(ev.total_squares));
    CHECK(ev.energy == doctest::Approx(ev.lambda * ev.total_squares));
    const auto* starrr = find_check(ev, "starrr");
    REQUIRE(starrr != nullptr);
    CHECK_FALSE(starrr->applicable);
  }
}

TEST_CASE("corollary audit d=2, L=6, k=2, M=3 and large M") {
  const auto audit = corollary_audit(2, 6, 2, 3);
  CHECK(audit.all_applicable_hold);
  const auto wide = corollary_audit(2, 6, 2, 6);
  REQUIRE(wide.epsilon.has_value());
  CHECK(*wide.epsilon == doctest::Approx(1.0 - std::pow(1.0 - 4.0 / 6.0, 2)));
  for (const auto& ev : wide.eigenvectors) {
    const auto* ratio = find_check(ev, "gap_ratio");
    REQUIRE(ratio != nullptr);
    // 1/gamma_6 + 144 is far above (1-eps)^(-1/2)/gamma_6 at this size
    CHECK_FALSE(ratio->applicable);
    CHECK_FALSE(ratio->note.empty());
  }
}

TEST_CASE("corollary audit arguments") {
  CHECK_THROWS_AS(corollary_audit(2, 3, 3, 1), InvalidArgument);
  CHECK_THROWS_AS(corollary_audit(2, 3, 1, 4), InvalidArgument);
  CHECK_THROWS_AS(corollary_audit(2, 3, 1, 0), InvalidArgument);
}

TEST_CASE("asymptotic report") {
  BoxOptions small;
  small.interchange_vertex_limit = 4;
  const auto rows = asymptotic_report(2, 3, true, small);
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[0].lambda_ip.has_value());
  CHECK(*rows[0].lambda_ip == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(*rows[0].ip_over_rw == doctest::Approx(1.0).epsilon(1e-9));
  for (std::size_t i = 1; i < 3; ++i) {
    CHECK_FALSE(rows[i].lambda_ip.has_value());
    CHECK_FALSE(rows[i].notice.empty());
  }
  const auto line = asymptotic_report(1, 6, true);
  for (const auto& row : line) {
    CHECK(row.beta == doctest::Approx(row.gamma));
    CHECK(row.gamma == doctest::Approx(gamma_closed_form(row.L)).epsilon(1e-10));
    CHECK(*row.lambda_ip == doctest::Approx(row.gamma).epsilon(1e-8));
  }
}
