#include "doctest.h"

#include <cmath>

#include "specgap/errors.hpp"
#include "specgap/generator.hpp"
#include "specgap/lumping.hpp"
#include "specgap/spectral.hpp"

using namespace specgap;

namespace {

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("trivial maps") {
  const auto ip = interchange_generator(make_path(2));
  const auto id = build_quotient(ip, identity_map(ip.size()));
  CHECK(max_abs_diff(id.qprime.dense(), ip.dense()) == 0.0);
  const auto one = build_quotient(ip, constant_map(ip.size()));
  CHECK(one.qprime.size() == 1);
  CHECK(one.qprime.dense()(0, 0) == 0.0);
}

TEST_CASE("position map blocks") {
  const auto m2 = position_map(2, 0);
  CHECK(m2.block_count() == 2);
  for (const auto& b : m2.blocks()) CHECK(b.size() == 1);
  const auto m3 = position_map(3, 1);
  CHECK(m3.block_count() == 3);
  for (const auto& b : m3.blocks()) CHECK(b.size() == 2);
  CHECK(m3.equal_block_sizes());
  CHECK_THROWS_AS(position_map(3, 3), InvalidArgument);
}

TEST_CASE("position quotient of the path") {
  const Graph g = make_path(2);
  const auto q = build_quotient(interchange_generator(g), position_map(3, 0));
  const auto spec = full_spectrum(q.qprime);
  REQUIRE(spec.size() == 3);
  CHECK(spec[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spec[2] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("canonical quotients reproduce the random walk and exclusion operators") {
  for (std::size_t n = 2; n <= 5; ++n)
    for (const auto& g : enumerate_connected(n)) {
      const auto ip = interchange_generator(g);
      for (std::size_t p = 0; p < n; ++p) {
        const auto q = build_quotient(ip, position_map(n, p));
        CHECK(max_abs_diff(q.qprime.dense(), rw_generator(g).dense()) <= 1e-12);
      }
      for (std::size_t m = 1; m < n; ++m) {
        const auto q = build_quotient(ip, occupancy_map(n, m));
        CHECK(max_abs_diff(q.qprime.dense(), exclusion_generator(g, m).dense()) <= 1e-12);
      }
    }
}

TEST_CASE("occupancy blocks") {
  const auto one = occupancy_map(4, 1);
  const auto pos = position_map(4, 0);
  for (std::size_t s = 0; s < 24; ++s) CHECK(one.block(s) == pos.block(s));
  const auto two = occupancy_map(5, 2);
  CHECK(two.block_count() == 10);
  for (const auto& b : two.blocks()) CHECK(b.size() == 2 * 6);
  CHECK_THROWS_AS(occupancy_map(4, 0), InvalidArgument);
  CHECK_THROWS_AS(occupancy_map(4, 4), InvalidArgument);

  const auto tri = build_quotient(interchange_generator(make_complete(3)), occupancy_map(3, 1));
  const auto spec = full_spectrum(tri.qprime);
  CHECK(is_sub_multiset(spec, full_spectrum(interchange_generator(make_complete(3))), 1e-8));
  CHECK(spec[1] == doctest::Approx(3.0));
  CHECK(spec[2] == doctest::Approx(3.0));
}

TEST_CASE("non-lumpable maps are rejected with a witness") {
  // blocks {0,1} and {2} on the path 0-1-2: vertex 0 and vertex 1 send different rates into {2}
  const auto gen = rw_generator(make_path(2));
  const LumpingMap bad({0, 0, 1}, 2, "bad");
  try {
    build_quotient(gen, bad);
    FAIL("expected a lumpability error");
  } catch (const LumpabilityError& e) {
    CHECK(e.x() == 0);
    CHECK(e.y() == 1);
  }
  CHECK_THROWS_AS(LumpingMap({0, 0, 2}, 3, "gap"), InvalidArgument);
  CHECK_THROWS_AS(build_quotient(gen, identity_map(4)), InvalidArgument);
}

TEST_CASE("unequal blocks give a non-symmetric quotient") {
  // star with centre 0: leaves {1,2,3} lump, but blocks of size 1 and 3 break symmetry
  const auto gen = rw_generator(make_star(3));
  CHECK_THROWS_AS(build_quotient(gen, LumpingMap({0, 1, 1, 1}, 2, "centre/leaves")), InvalidArgument);
}

TEST_CASE("projection of eigenvectors") {
  const Graph g = make_path(2);
  const auto ip = interchange_generator(g);
  const auto q = build_quotient(ip, position_map(3, 0));
  const std::vector<double> ones(6, 1.0);
  CHECK(project_eigenvector(ones, q.map) == std::vector<double>{2.0, 2.0, 2.0});

  const auto sys = eigensystem(ip);
  std::size_t nonzero = 0;
  std::size_t zero = 0;
  for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
    const Eigen::VectorXd f = sys.vectors.col(i);
    const auto h = project_eigenvector(std::span<const double>(f.data(), 6), q.map);
    double norm = 0.0;
    for (double v : h) norm += v * v;
    if (std::sqrt(norm) <= 1e-10) {
      ++zero;
    } else {
      ++nonzero;
      CHECK(check_eigenpair(q.qprime, h, sys.values[i]) <= 1e-9);
    }
    double block_total = 0.0;
    for (double v : h) block_total += v;
    CHECK(block_total == doctest::Approx(f.sum()).scale(1.0).epsilon(1e-12));
  }
  // eigenvalue 4 is not in the walk spectrum, so its projection must vanish
  CHECK(nonzero >= 3);
  CHECK(zero >= 1);
  CHECK(nonzero + zero == 6);

  // antisymmetric within every block
  std::vector<double> anti(6, 0.0);
  for (const auto& block : q.map.blocks()) {
    anti[block[0]] = 1.0;
    anti[block[1]] = -1.0;
  }
  for (double v : project_eigenvector(anti, q.map)) CHECK(v == 0.0);
}

TEST_CASE("projection audit") {
  for (std::size_t n = 2; n <= 4; ++n)
    for (const auto& g : enumerate_connected(n)) {
      const auto ip = interchange_generator(g);
      const auto sys = eigensystem(ip);
      for (std::size_t p = 0; p < n; ++p) {
        const auto audit = audit_projection(sys, build_quotient(ip, position_map(n, p)));
        CHECK(audit.pass);
        CHECK(audit.eigenpairs == ip.size());
        CHECK(audit.eigenvector_branch + audit.zero_branch == audit.eigenpairs);
        CHECK(audit.eigenvector_branch >= n);
      }
      for (std::size_t m = 1; m < n; ++m) {
        const auto audit = audit_projection(sys, build_quotient(ip, occupancy_map(n, m)));
        CHECK(audit.pass);
        CHECK(spectral_gap(exclusion_generator(g, m)).gap >= spectral_gap(ip).gap - 1e-8);
      }
    }
}
