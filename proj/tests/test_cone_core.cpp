#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "conescal/conescal.hpp"
#include "test_support.hpp"

using namespace conescal;
using testsupport::vec2;
using testsupport::vec3;

TEST_CASE("orthant membership") {
  const Cone c = Cone::orthant(2);
  CHECK(c.contains(vec2(1.0, 2.0)));
  CHECK_FALSE(c.contains(vec2(1.0, -1.0)));
  CHECK(c.contains(Vector::Zero(2)));
}

TEST_CASE("second-order cone membership accepts the boundary") {
  const Cone c = Cone::second_order(2);
  CHECK(c.contains(vec2(1.0, 1.0)));
  CHECK_FALSE(c.contains(vec2(2.0, 1.0)));
  CHECK(c.contains(vec2(-1.0, 1.0)));
}

TEST_CASE("interior membership is the strict form") {
  const Cone orthant = Cone::orthant(2);
  CHECK_FALSE(orthant.contains_interior(vec2(0.0, 1.0)));
  CHECK(orthant.contains_interior(vec2(1.0, 1.0)));

  Matrix rows(3, 2);
  rows << 1.0, 0.0,
          0.0, 1.0,
          1.0, 1.0;
  const Cone halfspace = Cone::halfspace(rows);
  // All three inner products of (2,3) are strictly positive: 2, 3, 5.
  CHECK(halfspace.contains_interior(vec2(2.0, 3.0)));
  CHECK_FALSE(halfspace.contains_interior(vec2(0.0, 3.0)));

  const Cone soc = Cone::second_order(2);
  CHECK_FALSE(soc.contains_interior(vec2(1.0, 1.0)));
  CHECK(soc.contains_interior(vec2(0.5, 1.0)));
}

TEST_CASE("partial order") {
  const Cone c = Cone::orthant(2);
  CHECK(c.leq(vec2(0.0, 0.0), vec2(1.0, 2.0)));
  CHECK_FALSE(c.leq(vec2(1.0, 0.0), vec2(0.0, 1.0)));

  SECTION("x <= x for every family") {
    testsupport::Rng rng(7);
    for (const auto& fam : testsupport::cone_families()) {
      const Vector x = testsupport::sample_point(rng, fam.cone.dim());
      CAPTURE(fam.name);
      CHECK(fam.cone.leq(x, x));
    }
  }
}

TEST_CASE("strict order") {
  const Cone c = Cone::orthant(2);
  CHECK(c.lt_strict(vec2(0.0, 0.0), vec2(1.0, 1.0)));
  CHECK_FALSE(c.lt_strict(vec2(0.0, 0.0), vec2(0.0, 1.0)));
  CHECK(Cone::second_order(2).lt_strict(vec2(0.0, 0.0), vec2(0.0, 2.0)));
}

TEST_CASE("dimension and finiteness are enforced") {
  const Cone c = Cone::orthant(2);
  CHECK_THROWS_AS(c.contains(vec3(1.0, 2.0, 3.0)), std::invalid_argument);
  CHECK_THROWS_AS(c.leq(vec2(0.0, 0.0), vec3(1.0, 1.0, 1.0)), std::invalid_argument);
  Vector bad = vec2(1.0, std::numeric_limits<double>::quiet_NaN());
  CHECK_THROWS_AS(c.contains(bad), std::invalid_argument);
}

TEST_CASE("validate reports analytic pointedness and witnesses") {
  const auto orthant = Cone::orthant(3).validate(50, 1);
  CHECK(orthant.pointed);
  REQUIRE(orthant.interior_witness.has_value());
  CHECK(*orthant.interior_witness == Vector::Ones(3));
  CHECK(orthant.failures.empty());

  const auto soc = Cone::second_order(4).validate(50, 1);
  CHECK(soc.pointed);
  REQUIRE(soc.interior_witness.has_value());
  Vector axis = Vector::Zero(4);
  axis(3) = 1.0;
  CHECK(*soc.interior_witness == axis);

  // Rank 1 < 2: the halfspace cone {x1 >= 0} contains the line x1 = 0.
  Matrix degenerate(1, 2);
  degenerate << 1.0, 0.0;
  const auto halfplane = Cone::halfspace(degenerate).validate(50, 1);
  CHECK_FALSE(halfplane.pointed);
  REQUIRE_FALSE(halfplane.failures.empty());
  CHECK(halfplane.failures.front().property == "pointedness");
  const Vector v = halfplane.failures.front().first;
  CHECK(Cone::halfspace(degenerate).contains(v));
  CHECK(Cone::halfspace(degenerate).contains(-v));
}

TEST_CASE("validate finds an interior witness for pointed halfspace cones") {
  const auto report = Cone::halfspace(testsupport::halfspace_rows_3d()).validate(200, 42);
  CHECK(report.pointed);
  REQUIRE(report.interior_witness.has_value());
  CHECK(Cone::halfspace(testsupport::halfspace_rows_3d()).contains_interior(*report.interior_witness));
}

TEST_CASE("validate probes closure on every family") {
  for (const auto& fam : testsupport::cone_families()) {
    CAPTURE(fam.name);
    const auto report = fam.cone.validate(100, 99);
    CHECK(report.pointed);
    CHECK(report.failures.empty());
    REQUIRE(report.interior_witness.has_value());
    CHECK(fam.cone.contains_interior(*report.interior_witness));
  }
}

TEST_CASE("archimedean witness by doubling and refinement") {
  const Cone c = Cone::orthant(2);

  SECTION("minimal witness matches the linear-scan oracle") {
    const auto w = c.archimedean_witness(vec2(3.0, 5.0), vec2(1.0, 1.0), 1u << 20);
    REQUIRE(w.has_value());
    CHECK(*w == 5);
    CHECK(testsupport::brute_force_archimedean(c, vec2(3.0, 5.0), vec2(1.0, 1.0), 64) == 5);
  }

  SECTION("boundary y admits no witness") {
    const auto w = c.archimedean_witness(vec2(0.0, 1.0), vec2(1.0, 0.0), 1000000);
    CHECK_FALSE(w.has_value());
  }

  SECTION("theta is below every interior direction") {
    for (const auto& fam : testsupport::cone_families()) {
      testsupport::Rng rng(11);
      const Vector e = testsupport::sample_interior(fam.cone, rng);
      CAPTURE(fam.name);
      const auto w = fam.cone.archimedean_witness(Vector::Zero(fam.cone.dim()), e, 8);
      REQUIRE(w.has_value());
      CHECK(*w == 1);
    }
  }

  SECTION("witness within n_max even when no power of two is feasible") {
    // Minimal witness 11 with n_max 12: the doubling probes 2, 4, 8 fail and
    // 16 would overshoot, so the n_max clamp has to engage.
    const auto w = c.archimedean_witness(vec2(11.0, 2.0), vec2(1.0, 1.0), 12);
    REQUIRE(w.has_value());
    CHECK(*w == 11);
  }

  SECTION("preconditions") {
    CHECK_THROWS_AS(c.archimedean_witness(vec2(1.0, 1.0), vec2(-1.0, 0.0), 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(c.archimedean_witness(vec2(1.0, 1.0), Vector::Zero(2), 10),
                    std::invalid_argument);
  }
}

TEST_CASE("cone order lemmas hold on random samples") {
  for (const auto& fam : testsupport::cone_families()) {
    CAPTURE(fam.name);
    testsupport::Rng rng(2026);
    std::uniform_real_distribution<double> pos(0.01, 4.0);
    for (int i = 0; i < 200; ++i) {
      const Vector interior = testsupport::sample_interior(fam.cone, rng);
      const Vector member = testsupport::sample_member(fam.cone, rng);

      // P + aintP stays interior, and positive scaling preserves interiority.
      CHECK(fam.cone.contains_interior(interior + member));
      CHECK(fam.cone.contains_interior(pos(rng) * interior));

      // Interior points are members.
      CHECK(fam.cone.contains(interior));

      // x <= y and y << z imply x << z, with y = x + member, z = y + interior.
      const Vector x = testsupport::sample_point(rng, fam.cone.dim());
      const Vector y = x + member;
      const Vector z = y + interior;
      REQUIRE(fam.cone.leq(x, y));
      REQUIRE(fam.cone.lt_strict(y, z));
      CHECK(fam.cone.lt_strict(x, z));
    }
  }
}

TEST_CASE("pointedness in floating point") {
  for (const auto& fam : testsupport::cone_families()) {
    CAPTURE(fam.name);
    testsupport::Rng rng(31);
    for (int i = 0; i < 200; ++i) {
      const Vector x = testsupport::sample_member(fam.cone, rng);
      if (fam.cone.contains(-x)) {
        CHECK(x.lpNorm<Eigen::Infinity>() <= kMembershipTol * membership_scale(x));
      }
    }
  }
}

TEST_CASE("interior directions always admit archimedean witnesses") {
  for (const auto& fam : testsupport::cone_families()) {
    CAPTURE(fam.name);
    testsupport::Rng rng(77);
    for (int i = 0; i < 50; ++i) {
      const Vector y = testsupport::sample_interior(fam.cone, rng);
      const Vector x = testsupport::sample_point(rng, fam.cone.dim());
      const auto w = fam.cone.archimedean_witness(x, y, 1u << 30);
      CHECK(w.has_value());
    }
  }
}

TEST_CASE("product cones compose blockwise") {
  std::vector<Cone> blocks;
  blocks.push_back(Cone::orthant(1));
  blocks.push_back(Cone::second_order(2));
  const Cone prod = Cone::product(std::move(blocks));
  REQUIRE(prod.dim() == 3);
  CHECK(prod.contains(vec3(1.0, 0.5, 1.0)));
  CHECK_FALSE(prod.contains(vec3(-1.0, 0.5, 1.0)));
  CHECK_FALSE(prod.contains(vec3(1.0, 2.0, 1.0)));
  CHECK(prod.contains_interior(vec3(0.1, 0.0, 1.0)));
}

TEST_CASE("cone equality is structural") {
  CHECK(Cone::orthant(2) == Cone::orthant(2));
  CHECK_FALSE(Cone::orthant(2) == Cone::orthant(3));
  CHECK_FALSE(Cone::orthant(2) == Cone::second_order(2));
  CHECK(Cone::halfspace(testsupport::halfspace_rows_2d()) ==
        Cone::halfspace(testsupport::halfspace_rows_2d()));
}
