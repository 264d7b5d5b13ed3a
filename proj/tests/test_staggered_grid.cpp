#include <doctest.h>

#include "affnet/staggered_grid.hpp"

using namespace affnet;

TEST_SUITE_BEGIN("staggered_grid");

TEST_CASE("site counts and index ranges") {
  StaggeredDomain d(3, 2);
  CHECK(d.count(SiteFamily::Vertex) == 4 * 3);
  CHECK(d.count(SiteFamily::UEdge) == 3 * 3);
  CHECK(d.count(SiteFamily::VEdge) == 4 * 2);
  CHECK(d.count(SiteFamily::Quad) == 3 * 2);
  CHECK(d.contains(SiteFamily::Vertex, 3, 2));
  CHECK_FALSE(d.contains(SiteFamily::Quad, 3, 0));
  CHECK_FALSE(d.contains(SiteFamily::UEdge, 3, 0));
  CHECK_FALSE(d.contains(SiteFamily::VEdge, 0, 2));
  CHECK(d.interior_vertex(1, 1));
  CHECK_FALSE(d.interior_vertex(0, 1));
  CHECK_FALSE(d.interior_vertex(3, 1));
  CHECK(d.interior_v_edge(1, 0));
  CHECK_FALSE(d.interior_v_edge(0, 0));
  CHECK(d.interior_u_edge(0, 1));
  CHECK_FALSE(d.interior_u_edge(0, 0));
  CHECK_THROWS_AS(StaggeredDomain(0, 1), Error);
}

TEST_CASE("out-of-range reads are rejected, never wrapped") {
  StaggeredDomain d(2, 2);
  RealField f(d, SiteFamily::Quad, 1.0);
  CHECK_THROWS_AS(f(2, 0), Error);
  CHECK_THROWS_AS(f(-1, 0), Error);
  CHECK_THROWS_AS(f(0, 2), Error);
}

TEST_CASE("diff1 on simple fields") {
  StaggeredDomain d(2, 2);
  RealField constant(d, SiteFamily::Vertex, 3.5);
  RealField dc = diff1(constant);
  for (int j = 0; j <= 2; ++j)
    for (int i = 0; i < 2; ++i) CHECK(dc(i, j) == 0.0);

  RealField linear(d, SiteFamily::Vertex, [](int i, int) { return double(i); });
  RealField dl = diff1(linear);
  for (int j = 0; j <= 2; ++j)
    for (int i = 0; i < 2; ++i) CHECK(dl(i, j) == 1.0);

  CHECK_THROWS_AS(diff1(dc), Error);  // u-edge input has no u-derivative here
}

TEST_CASE("mixed12 on additive and bilinear fields") {
  StaggeredDomain d(4, 3);
  RealField additive(d, SiteFamily::Vertex, [](int i, int j) { return double(i + j); });
  RealField bilinear(d, SiteFamily::Vertex, [](int i, int j) { return double(i * j); });
  RealField m1 = mixed12(additive), m2 = mixed12(bilinear);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i) {
      CHECK(m1(i, j) == 0.0);
      CHECK(m2(i, j) == 1.0);
    }
}

TEST_CASE("paraboloid net derivatives") {
  StaggeredDomain d(4, 4);
  Vec3Field q(d, SiteFamily::Vertex, [](int i, int j) {
    return Vec3{double(j), double(i), -double(i * j)};
  });
  Vec3Field d1 = diff1(q);
  for (int j = 0; j <= 4; ++j)
    for (int i = 0; i < 4; ++i) {
      CHECK(d1(i, j).x == 0.0);
      CHECK(d1(i, j).y == 1.0);
      CHECK(d1(i, j).z == -double(j));
    }
  Vec3Field m = mixed12(q);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      CHECK(m(i, j).x == 0.0);
      CHECK(m(i, j).y == 0.0);
      CHECK(m(i, j).z == -1.0);
    }
}

TEST_CASE("mixed12 equals both derivative compositions") {
  StaggeredDomain d(5, 4);
  // integer-valued field: all differences exact, so the identity is bitwise
  RealField f(d, SiteFamily::Vertex,
              [](int i, int j) { return double(3 * i * j + 2 * i - 7 * j + i * i); });
  RealField m = mixed12(f);
  RealField c12 = diff1(diff2(f));
  RealField c21 = diff2(diff1(f));
  for (int j = 0; j < d.nv; ++j)
    for (int i = 0; i < d.nu; ++i) {
      CHECK(m(i, j) == c12(i, j));
      CHECK(m(i, j) == c21(i, j));
    }
  // on irrational-valued fields the two associations agree to round-off
  RealField g(d, SiteFamily::Vertex,
              [](int i, int j) { return std::sin(1.7 * i) * std::cos(0.9 * j) + 0.1 * i * j; });
  RealField gm = mixed12(g), g21 = diff2(diff1(g));
  for (int j = 0; j < d.nv; ++j)
    for (int i = 0; i < d.nu; ++i) CHECK(gm(i, j) == doctest::Approx(g21(i, j)).epsilon(1e-14));
}

TEST_SUITE_END();
