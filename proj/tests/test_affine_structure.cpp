#include <doctest.h>

#include <cmath>

#include "affnet/affine_structure.hpp"
#include "affnet/generators.hpp"
#include "test_support.hpp"

using namespace affnet;
using namespace affnet::testing;

TEST_SUITE_BEGIN("affine_structure");

TEST_CASE("paraboloid: the whole apparatus in closed form") {
  AsymptoticNet net = paraboloid_net(6, 6);
  AffineStructure s = build_structure(net, 1.0);
  for (int j = 0; j < 6; ++j)
    for (int i = 0; i < 6; ++i) {
      CHECK(s.omega(i, j) == 1.0);
      CHECK(s.gamma(i, j) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(s.xi(i, j).x == 0.0);
      CHECK(s.xi(i, j).y == 0.0);
      CHECK(s.xi(i, j).z == -1.0);
    }
  for (int j = 0; j <= 6; ++j)
    for (int i = 0; i <= 6; ++i) {
      CHECK(s.nu(i, j).x == doctest::Approx(-double(i)).epsilon(1e-14));
      CHECK(s.nu(i, j).y == doctest::Approx(-double(j)).epsilon(1e-14));
      CHECK(s.nu(i, j).z == doctest::Approx(-1.0).epsilon(1e-14));
    }
  for (int j = 1; j <= 5; ++j)
    for (int i = 1; i <= 5; ++i) {
      CHECK(std::fabs(s.A(i, j)) <= 1e-14);
      CHECK(std::fabs(s.B(i, j)) <= 1e-14);
    }
  for (int j = 0; j < 6; ++j)
    for (int i = 1; i <= 5; ++i) {
      CHECK(s.p_v(i, j) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(std::fabs(s.h_v(i, j)) <= 1e-14);
      CHECK(std::fabs(s.H_v(i, j)) <= 1e-14);
    }
  CHECK(s.reports.at("moutard").max_abs == 0.0);
  CHECK(s.reports.at("corner_products").max_abs <= 1e-15);
  CHECK(s.reports.at("omega_conormal").max_abs <= 1e-15);
  CHECK(s.reports.at("lelieuvre_u").max_abs == 0.0);
  CHECK(s.reports.at("lelieuvre_v").max_abs == 0.0);
}

TEST_CASE("hyperboloid: every field matches the closed forms") {
  const HyperboloidSpec spec = oracle_hyperboloid_spec();
  auto [net, an] = hyperboloid_net(spec);
  AffineStructure s = build_structure(net, an.gamma(0, 0));
  const StaggeredDomain& dom = net.domain;
  double eg = 0, eo = 0, en = 0, ex = 0, ep = 0, eh = 0, eH = 0;
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      eo = std::max(eo, std::fabs(s.omega(i, j) / an.Omega(i, j) - 1));
      eg = std::max(eg, std::fabs(s.gamma(i, j) / an.gamma(i, j) - 1));
      ex = std::max(ex, (s.xi(i, j) - an.xi(i, j)).norm() / an.xi(i, j).norm());
    }
  for (int j = 0; j <= dom.nv; ++j)
    for (int i = 0; i <= dom.nu; ++i)
      en = std::max(en, (s.nu(i, j) - an.nu(i, j)).norm() / an.nu(i, j).norm());
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 1; i <= dom.nu - 1; ++i) {
      ep = std::max(ep, std::fabs(s.p_v(i, j) / an.p_v(i, j) - 1));
      eh = std::max(eh, std::fabs(s.h_v(i, j) / an.h_v(i, j) - 1));
      eH = std::max(eH, std::fabs(s.H_v(i, j) / an.H_v(i, j) - 1));
    }
  for (int j = 1; j <= dom.nv - 1; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      ep = std::max(ep, std::fabs(s.p_u(i, j) / an.p_u(i, j) - 1));
      eh = std::max(eh, std::fabs(s.h_u(i, j) / an.h_u(i, j) - 1));
      eH = std::max(eH, std::fabs(s.H_u(i, j) / an.H_u(i, j) - 1));
    }
  CHECK(eo <= 1e-10);
  CHECK(eg <= 1e-10);
  CHECK(en <= 1e-10);
  CHECK(ex <= 1e-10);
  CHECK(ep <= 1e-10);
  CHECK(eh <= 1e-9);
  CHECK(eH <= 1e-9);
  // h is negative on this surface while H is positive: H = -h/sqrt(Om Om')
  CHECK(an.h_v(3, 2) < 0.0);
  CHECK(an.H_v(3, 2) > 0.0);
  CHECK(s.h_v(3, 2) < 0.0);
  CHECK(s.H_v(3, 2) ==
        doctest::Approx(-s.h_v(3, 2) / std::sqrt(s.omega(2, 2) * s.omega(3, 2)))
            .epsilon(1e-12));
  // regression anchors
  CHECK(s.omega(3, 2) == doctest::Approx(0.0005435522068953014).epsilon(1e-10));
  CHECK(s.H_v(3, 2) == doctest::Approx(1.0050808489060377).epsilon(1e-10));
  CHECK(s.gamma(3, 2) == doctest::Approx(0.9998641211810232).epsilon(1e-10));
  CHECK(s.xi(3, 2).z == doctest::Approx(1.0068851516985948).epsilon(1e-10));
}

TEST_CASE("hyperboloid: identity suites at 1e-10") {
  auto [net, an] = hyperboloid_net(oracle_hyperboloid_spec());
  AffineStructure s = build_structure(net, an.gamma(0, 0));
  CHECK(s.reports.at("lelieuvre_u").max_abs <= 1e-10);
  CHECK(s.reports.at("lelieuvre_v").max_abs <= 1e-10);
  CHECK(s.reports.at("moutard").max_abs <= 1e-10);
  CHECK(s.reports.at("corner_products").max_abs <= 1e-10);
  CHECK(s.reports.at("omega_conormal").max_abs <= 1e-10);
  CHECK(s.reports.at("cubic_fourfold").max_abs <= 1e-10);
  CHECK(s.reports.at("p_gamma_consistency").max_abs <= 1e-10);
  CHECK(s.reports.at("h_p_consistency").max_abs <= 1e-10);
  // ruled quadric: the cubic form vanishes identically
  for (int j = 1; j <= net.domain.nv - 1; ++j)
    for (int i = 1; i <= net.domain.nu - 1; ++i) {
      CHECK(std::fabs(s.A(i, j)) <= 1e-12);
      CHECK(std::fabs(s.B(i, j)) <= 1e-12);
    }
}

TEST_CASE("scaling the net scales Omega by det^(1/2) of the dilation") {
  auto [net, an] = hyperboloid_net(oracle_hyperboloid_spec());
  AffineStructure s = build_structure(net, 1.0);
  Mat3 twice;
  twice.m[0][0] = twice.m[1][1] = twice.m[2][2] = 2.0;
  AffineStructure s2 = build_structure(transformed(net, twice, Vec3{}), 1.0);
  const double want = std::pow(2.0, 1.5);
  for (int j = 0; j < net.domain.nv; ++j)
    for (int i = 0; i < net.domain.nu; ++i)
      CHECK(s2.omega(i, j) / s.omega(i, j) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("gauge seed: checkerboard covariance of gamma, nu, A, B") {
  auto [net, an] = hyperboloid_net(oracle_hyperboloid_spec());
  AffineStructure s1 = build_structure(net, 1.0);
  AffineStructure s2 = build_structure(net, 2.0);
  const double lam = 2.0;
  for (int j = 0; j < net.domain.nv; ++j)
    for (int i = 0; i < net.domain.nu; ++i) {
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      CHECK(s2.gamma(i, j) ==
            doctest::Approx(s1.gamma(i, j) * std::pow(lam, sign)).epsilon(1e-12));
    }
  for (int j = 0; j <= net.domain.nv; ++j)
    for (int i = 0; i <= net.domain.nu; ++i) {
      const double sign = ((i + j) % 2 == 0) ? -1.0 : 1.0;  // nu carries gamma^{-1}
      const Vec3 want = s1.nu(i, j) * std::pow(lam, sign);
      CHECK((s2.nu(i, j) - want).norm() <= 1e-12 * want.norm());
    }
  // Lelieuvre differences are unchanged by the rescaling
  LelieuvreReport lel = verify_lelieuvre(net, s2.nu);
  CHECK(lel.u.max_abs <= 1e-10);
  CHECK(lel.v.max_abs <= 1e-10);
  // A, B pick up the vertex-parity factor
  AsymptoticNet wavy = wavy_minimal_net();
  AffineStructure w1 = build_structure(wavy, 1.0);
  AffineStructure w2 = build_structure(wavy, 2.0);
  for (int j = 1; j <= wavy.domain.nv - 1; ++j)
    for (int i = 1; i <= wavy.domain.nu - 1; ++i) {
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      CHECK(w2.A(i, j) ==
            doctest::Approx(w1.A(i, j) * std::pow(lam, sign)).epsilon(1e-11));
      CHECK(w2.B(i, j) ==
            doctest::Approx(w1.B(i, j) * std::pow(lam, sign)).epsilon(1e-11));
    }
}

TEST_CASE("gauge seed: p, h, H, Omega, M are bitwise seed-independent") {
  auto [net, an] = hyperboloid_net(oracle_hyperboloid_spec());
  AffineStructure s1 = build_structure(net, 1.0);
  AffineStructure s2 = build_structure(net, 7.3);
  for (int j = 0; j < net.domain.nv; ++j)
    for (int i = 0; i < net.domain.nu; ++i) {
      CHECK(s1.omega(i, j) == s2.omega(i, j));
      CHECK(s1.M(i, j) == s2.M(i, j));
    }
  for (int j = 0; j < net.domain.nv; ++j)
    for (int i = 1; i <= net.domain.nu - 1; ++i) {
      CHECK(s1.p_v(i, j) == s2.p_v(i, j));
      CHECK(s1.h_v(i, j) == s2.h_v(i, j));
      CHECK(s1.H_v(i, j) == s2.H_v(i, j));
    }
  for (int j = 1; j <= net.domain.nv - 1; ++j)
    for (int i = 0; i < net.domain.nu; ++i) {
      CHECK(s1.p_u(i, j) == s2.p_u(i, j));
      CHECK(s1.h_u(i, j) == s2.h_u(i, j));
      CHECK(s1.H_u(i, j) == s2.H_u(i, j));
    }
}

TEST_CASE("equi-affine maps: invariants stay, nu and xi transform covariantly") {
  auto [net, an] = hyperboloid_net(oracle_hyperboloid_spec());
  AffineStructure s = build_structure(net, 1.0);
  RandomAffine map = random_equiaffine(99);
  AffineStructure st = build_structure(transformed(net, map.linear, map.translation), 1.0);
  const Mat3 inv_t = map.linear.inverse().transposed();
  for (int j = 0; j < net.domain.nv; ++j)
    for (int i = 0; i < net.domain.nu; ++i) {
      CHECK(st.omega(i, j) == doctest::Approx(s.omega(i, j)).epsilon(1e-10));
      CHECK(st.gamma(i, j) == doctest::Approx(s.gamma(i, j)).epsilon(1e-10));
      const Vec3 want_xi = map.linear * s.xi(i, j);
      CHECK((st.xi(i, j) - want_xi).norm() <= 1e-10 * want_xi.norm());
    }
  for (int j = 0; j <= net.domain.nv; ++j)
    for (int i = 0; i <= net.domain.nu; ++i) {
      const Vec3 want_nu = inv_t * s.nu(i, j);  // co-normals: inverse transpose
      CHECK((st.nu(i, j) - want_nu).norm() <= 1e-9 * want_nu.norm());
    }
  for (int j = 0; j < net.domain.nv; ++j)
    for (int i = 1; i <= net.domain.nu - 1; ++i) {
      CHECK(st.p_v(i, j) == doctest::Approx(s.p_v(i, j)).epsilon(1e-10));
      CHECK(st.h_v(i, j) == doctest::Approx(s.h_v(i, j)).epsilon(1e-9));
      CHECK(st.H_v(i, j) == doctest::Approx(s.H_v(i, j)).epsilon(1e-9));
    }
  AsymptoticNet wavy = wavy_minimal_net();
  AffineStructure w = build_structure(wavy, 1.0);
  AffineStructure wt = build_structure(transformed(wavy, map.linear, map.translation), 1.0);
  for (int j = 1; j <= wavy.domain.nv - 1; ++j)
    for (int i = 1; i <= wavy.domain.nu - 1; ++i) {
      CHECK(wt.A(i, j) == doctest::Approx(w.A(i, j)).epsilon(1e-9));
      CHECK(wt.B(i, j) == doctest::Approx(w.B(i, j)).epsilon(1e-9));
    }
}

TEST_CASE("analytic co-normal satisfies Lelieuvre with the section-3.1 signs") {
  auto [net, an] = hyperboloid_net(oracle_hyperboloid_spec());
  Vec3Field nu(net.domain, SiteFamily::Vertex,
               [&](int i, int j) { return an.nu(i, j); });
  LelieuvreReport lel = verify_lelieuvre(net, nu);
  CHECK(lel.u.max_abs <= 1e-12);
  CHECK(lel.v.max_abs <= 1e-12);
  // the opposite sign convention (nu x nu_+v = +q2) does not hold
  const Vec3 wrong = cross(nu(3, 2), nu(3, 3)) - net.q2(3, 2);
  CHECK(wrong.norm() > 1e-3 * net.q2(3, 2).norm());
}

TEST_CASE("negated co-normal is flagged on exactly its four incident edges") {
  AsymptoticNet net = paraboloid_net(6, 6);
  AffineStructure s = build_structure(net, 1.0);
  Vec3Field nu = s.nu;
  nu.at(3, 3) = -nu(3, 3);
  LelieuvreReport lel = verify_lelieuvre(net, nu);
  for (int j = 0; j <= 6; ++j)
    for (int i = 0; i < 6; ++i) {
      const bool incident = (j == 3) && (i == 2 || i == 3);
      if (incident)
        CHECK(lel.u.values(i, j) == doctest::Approx(2.0).epsilon(1e-12));
      else
        CHECK(lel.u.values(i, j) <= 1e-12);
    }
  for (int j = 0; j < 6; ++j)
    for (int i = 0; i <= 6; ++i) {
      const bool incident = (i == 3) && (j == 2 || j == 3);
      if (incident)
        CHECK(lel.v.values(i, j) == doctest::Approx(2.0).epsilon(1e-12));
      else
        CHECK(lel.v.values(i, j) <= 1e-12);
    }
}

TEST_CASE("moutard residual is local to a perturbed gamma") {
  AsymptoticNet net = paraboloid_net(6, 6);
  AffineStructure s = build_structure(net, 1.0);
  RealField gamma = s.gamma;
  gamma.at(2, 3) += 1e-3;
  ResidualReport r = moutard_residual(s.nu, gamma);
  for (int j = 0; j < 6; ++j)
    for (int i = 0; i < 6; ++i) {
      if (i == 2 && j == 3)
        CHECK(r.values(i, j) > 1e-5);
      else
        CHECK(r.values(i, j) <= 1e-12);
    }
}

TEST_CASE("corner products flag a scaled xi at that quad") {
  AsymptoticNet net = paraboloid_net(5, 5);
  AffineStructure s = build_structure(net, 1.0);
  Vec3Field xi = s.xi;
  const double eps = 1e-4;
  xi.at(1, 2) = xi(1, 2) * (1.0 + eps);
  ResidualReport r = corner_products_residual(s.nu, xi, s.gamma);
  CHECK(r.values(1, 2) == doctest::Approx(eps).epsilon(1e-9));
  CHECK(r.argmax_i == 1);
  CHECK(r.argmax_j == 2);
}

TEST_CASE("omega-from-conormal residual is local to a perturbed Omega") {
  AsymptoticNet net = paraboloid_net(5, 5);
  AffineStructure s = build_structure(net, 1.0);
  RealField omega = s.omega;
  omega.at(3, 1) += 1e-4;
  ResidualReport r = omega_conormal_residual(s.nu, s.gamma, omega);
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 5; ++i) {
      if (i == 3 && j == 1)
        CHECK(r.values(i, j) > 1e-6);
      else
        CHECK(r.values(i, j) <= 1e-14);
    }
}

TEST_CASE("gauge propagation detects non-planar input with a vertex id") {
  AsymptoticNet net = paraboloid_net(6, 6);
  Vec3Field q = net.q;
  q.at(2, 2) = q(2, 2) + (Vec3{-2, -2, -1} / 3.0) * 1e-3;
  AsymptoticNet bad(net.domain, std::move(q));
  CHECK_THROWS_AS(propagate_gamma(bad, 1.0), GaugeError);
  try {
    propagate_gamma(bad, 1.0);
  } catch (const GaugeError& e) {
    CHECK(std::abs(e.vertex_i - 2) <= 1);
    CHECK(std::abs(e.vertex_j - 2) <= 1);
  }
}

TEST_CASE("degenerate net is rejected before any field is produced") {
  AsymptoticNet net = paraboloid_net(4, 4);
  Vec3Field q = net.q;
  q.at(2, 2) = q(2, 2) + Vec3{0, 0, 8};
  AsymptoticNet bad(net.domain, std::move(q));
  CHECK_THROWS_AS(build_structure(bad, 1.0), Error);
}

TEST_CASE("build_structure aggregates: wavy and generic nets pass all gates") {
  AsymptoticNet wavy = wavy_minimal_net();
  AffineStructure w = build_structure(wavy, 1.0);
  CHECK(w.reports.at("cubic_fourfold").max_abs <= 1e-10);
  // frozen regression values for the cubic form of the wavy net
  CHECK(w.A(2, 3) == doctest::Approx(0.06442262646023106).epsilon(1e-11));
  CHECK(w.B(3, 2) == doctest::Approx(-0.12035734558922637).epsilon(1e-11));
  CHECK(w.A(4, 5) == doctest::Approx(0.13219916340589602).epsilon(1e-11));
  CHECK(w.B(5, 4) == doctest::Approx(-0.164868775117514).epsilon(1e-11));

  MoutardNet gen = generic_moutard_net();
  AffineStructure g = build_structure(gen.net, gen.gamma(0, 0));
  for (int j = 0; j < gen.net.domain.nv; ++j)
    for (int i = 0; i < gen.net.domain.nu; ++i)
      CHECK(g.gamma(i, j) == doctest::Approx(gen.gamma(i, j)).epsilon(1e-12));
  CHECK(g.gamma(3, 3) == doctest::Approx(1.0084426550311234).epsilon(1e-11));
}

TEST_SUITE_END();
