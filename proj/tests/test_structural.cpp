#include <doctest.h>

#include <cmath>

#include "affnet/structural.hpp"
#include "test_support.hpp"

using namespace affnet;
using namespace affnet::testing;

namespace {

double suite16_max(const AffineStructure& s, const DerivedFields& f) {
  SecondDerivativeReport q = q_second_derivative_residuals(s, f);
  XiDerivativeReport x = xi_derivative_residuals(s, f);
  return std::max({q.q11.max_abs(), q.q22.max_abs(), x.xi1.max_abs(), x.xi2.max_abs()});
}

}  // namespace

TEST_SUITE_BEGIN("structural");

TEST_CASE("paraboloid: every derived field and residual is exactly zero") {
  AsymptoticNet net = paraboloid_net(6, 6);
  AffineStructure s = build_structure(net, 1.0);
  DerivedFields f = derived_fields(s);
  for (int j = 0; j < 6; ++j)
    for (int i = 1; i <= 5; ++i) {
      CHECK(std::fabs(f.Omega1_minus(i, j)) <= 1e-15);
      CHECK(std::fabs(f.Omega1_plus(i, j)) <= 1e-15);
      CHECK(f.xi1_minus(i, j).norm() <= 1e-15);
      CHECK(f.xi1_plus(i, j).norm() <= 1e-15);
      CHECK(std::fabs(f.A2_plus(i, j)) <= 1e-14);
      CHECK(std::fabs(f.A2_minus(i, j)) <= 1e-14);
    }
  CHECK(f.orthogonality.max_abs <= 1e-15);
  CHECK(suite16_max(s, f) <= 1e-14);
  CHECK(affine_sphere_xi_identity_residual(s, f).max_abs <= 1e-14);
}

TEST_CASE("hyperboloid: the sixteen structural residuals select the shipped table") {
  auto [net, an] = hyperboloid_net(oracle_hyperboloid_spec());
  AffineStructure s = build_structure(net, an.gamma(0, 0));
  DerivedFields f = derived_fields(s);
  CHECK(suite16_max(s, f) <= 1e-9);
  CHECK(f.orthogonality.max_abs <= 1e-10);

  // the alternate Omega2 offsets for q22 rows 2-3 fail by orders of magnitude
  SecondDerivativeReport alt =
      q_second_derivative_residuals(s, f, q11_variants(), q22_variants_alternate());
  CHECK(alt.q22.rows[1].max_abs > 0.05);
  CHECK(alt.q22.rows[2].max_abs > 0.05);
  CHECK(alt.q22.rows[0].max_abs <= 1e-9);
  CHECK(alt.q22.rows[3].max_abs <= 1e-9);
}

TEST_CASE("hyperboloid: Omega1^- reproduces p Omega - Omega' from the closed forms") {
  auto [net, an] = hyperboloid_net(oracle_hyperboloid_spec());
  AffineStructure s = build_structure(net, an.gamma(0, 0));
  DerivedFields f = derived_fields(s);
  for (int j = 0; j < net.domain.nv; ++j)
    for (int i = 1; i <= net.domain.nu - 1; ++i) {
      const double want = an.p_v(i, j) * an.Omega(i, j) - an.Omega(i - 1, j);
      CHECK(f.Omega1_minus(i, j) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("wavy and generic nets: nonzero cubic form, residuals still vanish") {
  AsymptoticNet wavy = wavy_minimal_net();
  AffineStructure w = build_structure(wavy, 1.0);
  DerivedFields wf = derived_fields(w);
  CHECK(suite16_max(w, wf) <= 1e-11);
  CHECK(wf.orthogonality.max_abs <= 1e-12);
  double amax = 0.0;
  for (int j = 1; j <= wavy.domain.nv - 1; ++j)
    for (int i = 1; i <= wavy.domain.nu - 1; ++i)
      amax = std::max(amax, std::fabs(w.A(i, j)));
  CHECK(amax > 0.05);  // the A-terms really are exercised

  MoutardNet gen = generic_moutard_net();
  AffineStructure g = build_structure(gen.net, gen.gamma(0, 0));
  DerivedFields gf = derived_fields(g);
  CHECK(suite16_max(g, gf) <= 1e-11);
  CHECK(gf.orthogonality.max_abs <= 1e-12);
}

TEST_CASE("minimality: paraboloid and wavy yes, hyperboloid and generic no") {
  AsymptoticNet par = paraboloid_net(6, 6);
  AffineStructure sp = build_structure(par, 1.0);
  MinimalityResult mp = is_minimal(sp, 1e-12);
  CHECK(mp.minimal);
  CHECK(mp.max_abs_h <= 1e-12);

  AsymptoticNet wavy = wavy_minimal_net();
  AffineStructure sw = build_structure(wavy, 1.0);
  CHECK(is_minimal(sw, 1e-12).minimal);

  auto [hyp, an] = hyperboloid_net(oracle_hyperboloid_spec());
  AffineStructure sh = build_structure(hyp, an.gamma(0, 0));
  MinimalityResult mh = is_minimal(sh);
  CHECK_FALSE(mh.minimal);
  CHECK(mh.max_abs_h > 1e-3);
  CHECK(mh.witness_i >= 0);

  MoutardNet gen = generic_moutard_net();
  AffineStructure sg = build_structure(gen.net, gen.gamma(0, 0));
  CHECK_FALSE(is_minimal(sg).minimal);
}

TEST_CASE("affine sphere classification") {
  // quadrics are spheres trivially (A = B = 0)
  AsymptoticNet par = paraboloid_net(6, 6);
  AffineStructure sp = build_structure(par, 1.0);
  SphereResult rp = affine_sphere_residual(sp);
  CHECK(rp.is_sphere);
  CHECK(rp.max_residual <= 1e-12);

  // the hyperboloid is a sphere at any sampling pair
  auto [hyp, an] = hyperboloid_net(oracle_hyperboloid_spec());
  AffineStructure sh = build_structure(hyp, an.gamma(0, 0));
  SphereResult rh = affine_sphere_residual(sh);
  CHECK(rh.is_sphere);
  CHECK(rh.max_residual <= 1e-9);

  // the wavy minimal net is not: A varies along v while gamma = 1
  AsymptoticNet wavy = wavy_minimal_net();
  AffineStructure sw = build_structure(wavy, 1.0);
  SphereResult rw = affine_sphere_residual(sw);
  CHECK_FALSE(rw.is_sphere);
  CHECK(rw.max_residual > 1e-4);
}

TEST_CASE("sphere classification flips under a single-site A perturbation") {
  auto [hyp, an] = hyperboloid_net(oracle_hyperboloid_spec());
  AffineStructure s = build_structure(hyp, an.gamma(0, 0));
  // perturb A at one interior vertex by a cubic-form-scale amount
  const double scale = hyp.q1(3, 3).norm() * hyp.q1(2, 3).norm() * s.xi(3, 3).norm();
  s.A.at(3, 3) += 0.5 * scale;
  SphereResult r = affine_sphere_residual(s);
  CHECK_FALSE(r.is_sphere);
  // localized: only the transport edges referencing (3,3) light up
  for (int j = 0; j < hyp.domain.nv; ++j)
    for (int i = 1; i <= hyp.domain.nu - 1; ++i) {
      const double v = r.A_transport.values(i, j);
      if (!std::isfinite(v)) continue;
      const bool touches = (i == 3) && (j == 3 || j == 2);
      if (v > 1e-6) CHECK(touches);
    }
}

TEST_CASE("Bobenko constant test: seed-invariant, quadrics and both samplings constant") {
  // paraboloid: c = 0, constant, under any seed
  AsymptoticNet par = paraboloid_net(6, 6);
  for (double seed : {1.0, 7.3}) {
    BobenkoResult b = bobenko_constant_test(build_structure(par, seed));
    CHECK(b.constant);
    CHECK(std::fabs(b.c) <= 1e-10);
    CHECK(b.spread <= 1e-10);
  }
  // hyperboloid: c = 1/(2 c^{3/2}) for any sampling pair; the constant-c
  // relation cannot distinguish du = dv from du != dv (see docs/formats.md)
  for (auto [du, dv] : {std::pair{0.1, 0.2}, {0.1, 0.1}}) {
    HyperboloidSpec spec{1.0, 1.0, 1.0, du, dv, 8, 8};
    auto [net, an] = hyperboloid_net(spec);
    double c_prev = 0.0;
    for (double seed : {1.0, 7.3}) {
      BobenkoResult b = bobenko_constant_test(build_structure(net, seed));
      CHECK(b.constant);
      CHECK(b.c == doctest::Approx(0.5).epsilon(1e-7));
      CHECK(b.spread <= 1e-8);
      if (seed > 1.0) CHECK(b.c == doctest::Approx(c_prev).epsilon(1e-6));
      c_prev = b.c;
    }
  }
  // a net that is not constant-c at all: the generic Moutard net
  MoutardNet gen = generic_moutard_net();
  BobenkoResult bg = bobenko_constant_test(build_structure(gen.net, gen.gamma(0, 0)));
  CHECK_FALSE(bg.constant);
  CHECK(bg.spread > 1e-3);
}

TEST_CASE("sphere-specialized xi identity holds on spheres, fails off-sphere") {
  auto [hyp, an] = hyperboloid_net(oracle_hyperboloid_spec());
  AffineStructure s = build_structure(hyp, an.gamma(0, 0));
  DerivedFields f = derived_fields(s);
  CHECK(affine_sphere_residual(s).is_sphere);
  CHECK(affine_sphere_xi_identity_residual(s, f).max_abs <= 1e-9);

  // off-sphere nets violate it: wavy (h = 0 but the xi differences carry the
  // A2/B1 terms) and the generic Moutard net
  AsymptoticNet wavy = wavy_minimal_net();
  AffineStructure sw = build_structure(wavy, 1.0);
  DerivedFields fw = derived_fields(sw);
  CHECK(affine_sphere_xi_identity_residual(sw, fw).max_abs > 1e-3);
  MoutardNet gen = generic_moutard_net();
  AffineStructure sg = build_structure(gen.net, gen.gamma(0, 0));
  DerivedFields fg = derived_fields(sg);
  CHECK_FALSE(affine_sphere_residual(sg).is_sphere);
  CHECK(affine_sphere_xi_identity_residual(sg, fg).max_abs > 1e-3);
}

TEST_CASE("zeroing h isolates the q-edge coefficient of the xi expansion") {
  MoutardNet gen = generic_moutard_net();
  AffineStructure s = build_structure(gen.net, gen.gamma(0, 0));
  DerivedFields f = derived_fields(s);
  const double before = xi_derivative_residuals(s, f).xi1.max_abs();
  CHECK(before <= 1e-11);
  for (int j = 0; j < gen.net.domain.nv; ++j)
    for (int i = 1; i <= gen.net.domain.nu - 1; ++i) s.h_v.at(i, j) = 0.0;
  const double after = xi_derivative_residuals(s, f).xi1.max_abs();
  CHECK(after > 1e-2);
}

TEST_CASE("zeroing A breaks the q11 expansion on a net with cubic form") {
  MoutardNet gen = generic_moutard_net();
  AffineStructure s = build_structure(gen.net, gen.gamma(0, 0));
  DerivedFields f = derived_fields(s);
  CHECK(q_second_derivative_residuals(s, f).q11.max_abs() <= 1e-11);
  for (int j = 0; j <= gen.net.domain.nv; ++j)
    for (int i = 1; i <= gen.net.domain.nu - 1; ++i) s.A.at(i, j) = 0.0;
  SecondDerivativeReport broken = q_second_derivative_residuals(s, f);
  CHECK(broken.q11.max_abs() > 1e-2);
}

TEST_CASE("classifications are invariant under gauge seed and equi-affine maps") {
  auto [hyp, an] = hyperboloid_net(oracle_hyperboloid_spec());
  AffineStructure s1 = build_structure(hyp, 1.0);
  AffineStructure s2 = build_structure(hyp, 7.3);
  CHECK(is_minimal(s1).minimal == is_minimal(s2).minimal);
  CHECK(affine_sphere_residual(s1).is_sphere == affine_sphere_residual(s2).is_sphere);
  CHECK(std::fabs(affine_sphere_residual(s1).max_residual -
                  affine_sphere_residual(s2).max_residual) <= 1e-12);
  BobenkoResult b1 = bobenko_constant_test(s1), b2 = bobenko_constant_test(s2);
  CHECK(b1.constant == b2.constant);
  CHECK(b1.c == doctest::Approx(b2.c).epsilon(1e-6));

  RandomAffine map = random_equiaffine(5);
  AffineStructure st =
      build_structure(transformed(hyp, map.linear, map.translation), 1.0);
  CHECK(is_minimal(st).minimal == is_minimal(s1).minimal);
  CHECK(affine_sphere_residual(st).is_sphere == affine_sphere_residual(s1).is_sphere);
}

TEST_SUITE_END();
