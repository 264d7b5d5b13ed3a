#include "affnet/affine_structure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>

namespace affnet {

namespace {
constexpr double kFloor = 1e-300;
}  // namespace

Vec3 corner_cross(const AsymptoticNet& net, int i, int j, int c) {
  switch (c) {
    case 0: return cross(net.q1(i, j), net.q2(i, j));          // lower-left
    case 1: return cross(net.q1(i, j), net.q2(i + 1, j));      // lower-right
    case 2: return cross(net.q1(i, j + 1), net.q2(i, j));      // upper-left
    default: return cross(net.q1(i, j + 1), net.q2(i + 1, j)); // upper-right
  }
}

RealField compute_omega(const AsymptoticNet& net) {
  const RealField M = quad_M(net);
  return RealField(net.domain, SiteFamily::Quad, [&](int i, int j) {
    if (!(M(i, j) > 0.0)) throw NondegeneracyError(i, j, M(i, j));
    return std::sqrt(M(i, j));
  });
}

RealField propagate_gamma(const AsymptoticNet& net, double gamma0,
                          std::pair<int, int> seed_quad, double tol) {
  if (!(gamma0 > 0.0)) throw Error("propagate_gamma: gamma0 must be positive");
  const StaggeredDomain& dom = net.domain;
  if (!dom.contains(SiteFamily::Quad, seed_quad.first, seed_quad.second))
    throw Error("propagate_gamma: seed quad outside domain");
  const RealField omega = compute_omega(net);

  RealField gamma(dom, SiteFamily::Quad, kUndefined);
  Vec3Field nu(dom, SiteFamily::Vertex);
  SiteField<char> have_nu(dom, SiteFamily::Vertex, 0);

  gamma.at(seed_quad.first, seed_quad.second) = gamma0;
  std::deque<std::pair<int, int>> queue{seed_quad};
  SiteField<char> seen(dom, SiteFamily::Quad, 0);
  seen.at(seed_quad.first, seed_quad.second) = 1;

  while (!queue.empty()) {
    const auto [i, j] = queue.front();
    queue.pop_front();
    const double g = gamma(i, j);
    // set or verify the four corner co-normals of this quad
    for (int c = 0; c < 4; ++c) {
      const QuadCorner& k = kQuadCorners[c];
      const Vec3 w = corner_cross(net, i, j, c);
      const Vec3 cand = w * (std::pow(g, k.exp) / omega(i, j));
      const int vi = i + k.di, vj = j + k.dj;
      if (have_nu(vi, vj)) {
        const double dev = (cand - nu(vi, vj)).norm() / std::max(nu(vi, vj).norm(), kFloor);
        if (dev > tol) throw GaugeError(vi, vj, dev, "co-normal formulas disagree");
      } else {
        nu.at(vi, vj) = cand;
        have_nu.at(vi, vj) = 1;
      }
    }
    // fixed neighbor order: right, up, left, down
    constexpr int kStep[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const auto& st : kStep) {
      const int ni = i + st[0], nj = j + st[1];
      if (!dom.contains(SiteFamily::Quad, ni, nj) || seen(ni, nj)) continue;
      // solve the neighbor's gamma from its first corner with a known co-normal
      bool solved = false;
      for (int c = 0; c < 4 && !solved; ++c) {
        const QuadCorner& k = kQuadCorners[c];
        const int vi = ni + k.di, vj = nj + k.dj;
        if (!have_nu(vi, vj)) continue;
        const Vec3 w = corner_cross(net, ni, nj, c);
        const double s = dot(nu(vi, vj), w) / std::max(dot(w, w), kFloor);
        if (!(s > 0.0))
          throw GaugeError(vi, vj, s, "co-normal orientation flips across a quad");
        const double ge = s * omega(ni, nj);  // gamma^exp
        gamma.at(ni, nj) = (k.exp == 1) ? ge : 1.0 / ge;
        solved = true;
      }
      if (!solved) throw Error("propagate_gamma: BFS reached a quad with no known corner");
      seen.at(ni, nj) = 1;
      queue.emplace_back(ni, nj);
    }
  }
  return gamma;
}

Vec3Field conormals(const AsymptoticNet& net, const RealField& gamma) {
  gamma.require_family(SiteFamily::Quad, "conormals");
  const StaggeredDomain& dom = net.domain;
  const RealField omega = compute_omega(net);
  return Vec3Field(dom, SiteFamily::Vertex, [&](int vi, int vj) {
    // adjacent quads in preference order NE, NW, SE, SW with matching corner
    const struct { int qi, qj, c; } cand[4] = {
        {vi, vj, 0}, {vi - 1, vj, 1}, {vi, vj - 1, 2}, {vi - 1, vj - 1, 3}};
    for (const auto& cd : cand) {
      if (!dom.contains(SiteFamily::Quad, cd.qi, cd.qj)) continue;
      const Vec3 w = corner_cross(net, cd.qi, cd.qj, cd.c);
      return w * (std::pow(gamma(cd.qi, cd.qj), kQuadCorners[cd.c].exp) / omega(cd.qi, cd.qj));
    }
    throw Error("conormals: vertex with no adjacent quad");
  });
}

Vec3Field affine_normal(const AsymptoticNet& net, const RealField& omega) {
  omega.require_family(SiteFamily::Quad, "affine_normal");
  const Vec3Field q12 = mixed12(net.q);
  return Vec3Field(net.domain, SiteFamily::Quad,
                   [&](int i, int j) { return q12(i, j) / omega(i, j); });
}

LelieuvreReport verify_lelieuvre(const AsymptoticNet& net, const Vec3Field& nu) {
  nu.require_family(SiteFamily::Vertex, "verify_lelieuvre");
  const StaggeredDomain& dom = net.domain;
  RealField ru(dom, SiteFamily::UEdge, [&](int i, int j) {
    const Vec3 lhs = cross(nu(i, j), nu(i + 1, j));
    const Vec3 edge = net.q1(i, j);
    return (lhs - edge).norm() / std::max({edge.norm(), lhs.norm(), kFloor});
  });
  RealField rv(dom, SiteFamily::VEdge, [&](int i, int j) {
    const Vec3 lhs = cross(nu(i, j), nu(i, j + 1));
    const Vec3 edge = net.q2(i, j);
    return (lhs + edge).norm() / std::max({edge.norm(), lhs.norm(), kFloor});
  });
  return {ResidualReport("lelieuvre_u", std::move(ru)),
          ResidualReport("lelieuvre_v", std::move(rv))};
}

ResidualReport moutard_residual(const Vec3Field& nu, const RealField& gamma) {
  nu.require_family(SiteFamily::Vertex, "moutard_residual");
  gamma.require_family(SiteFamily::Quad, "moutard_residual");
  RealField r(gamma.domain(), SiteFamily::Quad, [&](int i, int j) {
    const double g2 = gamma(i, j) * gamma(i, j);
    const Vec3 lhs = (nu(i, j) + nu(i + 1, j + 1)) * g2;
    const Vec3 rhs = nu(i, j + 1) + nu(i + 1, j);
    const double scale = std::max({nu(i, j).norm(), nu(i + 1, j).norm(),
                                   nu(i, j + 1).norm(), nu(i + 1, j + 1).norm(), kFloor});
    return (lhs - rhs).norm() / scale;
  });
  return ResidualReport("moutard", std::move(r));
}

ResidualReport corner_products_residual(const Vec3Field& nu, const Vec3Field& xi,
                                        const RealField& gamma) {
  RealField r(gamma.domain(), SiteFamily::Quad, [&](int i, int j) {
    const double g = gamma(i, j);
    const double scale = std::max(g, 1.0 / g);
    double worst = 0.0;
    for (int c = 0; c < 4; ++c) {
      const QuadCorner& k = kQuadCorners[c];
      const double want = std::pow(g, k.exp);
      const double got = dot(nu(i + k.di, j + k.dj), xi(i, j));
      worst = std::max(worst, std::fabs(got - want));
    }
    return worst / scale;
  });
  return ResidualReport("corner_products", std::move(r));
}

ResidualReport omega_conormal_residual(const Vec3Field& nu, const RealField& gamma,
                                       const RealField& omega) {
  RealField r(gamma.domain(), SiteFamily::Quad, [&](int i, int j) {
    const double rhs = det3(nu(i, j), nu(i, j + 1), nu(i + 1, j)) / gamma(i, j);
    return std::fabs(omega(i, j) - rhs) / std::max({omega(i, j), std::fabs(rhs), kFloor});
  });
  return ResidualReport("omega_conormal", std::move(r));
}

namespace {

// gamma^s xi at the quad touching vertex (vi,vj) from corner c; nullopt-style
// via ok flag when the quad does not exist.
bool gamma_xi_at(const StaggeredDomain& dom, const RealField& gamma, const Vec3Field& xi,
                 int qi, int qj, int exp, Vec3* out) {
  if (!dom.contains(SiteFamily::Quad, qi, qj)) return false;
  *out = xi(qi, qj) * std::pow(gamma(qi, qj), exp);
  return true;
}

}  // namespace

CubicForms cubic_forms(const AsymptoticNet& net, const RealField& gamma,
                       const Vec3Field& xi) {
  const StaggeredDomain& dom = net.domain;
  if (dom.nu < 2 || dom.nv < 2)
    throw Error("cubic_forms: domain needs interior vertices (nu, nv >= 2)");
  CubicForms out;

  out.A = RealField(dom, SiteFamily::Vertex, [&](int i, int j) {
    if (i < 1 || i > dom.nu - 1) return kUndefined;
    const Vec3 e1m = net.q1(i - 1, j), e1p = net.q1(i, j);
    Vec3 gx;
    if (gamma_xi_at(dom, gamma, xi, i, j, +1, &gx)) return det3(e1m, e1p, gx);      // NE
    if (gamma_xi_at(dom, gamma, xi, i - 1, j - 1, +1, &gx)) return det3(e1m, e1p, gx);  // SW
    return kUndefined;
  });
  out.B = RealField(dom, SiteFamily::Vertex, [&](int i, int j) {
    if (j < 1 || j > dom.nv - 1) return kUndefined;
    const Vec3 e2p = net.q2(i, j), e2m = net.q2(i, j - 1);
    Vec3 gx;
    if (gamma_xi_at(dom, gamma, xi, i, j, +1, &gx)) return det3(e2p, e2m, gx);      // NE
    if (gamma_xi_at(dom, gamma, xi, i - 1, j - 1, +1, &gx)) return det3(e2p, e2m, gx);  // SW
    return kUndefined;
  });

  // fourfold consistency at interior vertices: NE(+1), SE(-1), NW(-1), SW(+1)
  RealField four(dom, SiteFamily::Vertex, kUndefined);
  for (int j = 1; j <= dom.nv - 1; ++j) {
    for (int i = 1; i <= dom.nu - 1; ++i) {
      const Vec3 e1m = net.q1(i - 1, j), e1p = net.q1(i, j);
      const Vec3 e2p = net.q2(i, j), e2m = net.q2(i, j - 1);
      const struct { int qi, qj, exp; } variants[4] = {
          {i, j, +1}, {i, j - 1, -1}, {i - 1, j, -1}, {i - 1, j - 1, +1}};
      double amin = 0, amax = 0, bmin = 0, bmax = 0, scale3 = 0;
      for (int k = 0; k < 4; ++k) {
        Vec3 gx;
        gamma_xi_at(dom, gamma, xi, variants[k].qi, variants[k].qj, variants[k].exp, &gx);
        const double a = det3(e1m, e1p, gx);
        const double b = det3(e2p, e2m, gx);
        if (k == 0) { amin = amax = a; bmin = bmax = b; }
        amin = std::min(amin, a); amax = std::max(amax, a);
        bmin = std::min(bmin, b); bmax = std::max(bmax, b);
        scale3 = std::max(scale3, gx.norm());
      }
      const double sa = std::max({amax, -amin, e1m.norm() * e1p.norm() * scale3, kFloor});
      const double sb = std::max({bmax, -bmin, e2p.norm() * e2m.norm() * scale3, kFloor});
      four.at(i, j) = std::max((amax - amin) / sa, (bmax - bmin) / sb);
    }
  }
  out.fourfold = ResidualReport("cubic_fourfold", std::move(four));
  return out;
}

EdgeQuantities edge_quantities(const AsymptoticNet& net, const RealField& gamma,
                               const RealField& omega, const Vec3Field& xi) {
  const StaggeredDomain& dom = net.domain;
  EdgeQuantities out;
  out.p_v = RealField(dom, SiteFamily::VEdge, kUndefined);
  out.h_v = RealField(dom, SiteFamily::VEdge, kUndefined);
  out.H_v = RealField(dom, SiteFamily::VEdge, kUndefined);
  out.p_u = RealField(dom, SiteFamily::UEdge, kUndefined);
  out.h_u = RealField(dom, SiteFamily::UEdge, kUndefined);
  out.H_u = RealField(dom, SiteFamily::UEdge, kUndefined);

  RealField pg(dom, SiteFamily::VEdge, kUndefined);   // p vs gamma products, merged below
  RealField pgu(dom, SiteFamily::UEdge, kUndefined);
  RealField hp(dom, SiteFamily::VEdge, kUndefined);
  RealField hpu(dom, SiteFamily::UEdge, kUndefined);

  for (int j = 0; j < dom.nv; ++j) {
    for (int i = 1; i <= dom.nu - 1; ++i) {   // interior v-edge (i, j+1/2)
      const Vec3 wR = corner_cross(net, i, j, 0);      // NE quad, lower-left corner
      const Vec3 wL = corner_cross(net, i - 1, j, 1);  // NW quad, lower-right corner
      const double p = dot(wR, wL) * omega(i - 1, j) / (omega(i, j) * dot(wL, wL));
      const double h = -det3(net.q2(i, j), xi(i - 1, j), xi(i, j));
      out.p_v.at(i, j) = p;
      out.h_v.at(i, j) = h;
      out.H_v.at(i, j) = -h / std::sqrt(omega(i - 1, j) * omega(i, j));
      pg.at(i, j) = std::fabs(p - gamma(i, j) * gamma(i - 1, j)) / p;
      hp.at(i, j) = std::fabs(h - (p - 1.0 / p));
    }
  }
  for (int j = 1; j <= dom.nv - 1; ++j) {
    for (int i = 0; i < dom.nu; ++i) {        // interior u-edge (i+1/2, j)
      const Vec3 wT = corner_cross(net, i, j, 0);      // quad above, lower-left corner
      const Vec3 wB = corner_cross(net, i, j - 1, 2);  // quad below, upper-left corner
      const double p = dot(wT, wB) * omega(i, j - 1) / (omega(i, j) * dot(wB, wB));
      const double h = det3(net.q1(i, j), xi(i, j - 1), xi(i, j));
      out.p_u.at(i, j) = p;
      out.h_u.at(i, j) = h;
      out.H_u.at(i, j) = -h / std::sqrt(omega(i, j - 1) * omega(i, j));
      pgu.at(i, j) = std::fabs(p - gamma(i, j) * gamma(i, j - 1)) / p;
      hpu.at(i, j) = std::fabs(h - (p - 1.0 / p));
    }
  }
  ResidualReport a("p_gamma_consistency_v", std::move(pg));
  ResidualReport b("p_gamma_consistency_u", std::move(pgu));
  out.p_gamma_consistency = a.max_abs >= b.max_abs ? std::move(a) : std::move(b);
  out.p_gamma_consistency.name = "p_gamma_consistency";
  ResidualReport c("h_p_consistency_v", std::move(hp));
  ResidualReport d("h_p_consistency_u", std::move(hpu));
  out.h_p_consistency = c.max_abs >= d.max_abs ? std::move(c) : std::move(d);
  out.h_p_consistency.name = "h_p_consistency";
  return out;
}

AffineStructure build_structure(const AsymptoticNet& net, double gamma0,
                                const Tolerances& tol, bool gate_identities) {
  assert_nondegenerate(net, tol.nondegenerate);
  PlanarityReport planar = planarity_report(net, tol.parallel_edges);
  if (!planar.passes(tol.planarity))
    throw Error("build_structure: net fails planarity at tolerance " +
                std::to_string(tol.planarity) + " (max residual " +
                std::to_string(planar.residuals.max_abs) + " at vertex (" +
                std::to_string(planar.residuals.argmax_i) + "," +
                std::to_string(planar.residuals.argmax_j) + "))");

  AffineStructure s;
  s.net = net;
  s.gamma_seed = gamma0;
  s.M = quad_M(net);
  s.omega = compute_omega(net);
  s.gamma = propagate_gamma(net, gamma0, {0, 0}, tol.gauge_coincidence);
  s.nu = conormals(net, s.gamma);
  s.xi = affine_normal(net, s.omega);
  CubicForms cf = cubic_forms(net, s.gamma, s.xi);
  s.A = std::move(cf.A);
  s.B = std::move(cf.B);
  EdgeQuantities eq = edge_quantities(net, s.gamma, s.omega, s.xi);
  s.p_u = std::move(eq.p_u); s.p_v = std::move(eq.p_v);
  s.h_u = std::move(eq.h_u); s.h_v = std::move(eq.h_v);
  s.H_u = std::move(eq.H_u); s.H_v = std::move(eq.H_v);

  s.reports["planarity"] = std::move(planar.residuals);
  LelieuvreReport lel = verify_lelieuvre(net, s.nu);
  s.reports["lelieuvre_u"] = std::move(lel.u);
  s.reports["lelieuvre_v"] = std::move(lel.v);
  s.reports["moutard"] = moutard_residual(s.nu, s.gamma);
  s.reports["corner_products"] = corner_products_residual(s.nu, s.xi, s.gamma);
  s.reports["omega_conormal"] = omega_conormal_residual(s.nu, s.gamma, s.omega);
  s.reports["cubic_fourfold"] = std::move(cf.fourfold);
  s.reports["p_gamma_consistency"] = std::move(eq.p_gamma_consistency);
  s.reports["h_p_consistency"] = std::move(eq.h_p_consistency);

  for (const char* key : {"lelieuvre_u", "lelieuvre_v", "moutard", "corner_products",
                          "omega_conormal", "cubic_fourfold", "p_gamma_consistency",
                          "h_p_consistency"}) {
    const ResidualReport& r = s.reports.at(key);
    if (gate_identities && !r.passes(tol.identity)) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "build_structure: %s residual %.3e exceeds tolerance %.1e at (%d,%d)",
                    key, r.max_abs, tol.identity, r.argmax_i, r.argmax_j);
      throw Error(buf);
    }
  }
  return s;
}

}  // namespace affnet
