#include "affnet/compatibility.hpp"

#include <algorithm>
#include <cmath>

namespace affnet {

namespace {

constexpr double kFloor = 1e-300;

struct Coeff2 {  // coefficients on the basis {q1(u+1/2,v), q2(u,v+1/2)}
  double a = 0.0, b = 0.0;
  Coeff2 operator+(const Coeff2& o) const { return {a + o.a, b + o.b}; }
  Coeff2 operator-(const Coeff2& o) const { return {a - o.a, b - o.b}; }
  Coeff2 operator*(double s) const { return {a * s, b * s}; }
};

// Exchange relations at vertex (u,v), expressing the lower/left edges in the
// basis of the upper/right ones (validated to round-off on exact nets):
//   q2(u,v-1/2) = -B/(g_pp O_pp) q1+ + O_pm/(p_u+ O_pp) q2+
//   q1(u-1/2,v) = -A/(g_pp O_pp) q2+ + O_mp/(p_v+ O_pp) q1+
struct VertexData {
  double O_pp, O_mp, O_pm, O_mm;   // Omega at quads NE, NW, SE, SW
  double g_pp, g_mp, g_pm, g_mm;   // gamma
  double p_vp, p_vm, p_up, p_um;   // edge products around the vertex
  double h_vp, h_vm, h_up, h_um;
  double A0, A_up, A_dn;           // A(u,v), A(u,v+1), A(u,v-1)
  double B0, B_rt, B_lt;           // B(u,v), B(u+1,v), B(u-1,v)
};

VertexData gather(const AffineStructure& s, int u, int v) {
  VertexData d;
  d.O_pp = s.omega(u, v); d.O_mp = s.omega(u - 1, v);
  d.O_pm = s.omega(u, v - 1); d.O_mm = s.omega(u - 1, v - 1);
  d.g_pp = s.gamma(u, v); d.g_mp = s.gamma(u - 1, v);
  d.g_pm = s.gamma(u, v - 1); d.g_mm = s.gamma(u - 1, v - 1);
  d.p_vp = s.p_v(u, v); d.p_vm = s.p_v(u, v - 1);
  d.p_up = s.p_u(u, v); d.p_um = s.p_u(u - 1, v);
  d.h_vp = s.h_v(u, v); d.h_vm = s.h_v(u, v - 1);
  d.h_up = s.h_u(u, v); d.h_um = s.h_u(u - 1, v);
  d.A0 = s.A(u, v); d.A_up = s.A(u, v + 1); d.A_dn = s.A(u, v - 1);
  d.B0 = s.B(u, v); d.B_rt = s.B(u + 1, v); d.B_lt = s.B(u - 1, v);
  return d;
}

Coeff2 exchange_b_minus(const VertexData& d) {
  return {-d.B0 / (d.g_pp * d.O_pp), d.O_pm / (d.p_up * d.O_pp)};
}
Coeff2 exchange_a_minus(const VertexData& d) {
  return {d.O_mp / (d.p_vp * d.O_pp), -d.A0 / (d.g_pp * d.O_pp)};
}

// The four xi-difference expansions entering the mixed identity at (u,v),
// written on the common basis via the exchange relations.
struct MixedTerms {
  Coeff2 t[4];  // xi1-/g_mp, -xi1+/g_pm, -xi2-/g_pm, +xi2+/g_mp
};

MixedTerms mixed_terms(const VertexData& d) {
  const double A2p_v = d.g_pp * d.A_up - d.A0 / d.g_pp;              // A2+(u,v+1/2)
  const double A2p_vm = d.g_pm * d.A0 - d.A_dn / d.g_pm;             // A2+(u,v-1/2)
  const double B1p_u = d.g_pp * d.B_rt - d.B0 / d.g_pp;              // B1+(u+1/2,v)
  const double B1p_um = d.g_mp * d.B0 - d.B_lt / d.g_mp;             // B1+(u-1/2,v)

  const Coeff2 a_m = exchange_a_minus(d);
  const Coeff2 b_m = exchange_b_minus(d);
  const Coeff2 a_p{1.0, 0.0}, b_p{0.0, 1.0};

  // xi1^-(u,v+1/2) = (-h/O_pp) q1+ + A2+/(O_pp O_mp) q2+
  const Coeff2 xi1m = a_p * (-d.h_vp / d.O_pp) + b_p * (A2p_v / (d.O_pp * d.O_mp));
  // xi1^+(u,v-1/2) = p_vm [ (-h_vm/O_pm) q1+ + A2+(u,v-1/2)/(O_pm O_mm) q2- ]
  const Coeff2 xi1p =
      (a_p * (-d.h_vm / d.O_pm) + b_m * (A2p_vm / (d.O_pm * d.O_mm))) * d.p_vm;
  // xi2^-(u+1/2,v) = B1+/(O_pp O_pm) q1+ - (h_up/O_pp) q2+
  const Coeff2 xi2m = a_p * (B1p_u / (d.O_pp * d.O_pm)) + b_p * (-d.h_up / d.O_pp);
  // xi2^+(u-1/2,v) = p_um [ B1+(u-1/2,v)/(O_mp O_mm) q1- - (h_um/O_mp) q2+ ]
  const Coeff2 xi2p =
      (a_m * (B1p_um / (d.O_mp * d.O_mm)) + b_p * (-d.h_um / d.O_mp)) * d.p_um;

  MixedTerms m;
  m.t[0] = xi1m * (1.0 / d.g_mp);
  m.t[1] = xi1p * (-1.0 / d.g_pm);
  m.t[2] = xi2m * (-1.0 / d.g_pm);
  m.t[3] = xi2p * (1.0 / d.g_mp);
  return m;
}

double eq1_residual(const VertexData& d) {
  const double t1 = d.O_mp / (d.p_vp * d.O_pp);
  const double t2 = d.p_vm * d.O_mm / d.O_pm;
  const double t3 = d.A0 * d.B0 * d.g_pm / (d.g_pp * d.O_pp * d.O_pm);
  return std::fabs(t1 - t2 - t3) /
         std::max({std::fabs(t1), std::fabs(t2), std::fabs(t3), kFloor});
}

double eq2_reduced_residual(const VertexData& d) {
  const double B1p_u = d.g_pp * d.B_rt - d.B0 / d.g_pp;
  const double B1p_um = d.g_mp * d.B0 - d.B_lt / d.g_mp;
  const double t1 = d.g_mm * d.h_vm / d.O_pm;
  const double t2 = d.h_vp / (d.g_mp * d.O_pp);
  const double t3 = B1p_u / (d.g_pm * d.O_pp * d.O_pm);
  const double t4 = d.g_mm * B1p_um / (d.O_mp * d.O_mm);
  return std::fabs((t1 - t2) - (t3 - t4)) /
         std::max({std::fabs(t1), std::fabs(t2), std::fabs(t3), std::fabs(t4), kFloor});
}

double eq3_reduced_residual(const VertexData& d) {
  const double A2p_v = d.g_pp * d.A_up - d.A0 / d.g_pp;
  const double A2p_vm = d.g_pm * d.A0 - d.A_dn / d.g_pm;
  const double t1 = d.g_mm * d.h_um / d.O_mp;
  const double t2 = d.h_up / (d.g_pm * d.O_pp);
  const double t3 = A2p_v / (d.g_mp * d.O_pp * d.O_mp);
  const double t4 = d.g_mm * A2p_vm / (d.O_pm * d.O_mm);
  return std::fabs((t1 - t2) - (t3 - t4)) /
         std::max({std::fabs(t1), std::fabs(t2), std::fabs(t3), std::fabs(t4), kFloor});
}

bool vertex_data_complete(const VertexData& d) {
  return std::isfinite(d.A0) && std::isfinite(d.A_up) && std::isfinite(d.A_dn) &&
         std::isfinite(d.B0) && std::isfinite(d.B_rt) && std::isfinite(d.B_lt);
}

}  // namespace

CompatResiduals compat_residuals(const AffineStructure& s, const DerivedFields&) {
  const StaggeredDomain& dom = s.net.domain;
  CompatResiduals out;
  RealField e1(dom, SiteFamily::Vertex, kUndefined);
  RealField e2(dom, SiteFamily::Vertex, kUndefined);
  RealField e3(dom, SiteFamily::Vertex, kUndefined);
  RealField e2p(dom, SiteFamily::Vertex, kUndefined);
  RealField e3p(dom, SiteFamily::Vertex, kUndefined);
  for (int v = 1; v <= dom.nv - 1; ++v) {
    for (int u = 1; u <= dom.nu - 1; ++u) {
      const VertexData d = gather(s, u, v);
      if (!vertex_data_complete(d)) continue;
      e1.at(u, v) = eq1_residual(d);
      const MixedTerms m = mixed_terms(d);
      const Coeff2 total = m.t[0] + m.t[1] + m.t[2] + m.t[3];
      double sa = kFloor, sb = kFloor;
      for (const Coeff2& t : m.t) {
        sa = std::max(sa, std::fabs(t.a));
        sb = std::max(sb, std::fabs(t.b));
      }
      e2.at(u, v) = std::fabs(total.a) / sa;
      e3.at(u, v) = std::fabs(total.b) / sb;
      e2p.at(u, v) = eq2_reduced_residual(d);
      e3p.at(u, v) = eq3_reduced_residual(d);
    }
  }
  out.eq1 = ResidualReport("compat_eq1", std::move(e1));
  out.eq2 = ResidualReport("compat_eq2", std::move(e2));
  out.eq3 = ResidualReport("compat_eq3", std::move(e3));
  out.eq2_reduced = ResidualReport("compat_eq2_reduced", std::move(e2p));
  out.eq3_reduced = ResidualReport("compat_eq3_reduced", std::move(e3p));
  return out;
}

ResidualReport mixed_xi_identity_residual(const AffineStructure& s,
                                          const DerivedFields& f) {
  const StaggeredDomain& dom = s.net.domain;
  RealField r(dom, SiteFamily::Vertex, kUndefined);
  for (int v = 1; v <= dom.nv - 1; ++v) {
    for (int u = 1; u <= dom.nu - 1; ++u) {
      const Vec3 t0 = f.xi1_minus(u, v) / s.gamma(u - 1, v);
      const Vec3 t1 = f.xi1_plus(u, v - 1) / s.gamma(u, v - 1);
      const Vec3 t2 = f.xi2_minus(u, v) / s.gamma(u, v - 1);
      const Vec3 t3 = f.xi2_plus(u - 1, v) / s.gamma(u - 1, v);
      const Vec3 lhs = t0 - t1, rhs = t2 - t3;
      const double scale =
          std::max({t0.norm(), t1.norm(), t2.norm(), t3.norm(),
                    s.xi(u, v).norm() / s.gamma(u - 1, v), kFloor});
      r.at(u, v) = (lhs - rhs).norm() / scale;
    }
  }
  return ResidualReport("mixed_xi_identity", std::move(r));
}

Q112Report q112_two_way_residual(const AffineStructure& s, const DerivedFields& f,
                                 double basis_tol) {
  const AsymptoticNet& net = s.net;
  const StaggeredDomain& dom = net.domain;
  Q112Report out;
  RealField two(dom, SiteFamily::VEdge, kUndefined);
  RealField coef(dom, SiteFamily::VEdge, kUndefined);
  // sites: v-edges (u, v+1/2) where q11 at (u,v) and (u,v+1) both expand
  for (int v = 1; v <= dom.nv - 2; ++v) {
    for (int u = 1; u <= dom.nu - 1; ++u) {
      const Vec3 b1 = net.q1(u, v);          // q1(u+1/2, v)
      const Vec3 b2 = net.q2(u, v);          // q2(u, v+1/2)
      const Vec3 b3 = s.xi(u, v);            // xi(u+1/2, v+1/2)
      const double vol = det3(b1, b2, b3);
      const double vscale = b1.norm() * b2.norm() * b3.norm();
      if (std::fabs(vol) < basis_tol * std::max(vscale, kFloor)) {
        out.excluded_sites.emplace_back(u, v);
        continue;
      }
      const Mat3 basis_inv = Mat3::from_columns(b1, b2, b3).inverse();

      // route 1: q112 = q12(u+1/2,v+1/2) - q12(u-1/2,v+1/2)
      //        = Omega1^+(u,v+1/2) xi(u+1/2,v+1/2) + Omega(u-1/2,v+1/2) xi1^-(u,v+1/2)
      // (expanding xi1^- = p xi - xi' shows the (u-1/2) weight on the last
      // term; it also reproduces the -h Om'/Om q1-coefficient below)
      const double om1_plus = f.Omega1_plus(u, v);
      const Vec3 routeA = b3 * om1_plus + f.xi1_minus(u, v) * s.omega(u - 1, v);
      // route 2: q112 = q11(u,v+1) - q11(u,v) via the lower-route variant,
      // with the Omega1^+ factor from the derived field (well conditioned)
      auto q11_lower = [&](int vv) {
        const double om_p = s.omega(u, vv);
        return net.q1(u, vv + 1) * (f.Omega1_plus(u, vv) / om_p) +
               net.q2(u, vv) * (s.gamma(u, vv) * s.A(u, vv + 1) / om_p);
      };
      const Vec3 routeB = q11_lower(v) - q11_lower(v - 1);

      const Vec3 ca = basis_inv * routeA;
      // the basis solve amplifies rounding by the frame's condition number,
      // so the two-way disagreement is measured on the vectors themselves,
      // scaled by the expansion terms
      const double term_scale =
          std::max({q11_lower(v).norm(), q11_lower(v - 1).norm(), routeA.norm(),
                    routeB.norm(), kFloor});
      two.at(u, v) = (routeA - routeB).norm() / term_scale;

      // route 1's q1-coefficient vs -h Omega(u-1/2,v+1/2)/Omega(u+1/2,v+1/2)
      const double want = -s.h_v(u, v) * s.omega(u - 1, v) / s.omega(u, v);
      coef.at(u, v) =
          std::fabs(ca.x - want) / std::max({std::fabs(want), ca.norm(), kFloor});
    }
  }
  out.two_way = ResidualReport("q112_two_way", std::move(two));
  out.q1_coefficient = ResidualReport("q112_q1_coefficient", std::move(coef));
  return out;
}

}  // namespace affnet
