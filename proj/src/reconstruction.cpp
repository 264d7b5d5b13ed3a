#include "affnet/reconstruction.hpp"

#include <algorithm>
#include <cmath>

namespace affnet {

namespace {
constexpr double kFloor = 1e-300;
}

EdgeP p_from_H(const StaggeredDomain& dom, const RealField& Omega,
               const RealField& H_u, const RealField& H_v) {
  EdgeP out;
  out.p_v = RealField(dom, SiteFamily::VEdge, kUndefined);
  out.h_v = RealField(dom, SiteFamily::VEdge, kUndefined);
  out.p_u = RealField(dom, SiteFamily::UEdge, kUndefined);
  out.h_u = RealField(dom, SiteFamily::UEdge, kUndefined);
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 1; i <= dom.nu - 1; ++i) {
      const double h = -H_v(i, j) * std::sqrt(Omega(i - 1, j) * Omega(i, j));
      out.h_v.at(i, j) = h;
      out.p_v.at(i, j) = 0.5 * (h + std::sqrt(h * h + 4.0));
    }
  for (int j = 1; j <= dom.nv - 1; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const double h = -H_u(i, j) * std::sqrt(Omega(i, j - 1) * Omega(i, j));
      out.h_u.at(i, j) = h;
      out.p_u.at(i, j) = 0.5 * (h + std::sqrt(h * h + 4.0));
    }
  return out;
}

GammaFromP gamma_from_p(const StaggeredDomain& dom, const RealField& p_u,
                        const RealField& p_v, double gamma_seed) {
  if (!(gamma_seed > 0.0)) throw Error("gamma_from_p: seed must be positive");
  // row-major sweep: fill row 0 leftward-to-right from the seed, then each
  // row above through the u-edge products
  RealField g(dom, SiteFamily::Quad, kUndefined);
  g.at(0, 0) = gamma_seed;
  for (int i = 1; i < dom.nu; ++i) g.at(i, 0) = p_v(i, 0) / g(i - 1, 0);
  for (int j = 1; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) g.at(i, j) = p_u(i, j) / g(i, j - 1);
  // transposed sweep for the loop residual
  RealField gt(dom, SiteFamily::Quad, kUndefined);
  gt.at(0, 0) = gamma_seed;
  for (int j = 1; j < dom.nv; ++j) gt.at(0, j) = p_u(0, j) / gt(0, j - 1);
  for (int i = 1; i < dom.nu; ++i)
    for (int j = 0; j < dom.nv; ++j) gt.at(i, j) = p_v(i, j) / gt(i - 1, j);
  GammaFromP out;
  RealField loop(dom, SiteFamily::Quad, [&](int i, int j) {
    if (!(g(i, j) > 0.0))
      throw Error("gamma_from_p: non-positive gamma at quad (" + std::to_string(i) +
                  "," + std::to_string(j) + ")");
    return std::fabs(g(i, j) - gt(i, j)) / g(i, j);
  });
  out.gamma = std::move(g);
  out.loop_residual = ResidualReport("gamma_loop", std::move(loop));
  return out;
}

namespace {

// data-side compatibility gate: evaluate the three equations from
// (Omega, gamma, p, h, A, B) only, the same formulas the residual suite uses
double compat_gate_max(const StaggeredDomain& dom, const RealField& Om,
                       const RealField& gamma, const EdgeP& ep, const RealField& A,
                       const RealField& B) {
  double worst = 0.0;
  for (int v = 1; v <= dom.nv - 1; ++v) {
    for (int u = 1; u <= dom.nu - 1; ++u) {
      if (!std::isfinite(A(u, v)) || !std::isfinite(A(u, v + 1)) ||
          !std::isfinite(A(u, v - 1)) || !std::isfinite(B(u, v)) ||
          !std::isfinite(B(u + 1, v)) || !std::isfinite(B(u - 1, v)))
        continue;
      const double O_pp = Om(u, v), O_mp = Om(u - 1, v), O_pm = Om(u, v - 1),
                   O_mm = Om(u - 1, v - 1);
      const double g_pp = gamma(u, v), g_mp = gamma(u - 1, v), g_pm = gamma(u, v - 1);
      const double p_vp = ep.p_v(u, v), p_vm = ep.p_v(u, v - 1);
      const double p_um = ep.p_u(u - 1, v);
      // eq1
      const double t1 = O_mp / (p_vp * O_pp);
      const double t2 = p_vm * O_mm / O_pm;
      const double t3 = A(u, v) * B(u, v) * g_pm / (g_pp * O_pp * O_pm);
      worst = std::max(worst, std::fabs(t1 - t2 - t3) /
                                  std::max({std::fabs(t1), std::fabs(t2),
                                            std::fabs(t3), kFloor}));
      // eq2/eq3 via the coefficient assembly
      const double A2p_v = g_pp * A(u, v + 1) - A(u, v) / g_pp;
      const double A2p_vm = g_pm * A(u, v) - A(u, v - 1) / g_pm;
      const double B1p_u = g_pp * B(u + 1, v) - B(u, v) / g_pp;
      const double B1p_um = g_mp * B(u, v) - B(u - 1, v) / g_mp;
      const double am_a = O_mp / (p_vp * O_pp), am_b = -A(u, v) / (g_pp * O_pp);
      const double bm_a = -B(u, v) / (g_pp * O_pp), bm_b = O_pm / ((g_pp * g_pm) * O_pp);
      const double x1m_a = -ep.h_v(u, v) / O_pp;
      const double x1m_b = A2p_v / (O_pp * O_mp);
      const double x1p_a = p_vm * (-ep.h_v(u, v - 1) / O_pm + (A2p_vm / (O_pm * O_mm)) * bm_a);
      const double x1p_b = p_vm * ((A2p_vm / (O_pm * O_mm)) * bm_b);
      const double x2m_a = B1p_u / (O_pp * O_pm);
      const double x2m_b = -ep.h_u(u, v) / O_pp;
      const double x2p_a = p_um * ((B1p_um / (O_mp * O_mm)) * am_a);
      const double x2p_b = p_um * ((B1p_um / (O_mp * O_mm)) * am_b - ep.h_u(u - 1, v) / O_mp);
      const double ta[4] = {x1m_a / g_mp, -x1p_a / g_pm, -x2m_a / g_pm, x2p_a / g_mp};
      const double tb[4] = {x1m_b / g_mp, -x1p_b / g_pm, -x2m_b / g_pm, x2p_b / g_mp};
      double sa = kFloor, sb = kFloor, suma = 0, sumb = 0;
      for (int k = 0; k < 4; ++k) {
        suma += ta[k]; sumb += tb[k];
        sa = std::max(sa, std::fabs(ta[k]));
        sb = std::max(sb, std::fabs(tb[k]));
      }
      worst = std::max({worst, std::fabs(suma) / sa, std::fabs(sumb) / sb});
    }
  }
  return worst;
}

}  // namespace

ReconstructionResult reconstruct(const CompatData& data, const Tolerances& tol) {
  const StaggeredDomain& dom = data.domain;
  const RealField& Om = data.Omega;
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i)
      if (!(Om(i, j) > 0.0))
        throw Error("reconstruct: Omega must be positive everywhere");

  const double want = Om(0, 0) * Om(0, 0);
  const double have = data.frame_det();
  if (std::fabs(have - want) > tol.frame_det_rel * std::max(std::fabs(want), kFloor))
    throw Error("reconstruct: frame determinant " + std::to_string(have) +
                " does not match Omega^2(1/2,1/2) = " + std::to_string(want));

  EdgeP ep = p_from_H(dom, Om, data.H_u, data.H_v);
  GammaFromP gp = gamma_from_p(dom, ep.p_u, ep.p_v, data.gamma_seed);
  const RealField& gamma = gp.gamma;
  const RealField& A = data.A;
  const RealField& B = data.B;

  const double gate = compat_gate_max(dom, Om, gamma, ep, A, B);
  if (gate > tol.compat_input)
    throw Error("reconstruct: input data violates the compatibility equations (max residual " +
                std::to_string(gate) + ")");

  Vec3Field q(dom, SiteFamily::Vertex);
  q.at(0, 0) = data.frame[0];
  q.at(1, 0) = data.frame[1];
  q.at(0, 1) = data.frame[2];
  q.at(1, 1) = data.frame[3];

  // phase 1: rows 1 and 0, marching right
  for (int u = 1; u <= dom.nu - 1; ++u) {
    {  // row 1 via the lower q11 variant (row 4 of the table)
      const double om = Om(u, 0) - ep.p_v(u, 0) * Om(u - 1, 0);
      const Vec3 q11 = ((q(u, 1) - q(u - 1, 1)) * (om / Om(u - 1, 0)) +
                        (q(u, 1) - q(u, 0)) * (gamma(u, 0) * A(u, 1) / Om(u - 1, 0))) /
                       ep.p_v(u, 0);
      q.at(u + 1, 1) = q11 + q(u, 1) * 2.0 - q(u - 1, 1);
    }
    {  // row 0 via the upper q11 variant (row 3)
      const double om = ep.p_v(u, 0) * Om(u, 0) - Om(u - 1, 0);
      const Vec3 q11 = (q(u, 0) - q(u - 1, 0)) * (om / Om(u - 1, 0)) +
                       (q(u, 1) - q(u, 0)) * (gamma(u - 1, 0) * A(u, 0) / Om(u - 1, 0));
      q.at(u + 1, 0) = q11 + q(u, 0) * 2.0 - q(u - 1, 0);
    }
  }
  // phase 2: columns 1 and 0, marching up
  for (int v = 1; v <= dom.nv - 1; ++v) {
    {  // column 1 via the left q22 variant (row 4)
      const double om = Om(0, v) - ep.p_u(0, v) * Om(0, v - 1);
      const Vec3 q22 = ((q(1, v) - q(1, v - 1)) * (om / Om(0, v - 1)) +
                        (q(1, v) - q(0, v)) * (gamma(0, v) * B(1, v) / Om(0, v - 1))) /
                       ep.p_u(0, v);
      q.at(1, v + 1) = q22 + q(1, v) * 2.0 - q(1, v - 1);
    }
    {  // column 0 via the right q22 variant (row 1), solved for q2+
      const Vec3 q2p = ((q(0, v) - q(0, v - 1)) * ep.p_u(0, v) +
                        (q(1, v) - q(0, v)) * (gamma(0, v - 1) * B(0, v) / Om(0, v))) *
                       (Om(0, v) / Om(0, v - 1));
      q.at(0, v + 1) = q(0, v) + q2p;
    }
  }

  // phase 3, row-major: xi seeded per quad row from columns 0..1, propagated
  // rightward through the xi1^- expansion, corners filled by q12 = Omega xi
  Vec3Field qrow = q;
  for (int v = 1; v <= dom.nv - 1; ++v) {
    Vec3 xi_cur = ((qrow(1, v + 1) - qrow(1, v)) - (qrow(0, v + 1) - qrow(0, v))) / Om(0, v);
    for (int u = 1; u <= dom.nu - 1; ++u) {
      const double a2p = gamma(u, v) * A(u, v + 1) - A(u, v) / gamma(u, v);
      const Vec3 rhs = (qrow(u + 1, v) - qrow(u, v)) * (-ep.h_v(u, v) / Om(u, v)) +
                       (qrow(u, v + 1) - qrow(u, v)) * (a2p / (Om(u, v) * Om(u - 1, v)));
      const Vec3 xi_next = (xi_cur + rhs) / ep.p_v(u, v);
      qrow.at(u + 1, v + 1) =
          qrow(u + 1, v) + qrow(u, v + 1) - qrow(u, v) + xi_next * Om(u, v);
      xi_cur = xi_next;
    }
  }
  // transposed fill for the coherence residual
  Vec3Field qcol = q;
  for (int u = 1; u <= dom.nu - 1; ++u) {
    Vec3 xi_cur = ((qcol(u + 1, 1) - qcol(u + 1, 0)) - (qcol(u, 1) - qcol(u, 0))) / Om(u, 0);
    for (int v = 1; v <= dom.nv - 1; ++v) {
      const double b1p = gamma(u, v) * B(u + 1, v) - B(u, v) / gamma(u, v);
      const Vec3 rhs = (qcol(u + 1, v) - qcol(u, v)) * (b1p / (Om(u, v) * Om(u, v - 1))) -
                       (qcol(u, v + 1) - qcol(u, v)) * (ep.h_u(u, v) / Om(u, v));
      const Vec3 xi_next = (xi_cur + rhs) / ep.p_u(u, v);
      qcol.at(u + 1, v + 1) =
          qcol(u + 1, v) + qcol(u, v + 1) - qcol(u, v) + xi_next * Om(u, v);
      xi_cur = xi_next;
    }
  }

  ReconstructionResult out{AsymptoticNet(dom, qrow), ResidualReport{}, std::move(gp)};
  const double diam = std::max(out.net.diameter(), kFloor);
  RealField coh(dom, SiteFamily::Quad, kUndefined);
  for (int v = 1; v <= dom.nv - 1; ++v)
    for (int u = 1; u <= dom.nu - 1; ++u)
      coh.at(u, v) = (qrow(u + 1, v + 1) - qcol(u + 1, v + 1)).norm() / diam;
  out.coherence = ResidualReport("reconstruction_coherence", std::move(coh));
  const double coh_tol = 1e-10 * (dom.nu + dom.nv);
  if (!out.coherence.passes(std::max(coh_tol, tol.compat_input)))
    throw Error("reconstruct: row/column fills disagree (coherence " +
                std::to_string(out.coherence.max_abs) + "); input is not integrable");
  return out;
}

CompatData extract(const AsymptoticNet& net, double gamma_seed, const Tolerances& tol) {
  AffineStructure s = build_structure(net, gamma_seed, tol);
  CompatData d;
  d.domain = net.domain;
  d.Omega = s.omega;
  d.A = s.A;
  d.B = s.B;
  d.H_u = s.H_u;
  d.H_v = s.H_v;
  d.gamma_seed = gamma_seed;
  d.frame = {net.q(0, 0), net.q(1, 0), net.q(0, 1), net.q(1, 1)};
  return d;
}

AlignmentResult affine_align(const AsymptoticNet& net_a, const AsymptoticNet& net_b,
                             double frame_tol) {
  if (net_a.domain != net_b.domain) throw Error("affine_align: domains differ");
  const Vec3 a0 = net_a.q(0, 0);
  const Vec3 b0 = net_b.q(0, 0);
  const Mat3 Ea = Mat3::from_columns(net_a.q(1, 0) - a0, net_a.q(0, 1) - a0,
                                     net_a.q(1, 1) - a0);
  const Mat3 Eb = Mat3::from_columns(net_b.q(1, 0) - b0, net_b.q(0, 1) - b0,
                                     net_b.q(1, 1) - b0);
  const double scale = Ea.col(0).norm() * Ea.col(1).norm() * Ea.col(2).norm();
  if (std::fabs(Ea.det()) < frame_tol * std::max(scale, kFloor))
    throw Error("affine_align: degenerate frame");
  AlignmentResult out;
  out.map.linear = Eb * Ea.inverse();
  out.map.translation = b0 - out.map.linear * a0;
  out.det_linear = out.map.linear.det();
  double worst = 0.0;
  for (int j = 0; j <= net_a.domain.nv; ++j)
    for (int i = 0; i <= net_a.domain.nu; ++i)
      worst = std::max(worst, (out.map(net_a.q(i, j)) - net_b.q(i, j)).norm());
  out.residual = worst / std::max(net_b.diameter(), kFloor);
  return out;
}

}  // namespace affnet
