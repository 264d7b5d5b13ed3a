#pragma once

#include <functional>
#include <vector>

#include "affnet/asymptotic_net.hpp"

namespace affnet {

// Sampled asymptotic parametrization of the one-sheet hyperboloid
// y^2 + z^2 - x^2 = c^2. Vertex (i,j) carries q(u0 + i du, v0 + j dv);
// u0 + v0 > 0 keeps sinh(u+v) positive on the whole rectangle.
struct HyperboloidSpec {
  double c = 1.0;
  double u0 = 1.0, v0 = 1.0;
  double du = 0.1, dv = 0.2;
  int nu = 10, nv = 5;
};

// Closed-form evaluators for the sampled hyperboloid. Lattice sites map to
// analytic parameters through the single rule u = u0 + i du, v = v0 + j dv;
// half-integer lattice offsets become du/2, dv/2. Quad/edge arguments take
// the site's stored lower-left index.
class AnalyticHyperboloid {
 public:
  explicit AnalyticHyperboloid(const HyperboloidSpec& spec) : s_(spec) {}

  const HyperboloidSpec& spec() const { return s_; }

  Vec3 q(int i, int j) const;         // vertex
  Vec3 nu(int i, int j) const;        // vertex co-normal (smooth co-normal)
  Vec3 q1(int i, int j) const;        // u-edge (i+1/2, j), closed form
  Vec3 q2(int i, int j) const;        // v-edge (i, j+1/2)
  double Omega(int i, int j) const;   // quad
  double gamma(int i, int j) const;   // quad
  Vec3 xi(int i, int j) const;        // quad
  double p_v(int i, int j) const;     // v-edge (i, j+1/2)
  double p_u(int i, int j) const;     // u-edge (i+1/2, j), by u<->v symmetry
  double h_v(int i, int j) const;     // closed form (negative on this surface)
  double h_u(int i, int j) const;
  double H_v(int i, int j) const;     // positive; equals -h/sqrt(Omega Omega')
  double H_u(int i, int j) const;
  double smooth_H() const;            // c^{-3/2}

 private:
  HyperboloidSpec s_;
  double uat(int i) const { return s_.u0 + i * s_.du; }
  double vat(int j) const { return s_.v0 + j * s_.dv; }
};

struct HyperboloidNet {
  AsymptoticNet net;
  AnalyticHyperboloid analytic;
};
HyperboloidNet hyperboloid_net(const HyperboloidSpec& spec);

// The bilinear quadric q(u,v) = (v, u, -uv): the standard example with
// Omega = 1, gamma = 1, nu = (-u,-v,-1), xi = (0,0,-1), A = B = 0.
AsymptoticNet paraboloid_net(int nu, int nv);

// Minimal net from a separable co-normal nu(u,v) = f(u) + g(v), integrated
// through the discrete Lelieuvre equations from base. Requires M > 0 and a
// consistent co-normal orientation (-[nu, nu_1, nu_2] > 0 at every vertex);
// the offending site is reported otherwise.
AsymptoticNet minimal_net(const std::vector<Vec3>& f_samples,
                          const std::vector<Vec3>& g_samples,
                          const Vec3& base = Vec3{});

// Row-major Lelieuvre integration of an arbitrary vertex co-normal field.
// The closure report carries the per-quad defect between the right-then-up
// and up-then-right fills, ||(nu + nu_++) x (nu_+u + nu_+v)||, which vanishes
// exactly when nu is a Moutard net; if gamma is supplied the Moutard residual
// with that coefficient is attached as well.
struct LelieuvreIntegration {
  AsymptoticNet net;
  ResidualReport closure;               // quads
  ResidualReport moutard;               // quads; empty if gamma not supplied
};
LelieuvreIntegration integrate_lelieuvre(const Vec3Field& nu, const Vec3& base = Vec3{});
LelieuvreIntegration integrate_lelieuvre(const Vec3Field& nu, const RealField& gamma,
                                         const Vec3& base = Vec3{});

}  // namespace affnet
