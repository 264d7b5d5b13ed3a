#pragma once

#include <map>
#include <utility>

#include "affnet/asymptotic_net.hpp"

namespace affnet {

// Corner bookkeeping for the co-normal formulas. Relative to a quad stored at
// (i,j), corner c has vertex offset off[c] and gauge exponent exp[c]:
// the four co-normal formulas read nu(corner) = gamma^exp / Omega * w(corner)
// with w the corner's cross product of the two incident quad edges.
struct QuadCorner {
  int di, dj;   // vertex = (i+di, j+dj)
  int exp;      // +1 or -1 on gamma
};
constexpr QuadCorner kQuadCorners[4] = {
    {0, 0, -1},  // lower-left
    {1, 0, +1},  // lower-right
    {0, 1, +1},  // upper-left
    {1, 1, -1},  // upper-right
};

// Cross product entering the co-normal formula at corner c of quad (i,j).
Vec3 corner_cross(const AsymptoticNet& net, int i, int j, int c);

struct GaugeError : Error {
  int vertex_i, vertex_j;
  double deviation;
  GaugeError(int i, int j, double dev, const char* why)
      : Error(std::string("gauge propagation failed at vertex (") + std::to_string(i) +
              "," + std::to_string(j) + "): " + why +
              " (deviation " + std::to_string(dev) + "); input is likely not planar"),
        vertex_i(i), vertex_j(j), deviation(dev) {}
};

// Omega = sqrt(M) per quad; throws NondegeneracyError on M <= 0.
RealField compute_omega(const AsymptoticNet& net);

// Breadth-first gauge propagation from seed_quad in the fixed neighbor order
// right, up, left, down. Coincidence of the four co-normal formulas at shared
// vertices determines each neighbor's gamma; disagreement beyond tol raises
// GaugeError naming the vertex. Returns the quad gamma field.
RealField propagate_gamma(const AsymptoticNet& net, double gamma0 = 1.0,
                          std::pair<int, int> seed_quad = {0, 0},
                          double tol = default_tolerances().gauge_coincidence);

// Co-normal per vertex from the first existing adjacent quad's formula
// (preference NE, NW, SE, SW); the formulas coincide by construction of gamma.
Vec3Field conormals(const AsymptoticNet& net, const RealField& gamma);

// xi = q12 / Omega per quad.
Vec3Field affine_normal(const AsymptoticNet& net, const RealField& omega);

struct LelieuvreReport {
  ResidualReport u;  // || nu x nu_+u - q1 || per u-edge
  ResidualReport v;  // || nu x nu_+v + q2 || per v-edge (note the sign)
  bool passes(double tol) const { return u.passes(tol) && v.passes(tol); }
};
LelieuvreReport verify_lelieuvre(const AsymptoticNet& net, const Vec3Field& nu);

// || gamma^2 (nu + nu_++) - (nu_+v + nu_+u) || per quad, scaled by corner norms.
ResidualReport moutard_residual(const Vec3Field& nu, const RealField& gamma);

// Max deviation of the four corner products nu . xi from gamma^{-1,+1,+1,-1}.
ResidualReport corner_products_residual(const Vec3Field& nu, const Vec3Field& xi,
                                        const RealField& gamma);

// | Omega - gamma^{-1} [nu, nu_+v, nu_+u] | per quad.
ResidualReport omega_conormal_residual(const Vec3Field& nu, const RealField& gamma,
                                       const RealField& omega);

// Cubic form coefficients. Sign convention (see docs/formats.md):
//   A(u,v) = [q1(u-1/2,v), q1(u+1/2,v), gamma^s xi]
//   B(u,v) = [q2(u,v+1/2), q2(u,v-1/2), gamma^s xi]
// B's row order is chosen so that both second-derivative expansions carry
// positive cubic-form coefficients; the structural equations and the
// reconstruction recursions depend on this orientation (docs/formats.md).
// Domains: A on 1<=u<=nu-1 for all v, B on 1<=v<=nv-1 for all u; NaN outside.
// The evaluation quad is NE where it exists, else SW.
struct CubicForms {
  RealField A;  // vertex field, NaN outside its domain
  RealField B;
  ResidualReport fourfold;  // max pairwise deviation of the 4 variants, interior vertices
};
CubicForms cubic_forms(const AsymptoticNet& net, const RealField& gamma,
                       const Vec3Field& xi);

// p, h, H on interior edges of both families.
//   p: local coincidence ratio of adjacent co-normal formulas (equals the
//      gamma product; gauge-seed independent by construction).
//   h = p - 1/p, evaluated through the determinant identities
//      h(u,v+1/2) = -[q2, xi_left, xi_right], h(u+1/2,v) = +[q1, xi_below, xi_above]
//      which keep full relative precision where p is near 1.
//   H = -h / sqrt(Omega Omega'), signed so the hyperboloid of revolution has
//      H -> +c^{-3/2} in the smooth limit.
struct EdgeQuantities {
  RealField p_u, p_v;  // interior u-/v-edges, NaN elsewhere
  RealField h_u, h_v;
  RealField H_u, H_v;
  ResidualReport p_gamma_consistency;  // |p - gamma*gamma'| / p, both families merged max
  ResidualReport h_p_consistency;      // |h - (p - 1/p)|, absolute
};
EdgeQuantities edge_quantities(const AsymptoticNet& net, const RealField& gamma,
                               const RealField& omega, const Vec3Field& xi);

// The full first-order apparatus with every defining identity re-verified as a
// residual report. build_structure gates on non-degeneracy and planarity and
// throws if any verification exceeds its tolerance.
struct AffineStructure {
  AsymptoticNet net;
  RealField M;
  RealField omega;
  RealField gamma;
  Vec3Field nu;
  Vec3Field xi;
  RealField A, B;
  RealField p_u, p_v, h_u, h_v, H_u, H_v;
  double gamma_seed = 1.0;
  std::pair<int, int> seed_quad{0, 0};
  std::map<std::string, ResidualReport> reports;
};

// gate_identities: when true (the default), throws if any defining-identity
// residual exceeds tol.identity; verification front-ends pass false so every
// suite is reported instead of aborting on the first violation. The
// non-degeneracy and planarity gates always apply (nothing downstream is
// well defined without them).
AffineStructure build_structure(const AsymptoticNet& net, double gamma0 = 1.0,
                                const Tolerances& tol = default_tolerances(),
                                bool gate_identities = true);

}  // namespace affnet
