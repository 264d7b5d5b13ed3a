#pragma once

#include <array>

#include "affnet/affine_structure.hpp"

namespace affnet {

// Gauge-weighted difference fields feeding the structural equations:
//   Omega1^-(u,v+1/2) = p Omega(u+1/2,v+1/2) - Omega(u-1/2,v+1/2)   etc.
//   xi1^-, xi1^+ on interior v-edges, xi2^-, xi2^+ on interior u-edges,
//   A2^+/- on v-edges where A(u,v), A(u,v+1) exist, B1^+/- symmetric.
struct DerivedFields {
  RealField Omega1_minus, Omega1_plus;   // interior v-edges
  RealField Omega2_minus, Omega2_plus;   // interior u-edges
  RealField A2_plus, A2_minus;           // v-edges with both A endpoints
  RealField B1_plus, B1_minus;           // u-edges with both B endpoints
  Vec3Field xi1_minus, xi1_plus;         // interior v-edges
  Vec3Field xi2_minus, xi2_plus;         // interior u-edges
  ResidualReport orthogonality;          // xi-differences vs their co-normals
};

DerivedFields derived_fields(const AffineStructure& s);

// One row of the q11/q22 expansion table, as data so alternates can be tested.
// At vertex (u,v), with E(i,j) meaning the u-edge or v-edge stored at (i,j):
//   lhs_p_dj: -1 encodes p(u,v-1/2) on the left side, 0 encodes p(u,v+1/2),
//             kNoP encodes no factor
//   om_sign:  -1 -> Omega1^- / +1 -> Omega1^+, at v-edge (u, v+om_dj)
//   den:      quad offset of both denominators
//   gam:      quad offset of the gamma factor on the A-term
//   e1_di:    u-edge (u+e1_di, v) multiplying the Omega-term
//   e2_dj:    v-edge (u, v+e2_dj) multiplying the A-term
// The q22 table is read with u and v roles swapped (edges/offsets mirrored).
struct VariantRow {
  static constexpr int kNoP = 99;
  int lhs_p_dj;
  int om_sign;
  int om_dj;
  int den_di, den_dj;
  int gam_di, gam_dj;
  int e1_di;
  int e2_dj;
};

// The shipped tables. Their index pattern is pinned by the u<->v mirror
// symmetry of the two families and certified by requiring all eight
// residuals to vanish on four independent exact nets (docs/formats.md).
const std::array<VariantRow, 4>& q11_variants();
const std::array<VariantRow, 4>& q22_variants();
// A rejected alternate for q22 rows 2-3 (Omega2 edge at the mirrored offset);
// kept so tests can demonstrate the oracle nets exclude it.
const std::array<VariantRow, 4>& q22_variants_alternate();

struct VariantSuite {
  std::array<ResidualReport, 4> rows;
  double max_abs() const;
};

// Residuals of the four q11 and four q22 expansions at interior vertices,
// normalized per site by max(|lhs|, |rhs|).
struct SecondDerivativeReport {
  VariantSuite q11;
  VariantSuite q22;
};
SecondDerivativeReport q_second_derivative_residuals(const AffineStructure& s,
                                                     const DerivedFields& f);
SecondDerivativeReport q_second_derivative_residuals(const AffineStructure& s,
                                                     const DerivedFields& f,
                                                     const std::array<VariantRow, 4>& q11_table,
                                                     const std::array<VariantRow, 4>& q22_table);

// Residuals of the eight xi-derivative expansions, normalized
// per site by the magnitude of the cancelling xi-terms.
struct XiDerivativeReport {
  VariantSuite xi1;
  VariantSuite xi2;
};
XiDerivativeReport xi_derivative_residuals(const AffineStructure& s,
                                           const DerivedFields& f);

// Minimal <=> h == 0 on all interior edges (equivalently gamma can be chosen 1).
struct MinimalityResult {
  bool minimal;
  double max_abs_h;
  SiteFamily witness_family;
  int witness_i, witness_j;
};
MinimalityResult is_minimal(const AffineStructure& s,
                            double tol = default_tolerances().classification);

// Affine sphere per the transport conditions
//   A(u,v+1)/gamma(u-1/2,v+1/2) = A(u,v)/gamma(u+1/2,v+1/2),
//   B(u+1,v)/gamma(u+1/2,v-1/2) = B(u,v)/gamma(u+1/2,v+1/2).
// Residuals are normalized by the terms and by the local cubic-form scale
// (edge-norm product times the gamma-weighted xi norm), so nets whose cubic
// form vanishes to round-off classify as spheres.
struct SphereResult {
  ResidualReport A_transport;  // v-edge sites
  ResidualReport B_transport;  // u-edge sites
  bool is_sphere;
  double max_residual;
};
SphereResult affine_sphere_residual(const AffineStructure& s,
                                    double tol = default_tolerances().classification);

// Constant-c criterion c Omega gamma = 1 - gamma^2 relating the sphere class
// to the earlier duality-based definition. The relation is gauge dependent;
// substituting z = c*lambda, y = lambda^2 over the checkerboard rescaling
// gamma -> lambda^{+-1} gamma turns it into the linear system
//   z (Omega gamma) + y gamma^2 = 1   on even-parity quads,
//   z (Omega gamma) - y          = -gamma^2 on odd-parity quads,
// solved least-squares; residuals are exactly invariant under the gauge seed.
struct BobenkoResult {
  double c;            // z / sqrt(y)
  double spread;       // max per-quad relative violation of the relation
  bool constant;       // spread <= tol and y > 0
  double lambda;       // canonical checkerboard rescale, sqrt(y)
  ResidualReport residuals;
};
BobenkoResult bobenko_constant_test(const AffineStructure& s,
                                    double tol = default_tolerances().classification);

// The four sphere-specialized xi expansions.
ResidualReport affine_sphere_xi_identity_residual(const AffineStructure& s,
                                                  const DerivedFields& f);

}  // namespace affnet
