#pragma once

#include "affnet/structural.hpp"

namespace affnet {

// The three compatibility equations evaluated as residual fields at interior
// vertices, each term-normalized per site.
//
// eq1 relates the gauge-weighted metric ratios to the A*B product. eq2/eq3
// are derived from the mixed xi-identity by expanding each xi-difference
// through its structural formula and comparing coefficients of q1(u+1/2,v)
// and q2(u,v+1/2). A shorter form of the second and third equations that
// drops the cubic-form cross terms fails on any net whose cubic form does
// not vanish; it is kept as eq2_reduced/eq3_reduced so the divergence stays
// documented (see docs/formats.md).
struct CompatResiduals {
  ResidualReport eq1;
  ResidualReport eq2;
  ResidualReport eq3;
  ResidualReport eq2_reduced;
  ResidualReport eq3_reduced;
  bool passes(double tol) const {
    return eq1.passes(tol) && eq2.passes(tol) && eq3.passes(tol);
  }
};
CompatResiduals compat_residuals(const AffineStructure& s, const DerivedFields& f);

// The mixed identity
//   xi1^-(u,v+1/2)/gamma(u-1/2,v+1/2) - xi1^+(u,v-1/2)/gamma(u+1/2,v-1/2)
//     = xi2^-(u+1/2,v)/gamma(u+1/2,v-1/2) - xi2^+(u-1/2,v)/gamma(u-1/2,v+1/2),
// an algebraic identity in (xi, gamma, p); its residual certifies the p and
// gamma fields are mutually consistent.
ResidualReport mixed_xi_identity_residual(const AffineStructure& s,
                                          const DerivedFields& f);

// q112(u,v+1/2) computed two ways: as the u-difference of q12 = Omega xi and
// as the v-difference of the q11 expansions. two_way is the disagreement of
// the route vectors scaled by the expansion terms (a basis decomposition
// would amplify rounding by the frame's condition number); route 1's
// q1-coefficient in the basis {q1(u+1/2,v), q2(u,v+1/2), xi} is checked
// against -h(u,v+1/2) Omega(u-1/2,v+1/2)/Omega(u+1/2,v+1/2).
struct Q112Report {
  ResidualReport two_way;        // coefficient-triple disagreement
  ResidualReport q1_coefficient; // route 1 q1-coefficient vs -h Om'/Om
  std::vector<std::pair<int, int>> excluded_sites;  // near-degenerate basis
};
Q112Report q112_two_way_residual(const AffineStructure& s, const DerivedFields& f,
                                 double basis_tol = 1e-12);

}  // namespace affnet
