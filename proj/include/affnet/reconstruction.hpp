#pragma once

#include <array>

#include "affnet/compatibility.hpp"

namespace affnet {

// Input of the reconstruction theorem: (Omega, A, B, H) plus a gauge seed and
// an initial frame. A covers 1<=u<=nu-1 for all v, B covers 1<=v<=nv-1 for
// all u (NaN outside); H lives on interior edges. The frame must satisfy
// [q(1,0)-q(0,0), q(0,1)-q(0,0), q(1,1)-q(0,0)] = Omega^2(1/2,1/2).
struct CompatData {
  StaggeredDomain domain;
  RealField Omega;              // quads, > 0
  RealField A, B;               // vertex fields, NaN outside their domains
  RealField H_u, H_v;           // interior edges, NaN elsewhere
  double gamma_seed = 1.0;
  std::array<Vec3, 4> frame;    // q(0,0), q(1,0), q(0,1), q(1,1)

  double frame_det() const {
    return det3(frame[1] - frame[0], frame[2] - frame[0], frame[3] - frame[0]);
  }
};

struct AffineMap {
  Mat3 linear;
  Vec3 translation;
  Vec3 operator()(const Vec3& x) const { return linear * x + translation; }
};

// h = -H sqrt(Omega Omega'), p = (h + sqrt(h^2 + 4))/2 (unique positive root).
struct EdgeP {
  RealField p_u, p_v;  // interior edges, NaN elsewhere
  RealField h_u, h_v;
};
EdgeP p_from_H(const StaggeredDomain& dom, const RealField& Omega,
               const RealField& H_u, const RealField& H_v);

// gamma from the edge products, propagated row-major from the seed; the loop
// residual compares against a column-major sweep (nonzero means the p fields
// are not integrable).
struct GammaFromP {
  RealField gamma;
  ResidualReport loop_residual;
};
GammaFromP gamma_from_p(const StaggeredDomain& dom, const RealField& p_u,
                        const RealField& p_v, double gamma_seed);

// Marching integration of the structural equations.
// Fills rows 0..1 and columns 0..1 with the explicit q11/q22 variants, then
// corner-fills row-major via q(u+1,v+1) = q(u+1,v) + q(u,v+1) - q(u,v) +
// Omega xi with xi propagated along each row; the transposed (column-major)
// fill runs in verification mode and the per-quad disagreement is the
// coherence residual. Throws on frame violation or incompatible input.
struct ReconstructionResult {
  AsymptoticNet net;
  ResidualReport coherence;   // quads, ||row-fill - column-fill|| / diameter
  GammaFromP gauge;
};
ReconstructionResult reconstruct(const CompatData& data,
                                 const Tolerances& tol = default_tolerances());

// Forward pipeline packaged as reconstruction input (the net's own first four
// vertices become the frame).
CompatData extract(const AsymptoticNet& net, double gamma_seed = 1.0,
                   const Tolerances& tol = default_tolerances());

// The affine map determined by matching net_a's first-quad frame to net_b's;
// residual = max vertex distance after mapping, normalized by net_b's diameter.
struct AlignmentResult {
  AffineMap map;
  double residual;
  double det_linear;
};
AlignmentResult affine_align(const AsymptoticNet& net_a, const AsymptoticNet& net_b,
                             double frame_tol = 1e-12);

}  // namespace affnet
