#pragma once

namespace affnet {

// Central defaults. Every report records the tolerance it was checked
// against; CLI flags override per run. All residuals are dimensionless.
struct Tolerances {
  double nondegenerate = 0.0;        // min quad M (strict positivity)
  double planarity = 1e-9;           // planarity residual gate
  double gauge_coincidence = 1e-8;   // co-normal formula agreement during propagation
  double identity = 1e-9;            // Lelieuvre/Moutard/corner/structural/compat suites
  double classification = 1e-8;      // minimal / affine sphere / Bobenko constant
  double frame_det_rel = 1e-10;      // reconstruction frame determinant vs Omega^2
  double compat_input = 1e-8;        // compatibility residual gate on reconstruction input
  double parallel_edges = 1e-12;     // planarity basis fallback trigger
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace affnet
