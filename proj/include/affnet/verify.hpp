#pragma once

#include <string>
#include <vector>

#include "affnet/reconstruction.hpp"

namespace affnet {

// One row of the verification summary: a named residual suite, its statistics
// and the tolerance it was held to.
struct SuiteResult {
  std::string name;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  int argmax_i = -1, argmax_j = -1;
  double tolerance = 0.0;
  bool passed = false;
  const ResidualReport* report = nullptr;  // valid while the VerificationRun lives
};

// Runs every residual suite on one net: the defining identities, the
// structural expansions, the compatibility equations and the mixed-identity
// checks. Suites: planarity, lelieuvre_u/v, moutard, corner_products,
// omega_conormal, cubic_fourfold, p_gamma/h_p consistency, xi_orthogonality,
// q11_1..4, q22_1..4, xi1_1..4, xi2_1..4, compat_eq1..3, mixed_xi, q112.
struct VerificationRun {
  AffineStructure structure;
  DerivedFields fields;
  PlanarityReport planarity;
  LelieuvreReport lelieuvre;
  SecondDerivativeReport second_derivatives;
  XiDerivativeReport xi_derivatives;
  CompatResiduals compat;
  ResidualReport mixed_xi;
  Q112Report q112;
  std::vector<SuiteResult> summary;
  bool all_passed = false;
};

VerificationRun verify_net(const AsymptoticNet& net, double gamma0 = 1.0,
                           const Tolerances& tol = default_tolerances());

}  // namespace affnet
