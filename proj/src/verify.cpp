#include "affnet/verify.hpp"

namespace affnet {

VerificationRun verify_net(const AsymptoticNet& net, double gamma0,
                           const Tolerances& tol) {
  VerificationRun run;
  run.structure = build_structure(net, gamma0, tol, /*gate_identities=*/false);
  run.fields = derived_fields(run.structure);
  run.planarity = planarity_report(net, tol.parallel_edges);
  run.lelieuvre = verify_lelieuvre(net, run.structure.nu);
  run.second_derivatives = q_second_derivative_residuals(run.structure, run.fields);
  run.xi_derivatives = xi_derivative_residuals(run.structure, run.fields);
  run.compat = compat_residuals(run.structure, run.fields);
  run.mixed_xi = mixed_xi_identity_residual(run.structure, run.fields);
  run.q112 = q112_two_way_residual(run.structure, run.fields);

  auto add = [&](const ResidualReport& r, double t) {
    run.summary.push_back({r.name, r.max_abs, r.mean_abs, r.argmax_i, r.argmax_j, t,
                           r.passes(t), &r});
  };
  add(run.planarity.residuals, tol.planarity);
  add(run.lelieuvre.u, tol.identity);
  add(run.lelieuvre.v, tol.identity);
  add(run.structure.reports.at("moutard"), tol.identity);
  add(run.structure.reports.at("corner_products"), tol.identity);
  add(run.structure.reports.at("omega_conormal"), tol.identity);
  add(run.structure.reports.at("cubic_fourfold"), tol.identity);
  add(run.structure.reports.at("p_gamma_consistency"), tol.identity);
  add(run.structure.reports.at("h_p_consistency"), tol.identity);
  add(run.fields.orthogonality, tol.identity);
  for (const auto& r : run.second_derivatives.q11.rows) add(r, tol.identity);
  for (const auto& r : run.second_derivatives.q22.rows) add(r, tol.identity);
  for (const auto& r : run.xi_derivatives.xi1.rows) add(r, tol.identity);
  for (const auto& r : run.xi_derivatives.xi2.rows) add(r, tol.identity);
  add(run.compat.eq1, tol.identity);
  add(run.compat.eq2, tol.identity);
  add(run.compat.eq3, tol.identity);
  add(run.mixed_xi, tol.identity);
  add(run.q112.two_way, tol.identity);
  add(run.q112.q1_coefficient, tol.identity);

  run.all_passed = true;
  for (const auto& s : run.summary) run.all_passed = run.all_passed && s.passed;
  return run;
}

}  // namespace affnet
