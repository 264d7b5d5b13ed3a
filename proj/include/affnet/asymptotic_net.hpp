#pragma once

#include <optional>
#include <string>

#include "affnet/residual_report.hpp"
#include "affnet/staggered_grid.hpp"
#include "affnet/tolerances.hpp"
#include "affnet/vec3.hpp"

namespace affnet {

// A quad-lattice immersion q. Planarity of the edge crosses is a validated
// invariant (planarity_report), never an enforced one: the library measures,
// it does not project.
struct AsymptoticNet {
  StaggeredDomain domain;
  Vec3Field q;  // vertex positions

  AsymptoticNet() = default;
  AsymptoticNet(StaggeredDomain dom, Vec3Field positions)
      : domain(dom), q(std::move(positions)) {
    q.require_family(SiteFamily::Vertex, "AsymptoticNet");
    if (q.domain() != domain) throw Error("AsymptoticNet: field domain mismatch");
  }

  Vec3 q1(int i, int j) const { return q(i + 1, j) - q(i, j); }  // u-edge (i+1/2, j)
  Vec3 q2(int i, int j) const { return q(i, j + 1) - q(i, j); }  // v-edge (i, j+1/2)

  double diameter() const;
};

// M(u+1/2,v+1/2) = [q1(u+1/2,v), q2(u,v+1/2), q2(u+1,v+1/2)] per quad.
RealField quad_M(const AsymptoticNet& net);

// Succeeds iff min over quads of M > tol. The positive orientation M > 0 is
// a library-wide normalization; nets with M < 0 everywhere must be
// re-oriented by the caller (swap u and v).
struct NondegeneracyError : Error {
  int quad_i, quad_j;
  double M;
  NondegeneracyError(int i, int j, double m)
      : Error("net is degenerate: M(" + std::to_string(i) + "+1/2," + std::to_string(j) +
              "+1/2) = " + std::to_string(m)),
        quad_i(i), quad_j(j), M(m) {}
};
void assert_nondegenerate(const AsymptoticNet& net,
                          double tol = default_tolerances().nondegenerate);

// Planarity residual per interior vertex, normalized by max edge norm cubed.
// Basis (q1+, q1-); when those are parallel the basis falls back to
// (q1+, q2+); vertices with no independent pair are reported degenerate.
struct PlanarityReport {
  ResidualReport residuals;                  // interior vertices, NaN elsewhere
  std::vector<std::pair<int, int>> degenerate_vertices;
  bool passes(double tol) const { return residuals.passes(tol) && degenerate_vertices.empty(); }
};
PlanarityReport planarity_report(const AsymptoticNet& net,
                                 double parallel_tol = default_tolerances().parallel_edges);

}  // namespace affnet
