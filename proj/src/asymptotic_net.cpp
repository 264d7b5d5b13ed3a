#include "affnet/asymptotic_net.hpp"

#include <algorithm>

namespace affnet {

double AsymptoticNet::diameter() const {
  Vec3 lo = q(0, 0), hi = q(0, 0);
  for (int j = 0; j <= domain.nv; ++j)
    for (int i = 0; i <= domain.nu; ++i) {
      const Vec3& p = q(i, j);
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
  return (hi - lo).norm();
}

RealField quad_M(const AsymptoticNet& net) {
  return RealField(net.domain, SiteFamily::Quad, [&](int i, int j) {
    return det3(net.q1(i, j), net.q2(i, j), net.q2(i + 1, j));
  });
}

void assert_nondegenerate(const AsymptoticNet& net, double tol) {
  const RealField M = quad_M(net);
  for (int j = 0; j < net.domain.nv; ++j)
    for (int i = 0; i < net.domain.nu; ++i)
      if (!(M(i, j) > tol)) throw NondegeneracyError(i, j, M(i, j));
}

PlanarityReport planarity_report(const AsymptoticNet& net, double parallel_tol) {
  PlanarityReport out;
  RealField res(net.domain, SiteFamily::Vertex, kUndefined);
  for (int j = 1; j <= net.domain.nv - 1; ++j) {
    for (int i = 1; i <= net.domain.nu - 1; ++i) {
      const Vec3 e1p = net.q1(i, j), e1m = net.q1(i - 1, j);
      const Vec3 e2p = net.q2(i, j), e2m = net.q2(i, j - 1);
      const double n1p = e1p.norm(), n1m = e1m.norm();
      const double n2p = e2p.norm(), n2m = e2m.norm();
      const double scale = std::max({n1p, n1m, n2p, n2m});
      if (scale == 0.0 || n1p == 0.0 || n1m == 0.0 || n2p == 0.0 || n2m == 0.0) {
        out.degenerate_vertices.emplace_back(i, j);
        continue;
      }
      double r;
      if (cross(e1p, e1m).norm() > parallel_tol * n1p * n1m) {
        r = std::max(std::fabs(det3(e1p, e1m, e2p)), std::fabs(det3(e1p, e1m, e2m)));
      } else if (cross(e1p, e2p).norm() > parallel_tol * n1p * n2p) {
        // u-edges parallel: test the remaining edges against span{e1+, e2+}
        r = std::max(std::fabs(det3(e1p, e2p, e1m)), std::fabs(det3(e1p, e2p, e2m)));
      } else {
        out.degenerate_vertices.emplace_back(i, j);
        continue;
      }
      res.at(i, j) = r / (scale * scale * scale);
    }
  }
  out.residuals = ResidualReport("planarity", std::move(res));
  return out;
}

}  // namespace affnet
