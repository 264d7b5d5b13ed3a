#include "affnet/generators.hpp"

#include <cmath>

#include "affnet/affine_structure.hpp"

namespace affnet {

namespace {
double sh(double x) { return std::sinh(x); }
double ch(double x) { return std::cosh(x); }
}  // namespace

Vec3 AnalyticHyperboloid::q(int i, int j) const {
  const double u = uat(i), v = vat(j);
  const double s = sh(u + v);
  return Vec3{-ch(u - v), -sh(u - v), ch(u + v)} * (s_.c / s);
}

Vec3 AnalyticHyperboloid::nu(int i, int j) const {
  const double u = uat(i), v = vat(j);
  const double s = sh(u + v);
  return Vec3{ch(u - v), sh(v - u), ch(u + v)} * (std::sqrt(s_.c) / s);
}

Vec3 AnalyticHyperboloid::q1(int i, int j) const {
  const double u = uat(i), v = vat(j);
  const double s = u + v;
  const double f = s_.c * sh(s_.du) / (sh(s) * sh(s + s_.du));
  return Vec3{ch(2 * v), -sh(2 * v), -1} * f;
}

Vec3 AnalyticHyperboloid::q2(int i, int j) const {
  const double u = uat(i), v = vat(j);
  const double s = u + v;
  const double f = s_.c * sh(s_.dv) / (sh(s) * sh(s + s_.dv));
  return Vec3{ch(2 * u), sh(2 * u), -1} * f;
}

double AnalyticHyperboloid::Omega(int i, int j) const {
  const double s = uat(i) + vat(j);
  return 2.0 * std::pow(s_.c, 1.5) * sh(s_.du) * sh(s_.dv) /
         std::sqrt(sh(s + s_.du + s_.dv) * sh(s + s_.du) * sh(s + s_.dv) * sh(s));
}

double AnalyticHyperboloid::gamma(int i, int j) const {
  const double s = uat(i) + vat(j);
  return std::sqrt(sh(s + s_.du + s_.dv) * sh(s) / (sh(s + s_.du) * sh(s + s_.dv)));
}

Vec3 AnalyticHyperboloid::xi(int i, int j) const {
  const double u = uat(i), v = vat(j);
  const double s = u + v;
  const double den = 2.0 * std::sqrt(s_.c) *
                     std::sqrt(sh(s + s_.dv) * sh(s + s_.du + s_.dv) * sh(s) * sh(s + s_.du));
  return Vec3{-ch(s_.du) * sh(2 * v + s_.dv) - ch(s_.dv) * sh(2 * u + s_.du),
              ch(s_.du) * ch(2 * v + s_.dv) - ch(s_.dv) * ch(2 * u + s_.du),
              sh(2 * u + 2 * v + s_.du + s_.dv)} /
         den;
}

double AnalyticHyperboloid::p_v(int i, int j) const {
  const double s = uat(i) + vat(j);
  return std::sqrt(sh(s - s_.du) * sh(s + s_.du + s_.dv) /
                   (sh(s - s_.du + s_.dv) * sh(s + s_.du)));
}

double AnalyticHyperboloid::p_u(int i, int j) const {
  const double s = uat(i) + vat(j);
  return std::sqrt(sh(s - s_.dv) * sh(s + s_.du + s_.dv) /
                   (sh(s + s_.dv) * sh(s + s_.du - s_.dv)));
}

double AnalyticHyperboloid::h_v(int i, int j) const {
  const double s = uat(i) + vat(j);
  return -2.0 * sh(s_.dv) * sh(s_.du) * ch(s_.du) /
         std::sqrt(sh(s - s_.du) * sh(s + s_.du) * sh(s - s_.du + s_.dv) *
                   sh(s + s_.du + s_.dv));
}

double AnalyticHyperboloid::h_u(int i, int j) const {
  const double s = uat(i) + vat(j);
  return -2.0 * sh(s_.du) * sh(s_.dv) * ch(s_.dv) /
         std::sqrt(sh(s - s_.dv) * sh(s + s_.dv) * sh(s + s_.du - s_.dv) *
                   sh(s + s_.du + s_.dv));
}

double AnalyticHyperboloid::H_v(int i, int j) const {
  const double s = uat(i) + vat(j);
  return std::pow(s_.c, -1.5) * ch(s_.du) * std::sqrt(sh(s + s_.dv) * sh(s)) /
         std::pow(sh(s - s_.du) * sh(s + s_.du) * sh(s - s_.du + s_.dv) *
                      sh(s + s_.du + s_.dv),
                  0.25);
}

double AnalyticHyperboloid::H_u(int i, int j) const {
  const double s = uat(i) + vat(j);
  return std::pow(s_.c, -1.5) * ch(s_.dv) * std::sqrt(sh(s + s_.du) * sh(s)) /
         std::pow(sh(s - s_.dv) * sh(s + s_.dv) * sh(s + s_.du - s_.dv) *
                      sh(s + s_.du + s_.dv),
                  0.25);
}

double AnalyticHyperboloid::smooth_H() const { return std::pow(s_.c, -1.5); }

HyperboloidNet hyperboloid_net(const HyperboloidSpec& spec) {
  if (!(spec.c > 0.0) || !(spec.du > 0.0) || !(spec.dv > 0.0))
    throw Error("hyperboloid_net: c, du, dv must be positive");
  if (!(spec.u0 + spec.v0 > 0.0))
    throw Error("hyperboloid_net: u0 + v0 must be positive (sampling touches the"
                " parametrization singularity u+v = 0)");
  AnalyticHyperboloid an(spec);
  StaggeredDomain dom(spec.nu, spec.nv);
  Vec3Field q(dom, SiteFamily::Vertex, [&](int i, int j) { return an.q(i, j); });
  return {AsymptoticNet(dom, std::move(q)), an};
}

AsymptoticNet paraboloid_net(int nu, int nv) {
  StaggeredDomain dom(nu, nv);
  Vec3Field q(dom, SiteFamily::Vertex, [&](int i, int j) {
    return Vec3{double(j), double(i), -double(i) * double(j)};
  });
  return AsymptoticNet(dom, std::move(q));
}

namespace {

void check_conormal_orientation(const Vec3Field& nu) {
  const StaggeredDomain& dom = nu.domain();
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i < dom.nu; ++i) {
      const double o = -det3(nu(i, j), nu(i + 1, j) - nu(i, j), nu(i, j + 1) - nu(i, j));
      if (!(o > 0.0))
        throw Error("co-normal samples are degenerate or inconsistently oriented at "
                    "vertex (" + std::to_string(i) + "," + std::to_string(j) +
                    "): -[nu, nu_1, nu_2] = " + std::to_string(o));
    }
}

AsymptoticNet integrate_rows(const Vec3Field& nu, const Vec3& base) {
  const StaggeredDomain& dom = nu.domain();
  Vec3Field q(dom, SiteFamily::Vertex);
  q.at(0, 0) = base;
  for (int i = 0; i < dom.nu; ++i)
    q.at(i + 1, 0) = q(i, 0) + cross(nu(i, 0), nu(i + 1, 0));
  for (int j = 0; j < dom.nv; ++j)
    for (int i = 0; i <= dom.nu; ++i)
      q.at(i, j + 1) = q(i, j) - cross(nu(i, j), nu(i, j + 1));
  return AsymptoticNet(dom, std::move(q));
}

ResidualReport closure_report(const Vec3Field& nu) {
  const StaggeredDomain& dom = nu.domain();
  RealField r(dom, SiteFamily::Quad, [&](int i, int j) {
    const Vec3 d = cross(nu(i, j) + nu(i + 1, j + 1), nu(i + 1, j) + nu(i, j + 1));
    double scale = 0.0;
    for (auto [di, dj] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
      const double n = nu(i + di, j + dj).norm();
      scale = std::max(scale, n * n);
    }
    return d.norm() / std::max(scale, 1e-300);
  });
  return ResidualReport("lelieuvre_closure", std::move(r));
}

}  // namespace

AsymptoticNet minimal_net(const std::vector<Vec3>& f_samples,
                          const std::vector<Vec3>& g_samples, const Vec3& base) {
  if (f_samples.size() < 2 || g_samples.size() < 2)
    throw Error("minimal_net: need at least two samples per curve");
  StaggeredDomain dom(static_cast<int>(f_samples.size()) - 1,
                      static_cast<int>(g_samples.size()) - 1);
  Vec3Field nu(dom, SiteFamily::Vertex,
               [&](int i, int j) { return f_samples[i] + g_samples[j]; });
  check_conormal_orientation(nu);
  AsymptoticNet net = integrate_rows(nu, base);
  assert_nondegenerate(net);
  return net;
}

LelieuvreIntegration integrate_lelieuvre(const Vec3Field& nu, const Vec3& base) {
  nu.require_family(SiteFamily::Vertex, "integrate_lelieuvre");
  LelieuvreIntegration out{integrate_rows(nu, base), closure_report(nu), ResidualReport{}};
  return out;
}

LelieuvreIntegration integrate_lelieuvre(const Vec3Field& nu, const RealField& gamma,
                                         const Vec3& base) {
  LelieuvreIntegration out = integrate_lelieuvre(nu, base);
  out.moutard = moutard_residual(nu, gamma);
  return out;
}

}  // namespace affnet
