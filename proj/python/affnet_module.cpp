// Python bindings: the main operations with numpy in/out. Vertex arrays are
// (nu+1, nv+1, 3) with [i, j] = lattice (u, v); scalar fields keep their
// family grids with NaN at undefined sites.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "affnet/generators.hpp"
#include "affnet/io.hpp"
#include "affnet/structural.hpp"
#include "affnet/verify.hpp"

namespace py = pybind11;
using namespace affnet;

namespace {

AsymptoticNet net_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
  if (arr.ndim() != 3 || arr.shape(2) != 3)
    throw Error("expected a (nu+1, nv+1, 3) vertex array");
  const int nu = static_cast<int>(arr.shape(0)) - 1;
  const int nv = static_cast<int>(arr.shape(1)) - 1;
  StaggeredDomain dom(nu, nv);
  auto a = arr.unchecked<3>();
  Vec3Field q(dom, SiteFamily::Vertex, [&](int i, int j) {
    return Vec3{a(i, j, 0), a(i, j, 1), a(i, j, 2)};
  });
  return AsymptoticNet(dom, std::move(q));
}

py::array_t<double> vec_field_to_array(const Vec3Field& f) {
  py::array_t<double> out({f.cols(), f.rows(), 3});
  auto a = out.mutable_unchecked<3>();
  for (int i = 0; i < f.cols(); ++i)
    for (int j = 0; j < f.rows(); ++j) {
      const Vec3& v = f(i, j);
      a(i, j, 0) = v.x; a(i, j, 1) = v.y; a(i, j, 2) = v.z;
    }
  return out;
}

py::array_t<double> real_field_to_array(const RealField& f) {
  py::array_t<double> out({f.cols(), f.rows()});
  auto a = out.mutable_unchecked<2>();
  for (int i = 0; i < f.cols(); ++i)
    for (int j = 0; j < f.rows(); ++j) a(i, j) = f(i, j);
  return out;
}

py::dict structure_dict(const AffineStructure& s) {
  py::dict d;
  d["M"] = real_field_to_array(s.M);
  d["Omega"] = real_field_to_array(s.omega);
  d["gamma"] = real_field_to_array(s.gamma);
  d["nu"] = vec_field_to_array(s.nu);
  d["xi"] = vec_field_to_array(s.xi);
  d["A"] = real_field_to_array(s.A);
  d["B"] = real_field_to_array(s.B);
  d["p_u"] = real_field_to_array(s.p_u);
  d["p_v"] = real_field_to_array(s.p_v);
  d["h_u"] = real_field_to_array(s.h_u);
  d["h_v"] = real_field_to_array(s.h_v);
  d["H_u"] = real_field_to_array(s.H_u);
  d["H_v"] = real_field_to_array(s.H_v);
  return d;
}

py::list summary_list(const VerificationRun& run) {
  py::list rows;
  for (const auto& r : run.summary) {
    py::dict d;
    d["suite"] = r.name;
    d["max_abs"] = r.max_abs;
    d["mean_abs"] = r.mean_abs;
    d["argmax"] = py::make_tuple(r.argmax_i, r.argmax_j);
    d["tolerance"] = r.tolerance;
    d["passed"] = r.passed;
    rows.append(d);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_affnet, m) {
  m.doc() = "Discrete affine invariants of asymptotic nets";

  py::register_exception<Error>(m, "AffnetError");

  m.def("hyperboloid_net",
        [](double c, double u0, double v0, double du, double dv, int nu, int nv) {
          HyperboloidSpec spec{c, u0, v0, du, dv, nu, nv};
          auto r = hyperboloid_net(spec);
          return vec_field_to_array(r.net.q);
        },
        py::arg("c") = 1.0, py::arg("u0") = 1.0, py::arg("v0") = 1.0,
        py::arg("du") = 0.1, py::arg("dv") = 0.2, py::arg("nu") = 10, py::arg("nv") = 5,
        "Vertex positions of the sampled one-sheet hyperboloid");

  m.def("paraboloid_net",
        [](int nu, int nv) { return vec_field_to_array(paraboloid_net(nu, nv).q); },
        py::arg("nu") = 6, py::arg("nv") = 6);

  m.def("minimal_net",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> f,
           py::array_t<double, py::array::c_style | py::array::forcecast> g,
           std::array<double, 3> base) {
          if (f.ndim() != 2 || f.shape(1) != 3 || g.ndim() != 2 || g.shape(1) != 3)
            throw Error("f and g must be (n, 3) arrays");
          std::vector<Vec3> fs, gs;
          auto fa = f.unchecked<2>(), ga = g.unchecked<2>();
          for (py::ssize_t k = 0; k < f.shape(0); ++k)
            fs.push_back({fa(k, 0), fa(k, 1), fa(k, 2)});
          for (py::ssize_t k = 0; k < g.shape(0); ++k)
            gs.push_back({ga(k, 0), ga(k, 1), ga(k, 2)});
          return vec_field_to_array(
              minimal_net(fs, gs, {base[0], base[1], base[2]}).q);
        },
        py::arg("f"), py::arg("g"), py::arg("base") = std::array<double, 3>{0, 0, 0},
        "Integrate a minimal net from separable co-normal samples f(u) + g(v)");

  m.def("quad_M",
        [](py::array_t<double> verts) { return real_field_to_array(quad_M(net_from_array(verts))); });

  m.def("planarity",
        [](py::array_t<double> verts) {
          auto r = planarity_report(net_from_array(verts));
          return py::make_tuple(real_field_to_array(r.residuals.values),
                                r.residuals.max_abs);
        });

  m.def("build_structure",
        [](py::array_t<double> verts, double gamma0) {
          AsymptoticNet net = net_from_array(verts);
          AffineStructure s = build_structure(net, gamma0);
          return structure_dict(s);
        },
        py::arg("vertices"), py::arg("gamma0") = 1.0,
        "Omega, gamma, nu, xi, A, B, p, h, H as numpy arrays");

  m.def("verify",
        [](py::array_t<double> verts, double gamma0, double tol) {
          AsymptoticNet net = net_from_array(verts);
          Tolerances t;
          if (tol > 0) t.identity = tol;
          VerificationRun run = verify_net(net, gamma0, t);
          return py::make_tuple(run.all_passed, summary_list(run));
        },
        py::arg("vertices"), py::arg("gamma0") = 1.0, py::arg("tol") = -1.0,
        "Run every residual suite; returns (all_passed, [suite rows])");

  m.def("classify",
        [](py::array_t<double> verts, double gamma0, double tol) {
          AsymptoticNet net = net_from_array(verts);
          AffineStructure s = build_structure(net, gamma0);
          const double t = tol > 0 ? tol : default_tolerances().classification;
          auto minimal = is_minimal(s, t);
          auto sphere = affine_sphere_residual(s, t);
          py::dict d;
          d["minimal"] = minimal.minimal;
          d["max_abs_h"] = minimal.max_abs_h;
          d["affine_sphere"] = sphere.is_sphere;
          d["sphere_residual"] = sphere.max_residual;
          if (sphere.is_sphere) {
            auto bob = bobenko_constant_test(s, t);
            d["bobenko_constant"] = bob.constant;
            d["bobenko_c"] = bob.c;
            d["bobenko_spread"] = bob.spread;
          }
          return d;
        },
        py::arg("vertices"), py::arg("gamma0") = 1.0, py::arg("tol") = -1.0);

  m.def("extract_reconstruct",
        [](py::array_t<double> verts, double gamma_seed) {
          AsymptoticNet net = net_from_array(verts);
          CompatData data = extract(net, gamma_seed);
          ReconstructionResult r = reconstruct(data);
          AlignmentResult align = affine_align(r.net, net);
          return py::make_tuple(vec_field_to_array(r.net.q), align.residual,
                                r.coherence.max_abs);
        },
        py::arg("vertices"), py::arg("gamma_seed") = 1.0,
        "Round-trip extract -> reconstruct; returns (vertices, alignment residual, coherence)");

  m.def("save_net", [](py::array_t<double> verts, const std::string& path) {
    save_net(net_from_array(verts), path);
  });
  m.def("load_net", [](const std::string& path) {
    return vec_field_to_array(load_net(path).q);
  });
}
