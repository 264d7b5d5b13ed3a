#include "affnet/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace affnet {

using nlohmann::json;

namespace {

constexpr const char* kNetMagic = "affnet-net";
constexpr const char* kCompatMagic = "affnet-compat";
constexpr int kVersion = 1;

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3)
    throw ParseError(std::string(what) + ": expected a 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

// row-major (v-major) flattening of a field over its full family grid; NaN is
// stored as null so the JSON stays standard
template <class Get>
json field_to_json(const StaggeredDomain& dom, SiteFamily fam, Get get) {
  json arr = json::array();
  for (int j = 0; j < dom.rows(fam); ++j)
    for (int i = 0; i < dom.cols(fam); ++i) {
      const double v = get(i, j);
      if (std::isfinite(v))
        arr.push_back(v);
      else
        arr.push_back(nullptr);
    }
  return arr;
}

RealField field_from_json(const StaggeredDomain& dom, SiteFamily fam, const json& arr,
                          const char* what) {
  if (!arr.is_array() || arr.size() != dom.count(fam))
    throw ParseError(std::string(what) + ": expected " + std::to_string(dom.count(fam)) +
                     " values for the " + family_name(fam) + " grid, got " +
                     std::to_string(arr.is_array() ? arr.size() : 0));
  RealField f(dom, fam, kUndefined);
  std::size_t k = 0;
  for (int j = 0; j < dom.rows(fam); ++j)
    for (int i = 0; i < dom.cols(fam); ++i, ++k)
      if (!arr[k].is_null()) f.at(i, j) = arr[k].get<double>();
  return f;
}

StaggeredDomain domain_from_json(const json& j) {
  if (!j.contains("domain") || !j["domain"].contains("nu") || !j["domain"].contains("nv"))
    throw ParseError("missing domain {nu, nv}");
  const int nu = j["domain"]["nu"].get<int>();
  const int nv = j["domain"]["nv"].get<int>();
  if (nu < 1 || nv < 1) throw ParseError("domain: nu and nv must be positive");
  return StaggeredDomain(nu, nv);
}

void check_header(const json& j, const char* magic) {
  if (!j.contains("format") || j["format"] != magic)
    throw ParseError(std::string("not an ") + magic + " file");
  if (!j.contains("version") || j["version"].get<int>() != kVersion)
    throw ParseError(std::string(magic) + ": unsupported version");
}

}  // namespace

std::string net_to_json(const AsymptoticNet& net) {
  json j;
  j["format"] = kNetMagic;
  j["version"] = kVersion;
  j["domain"] = {{"nu", net.domain.nu}, {"nv", net.domain.nv}};
  json verts = json::array();
  for (int v = 0; v <= net.domain.nv; ++v)
    for (int u = 0; u <= net.domain.nu; ++u) verts.push_back(vec_to_json(net.q(u, v)));
  j["vertices"] = std::move(verts);
  return j.dump(1, '\t') + "\n";
}

AsymptoticNet net_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  check_header(j, kNetMagic);
  const StaggeredDomain dom = domain_from_json(j);
  if (!j.contains("vertices")) throw ParseError("missing vertices");
  const json& verts = j["vertices"];
  if (!verts.is_array() || verts.size() != dom.count(SiteFamily::Vertex))
    throw ParseError("vertices: expected " + std::to_string(dom.count(SiteFamily::Vertex)) +
                     " entries, got " + std::to_string(verts.is_array() ? verts.size() : 0));
  Vec3Field q(dom, SiteFamily::Vertex);
  std::size_t k = 0;
  for (int v = 0; v <= dom.nv; ++v)
    for (int u = 0; u <= dom.nu; ++u, ++k) q.at(u, v) = vec_from_json(verts[k], "vertex");
  return AsymptoticNet(dom, std::move(q));
}

void save_net(const AsymptoticNet& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << net_to_json(net);
  if (!out) throw Error("write failed for " + path);
}

AsymptoticNet load_net(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return net_from_json(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string compat_to_json(const CompatData& d) {
  json j;
  j["format"] = kCompatMagic;
  j["version"] = kVersion;
  j["domain"] = {{"nu", d.domain.nu}, {"nv", d.domain.nv}};
  j["gamma_seed"] = d.gamma_seed;
  j["frame"] = json::array({vec_to_json(d.frame[0]), vec_to_json(d.frame[1]),
                            vec_to_json(d.frame[2]), vec_to_json(d.frame[3])});
  j["frame_det"] = d.frame_det();
  j["Omega"] = field_to_json(d.domain, SiteFamily::Quad,
                             [&](int i, int jj) { return d.Omega(i, jj); });
  j["A"] = field_to_json(d.domain, SiteFamily::Vertex,
                         [&](int i, int jj) { return d.A(i, jj); });
  j["B"] = field_to_json(d.domain, SiteFamily::Vertex,
                         [&](int i, int jj) { return d.B(i, jj); });
  j["H_u"] = field_to_json(d.domain, SiteFamily::UEdge,
                           [&](int i, int jj) { return d.H_u(i, jj); });
  j["H_v"] = field_to_json(d.domain, SiteFamily::VEdge,
                           [&](int i, int jj) { return d.H_v(i, jj); });
  return j.dump(1, '\t') + "\n";
}

CompatData compat_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  check_header(j, kCompatMagic);
  CompatData d;
  d.domain = domain_from_json(j);
  for (const char* key : {"gamma_seed", "frame", "Omega", "A", "B", "H_u", "H_v"})
    if (!j.contains(key)) throw ParseError(std::string("missing field: ") + key);
  d.gamma_seed = j["gamma_seed"].get<double>();
  if (!j["frame"].is_array() || j["frame"].size() != 4)
    throw ParseError("frame: expected 4 points");
  for (int k = 0; k < 4; ++k) d.frame[k] = vec_from_json(j["frame"][k], "frame point");
  d.Omega = field_from_json(d.domain, SiteFamily::Quad, j["Omega"], "Omega");
  d.A = field_from_json(d.domain, SiteFamily::Vertex, j["A"], "A");
  d.B = field_from_json(d.domain, SiteFamily::Vertex, j["B"], "B");
  d.H_u = field_from_json(d.domain, SiteFamily::UEdge, j["H_u"], "H_u");
  d.H_v = field_from_json(d.domain, SiteFamily::VEdge, j["H_v"], "H_v");
  return d;
}

void save_compat(const CompatData& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << compat_to_json(data);
  if (!out) throw Error("write failed for " + path);
}

CompatData load_compat(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return compat_from_json(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string structure_to_json(const AffineStructure& s, const VerificationRun* run) {
  const StaggeredDomain& dom = s.net.domain;
  json j;
  j["format"] = "affnet-structure";
  j["version"] = kVersion;
  j["domain"] = {{"nu", dom.nu}, {"nv", dom.nv}};
  j["gamma_seed"] = s.gamma_seed;
  j["Omega"] = field_to_json(dom, SiteFamily::Quad, [&](int i, int jj) { return s.omega(i, jj); });
  j["M"] = field_to_json(dom, SiteFamily::Quad, [&](int i, int jj) { return s.M(i, jj); });
  j["gamma"] = field_to_json(dom, SiteFamily::Quad, [&](int i, int jj) { return s.gamma(i, jj); });
  json nus = json::array();
  for (int v = 0; v <= dom.nv; ++v)
    for (int u = 0; u <= dom.nu; ++u) nus.push_back(vec_to_json(s.nu(u, v)));
  j["nu"] = std::move(nus);
  json xis = json::array();
  for (int v = 0; v < dom.nv; ++v)
    for (int u = 0; u < dom.nu; ++u) xis.push_back(vec_to_json(s.xi(u, v)));
  j["xi"] = std::move(xis);
  j["A"] = field_to_json(dom, SiteFamily::Vertex, [&](int i, int jj) { return s.A(i, jj); });
  j["B"] = field_to_json(dom, SiteFamily::Vertex, [&](int i, int jj) { return s.B(i, jj); });
  j["p_u"] = field_to_json(dom, SiteFamily::UEdge, [&](int i, int jj) { return s.p_u(i, jj); });
  j["p_v"] = field_to_json(dom, SiteFamily::VEdge, [&](int i, int jj) { return s.p_v(i, jj); });
  j["h_u"] = field_to_json(dom, SiteFamily::UEdge, [&](int i, int jj) { return s.h_u(i, jj); });
  j["h_v"] = field_to_json(dom, SiteFamily::VEdge, [&](int i, int jj) { return s.h_v(i, jj); });
  j["H_u"] = field_to_json(dom, SiteFamily::UEdge, [&](int i, int jj) { return s.H_u(i, jj); });
  j["H_v"] = field_to_json(dom, SiteFamily::VEdge, [&](int i, int jj) { return s.H_v(i, jj); });
  if (run) {
    json suites = json::array();
    for (const auto& r : run->summary)
      suites.push_back({{"suite", r.name},
                        {"max_abs", r.max_abs},
                        {"mean_abs", r.mean_abs},
                        {"argmax", {r.argmax_i, r.argmax_j}},
                        {"tolerance", r.tolerance},
                        {"passed", r.passed}});
    j["residual_suites"] = std::move(suites);
  }
  return j.dump(1, '\t') + "\n";
}

void export_obj(const AsymptoticNet& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "# asymptotic net, " << (net.domain.nu + 1) << "x" << (net.domain.nv + 1)
      << " vertices\n";
  char buf[128];
  for (int v = 0; v <= net.domain.nv; ++v)
    for (int u = 0; u <= net.domain.nu; ++u) {
      const Vec3& p = net.q(u, v);
      std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p.x, p.y, p.z);
      out << buf;
    }
  const int stride = net.domain.nu + 1;
  for (int v = 0; v < net.domain.nv; ++v)
    for (int u = 0; u < net.domain.nu; ++u) {
      const int a = v * stride + u + 1;  // OBJ indices are 1-based
      out << "f " << a << " " << a + 1 << " " << a + 1 + stride << " " << a + stride
          << "\n";
    }
  if (!out) throw Error("write failed for " + path);
}

void write_residual_csv(const ResidualReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "i,j,residual\n";
  char buf[64];
  for (int j = 0; j < report.values.rows(); ++j)
    for (int i = 0; i < report.values.cols(); ++i) {
      const double r = report.values(i, j);
      if (!std::isfinite(r)) continue;
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", i, j, r);
      out << buf;
    }
  if (!out) throw Error("write failed for " + path);
}

}  // namespace affnet
