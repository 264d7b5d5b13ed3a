// Command-line driver: generation, analysis, verification, classification,
// extraction, reconstruction and OBJ export for asymptotic nets.
//
// Exit codes: 0 success, 1 verification/classification failure,
// 2 usage or parse error. Errors go to stderr as one JSON record per line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "affnet/generators.hpp"
#include "affnet/io.hpp"
#include "affnet/structural.hpp"
#include "affnet/verify.hpp"

namespace {

using nlohmann::json;

void emit_error(const std::string& kind, const std::string& message) {
  json j{{"error", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

std::vector<affnet::Vec3> load_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw affnet::ParseError("cannot open sample file " + path);
  std::vector<affnet::Vec3> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double x, y, z;
    if (ss >> x >> y >> z) {
      out.push_back({x, y, z});
      double extra;
      if (ss >> extra)
        throw affnet::ParseError(path + ":" + std::to_string(lineno) +
                                 ": expected exactly three numbers per line");
    } else if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
      throw affnet::ParseError(path + ":" + std::to_string(lineno) + ": malformed sample line");
    }
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Discrete affine invariants of asymptotic nets"};
  app.require_subcommand(1);

  // ---- generate -----------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "Generate an example net");
  gen->require_subcommand(1);

  affnet::HyperboloidSpec hs;
  std::string out_path;
  auto* gen_hyp = gen->add_subcommand("hyperboloid",
                                      "Sampled asymptotic parametrization of a one-sheet hyperboloid");
  gen_hyp->add_option("--c", hs.c, "quadric parameter (y^2+z^2-x^2=c^2)")->capture_default_str();
  gen_hyp->add_option("--u0", hs.u0, "first u parameter")->capture_default_str();
  gen_hyp->add_option("--v0", hs.v0, "first v parameter")->capture_default_str();
  gen_hyp->add_option("--du", hs.du, "u step")->capture_default_str();
  gen_hyp->add_option("--dv", hs.dv, "v step")->capture_default_str();
  gen_hyp->add_option("--nu", hs.nu, "quad columns")->capture_default_str();
  gen_hyp->add_option("--nv", hs.nv, "quad rows")->capture_default_str();
  gen_hyp->add_option("-o,--output", out_path, "output net file")->required();

  std::string f_path, g_path;
  std::vector<double> base{0.0, 0.0, 0.0};
  auto* gen_min = gen->add_subcommand("minimal",
                                      "Minimal net from separable co-normal samples f(u)+g(v)");
  gen_min->add_option("--f-samples", f_path, "text file, one 'x y z' per line")->required();
  gen_min->add_option("--g-samples", g_path, "text file, one 'x y z' per line")->required();
  gen_min->add_option("--base", base, "base point")->expected(3);
  gen_min->add_option("-o,--output", out_path, "output net file")->required();

  // ---- analyze ------------------------------------------------------------
  std::string in_path;
  double gamma0 = 1.0;
  auto* analyze = app.add_subcommand("analyze", "Compute the affine structure and residual summaries");
  analyze->add_option("net", in_path, "input net file")->required();
  analyze->add_option("--gamma0", gamma0, "gauge seed at quad (0,0)")->capture_default_str();
  analyze->add_option("-o,--output", out_path, "output structure report")->required();

  // ---- verify ---------------------------------------------------------------
  double tol_override = -1.0;
  std::string csv_dir;
  auto* verify = app.add_subcommand("verify", "Run every residual suite; exit 0 iff all pass");
  verify->add_option("net", in_path, "input net file")->required();
  verify->add_option("--tol", tol_override, "identity-suite tolerance (default 1e-9)");
  verify->add_option("--gamma0", gamma0, "gauge seed")->capture_default_str();
  verify->add_option("--csv-dir", csv_dir, "write one residual CSV per suite into this directory");

  // ---- classify -------------------------------------------------------------
  double ctol = -1.0;
  auto* classify = app.add_subcommand("classify", "Minimal / affine-sphere / Bobenko-constant report");
  classify->add_option("net", in_path, "input net file")->required();
  classify->add_option("--tol", ctol, "classification tolerance (default 1e-8)");
  classify->add_option("--gamma0", gamma0, "gauge seed")->capture_default_str();

  // ---- extract / reconstruct -----------------------------------------------
  auto* extract = app.add_subcommand("extract", "Package (Omega, A, B, H) and the frame for reconstruction");
  extract->add_option("net", in_path, "input net file")->required();
  extract->add_option("--gamma0", gamma0, "gauge seed")->capture_default_str();
  extract->add_option("--tol", tol_override, "identity gate for the input net (default 1e-9)");
  extract->add_option("-o,--output", out_path, "output compat data file")->required();

  auto* reconstruct = app.add_subcommand("reconstruct", "Integrate compatible data into a net");
  reconstruct->add_option("data", in_path, "input compat data file")->required();
  reconstruct->add_option("-o,--output", out_path, "output net file")->required();

  auto* obj = app.add_subcommand("export-obj", "Write the net as a Wavefront OBJ quad mesh");
  obj->add_option("net", in_path, "input net file")->required();
  obj->add_option("-o,--output", out_path, "output OBJ file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      emit_error("usage", e.what());
      std::cerr << app.help() << "\n";
      return 2;
    }
    return app.exit(e);  // --help
  }

  affnet::Tolerances tol;
  if (tol_override > 0) tol.identity = tol_override;
  const double class_tol = ctol > 0 ? ctol : affnet::default_tolerances().classification;

  if (gen_hyp->parsed()) {
    auto hyp = affnet::hyperboloid_net(hs);
    affnet::save_net(hyp.net, out_path);
    std::cout << "wrote " << out_path << " (" << (hs.nu + 1) << "x" << (hs.nv + 1)
              << " vertices)\n";
    return 0;
  }
  if (gen_min->parsed()) {
    auto f = load_samples(f_path);
    auto g = load_samples(g_path);
    auto net = affnet::minimal_net(f, g, {base[0], base[1], base[2]});
    affnet::save_net(net, out_path);
    std::cout << "wrote " << out_path << " (" << net.domain.nu + 1 << "x"
              << net.domain.nv + 1 << " vertices)\n";
    return 0;
  }
  if (analyze->parsed()) {
    auto net = affnet::load_net(in_path);
    auto run = affnet::verify_net(net, gamma0, tol);
    std::ofstream out(out_path);
    if (!out) throw affnet::Error("cannot write " + out_path);
    out << affnet::structure_to_json(run.structure, &run);
    std::cout << "wrote " << out_path << "\n";
    return 0;
  }
  if (verify->parsed()) {
    auto net = affnet::load_net(in_path);
    auto run = affnet::verify_net(net, gamma0, tol);
    std::printf("%-24s %12s %12s %10s  %s\n", "suite", "max", "mean", "tol", "status");
    for (const auto& s : run.summary)
      std::printf("%-24s %12.3e %12.3e %10.1e  %s\n", s.name.c_str(), s.max_abs,
                  s.mean_abs, s.tolerance, s.passed ? "pass" : "FAIL");
    if (!csv_dir.empty())
      for (const auto& s : run.summary)
        affnet::write_residual_csv(*s.report, csv_dir + "/" + s.name + ".csv");
    std::printf("%s\n", run.all_passed ? "all suites passed" : "verification FAILED");
    return run.all_passed ? 0 : 1;
  }
  if (classify->parsed()) {
    auto net = affnet::load_net(in_path);
    auto s = affnet::build_structure(net, gamma0);
    auto minimal = affnet::is_minimal(s, class_tol);
    auto sphere = affnet::affine_sphere_residual(s, class_tol);
    std::printf("minimal:        %s  (max |h| = %.3e)\n", minimal.minimal ? "yes" : "no",
                minimal.max_abs_h);
    std::printf("affine sphere:  %s  (transport residual = %.3e)\n",
                sphere.is_sphere ? "yes" : "no", sphere.max_residual);
    if (sphere.is_sphere) {
      auto bob = affnet::bobenko_constant_test(s, class_tol);
      std::printf("Bobenko sphere: %s  (c = %.12g, spread = %.3e)\n",
                  bob.constant ? "yes" : "no", bob.c, bob.spread);
    } else {
      std::printf("Bobenko sphere: n/a (not an affine sphere)\n");
    }
    return 0;
  }
  if (extract->parsed()) {
    auto net = affnet::load_net(in_path);
    auto data = affnet::extract(net, gamma0, tol);
    affnet::save_compat(data, out_path);
    std::cout << "wrote " << out_path << "\n";
    return 0;
  }
  if (reconstruct->parsed()) {
    auto data = affnet::load_compat(in_path);
    auto result = affnet::reconstruct(data);
    affnet::save_net(result.net, out_path);
    std::printf("wrote %s (coherence residual %.3e, gauge loop residual %.3e)\n",
                out_path.c_str(), result.coherence.max_abs,
                result.gauge.loop_residual.max_abs);
    return 0;
  }
  if (obj->parsed()) {
    auto net = affnet::load_net(in_path);
    affnet::export_obj(net, out_path);
    std::cout << "wrote " << out_path << "\n";
    return 0;
  }
  emit_error("usage", "no subcommand");
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const affnet::ParseError& e) {
    emit_error("parse", e.what());
    return 2;
  } catch (const affnet::NondegeneracyError& e) {
    emit_error("degenerate_net", e.what());
    return 1;
  } catch (const affnet::GaugeError& e) {
    emit_error("gauge", e.what());
    return 1;
  } catch (const affnet::Error& e) {
    emit_error("verification", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
}
