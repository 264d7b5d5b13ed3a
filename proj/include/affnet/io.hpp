#pragma once

#include <string>

#include "affnet/reconstruction.hpp"
#include "affnet/verify.hpp"

namespace affnet {

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Net file ("affnet-net", version 1): JSON with the domain and the vertex
// positions row-major (v-major, u-minor), each vertex an [x,y,z] triple.
// Numbers are written losslessly (shortest decimal that round-trips the
// double), so save -> load reproduces positions bit for bit.
void save_net(const AsymptoticNet& net, const std::string& path);
AsymptoticNet load_net(const std::string& path);
std::string net_to_json(const AsymptoticNet& net);
AsymptoticNet net_from_json(const std::string& text);

// Compat data file ("affnet-compat", version 1): domain, Omega (quad-major),
// A, B (their vertex domains, row-major), H_u, H_v (edge-major), gamma_seed
// and the four frame points.
void save_compat(const CompatData& data, const std::string& path);
CompatData load_compat(const std::string& path);
std::string compat_to_json(const CompatData& data);
CompatData compat_from_json(const std::string& text);

// Structure report: all fields of the affine structure plus residual
// summaries, for `analyze`.
std::string structure_to_json(const AffineStructure& s, const VerificationRun* run);

// Wavefront OBJ: vertices row-major, one quad face per lattice quad,
// counterclockwise as seen from the M > 0 orientation.
void export_obj(const AsymptoticNet& net, const std::string& path);

// One CSV per residual suite: i,j,residual with one row per defined site.
void write_residual_csv(const ResidualReport& report, const std::string& path);

}  // namespace affnet
