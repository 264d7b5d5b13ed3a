#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "affnet/staggered_grid.hpp"

namespace affnet {

// Per-site residual field plus summary statistics. Sites where a residual is
// not defined hold NaN and are skipped by the statistics.
struct ResidualReport {
  std::string name;
  RealField values;  // NaN = undefined at that site
  double max_abs = 0.0;
  double mean_abs = 0.0;
  int argmax_i = -1;
  int argmax_j = -1;
  long defined_sites = 0;

  ResidualReport() = default;
  ResidualReport(std::string name_, RealField field) : name(std::move(name_)), values(std::move(field)) {
    recompute();
  }

  void recompute() {
    max_abs = 0.0;
    mean_abs = 0.0;
    defined_sites = 0;
    argmax_i = argmax_j = -1;
    double sum = 0.0;
    for (int j = 0; j < values.rows(); ++j) {
      for (int i = 0; i < values.cols(); ++i) {
        double r = values(i, j);
        if (!std::isfinite(r)) continue;
        ++defined_sites;
        double a = std::fabs(r);
        sum += a;
        if (a > max_abs) {
          max_abs = a;
          argmax_i = i;
          argmax_j = j;
        }
      }
    }
    if (defined_sites > 0) mean_abs = sum / static_cast<double>(defined_sites);
  }

  bool passes(double tol) const { return max_abs <= tol; }
};

constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

}  // namespace affnet
