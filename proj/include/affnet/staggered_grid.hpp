#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "affnet/vec3.hpp"

namespace affnet {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Site families of the staggered lattice. Every site is addressed by the
// integer pair (i,j) of its lower-left generating vertex:
//   vertex (u,v)        -> (u,v),   0<=u<=nu, 0<=v<=nv
//   u-edge (u+1/2,v)    -> (u,v),   0<=u<nu,  0<=v<=nv
//   v-edge (u,v+1/2)    -> (u,v),   0<=u<=nu, 0<=v<nv
//   quad   (u+1/2,v+1/2)-> (u,v),   0<=u<nu,  0<=v<nv
// This one convention is used by every module; all half-integer site
// arguments in formulas reduce to it.
enum class SiteFamily { Vertex, UEdge, VEdge, Quad };

const char* family_name(SiteFamily f);

struct StaggeredDomain {
  int nu = 0;  // quad columns
  int nv = 0;  // quad rows

  StaggeredDomain() = default;
  StaggeredDomain(int nu_, int nv_) : nu(nu_), nv(nv_) {
    if (nu < 1 || nv < 1) throw Error("StaggeredDomain: nu and nv must be positive");
  }

  bool operator==(const StaggeredDomain& o) const { return nu == o.nu && nv == o.nv; }
  bool operator!=(const StaggeredDomain& o) const { return !(*this == o); }

  int cols(SiteFamily f) const {
    return (f == SiteFamily::Vertex || f == SiteFamily::VEdge) ? nu + 1 : nu;
  }
  int rows(SiteFamily f) const {
    return (f == SiteFamily::Vertex || f == SiteFamily::UEdge) ? nv + 1 : nv;
  }
  std::size_t count(SiteFamily f) const {
    return static_cast<std::size_t>(cols(f)) * static_cast<std::size_t>(rows(f));
  }
  bool contains(SiteFamily f, int i, int j) const {
    return i >= 0 && j >= 0 && i < cols(f) && j < rows(f);
  }

  bool interior_vertex(int i, int j) const {
    return i >= 1 && i <= nu - 1 && j >= 1 && j <= nv - 1;
  }
  // interior u-edge (u+1/2,v): both quads (u+1/2, v +- 1/2) exist
  bool interior_u_edge(int i, int j) const {
    return i >= 0 && i < nu && j >= 1 && j <= nv - 1;
  }
  // interior v-edge (u,v+1/2): both quads (u +- 1/2, v+1/2) exist
  bool interior_v_edge(int i, int j) const {
    return i >= 1 && i <= nu - 1 && j >= 0 && j < nv;
  }
};

// Dense per-site storage for one family. Values are immutable in normal use:
// construct with a generator and read through operator(). Out-of-range reads
// throw, never wrap.
template <class T>
class SiteField {
 public:
  SiteField() = default;
  SiteField(const StaggeredDomain& dom, SiteFamily fam, const T& fill = T{})
      : dom_(dom), fam_(fam), values_(dom.count(fam), fill) {}
  SiteField(const StaggeredDomain& dom, SiteFamily fam,
            const std::function<T(int, int)>& gen)
      : dom_(dom), fam_(fam), values_(dom.count(fam)) {
    for (int j = 0; j < dom_.rows(fam_); ++j)
      for (int i = 0; i < dom_.cols(fam_); ++i)
        values_[idx(i, j)] = gen(i, j);
  }

  const StaggeredDomain& domain() const { return dom_; }
  SiteFamily family() const { return fam_; }
  int cols() const { return dom_.cols(fam_); }
  int rows() const { return dom_.rows(fam_); }
  std::size_t size() const { return values_.size(); }

  const T& operator()(int i, int j) const {
    check(i, j);
    return values_[idx(i, j)];
  }
  T& at(int i, int j) {
    check(i, j);
    return values_[idx(i, j)];
  }

  const std::vector<T>& raw() const { return values_; }

  void require_family(SiteFamily expected, const char* op) const {
    if (fam_ != expected)
      throw Error(std::string(op) + ": expected a " + family_name(expected) +
                  " field, got " + family_name(fam_));
  }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(j) * dom_.cols(fam_) + i;
  }
  void check(int i, int j) const {
    if (!dom_.contains(fam_, i, j))
      throw Error(std::string(family_name(fam_)) + " index (" + std::to_string(i) +
                  "," + std::to_string(j) + ") out of range for domain " +
                  std::to_string(dom_.nu) + "x" + std::to_string(dom_.nv));
  }

  StaggeredDomain dom_;
  SiteFamily fam_ = SiteFamily::Vertex;
  std::vector<T> values_;
};

using RealField = SiteField<double>;
using Vec3Field = SiteField<Vec3>;

// f_1 = forward difference in u: vertex -> u-edge, v-edge -> quad.
template <class T>
SiteField<T> diff1(const SiteField<T>& f) {
  SiteFamily out;
  if (f.family() == SiteFamily::Vertex)
    out = SiteFamily::UEdge;
  else if (f.family() == SiteFamily::VEdge)
    out = SiteFamily::Quad;
  else
    throw Error("diff1: expected a vertex or v-edge field");
  return SiteField<T>(f.domain(), out,
                      [&](int i, int j) { return f(i + 1, j) - f(i, j); });
}

// f_2 = forward difference in v: vertex -> v-edge, u-edge -> quad.
template <class T>
SiteField<T> diff2(const SiteField<T>& f) {
  SiteFamily out;
  if (f.family() == SiteFamily::Vertex)
    out = SiteFamily::VEdge;
  else if (f.family() == SiteFamily::UEdge)
    out = SiteFamily::Quad;
  else
    throw Error("diff2: expected a vertex or u-edge field");
  return SiteField<T>(f.domain(), out,
                      [&](int i, int j) { return f(i, j + 1) - f(i, j); });
}

// f_12(u+1/2,v+1/2) = f(u+1,v+1) + f(u,v) - f(u+1,v) - f(u,v+1), vertex -> quad.
// Association matches diff1(diff2(f)) so the composition is the stencil.
template <class T>
SiteField<T> mixed12(const SiteField<T>& f) {
  f.require_family(SiteFamily::Vertex, "mixed12");
  return SiteField<T>(f.domain(), SiteFamily::Quad, [&](int i, int j) {
    return (f(i + 1, j + 1) - f(i + 1, j)) - (f(i, j + 1) - f(i, j));
  });
}

}  // namespace affnet
