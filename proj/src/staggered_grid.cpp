#include "affnet/staggered_grid.hpp"

namespace affnet {

const char* family_name(SiteFamily f) {
  switch (f) {
    case SiteFamily::Vertex: return "vertex";
    case SiteFamily::UEdge: return "u-edge";
    case SiteFamily::VEdge: return "v-edge";
    case SiteFamily::Quad: return "quad";
  }
  return "?";
}

}  // namespace affnet
