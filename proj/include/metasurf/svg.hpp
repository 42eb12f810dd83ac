#ifndef METASURF_SVG_HPP
#define METASURF_SVG_HPP

#include <string>
#include <vector>

#include "metasurf/geometry.hpp"

namespace metasurf {

// Minimal static SVG output: polyline plus axes, no external dependencies.
void write_line_chart(const std::string& path, const std::vector<double>& xs,
                      const std::vector<double>& ys, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel);

// Before/after boundary curves in the unit cell.
void write_boundary_chart(const std::string& path, const ParticleBoundary& before,
                          const ParticleBoundary& after);

}  // namespace metasurf

#endif
