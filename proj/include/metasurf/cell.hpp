#ifndef METASURF_CELL_HPP
#define METASURF_CELL_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace metasurf {

// Point in the rescaled periodic cell: x1 is the lattice direction (period 1),
// x2 the height above the plate.
struct CellPoint {
  double x1 = 0.0;
  double x2 = 0.0;
};

// Canonical representative of x1 in (-1/2, 1/2].
inline double wrap_half(double x1) {
  double y = x1 - std::floor(x1 + 0.5);
  if (y <= -0.5) y += 1.0;
  return y;
}

// Offsets closer than this to a lattice point (n, 0) are treated as singular.
inline constexpr double kLatticeTol = 1e-12;

// Minimum distance of any boundary point from the plate and the cell walls.
inline constexpr double kCellMargin = 1e-3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace metasurf

#endif
