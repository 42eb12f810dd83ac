#ifndef METASURF_GREEN_HPP
#define METASURF_GREEN_HPP

#include <Eigen/Core>

#include "metasurf/cell.hpp"

namespace metasurf {

struct GreenEval {
  double value;
  Eigen::Vector2d gradient;
};

// 1-d periodic Green function of the Laplacian with unit sources on the
// integer lattice of the x1-axis:
//
//   G(x) = log(sinh^2(pi x2) + sin^2(pi x1)) / (4 pi)
//
// For |x2| > 20 the closed form is replaced by its asymptote
// |x2|/2 - log(2)/(2 pi); the dropped terms are below 1e-50.
double g_periodic(const CellPoint& offset);
Eigen::Vector2d grad_g_periodic(const CellPoint& offset);
GreenEval g_periodic_eval(const CellPoint& offset);

// Fourier-series form, the independent oracle for g_periodic:
//   |x2|/2 - log(2)/(2 pi) - sum_{n=1}^{n_terms} e^{-2 pi n |x2|} cos(2 pi n x1) / (2 pi n)
// Requires x2 != 0, n_terms >= 1.
double g_periodic_fourier(const CellPoint& offset, int n_terms);

// Half-space Dirichlet version: G(target - source) minus the mirror image
// across the plate. Vanishes identically for targets on x2 = 0.
double g_halfspace(const CellPoint& target, const CellPoint& source);
Eigen::Vector2d grad_g_halfspace(const CellPoint& target, const CellPoint& source);
GreenEval g_halfspace_eval(const CellPoint& target, const CellPoint& source);

struct KernelSplit {
  double log_part;   // log|x| / (2 pi)
  double remainder;  // smooth through 0, value log(pi^2)/(4 pi) there
};
KernelSplit kernel_split(const CellPoint& offset);

// The smooth remainder alone, evaluated in ratio form so it is usable at the
// origin (used for the Nystrom diagonal).
double g_remainder(const CellPoint& offset);

// G_halfspace(target, source) + source.x2, summed in a form that is exact to
// machine precision in the far field. Requires target.x2 > source.x2.
double g_halfspace_tail(const CellPoint& target, const CellPoint& source);

}  // namespace metasurf

#endif
