#ifndef METASURF_SHAPE_OPTIM_HPP
#define METASURF_SHAPE_OPTIM_HPP

#include <string>

#include "metasurf/impedance.hpp"

namespace metasurf {

// Traces of the auxiliary transmission fields v, w on the boundary. v is
// represented as x2 + S[psi]; w is v outside the particle and (mu_m/mu_c) v
// inside (this solves the w-system exactly: the trace jump and flux
// continuity reduce to v's transmission conditions).
struct AuxiliaryFields {
  Eigen::VectorXcd density;   // single-layer density psi of v
  Cplx rho;                   // mu_m / mu_c
  Eigen::VectorXcd trace;     // interior boundary trace (v|- or w|-)
  Eigen::VectorXcd dn_minus;  // interior normal derivative
  Eigen::VectorXcd dt_minus;  // interior tangential derivative
  bool is_w = false;
};

AuxiliaryFields solve_auxiliary_v(const PeriodicOperators& ops,
                                  const ParticleBoundary& b, Cplx mu_ratio);
AuxiliaryFields solve_auxiliary_w(const PeriodicOperators& ops,
                                  const ParticleBoundary& b, Cplx mu_ratio);

// Field value off the boundary (inside flag selects the branch for w). Pass a
// FineEvaluator primed with fields.density for near-boundary probes.
Cplx evaluate_auxiliary(const ParticleBoundary& b, const AuxiliaryFields& fields,
                        CellPoint x, bool inside,
                        const FineEvaluator* fine = nullptr);

struct ShapeGradient {
  Eigen::VectorXcd density;    // pointwise shape derivative of alpha_inf
  Eigen::VectorXd j_gradient;  // Re(density * conj(alpha_inf))
};

ShapeGradient shape_derivative(const AuxiliaryFields& v, const AuxiliaryFields& w,
                               double mu_m, Cplx mu_c, Cplx alpha_inf);

struct AscentOptions {
  int steps = 20;
  int modes = 16;             // Fourier cutoff of the ascent direction
  double initial_move = 0.02; // first-trial max node displacement
  double armijo = 1e-4;
  double grad_tol = 1e-10;
  double step_floor = 1e-12;
  int max_halvings = 40;
};

struct AscentRow {
  int iteration;
  double j_value;
  double grad_norm;
  double step;
  std::vector<double> boundary_coeffs;  // re/im harmonics of z(t), per component
};

struct AscentResult {
  std::vector<AscentRow> trajectory;
  ParticleBoundary boundary;
  std::string status;  // max_steps | converged | stalled
};

// Projected gradient ascent on J = |alpha_inf|^2 / 2 at fixed contrast, with
// backtracking line search; accepted steps never decrease J.
AscentResult ascend_j(const ParticleBoundary& start, Cplx mu_ratio,
                      const AscentOptions& opts = {});

// Fourier coefficients of the boundary curve(s), flattened for trajectory logs.
std::vector<double> boundary_fourier_coeffs(const ParticleBoundary& b, int modes);

}  // namespace metasurf

#endif
