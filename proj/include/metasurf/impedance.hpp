#ifndef METASURF_IMPEDANCE_HPP
#define METASURF_IMPEDANCE_HPP

#include <complex>
#include <optional>
#include <vector>

#include "metasurf/operators.hpp"

namespace metasurf {

using Cplx = std::complex<double>;

struct DrudeParams {
  double plasma_energy_ev = 9.02;   // hbar * omega_p
  double damping_energy_ev = 0.027; // hbar * gamma
};

struct MaterialState {
  double wavelength = 0.0;  // metres
  double omega = 0.0;       // rad/s
  double eps_m = 0.0;
  double mu_m = 0.0;
  Cplx eps_c;
  Cplx mu_c;
  double k_m = 0.0;
  Cplx k_c;        // stored for completeness; the quasi-static cell problem is Laplace
  Cplx lambda_mu;  // (mu_c + mu_m) / (2 (mu_c - mu_m))
  Cplx mu_ratio;   // mu_m / mu_c
};

// Drude dispersion mu_c(w) = mu0 (1 - wp^2/(w^2 + i gamma w)); matrix is
// vacuum. Valid for wavelengths in [300 nm, 1500 nm].
MaterialState drude_gold(double wavelength_m, const DrudeParams& p = {});

Cplx contrast_lambda(Cplx mu_c, double mu_m);

struct ModeContribution {
  double lambda_j;
  Cplx term;
};

enum class SolverPath { direct, spectral };

struct ImpedanceResult {
  Cplx alpha_inf;
  Cplx impedance_z;  // -alpha_inf
  std::vector<ModeContribution> modes;  // spectral path only
  double wavelength = 0.0;              // metres, filled by the sweep driver
  SolverPath path = SolverPath::direct;
  int dominant_mode = -1;
  double dominant_lambda = 0.0;
  double resolvent_distance = 0.0;  // min_j |lambda_mu + lambda_j| when known
  double ibp_route_residual = 0.0;  // spectral path: max rel gap of the two
                                    // (phi_j, y2) evaluation routes
};

// Density of the cell corrector alpha = S[phi], where
// (lambda_mu I + K) phi = -nu2 on the zero-mean subspace.
struct CorrectorSolution {
  Eigen::VectorXcd density;
  Cplx alpha_inf;
};

CorrectorSolution solve_corrector(const PeriodicOperators& ops,
                                  const ParticleBoundary& b, Cplx lambda_mu);

ImpedanceResult alpha_inf_direct(const PeriodicOperators& ops,
                                 const ParticleBoundary& b, Cplx lambda_mu,
                                 const SpectralDecomposition* spec = nullptr);

ImpedanceResult alpha_inf_spectral(const SpectralDecomposition& spec,
                                   const ParticleBoundary& b, Cplx lambda_mu);

struct CorrectorValue {
  Cplx value;
  bool near_boundary_warning = false;  // within 2 node spacings of the boundary
};

// alpha(target) by the single-layer representation.
CorrectorValue corrector_field(const ParticleBoundary& b,
                               const CorrectorSolution& sol, CellPoint target);

// alpha(target) - alpha_inf via the exponentially decaying tail series;
// requires target.x2 above the particle. Exact to machine precision in the
// far field, where forming the difference directly would lose all digits.
Cplx corrector_far_deviation(const ParticleBoundary& b,
                             const CorrectorSolution& sol, CellPoint target);

// Reflection coefficient of the impedance condition u + delta z du/dx2 = 0 for
// a downgoing plane wave: R = -(1 + i delta z k d2) / (1 - i delta z k d2).
Cplx reflection_coefficient(Cplx z, double k_m, Eigen::Vector2d incidence,
                            double delta);

}  // namespace metasurf

#endif
