#include "metasurf/impedance.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <sstream>

#include "metasurf/green.hpp"

namespace metasurf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHbar = 1.054571817e-34;   // J s
constexpr double kElectronVolt = 1.602176634e-19;
constexpr double kLightSpeed = 299792458.0;
constexpr double kMu0 = 1.25663706212e-6;
constexpr double kEps0 = 8.8541878128e-12;

}  // namespace

Cplx contrast_lambda(Cplx mu_c, double mu_m) {
  return (mu_c + mu_m) / (2.0 * (mu_c - mu_m));
}

MaterialState drude_gold(double wavelength_m, const DrudeParams& p) {
  const double wl_nm = wavelength_m * 1e9;
  // tolerance covers ulp-level differences in unit conversions at the edges
  if (!(wl_nm >= 300.0 - 1e-9 && wl_nm <= 1500.0 + 1e-9)) {
    std::ostringstream os;
    os << "drude_gold: wavelength " << wl_nm << " nm outside [300, 1500] nm";
    throw NumericalError(os.str());
  }
  MaterialState m;
  m.wavelength = wavelength_m;
  m.omega = 2.0 * kPi * kLightSpeed / wavelength_m;
  const double wp = p.plasma_energy_ev * kElectronVolt / kHbar;
  const double gamma = p.damping_energy_ev * kElectronVolt / kHbar;
  const Cplx drude = 1.0 - wp * wp / (m.omega * m.omega + Cplx(0.0, gamma * m.omega));
  m.eps_m = kEps0;
  m.mu_m = kMu0;
  m.mu_c = kMu0 * drude;
  m.eps_c = kEps0 * drude;
  m.k_m = m.omega / kLightSpeed;
  m.k_c = m.omega * std::sqrt(m.eps_c * m.mu_c);
  m.lambda_mu = contrast_lambda(m.mu_c, m.mu_m);
  m.mu_ratio = m.mu_m / m.mu_c;
  return m;
}

CorrectorSolution solve_corrector(const PeriodicOperators& ops,
                                  const ParticleBoundary& b, Cplx lambda_mu) {
  const int N = b.size();
  Eigen::VectorXcd rhs = -project_zero_mean(ops.w, Eigen::VectorXcd(b.normals.col(1).cast<Cplx>()));
  Eigen::MatrixXcd A = ops.K.cast<Cplx>();
  A.diagonal().array() += lambda_mu;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  Eigen::VectorXcd phi = project_zero_mean(ops.w, Eigen::VectorXcd(lu.solve(rhs)));
  CorrectorSolution sol;
  sol.density = phi;
  Cplx a = 0.0;
  for (int i = 0; i < N; ++i) a += ops.w(i) * b.points(i, 1) * phi(i);
  sol.alpha_inf = -a;
  return sol;
}

ImpedanceResult alpha_inf_direct(const PeriodicOperators& ops,
                                 const ParticleBoundary& b, Cplx lambda_mu,
                                 const SpectralDecomposition* spec) {
  const CorrectorSolution sol = solve_corrector(ops, b, lambda_mu);
  ImpedanceResult r;
  r.alpha_inf = sol.alpha_inf;
  r.impedance_z = -sol.alpha_inf;
  r.path = SolverPath::direct;
  if (spec) {
    double dmin = std::numeric_limits<double>::max();
    for (int j = 0; j < spec->lambda.size(); ++j)
      dmin = std::min(dmin, std::abs(lambda_mu + spec->lambda(j)));
    r.resolvent_distance = dmin;
    if (dmin < 1e-12)
      throw NumericalError("alpha_inf_direct: lambda_mu lies on the spectrum");
  }
  return r;
}

ImpedanceResult alpha_inf_spectral(const SpectralDecomposition& spec,
                                   const ParticleBoundary& b, Cplx lambda_mu) {
  (void)b;
  ImpedanceResult r;
  r.path = SolverPath::spectral;
  const int m = static_cast<int>(spec.lambda.size());
  r.modes.reserve(m);
  Cplx sum = 0.0;
  double best = -1.0;
  double dmin = std::numeric_limits<double>::max();
  const double pscale = spec.pairing_y2.cwiseAbs().maxCoeff();
  double ibp_worst = 0.0;
  for (int j = 0; j < m; ++j) {
    const Cplx term = spec.coupling_nu2(j) * spec.pairing_y2(j) /
                      (lambda_mu + spec.lambda(j));
    sum += term;
    r.modes.push_back({spec.lambda(j), term});
    dmin = std::min(dmin, std::abs(lambda_mu + spec.lambda(j)));
    if (std::abs(term) > best) {
      best = std::abs(term);
      r.dominant_mode = j;
      r.dominant_lambda = spec.lambda(j);
    }
    // Cross-check route for (phi_j, y2) from the integration-by-parts
    // identity. Condenser modes (lambda = 1/2, multi-component geometries)
    // are excluded: there the identity degenerates to 0/0.
    if (0.5 - spec.lambda(j) >= 1e-3) {
      const double p_alt = spec.coupling_nu2(j) / (0.5 - spec.lambda(j));
      const double denom = std::max(std::abs(spec.pairing_y2(j)), 1e-6 * pscale);
      ibp_worst = std::max(ibp_worst, std::abs(spec.pairing_y2(j) - p_alt) / denom);
    }
  }
  r.alpha_inf = sum;
  r.impedance_z = -sum;
  r.resolvent_distance = dmin;
  r.ibp_route_residual = ibp_worst;
  return r;
}

CorrectorValue corrector_field(const ParticleBoundary& b,
                               const CorrectorSolution& sol, CellPoint target) {
  if (target.x2 < 0.0)
    throw NumericalError("corrector_field: target below the plate");
  CorrectorValue out;
  out.value = single_layer_potential(b, sol.density, target);
  const double h = 2.0 * b.max_node_spacing();
  for (int j = 0; j < b.size() && !out.near_boundary_warning; ++j) {
    const double d1 = wrap_half(target.x1 - b.points(j, 0));
    const double d2 = target.x2 - b.points(j, 1);
    if (d1 * d1 + d2 * d2 < h * h) out.near_boundary_warning = true;
  }
  return out;
}

Cplx corrector_far_deviation(const ParticleBoundary& b,
                             const CorrectorSolution& sol, CellPoint target) {
  if (!(target.x2 > b.max_height()))
    throw NumericalError("corrector_far_deviation: target must be above the particle");
  Cplx acc = 0.0;
  for (int j = 0; j < b.size(); ++j)
    acc += b.weight(j) * g_halfspace_tail(target, b.node(j)) * sol.density(j);
  return acc;
}

Cplx reflection_coefficient(Cplx z, double k_m, Eigen::Vector2d incidence,
                            double delta) {
  if (delta <= 0.0)
    throw NumericalError("reflection_coefficient: delta must be positive");
  if (!(incidence(1) < 0.0))
    throw NumericalError("reflection_coefficient: incidence must be downgoing");
  const double nrm = incidence.norm();
  const Cplx x = Cplx(0.0, 1.0) * delta * z * k_m * (incidence(1) / nrm);
  const Cplx den = 1.0 - x;
  if (std::abs(den) < 1e-12 * (1.0 + std::abs(x)))
    throw NumericalError("reflection_coefficient: impedance denominator vanishes "
                         "(perfect-absorption regime)");
  return -(1.0 + x) / den;
}

}  // namespace metasurf
