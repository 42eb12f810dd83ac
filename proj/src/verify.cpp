#include "metasurf/verify.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "metasurf/green.hpp"

namespace metasurf {

namespace {
constexpr double kPi = std::numbers::pi;
}

double green_oracle_max_error(int nx, int ny, int n_terms) {
  double worst = 0.0;
  for (int i = 0; i < nx; ++i) {
    const double x1 = -0.5 + i / double(nx - 1);
    for (int j = 0; j < ny; ++j) {
      const double a2 = 0.1 + (5.0 - 0.1) * j / double(ny - 1);
      for (double x2 : {a2, -a2}) {
        const double g = g_periodic({x1, x2});
        const double f = g_periodic_fourier({x1, x2}, n_terms);
        worst = std::max(worst, std::abs(g - f));
      }
    }
  }
  return worst;
}

double plate_trace_max(
    const std::function<double(const CellPoint&, const CellPoint&)>& ghs,
    int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-0.5, 0.5);
  std::uniform_real_distribution<double> uy(0.05, 2.0);
  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const CellPoint target{ux(rng), 0.0};
    const CellPoint source{ux(rng), uy(rng)};
    worst = std::max(worst, std::abs(ghs(target, source)));
  }
  return worst;
}

double halfspace_asymptote_rate(const CellPoint& source) {
  // g_halfspace + y2 decays like e^{-2 pi x2}; evaluate the stable tail form.
  std::vector<double> hs = {1.5, 2.0, 2.5, 3.0};
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double h : hs) {
    const double v = std::abs(g_halfspace_tail({0.37, h}, source));
    sx += h;
    sy += std::log(v);
    sxx += h * h;
    sxy += h * std::log(v);
  }
  const int n = static_cast<int>(hs.size());
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double jump_relation_residual(const ParticleBoundary& b, const PeriodicOperators& ops,
                              double eps, unsigned seed, int node_stride) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd f(b.size());
  for (int i = 0; i < b.size(); ++i) f(i) = gauss(rng);
  f = project_zero_mean(b.weight, f);

  const Eigen::VectorXd lhs =
      (-0.5 * Eigen::MatrixXd::Identity(b.size(), b.size()) + ops.K) * f;
  const Eigen::VectorXd trace = ops.S * f;

  FineEvaluator fine(b, 1 << 16);
  fine.set_density(f.cast<Cplx>());
  double worst = 0.0;
  for (int i = 0; i < b.size(); i += node_stride) {
    const Eigen::Vector2d x = b.points.row(i);
    const Eigen::Vector2d nu = b.normals.row(i);
    auto at = [&](double s) {
      const Eigen::Vector2d p = x - s * nu;
      return fine.potential({p(0), p(1)}).real();
    };
    // one-sided third-order stencil anchored on the spectrally accurate trace
    const double u0 = trace(i), u1 = at(eps), u2 = at(2 * eps), u3 = at(3 * eps);
    const double dn = -(-11.0 * u0 + 18.0 * u1 - 9.0 * u2 + 2.0 * u3) / (6.0 * eps);
    worst = std::max(worst, std::abs(dn - lhs(i)));
  }
  return worst / lhs.cwiseAbs().maxCoeff();
}

double calderon_residual(const PeriodicOperators& ops) {
  const Eigen::MatrixXd kadj =
      ops.w.cwiseInverse().asDiagonal() * ops.K.transpose() * ops.w.asDiagonal();
  return (kadj * ops.S - ops.S * ops.K).norm() / ops.S.norm();
}

double eigen_identity_residual(const SpectralDecomposition& spec, int top_k) {
  const double scale = spec.pairing_y2.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (int j = 0; j < std::min<int>(top_k, spec.lambda.size()); ++j) {
    // Multi-component condenser modes sit at lambda = 1/2 exactly, where the
    // identity degenerates to 0/0; they are excluded.
    if (0.5 - spec.lambda(j) < 1e-3) continue;
    const double alt = spec.coupling_nu2(j) / (0.5 - spec.lambda(j));
    const double denom = std::max(std::abs(spec.pairing_y2(j)), 1e-6 * scale);
    worst = std::max(worst, std::abs(spec.pairing_y2(j) - alt) / denom);
  }
  return worst;
}

double disk_eigen_mesh_gap(CellPoint center, double radius, int n1, int n2,
                           int top_k) {
  auto top = [&](int n) {
    const ParticleBoundary b = make_disk(center, radius, n);
    const SpectralDecomposition s = eigendecompose(assemble(b), b);
    return Eigen::VectorXd(s.lambda.head(top_k));
  };
  return (top(n1) - top(n2)).cwiseAbs().maxCoeff();
}

PathEquivalenceResult path_equivalence(const ParticleBoundary& b,
                                       const PeriodicOperators& ops,
                                       const SpectralDecomposition& spec,
                                       const DrudeParams& mat, double start_nm,
                                       double stop_nm, int count) {
  PathEquivalenceResult out;
  out.min_im_alpha = std::numeric_limits<double>::max();
  out.min_im_lambda_gap = -std::numeric_limits<double>::max();
  for (int i = 0; i < count; ++i) {
    const double nm = start_nm + (stop_nm - start_nm) * i / double(count - 1);
    const MaterialState m = drude_gold(nm * 1e-9, mat);
    const ImpedanceResult d = alpha_inf_direct(ops, b, m.lambda_mu);
    const ImpedanceResult s = alpha_inf_spectral(spec, b, m.lambda_mu);
    out.worst_rel_gap = std::max(
        out.worst_rel_gap, std::abs(d.alpha_inf - s.alpha_inf) / std::abs(d.alpha_inf));
    out.min_im_alpha = std::min(out.min_im_alpha, d.alpha_inf.imag());
    out.min_im_lambda_gap = std::max(out.min_im_lambda_gap, m.lambda_mu.imag());
  }
  return out;
}

double corrector_decay_rate(const ParticleBoundary& b, const CorrectorSolution& sol) {
  const std::vector<double> hs = {2.0, 3.0, 4.0, 5.0};
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double h : hs) {
    const double v = std::abs(corrector_far_deviation(b, sol, {0.0, h}));
    sx += h;
    sy += std::log(v);
    sxx += h * h;
    sxy += h * std::log(v);
  }
  const int n = static_cast<int>(hs.size());
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double corrector_far_limit_gap(const ParticleBoundary& b,
                               const CorrectorSolution& sol) {
  // alpha(x2) = alpha_inf + C e^{-2 pi x2}: two samples pin the limit.
  const Cplx a2 = corrector_field(b, sol, {0.0, 2.0}).value;
  const Cplx a3 = corrector_field(b, sol, {0.0, 3.0}).value;
  const Cplx limit = a3 - (a2 - a3) / (std::exp(2.0 * kPi) - 1.0);
  return std::abs(limit - sol.alpha_inf);
}

GradientCheck shape_gradient_check(const ParticleBoundary& b, Cplx mu_ratio,
                                   const Eigen::VectorXd& h,
                                   const std::vector<double>& etas) {
  const Cplx lambda_mu = (1.0 + mu_ratio) / (2.0 * (1.0 - mu_ratio));
  const PeriodicOperators ops = assemble(b);
  const CorrectorSolution sol = solve_corrector(ops, b, lambda_mu);
  const AuxiliaryFields vf = solve_auxiliary_v(ops, b, mu_ratio);
  const AuxiliaryFields wf = solve_auxiliary_w(ops, b, mu_ratio);
  const ShapeGradient g = shape_derivative(vf, wf, 1.0, 1.0 / mu_ratio, sol.alpha_inf);
  Cplx predicted = 0.0;
  for (int i = 0; i < b.size(); ++i) predicted += b.weight(i) * h(i) * g.density(i);

  GradientCheck out;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double eta : etas) {
    const ParticleBoundary bp = perturb(b, {h, eta});
    const CorrectorSolution sp = solve_corrector(assemble(bp), bp, lambda_mu);
    const Cplx fd = (sp.alpha_inf - sol.alpha_inf) / eta;
    const double rel = std::abs(fd - predicted) / std::abs(predicted);
    out.rel_errors.push_back(rel);
    sx += std::log(eta);
    sy += std::log(rel);
    sxx += std::log(eta) * std::log(eta);
    sxy += std::log(eta) * std::log(rel);
  }
  const int n = static_cast<int>(etas.size());
  out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

double neumann_tail_gap(const PeriodicOperators& ops, const ParticleBoundary& b,
                        double lambda_mu) {
  const ImpedanceResult r = alpha_inf_direct(ops, b, lambda_mu);
  return std::abs(r.alpha_inf - b.area() / lambda_mu);
}

bool VerifyReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass && !c.warn_only) return false;
  return true;
}

void print_report(const VerifyReport& report, std::ostream& os) {
  for (const auto& c : report.checks) {
    const char* tag = c.pass ? "PASS" : (c.warn_only ? "WARN" : "FAIL");
    os << tag << "  " << c.name << "  measured=" << c.measured
       << "  threshold=" << c.threshold << "\n";
  }
}

VerifyReport run_verify(const VerifyOptions& opts) {
  VerifyReport rep;
  const bool warn_only = opts.n_nodes < 64;
  auto add = [&](const std::string& name, double measured, double threshold,
                 bool pass) {
    rep.checks.push_back({name, measured, threshold, pass, warn_only});
  };
  auto add_le = [&](const std::string& name, double measured, double threshold) {
    add(name, measured, threshold, measured <= threshold);
  };

  const int grid = opts.fast ? 40 : 100;
  add_le("green_oracle_agreement", green_oracle_max_error(grid, grid, 200), 1e-10);
  add_le("dirichlet_trace",
         plate_trace_max([](const CellPoint& t, const CellPoint& s) {
           return g_halfspace(t, s);
         }, opts.fast ? 200 : 1000, 20240901u),
         1e-13);
  add("halfspace_asymptote_rate", halfspace_asymptote_rate({0.1, 0.45}),
      2.0 * kPi * 0.9, halfspace_asymptote_rate({0.1, 0.45}) >= 2.0 * kPi * 0.9);

  const ParticleBoundary disk = make_disk({0.0, 0.5}, 0.2, opts.n_nodes);
  const PeriodicOperators ops = assemble(disk);
  add_le("jump_relation", jump_relation_residual(disk, ops, 1e-4, 7u,
                                                 opts.fast ? 16 : 4), 1e-4);
  add_le("calderon_identity", calderon_residual(ops), 1e-8);

  const SpectralDecomposition spec = eigendecompose(ops, disk);
  const double lam_max = spec.lambda.cwiseAbs().maxCoeff();
  add("spectrum_in_bounds", lam_max, 0.5, lam_max < 0.5);
  add_le("spectrum_symmetrization", spec.symmetrization_residual, 1e-8);
  add_le("eigen_identity", eigen_identity_residual(spec, 10), 1e-6);
  if (!opts.fast)
    add_le("eigen_mesh_independence",
           disk_eigen_mesh_gap({0.0, 0.5}, 0.2, opts.n_nodes, 2 * opts.n_nodes, 5),
           1e-8);

  const PathEquivalenceResult pe =
      path_equivalence(disk, ops, spec, {}, 300.0, 1500.0, opts.fast ? 25 : 241);
  add_le("alpha_path_equivalence", pe.worst_rel_gap, 1e-8);
  add("sign_lemma_im_alpha", pe.min_im_alpha, 0.0, pe.min_im_alpha > 0.0);
  add("drude_im_lambda_mu", pe.min_im_lambda_gap, 0.0, pe.min_im_lambda_gap < 0.0);

  const MaterialState m800 = drude_gold(800e-9, {});
  const CorrectorSolution sol = solve_corrector(ops, disk, m800.lambda_mu);
  const double rate = corrector_decay_rate(disk, sol);
  add("corrector_decay_rate", rate, 2.0 * kPi * 0.9, rate >= 2.0 * kPi * 0.9);
  add_le("corrector_far_limit", corrector_far_limit_gap(disk, sol), 1e-6);

  {
    Eigen::VectorXd h(disk.size());
    for (int i = 0; i < disk.size(); ++i) h(i) = std::cos(2.0 * disk.param(i));
    const std::vector<double> etas =
        opts.fast ? std::vector<double>{1e-3, 1e-4}
                  : std::vector<double>{1e-3, 1e-4, 1e-5};
    const GradientCheck gc = shape_gradient_check(disk, m800.mu_ratio, h, etas);
    add("shape_gradient_slope", gc.slope, 1.0,
        gc.slope >= 0.7 && gc.slope <= 1.3);
  }

  const double tail = neumann_tail_gap(ops, disk, 1e3);
  add_le("neumann_series_tail", tail, 10.0 * disk.area() / 1e6);

  {
    const Cplx r0 = reflection_coefficient(0.0, m800.k_m, {0.0, -1.0}, 0.05);
    add("reflection_dirichlet_limit", std::abs(r0 + 1.0), 0.0,
        r0 == Cplx(-1.0, 0.0));
    const ImpedanceResult imp = alpha_inf_direct(ops, disk, m800.lambda_mu);
    const Cplx R = reflection_coefficient(imp.impedance_z, m800.k_m, {0.0, -1.0}, 0.05);
    add("reflection_absorbing", std::abs(R), 1.0,
        std::abs(R) < 1.0 && imp.impedance_z.imag() < 0.0);
  }
  return rep;
}

}  // namespace metasurf
