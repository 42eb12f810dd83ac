#include "metasurf/shape_optim.hpp"

#include <Eigen/LU>
#include <cmath>

namespace metasurf {

namespace {

Cplx lambda_from_ratio(Cplx rho) {
  // lambda_mu = (mu_c + mu_m)/(2 (mu_c - mu_m)) = (1 + rho)/(2 (1 - rho))
  return (1.0 + rho) / (2.0 * (1.0 - rho));
}

Eigen::VectorXcd tangential_derivative(const ParticleBoundary& b,
                                       const Eigen::VectorXcd& trace) {
  Eigen::VectorXcd out(b.size());
  for (const auto& c : b.components) {
    const Eigen::VectorXcd d = fourier_derivative(
        Eigen::VectorXcd(trace.segment(c.begin, c.size())));
    for (int i = 0; i < c.size(); ++i)
      out(c.begin + i) = d(i) / b.speed(c.begin + i);
  }
  return out;
}

}  // namespace

AuxiliaryFields solve_auxiliary_v(const PeriodicOperators& ops,
                                  const ParticleBoundary& b, Cplx mu_ratio) {
  AuxiliaryFields f;
  f.rho = mu_ratio;
  const int N = b.size();
  const Eigen::VectorXd y2 = b.points.col(1);
  const Eigen::VectorXd nu2 = b.normals.col(1);
  if (mu_ratio == Cplx(1.0, 0.0)) {
    f.density = Eigen::VectorXcd::Zero(N);
    f.trace = y2.cast<Cplx>();
    f.dn_minus = nu2.cast<Cplx>();
    f.dt_minus = tangential_derivative(b, f.trace);
    return f;
  }
  const CorrectorSolution sol = solve_corrector(ops, b, lambda_from_ratio(mu_ratio));
  f.density = sol.density;
  f.trace = y2.cast<Cplx>() + ops.S.cast<Cplx>() * f.density;
  f.dn_minus = nu2.cast<Cplx>() +
               (-0.5 * Eigen::MatrixXcd::Identity(N, N) + ops.K.cast<Cplx>()) * f.density;
  f.dt_minus = tangential_derivative(b, f.trace);
  return f;
}

AuxiliaryFields solve_auxiliary_w(const PeriodicOperators& ops,
                                  const ParticleBoundary& b, Cplx mu_ratio) {
  AuxiliaryFields f = solve_auxiliary_v(ops, b, mu_ratio);
  f.is_w = true;
  f.trace *= mu_ratio;
  f.dn_minus *= mu_ratio;
  f.dt_minus *= mu_ratio;
  return f;
}

Cplx evaluate_auxiliary(const ParticleBoundary& b, const AuxiliaryFields& fields,
                        CellPoint x, bool inside, const FineEvaluator* fine) {
  Cplx v = x.x2;
  v += fine ? fine->potential(x) : single_layer_potential(b, fields.density, x);
  if (fields.is_w && inside) v *= fields.rho;
  return v;
}

ShapeGradient shape_derivative(const AuxiliaryFields& v, const AuxiliaryFields& w,
                               double mu_m, Cplx mu_c, Cplx alpha_inf) {
  const Cplx rho = mu_m / mu_c;
  const int N = static_cast<int>(v.dn_minus.size());
  ShapeGradient g;
  g.density.resize(N);
  g.j_gradient.resize(N);
  for (int i = 0; i < N; ++i) {
    g.density(i) = (1.0 - rho) * (v.dn_minus(i) * w.dn_minus(i) +
                                  (mu_c / mu_m) * v.dt_minus(i) * w.dt_minus(i));
    g.j_gradient(i) = std::real(g.density(i) * std::conj(alpha_inf));
  }
  return g;
}

std::vector<double> boundary_fourier_coeffs(const ParticleBoundary& b, int modes) {
  std::vector<double> out;
  for (const auto& c : b.components) {
    Eigen::VectorXcd z(c.size());
    for (int i = 0; i < c.size(); ++i)
      z(i) = Cplx(b.points(c.begin + i, 0), b.points(c.begin + i, 1));
    const Eigen::VectorXcd coef = fourier_coefficients(z);
    const int n = c.size();
    for (int k = -modes; k <= modes; ++k) {
      const int idx = (k >= 0) ? k : n + k;
      const Cplx v = (std::abs(k) <= n / 2) ? coef(idx) : Cplx(0.0);
      out.push_back(v.real());
      out.push_back(v.imag());
    }
  }
  return out;
}

AscentResult ascend_j(const ParticleBoundary& start, Cplx mu_ratio,
                      const AscentOptions& opts) {
  AscentResult res;
  res.boundary = start;
  res.status = "max_steps";
  const bool no_contrast = (mu_ratio == Cplx(1.0, 0.0));
  const Cplx lambda_mu = no_contrast ? Cplx(0.0) : lambda_from_ratio(mu_ratio);

  auto solve_state = [&](const PeriodicOperators& o, const ParticleBoundary& b) {
    if (no_contrast)  // alpha vanishes identically without contrast
      return CorrectorSolution{Eigen::VectorXcd::Zero(b.size()), Cplx(0.0)};
    return solve_corrector(o, b, lambda_mu);
  };
  auto objective = [&](const ParticleBoundary& b,
                       CorrectorSolution* sol_out) -> double {
    const PeriodicOperators o = assemble(b);
    const CorrectorSolution sol = solve_state(o, b);
    if (sol_out) *sol_out = sol;
    return 0.5 * std::norm(sol.alpha_inf);
  };

  PeriodicOperators ops = assemble(res.boundary);
  CorrectorSolution sol = solve_state(ops, res.boundary);
  double J = 0.5 * std::norm(sol.alpha_inf);

  for (int iter = 0; iter <= opts.steps; ++iter) {
    // Gradient at the current iterate. The v-density coincides with the
    // corrector density (same second-kind equation), so no extra solve.
    AuxiliaryFields vf;
    vf.rho = mu_ratio;
    vf.density = sol.density;
    const int N = res.boundary.size();
    vf.trace = res.boundary.points.col(1).cast<Cplx>() +
               ops.S.cast<Cplx>() * vf.density;
    vf.dn_minus = res.boundary.normals.col(1).cast<Cplx>() +
                  (-0.5 * Eigen::MatrixXcd::Identity(N, N) + ops.K.cast<Cplx>()) *
                      vf.density;
    vf.dt_minus = tangential_derivative(res.boundary, vf.trace);
    AuxiliaryFields wf = vf;
    wf.is_w = true;
    wf.trace *= mu_ratio;
    wf.dn_minus *= mu_ratio;
    wf.dt_minus *= mu_ratio;
    const ShapeGradient grad =
        shape_derivative(vf, wf, 1.0, 1.0 / mu_ratio, sol.alpha_inf);

    Eigen::VectorXd h(N);
    for (const auto& c : res.boundary.components)
      h.segment(c.begin, c.size()) = fourier_lowpass(
          Eigen::VectorXd(grad.j_gradient.segment(c.begin, c.size())), opts.modes);
    double dJ = res.boundary.weight.dot(h.cwiseProduct(grad.j_gradient));
    if (dJ <= 0.0) {  // low-pass direction lost ascent; use the raw gradient
      h = grad.j_gradient;
      dJ = res.boundary.weight.dot(h.cwiseProduct(h));
    }
    const double gnorm = std::sqrt(res.boundary.weight.dot(h.cwiseProduct(h)));

    res.trajectory.push_back({iter, J, gnorm, 0.0,
                              boundary_fourier_coeffs(res.boundary, opts.modes)});
    if (iter == opts.steps) break;
    if (gnorm < opts.grad_tol) {
      res.status = "converged";
      break;
    }

    const double hmax = h.cwiseAbs().maxCoeff();
    double eta = opts.initial_move / std::max(hmax, 1e-300);
    bool accepted = false;
    for (int halving = 0; halving < opts.max_halvings; ++halving) {
      if (eta * hmax < opts.step_floor) break;
      try {
        const ParticleBoundary trial = perturb(res.boundary, {h, eta});
        CorrectorSolution trial_sol;
        const double Jt = objective(trial, &trial_sol);
        if (Jt >= J + opts.armijo * eta * dJ) {
          res.boundary = trial;
          ops = assemble(res.boundary);
          sol = trial_sol;
          J = Jt;
          res.trajectory.back().step = eta;
          accepted = true;
          break;
        }
      } catch (const GeometryError&) {
        // cell violation or self-intersection: reject and halve
      }
      eta *= 0.5;
    }
    if (!accepted) {
      res.status = "stalled";
      break;
    }
  }
  return res;
}

}  // namespace metasurf
