#include "metasurf/operators.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "metasurf/green.hpp"
#include "metasurf/parallel.hpp"

namespace metasurf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * kPi;

// Row-parallel assembly pays off only for larger systems.
int assembly_threads(int n_rows) { return n_rows >= 256 ? 0 : 1; }

}  // namespace

Eigen::VectorXd kress_log_weights(int n_nodes) {
  if (n_nodes % 2 != 0)
    throw NumericalError("kress_log_weights: node count must be even");
  const int n = n_nodes / 2;
  Eigen::VectorXd R(n_nodes);
  for (int k = 0; k < n_nodes; ++k) {
    double s = 0.0;
    for (int m = 1; m < n; ++m) s += std::cos(m * kPi * k / n) / m;
    R(k) = -(2.0 * kPi / n) * s - (kPi / (n * n)) * std::cos(kPi * k);
  }
  return R;
}

Eigen::MatrixXd assemble_single_layer(const ParticleBoundary& b) {
  const int N = b.size();
  Eigen::MatrixXd S(N, N);
  std::vector<Eigen::VectorXd> kress;
  std::vector<int> comp_of(N);
  for (size_t c = 0; c < b.components.size(); ++c) {
    kress.push_back(kress_log_weights(b.components[c].size()));
    for (int i = b.components[c].begin; i < b.components[c].end; ++i)
      comp_of[i] = static_cast<int>(c);
  }
  parallel_for(N, assembly_threads(N), [&](int i) {
    const auto& comp = b.components[comp_of[i]];
    const auto& R = kress[comp_of[i]];
    const int Nc = comp.size();
    const double xi1 = b.points(i, 0), xi2 = b.points(i, 1);
    for (int j = 0; j < N; ++j) {
      const double d1 = xi1 - b.points(j, 0);
      const double d2 = xi2 - b.points(j, 1);
      const double m2 = xi2 + b.points(j, 1);
      if (comp_of[j] != comp_of[i]) {
        // cross-component: the kernel is smooth, plain trapezoid
        S(i, j) = b.weight(j) * g_halfspace(b.node(i), b.node(j));
        continue;
      }
      double smooth;
      if (i == j) {
        smooth = std::log(b.speed(i) * b.speed(i)) / kFourPi +
                 std::log(kPi * kPi) / kFourPi - g_periodic({0.0, m2});
      } else {
        const double dt = b.param(i) - b.param(j);
        const double sn = std::sin(0.5 * dt);
        const double H = (d1 * d1 + d2 * d2) / (4.0 * sn * sn);
        smooth = std::log(H) / kFourPi + g_remainder({d1, d2}) -
                 g_periodic({d1, m2});
      }
      S(i, j) = R(std::abs(i - j)) * b.speed(j) / kFourPi +
                (2.0 * kPi / Nc) * smooth * b.speed(j);
    }
  });
  return S;
}

Eigen::MatrixXd assemble_np(const ParticleBoundary& b) {
  const int N = b.size();
  Eigen::MatrixXd K(N, N);
  parallel_for(N, assembly_threads(N), [&](int i) {
    const CellPoint xi = b.node(i);
    const Eigen::Vector2d nu = b.normals.row(i);
    for (int j = 0; j < N; ++j) {
      if (i == j) {
        // Continuous-kernel limit: free-space part tends to kappa/(4 pi), the
        // periodic remainder gradient vanishes at 0, the image term is smooth.
        const Eigen::Vector2d gm = grad_g_periodic({0.0, 2.0 * xi.x2});
        K(i, j) = b.weight(i) * (b.curvature(i) / kFourPi - gm.dot(nu));
      } else {
        K(i, j) = b.weight(j) * grad_g_halfspace(xi, b.node(j)).dot(nu);
      }
    }
  });
  return K;
}

Eigen::MatrixXd h_star_gram(const Eigen::MatrixXd& S, const Eigen::VectorXd& w) {
  const Eigen::MatrixXd WS = w.asDiagonal() * S;
  return -0.5 * (WS + WS.transpose());
}

namespace {

// Columns 2..N of the Householder reflection sending e1 to w/|w| span the
// zero-weighted-mean subspace orthonormally.
Eigen::MatrixXd zero_mean_basis(const Eigen::VectorXd& w) {
  const int N = static_cast<int>(w.size());
  Eigen::VectorXd u = w.normalized();
  Eigen::VectorXd v = u;
  v(0) -= 1.0;
  Eigen::MatrixXd Z(N, N - 1);
  if (v.norm() < 1e-14) {
    Z.setZero();
    for (int k = 0; k < N - 1; ++k) Z(k + 1, k) = 1.0;
    return Z;
  }
  v.normalize();
  for (int k = 0; k < N - 1; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(N);
    e(k + 1) = 1.0;
    Z.col(k) = e - 2.0 * v * (v.dot(e));
  }
  return Z;
}

}  // namespace

PeriodicOperators assemble(const ParticleBoundary& b) {
  PeriodicOperators ops;
  ops.S = assemble_single_layer(b);
  ops.K = assemble_np(b);
  ops.w = b.weight;
  ops.gram = h_star_gram(ops.S, ops.w);
  ops.zbasis = zero_mean_basis(ops.w);
  return ops;
}

Eigen::VectorXd project_zero_mean(const Eigen::VectorXd& w, const Eigen::VectorXd& u) {
  return u - Eigen::VectorXd::Ones(u.size()) * (w.dot(u) / w.sum());
}

Eigen::VectorXcd project_zero_mean(const Eigen::VectorXd& w, const Eigen::VectorXcd& u) {
  std::complex<double> mean = 0.0;
  for (int i = 0; i < u.size(); ++i) mean += w(i) * u(i);
  mean /= w.sum();
  return u - Eigen::VectorXcd::Constant(u.size(), mean);
}

double h_star_inner(const PeriodicOperators& ops, const Eigen::VectorXd& u,
                    const Eigen::VectorXd& v) {
  return u.dot(ops.gram * v);
}

SpectralDecomposition eigendecompose(const PeriodicOperators& ops,
                                     const ParticleBoundary& b) {
  const auto& Z = ops.zbasis;
  const Eigen::MatrixXd Br = Z.transpose() * ops.gram * Z;
  Eigen::LLT<Eigen::MatrixXd> llt(Br);
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> diag(Br, Eigen::EigenvaluesOnly);
    std::ostringstream os;
    os << "H*0 Gram is not positive definite on the zero-mean subspace "
          "(smallest eigenvalue "
       << diag.eigenvalues().minCoeff() << "); boundary is under-resolved";
    throw NumericalError(os.str());
  }
  Eigen::MatrixXd Ar = Z.transpose() * (ops.gram * ops.K) * Z;
  const double asym = (Ar - Ar.transpose()).norm() / std::max(Ar.norm(), 1e-300);
  Ar = 0.5 * (Ar + Ar.transpose());
  // Whiten: C = L^-1 Ar L^-T, then a plain symmetric eigensolve.
  Eigen::MatrixXd C = llt.matrixL().solve(Ar);
  C = llt.matrixL().solve(C.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (C + C.transpose()));
  if (es.info() != Eigen::Success)
    throw NumericalError("eigendecompose: symmetric eigensolver failed");
  Eigen::MatrixXd vr = llt.matrixL().transpose().solve(es.eigenvectors());

  const int m = static_cast<int>(es.eigenvalues().size());
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int p, int q) {
    return std::abs(es.eigenvalues()(p)) > std::abs(es.eigenvalues()(q));
  });

  SpectralDecomposition out;
  out.lambda.resize(m);
  out.phi.resize(b.size(), m);
  out.symmetrization_residual = asym;
  for (int k = 0; k < m; ++k) {
    out.lambda(k) = es.eigenvalues()(order[k]);
    out.phi.col(k) = Z * vr.col(order[k]);
  }
  const Eigen::VectorXd nu2 = b.normals.col(1);
  const Eigen::VectorXd wy2 = ops.w.cwiseProduct(b.points.col(1));
  out.coupling_nu2 = out.phi.transpose() * (ops.gram * nu2);
  out.pairing_y2 = out.phi.transpose() * wy2;
  return out;
}

std::complex<double> single_layer_potential(const ParticleBoundary& b,
                                            const Eigen::VectorXcd& density,
                                            CellPoint x) {
  std::complex<double> acc = 0.0;
  for (int j = 0; j < b.size(); ++j)
    acc += b.weight(j) * g_halfspace(x, b.node(j)) * density(j);
  return acc;
}

FineEvaluator::FineEvaluator(const ParticleBoundary& b, int n_fine_per_component)
    : coarse_(b) {
  int total = 0;
  for (const auto& c : b.components) total += std::max(n_fine_per_component, c.size());
  pts_.resize(total, 2);
  w_.resize(total);
  int off = 0;
  for (const auto& c : b.components) {
    const int n = c.size();
    const int nf = std::max(n_fine_per_component, n);
    Eigen::VectorXcd z(n);
    for (int i = 0; i < n; ++i)
      z(i) = std::complex<double>(b.points(c.begin + i, 0), b.points(c.begin + i, 1));
    const Eigen::VectorXcd zf = fourier_upsample(z, nf);
    const Eigen::VectorXcd dzf =
        fourier_upsample(Eigen::VectorXcd(fourier_derivative(z)), nf);
    for (int i = 0; i < nf; ++i) {
      pts_(off + i, 0) = zf(i).real();
      pts_(off + i, 1) = zf(i).imag();
      w_(off + i) = 2.0 * kPi * std::abs(dzf(i)) / nf;
    }
    comps_.push_back({off, off + nf});
    off += nf;
  }
}

void FineEvaluator::set_density(const Eigen::VectorXcd& density) {
  dens_.resize(pts_.rows());
  for (size_t ci = 0; ci < comps_.size(); ++ci) {
    const auto& cc = coarse_.components[ci];
    const auto& cf = comps_[ci];
    Eigen::VectorXcd d = density.segment(cc.begin, cc.size());
    dens_.segment(cf.begin, cf.size()) = fourier_upsample(d, cf.size());
  }
}

std::complex<double> FineEvaluator::potential(CellPoint x) const {
  std::complex<double> acc = 0.0;
  for (int j = 0; j < pts_.rows(); ++j)
    acc += w_(j) * g_halfspace(x, {pts_(j, 0), pts_(j, 1)}) * dens_(j);
  return acc;
}

}  // namespace metasurf
