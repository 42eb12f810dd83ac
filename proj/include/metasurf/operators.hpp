#ifndef METASURF_OPERATORS_HPP
#define METASURF_OPERATORS_HPP

#include <Eigen/Core>
#include <complex>

#include "metasurf/geometry.hpp"

namespace metasurf {

// Dense Nystrom discretizations on the particle boundary. S and K act on node
// values of a density and return node values of the potentials' traces.
struct PeriodicOperators {
  Eigen::MatrixXd S;       // half-space periodic single layer
  Eigen::MatrixXd K;       // half-space periodic Neumann-Poincare operator
  Eigen::VectorXd w;       // arclength quadrature weights
  Eigen::MatrixXd gram;    // H*0 Gram: -(WS + S^T W)/2
  Eigen::MatrixXd zbasis;  // N x (N-1) orthonormal basis of {u : w.u = 0}
};

Eigen::MatrixXd assemble_single_layer(const ParticleBoundary& b);
Eigen::MatrixXd assemble_np(const ParticleBoundary& b);
Eigen::MatrixXd h_star_gram(const Eigen::MatrixXd& S, const Eigen::VectorXd& w);
PeriodicOperators assemble(const ParticleBoundary& b);

// Quadrature weights R_k for the log(4 sin^2((t-s)/2)) kernel on an even grid.
Eigen::VectorXd kress_log_weights(int n_nodes);

// L2-orthogonal projection onto zero weighted mean.
Eigen::VectorXd project_zero_mean(const Eigen::VectorXd& w, const Eigen::VectorXd& u);
Eigen::VectorXcd project_zero_mean(const Eigen::VectorXd& w, const Eigen::VectorXcd& u);

// H*0 inner product (u, v) = -(u, S v)_{L2}, via the symmetrized Gram.
double h_star_inner(const PeriodicOperators& ops, const Eigen::VectorXd& u,
                    const Eigen::VectorXd& v);

struct SpectralDecomposition {
  Eigen::VectorXd lambda;       // sorted by decreasing |lambda|
  Eigen::MatrixXd phi;          // N x m eigen-densities, H*0-orthonormal
  Eigen::VectorXd coupling_nu2; // (phi_j, nu2)_{H*0}
  Eigen::VectorXd pairing_y2;   // (phi_j, y2) duality = sum w y2 phi_j
  double symmetrization_residual = 0.0;  // asymmetry of gram*K before symmetrizing
};

// Self-adjoint eigenproblem of K in H*0: Cholesky-whiten the projected Gram,
// run a symmetric eigensolver, map back. Throws NumericalError (with the
// smallest Gram eigenvalue) when the Gram is not positive definite on the
// zero-mean subspace, which signals an under-resolved boundary.
SpectralDecomposition eigendecompose(const PeriodicOperators& ops,
                                     const ParticleBoundary& b);

// Plain-quadrature evaluation of the single-layer potential away from the
// boundary (spectrally accurate once the target is a few node spacings away).
std::complex<double> single_layer_potential(const ParticleBoundary& b,
                                            const Eigen::VectorXcd& density,
                                            CellPoint x);

// Near-boundary evaluation on a spectrally refined copy of the boundary; used
// by the off-boundary probe checks.
class FineEvaluator {
 public:
  FineEvaluator(const ParticleBoundary& b, int n_fine_per_component);
  void set_density(const Eigen::VectorXcd& density_at_nodes);
  std::complex<double> potential(CellPoint x) const;

 private:
  const ParticleBoundary& coarse_;
  Eigen::Matrix<double, Eigen::Dynamic, 2> pts_;
  Eigen::VectorXd w_;
  Eigen::VectorXcd dens_;
  std::vector<ComponentRange> comps_;
};

}  // namespace metasurf

#endif
