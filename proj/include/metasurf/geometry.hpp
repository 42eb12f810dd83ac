#ifndef METASURF_GEOMETRY_HPP
#define METASURF_GEOMETRY_HPP

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "metasurf/cell.hpp"

namespace metasurf {

struct ComponentRange {
  int begin = 0;
  int end = 0;  // one past last node
  int size() const { return end - begin; }
};

// Closed curve(s) inside the unit cell, sampled at nodes equispaced in the
// parameter of each component (global trapezoidal layout). Normals point
// outward, weights are arclength quadrature weights, speed is |x'(t)|.
struct ParticleBoundary {
  Eigen::Matrix<double, Eigen::Dynamic, 2> points;
  Eigen::Matrix<double, Eigen::Dynamic, 2> normals;
  Eigen::VectorXd curvature;
  Eigen::VectorXd weight;
  Eigen::VectorXd speed;
  Eigen::VectorXd param;  // parameter t in [0, 2pi) per component
  std::vector<ComponentRange> components;

  int size() const { return static_cast<int>(points.rows()); }
  int n_components() const { return static_cast<int>(components.size()); }
  CellPoint node(int i) const { return {points(i, 0), points(i, 1)}; }
  double perimeter() const { return weight.sum(); }
  // Enclosed area via the divergence theorem (sum w * y2 * nu2).
  double area() const;
  double max_node_spacing() const;
  double max_height() const { return points.col(1).maxCoeff(); }
};

ParticleBoundary make_disk(CellPoint center, double radius, int n_nodes);

// r(theta) = base_radius + amplitude*cos(lobes*theta) around center.
ParticleBoundary make_star(CellPoint center, double base_radius, double amplitude,
                           int lobes, int n_nodes);

ParticleBoundary make_multi(const std::vector<ParticleBoundary>& parts);

struct NormalPerturbation {
  Eigen::VectorXd h;  // scalar field at nodes
  double eta = 0.0;
};

// Moves nodes along their normals and rebuilds normals/curvature/weights by
// spectral differentiation of the perturbed node coordinates.
ParticleBoundary perturb(const ParticleBoundary& b, const NormalPerturbation& pert);

// Throws GeometryError unless all components respect the cell margins and are
// pairwise disjoint.
void validate_boundary(const ParticleBoundary& b);

// --- spectral utilities on one closed component (values at equispaced t) ---

// d/dt of the trigonometric interpolant, sampled at the nodes.
Eigen::VectorXd fourier_derivative(const Eigen::VectorXd& values);
Eigen::VectorXcd fourier_derivative(const Eigen::VectorXcd& values);

// Keep harmonics |k| <= max_harmonic of the interpolant.
Eigen::VectorXd fourier_lowpass(const Eigen::VectorXd& values, int max_harmonic);

// Resample the interpolant on a finer equispaced grid of n_fine nodes.
Eigen::VectorXd fourier_upsample(const Eigen::VectorXd& values, int n_fine);
Eigen::VectorXcd fourier_upsample(const Eigen::VectorXcd& values, int n_fine);

// Complex Fourier coefficients c_k, k = 0..N-1 (unnormalized DFT / N).
Eigen::VectorXcd fourier_coefficients(const Eigen::VectorXcd& values);

}  // namespace metasurf

#endif
