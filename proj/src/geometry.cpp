#include "metasurf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace metasurf {

namespace {

constexpr double kPi = std::numbers::pi;
using Cplx = std::complex<double>;

void check_even_count(int n) {
  if (n < 8 || n % 2 != 0)
    throw GeometryError("node count must be even and at least 8");
}

void check_in_cell(double x1, double x2, const char* what) {
  if (x2 < kCellMargin || x1 < -0.5 + kCellMargin || x1 > 0.5 - kCellMargin) {
    std::ostringstream os;
    os << what << ": curve leaves the cell (point " << x1 << ", " << x2
       << "; margin " << kCellMargin << ")";
    throw GeometryError(os.str());
  }
}

// Shortest periodic horizontal distance.
double dist_periodic(const Eigen::RowVector2d& a, const Eigen::RowVector2d& b) {
  const double d1 = wrap_half(a(0) - b(0));
  const double d2 = a(1) - b(1);
  return std::hypot(d1, d2);
}

bool point_in_component(const ParticleBoundary& b, const ComponentRange& c,
                        const Eigen::RowVector2d& p) {
  // Ray casting on the node polygon.
  bool inside = false;
  for (int i = c.begin; i < c.end; ++i) {
    const int j = (i + 1 == c.end) ? c.begin : i + 1;
    const double xi = b.points(i, 0), yi = b.points(i, 1);
    const double xj = b.points(j, 0), yj = b.points(j, 1);
    if ((yi > p(1)) != (yj > p(1))) {
      const double xc = xi + (p(1) - yi) / (yj - yi) * (xj - xi);
      if (p(0) < xc) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

double ParticleBoundary::area() const {
  double a = 0.0;
  for (int i = 0; i < size(); ++i) a += weight(i) * points(i, 1) * normals(i, 1);
  return a;
}

double ParticleBoundary::max_node_spacing() const {
  double h = 0.0;
  for (const auto& c : components) {
    for (int i = c.begin; i < c.end; ++i) {
      const int j = (i + 1 == c.end) ? c.begin : i + 1;
      h = std::max(h, (points.row(i) - points.row(j)).norm());
    }
  }
  return h;
}

ParticleBoundary make_disk(CellPoint center, double radius, int n_nodes) {
  check_even_count(n_nodes);
  if (radius <= 0.0) throw GeometryError("make_disk: radius must be positive");
  ParticleBoundary b;
  b.points.resize(n_nodes, 2);
  b.normals.resize(n_nodes, 2);
  b.curvature.resize(n_nodes);
  b.weight.resize(n_nodes);
  b.speed.resize(n_nodes);
  b.param.resize(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    const double t = 2.0 * kPi * i / n_nodes;
    b.param(i) = t;
    b.points(i, 0) = center.x1 + radius * std::cos(t);
    b.points(i, 1) = center.x2 + radius * std::sin(t);
    b.normals(i, 0) = std::cos(t);
    b.normals(i, 1) = std::sin(t);
    b.curvature(i) = 1.0 / radius;
    b.speed(i) = radius;
    b.weight(i) = 2.0 * kPi * radius / n_nodes;
  }
  b.components.push_back({0, n_nodes});
  check_in_cell(center.x1 - radius, center.x2 - radius, "make_disk");
  check_in_cell(center.x1 + radius, center.x2 - radius, "make_disk");
  return b;
}

ParticleBoundary make_star(CellPoint center, double base_radius, double amplitude,
                           int lobes, int n_nodes) {
  check_even_count(n_nodes);
  if (base_radius <= 0.0) throw GeometryError("make_star: base radius must be positive");
  if (amplitude < 0.0 || amplitude >= base_radius)
    throw GeometryError("make_star: amplitude must satisfy 0 <= amplitude < base_radius");
  if (lobes < 0) throw GeometryError("make_star: lobes must be non-negative");
  ParticleBoundary b;
  b.points.resize(n_nodes, 2);
  b.normals.resize(n_nodes, 2);
  b.curvature.resize(n_nodes);
  b.weight.resize(n_nodes);
  b.speed.resize(n_nodes);
  b.param.resize(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    const double t = 2.0 * kPi * i / n_nodes;
    const double r = base_radius + amplitude * std::cos(lobes * t);
    const double dr = -amplitude * lobes * std::sin(lobes * t);
    const double ddr = -amplitude * lobes * lobes * std::cos(lobes * t);
    const double ct = std::cos(t), st = std::sin(t);
    b.param(i) = t;
    b.points(i, 0) = center.x1 + r * ct;
    b.points(i, 1) = center.x2 + r * st;
    // x' = dr*(ct,st) + r*(-st,ct); outward normal = (x2', -x1')/|x'|
    const double v1 = dr * ct - r * st;
    const double v2 = dr * st + r * ct;
    const double sp = std::hypot(v1, v2);
    b.speed(i) = sp;
    b.normals(i, 0) = v2 / sp;
    b.normals(i, 1) = -v1 / sp;
    b.curvature(i) = (r * r + 2.0 * dr * dr - r * ddr) / (sp * sp * sp);
    b.weight(i) = 2.0 * kPi * sp / n_nodes;
  }
  b.components.push_back({0, n_nodes});
  const double rmax = base_radius + amplitude;
  check_in_cell(center.x1 - rmax, center.x2 - rmax, "make_star");
  check_in_cell(center.x1 + rmax, center.x2 - rmax, "make_star");
  return b;
}

ParticleBoundary make_multi(const std::vector<ParticleBoundary>& parts) {
  if (parts.empty()) throw GeometryError("make_multi: no parts");
  int total = 0;
  for (const auto& p : parts) total += p.size();
  ParticleBoundary b;
  b.points.resize(total, 2);
  b.normals.resize(total, 2);
  b.curvature.resize(total);
  b.weight.resize(total);
  b.speed.resize(total);
  b.param.resize(total);
  int off = 0;
  for (const auto& p : parts) {
    b.points.middleRows(off, p.size()) = p.points;
    b.normals.middleRows(off, p.size()) = p.normals;
    b.curvature.segment(off, p.size()) = p.curvature;
    b.weight.segment(off, p.size()) = p.weight;
    b.speed.segment(off, p.size()) = p.speed;
    b.param.segment(off, p.size()) = p.param;
    for (const auto& c : p.components)
      b.components.push_back({off + c.begin, off + c.end});
    off += p.size();
  }
  validate_boundary(b);
  return b;
}

void validate_boundary(const ParticleBoundary& b) {
  for (int i = 0; i < b.size(); ++i)
    check_in_cell(b.points(i, 0), b.points(i, 1), "boundary");
  // Pairwise disjointness: containment test plus a minimum clearance.
  const int nc = b.n_components();
  for (int a = 0; a < nc; ++a) {
    for (int c = a + 1; c < nc; ++c) {
      const auto& ca = b.components[a];
      const auto& cc = b.components[c];
      if (point_in_component(b, cc, b.points.row(ca.begin)) ||
          point_in_component(b, ca, b.points.row(cc.begin))) {
        std::ostringstream os;
        os << "components " << a << " and " << c << " overlap";
        throw GeometryError(os.str());
      }
      double dmin = std::numeric_limits<double>::max();
      for (int i = ca.begin; i < ca.end; ++i)
        for (int j = cc.begin; j < cc.end; ++j)
          dmin = std::min(dmin, dist_periodic(b.points.row(i), b.points.row(j)));
      if (dmin < kCellMargin) {
        std::ostringstream os;
        os << "components " << a << " and " << c << " overlap or nearly touch (distance "
           << dmin << ")";
        throw GeometryError(os.str());
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Spectral utilities (direct DFT; component sizes stay small).

Eigen::VectorXcd fourier_coefficients(const Eigen::VectorXcd& values) {
  const int n = static_cast<int>(values.size());
  Eigen::VectorXcd c(n);
  for (int k = 0; k < n; ++k) {
    Cplx acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double ang = -2.0 * kPi * k * j / n;
      acc += values(j) * Cplx(std::cos(ang), std::sin(ang));
    }
    c(k) = acc / double(n);
  }
  return c;
}

Eigen::VectorXcd fourier_derivative(const Eigen::VectorXcd& values) {
  const int n = static_cast<int>(values.size());
  const Eigen::VectorXcd c = fourier_coefficients(values);
  Eigen::VectorXcd out(n);
  for (int j = 0; j < n; ++j) {
    Cplx acc = 0.0;
    for (int k = 0; k < n; ++k) {
      int kk = (k <= n / 2) ? k : k - n;
      if (kk == n / 2) kk = 0;  // drop the Nyquist mode
      const double ang = 2.0 * kPi * k * j / n;
      acc += Cplx(0.0, kk) * c(k) * Cplx(std::cos(ang), std::sin(ang));
    }
    out(j) = acc;
  }
  return out;
}

Eigen::VectorXd fourier_derivative(const Eigen::VectorXd& values) {
  return fourier_derivative(Eigen::VectorXcd(values.cast<Cplx>())).real();
}

Eigen::VectorXd fourier_lowpass(const Eigen::VectorXd& values, int max_harmonic) {
  const int n = static_cast<int>(values.size());
  const Eigen::VectorXcd c = fourier_coefficients(values.cast<Cplx>());
  Eigen::VectorXd out(n);
  for (int j = 0; j < n; ++j) {
    Cplx acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const int kk = (k <= n / 2) ? k : k - n;
      if (std::abs(kk) > max_harmonic) continue;
      const double ang = 2.0 * kPi * k * j / n;
      acc += c(k) * Cplx(std::cos(ang), std::sin(ang));
    }
    out(j) = acc.real();
  }
  return out;
}

Eigen::VectorXcd fourier_upsample(const Eigen::VectorXcd& values, int n_fine) {
  const int n = static_cast<int>(values.size());
  if (n_fine == n) return values;
  if (n_fine < n) throw GeometryError("fourier_upsample: n_fine must be >= n");
  Eigen::VectorXcd c = fourier_coefficients(values);
  const int half = n / 2;
  // Split the Nyquist coefficient between +half and -half.
  const Cplx cnyq = (n % 2 == 0) ? 0.5 * c(half) : Cplx(0.0);
  Eigen::VectorXcd out(n_fine);
  for (int j = 0; j < n_fine; ++j) {
    const double t = 2.0 * kPi * j / n_fine;
    const Cplx w(std::cos(t), std::sin(t));
    // Positive frequencies 0..half-1 by Horner, then the downshifted block.
    Cplx pos = 0.0;
    for (int k = half - 1; k >= 0; --k) pos = pos * w + c(k);
    Cplx neg = 0.0;  // frequencies -(half-1) .. -1 stored at k = half+1 .. n-1
    for (int k = half + 1; k < n; ++k) neg = neg * std::conj(w) + c(k);
    neg *= std::conj(w);
    const Cplx wh = std::polar(1.0, half * t);
    out(j) = pos + neg + cnyq * (wh + std::conj(wh));
  }
  return out;
}

Eigen::VectorXd fourier_upsample(const Eigen::VectorXd& values, int n_fine) {
  return fourier_upsample(Eigen::VectorXcd(values.cast<Cplx>()), n_fine).real();
}

ParticleBoundary perturb(const ParticleBoundary& b, const NormalPerturbation& pert) {
  if (pert.h.size() != b.size())
    throw GeometryError("perturb: h must be sampled at every node");
  ParticleBoundary out = b;
  out.points = b.points + pert.eta * (pert.h.asDiagonal() * b.normals);
  for (const auto& c : b.components) {
    const int n = c.size();
    Eigen::VectorXcd z(n);
    for (int i = 0; i < n; ++i)
      z(i) = Cplx(out.points(c.begin + i, 0), out.points(c.begin + i, 1));
    const Eigen::VectorXcd dz = fourier_derivative(z);
    const Eigen::VectorXcd ddz = fourier_derivative(dz);
    for (int i = 0; i < n; ++i) {
      const int g = c.begin + i;
      const double v1 = dz(i).real(), v2 = dz(i).imag();
      const double sp = std::hypot(v1, v2);
      if (sp < 1e-12)
        throw GeometryError("perturb: degenerate parametrization (zero speed)");
      out.speed(g) = sp;
      out.normals(g, 0) = v2 / sp;
      out.normals(g, 1) = -v1 / sp;
      out.curvature(g) = (v1 * ddz(i).imag() - v2 * ddz(i).real()) / (sp * sp * sp);
      out.weight(g) = 2.0 * kPi * sp / n;
    }
    // Self-intersection heuristic: non-neighbouring nodes must stay separated.
    for (int i = 0; i < n; ++i) {
      for (int j = i + 3; j < n; ++j) {
        if (i == 0 && j >= n - 2) continue;  // wrap-around neighbours
        const double d =
            (out.points.row(c.begin + i) - out.points.row(c.begin + j)).norm();
        const double hloc = 2.0 * kPi * std::min(out.speed(c.begin + i),
                                                 out.speed(c.begin + j)) / n;
        if (d < 0.25 * hloc)
          throw GeometryError("perturb: curve self-intersection suspected");
      }
    }
  }
  validate_boundary(out);
  return out;
}

}  // namespace metasurf
