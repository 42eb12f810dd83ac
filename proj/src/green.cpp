#include "metasurf/green.hpp"

#include <cmath>
#include <numbers>

namespace metasurf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * kPi;
// Beyond this height the sinh term dominates to all double-precision digits.
constexpr double kAsymptoteX2 = 20.0;
const double kLog2Over2Pi = std::log(2.0) / (2.0 * kPi);

void check_not_lattice(double x1w, double x2) {
  if (x1w * x1w + x2 * x2 <= kLatticeTol * kLatticeTol)
    throw NumericalError("g_periodic: offset is (numerically) a lattice point");
}

}  // namespace

double g_periodic(const CellPoint& offset) {
  const double x1 = wrap_half(offset.x1);
  const double a2 = std::abs(offset.x2);
  if (a2 > kAsymptoteX2) return 0.5 * a2 - kLog2Over2Pi;
  check_not_lattice(x1, a2);
  const double sh = std::sinh(kPi * a2);
  const double sn = std::sin(kPi * x1);
  return std::log(sh * sh + sn * sn) / kFourPi;
}

Eigen::Vector2d grad_g_periodic(const CellPoint& offset) {
  const double x1 = wrap_half(offset.x1);
  const double a2 = std::abs(offset.x2);
  const double sgn2 = offset.x2 >= 0.0 ? 1.0 : -1.0;
  if (a2 > kAsymptoteX2) return {0.0, 0.5 * sgn2};
  check_not_lattice(x1, a2);
  const double sh = std::sinh(kPi * a2);
  const double sn = std::sin(kPi * x1);
  const double A = sh * sh + sn * sn;
  return {std::sin(2.0 * kPi * x1) / (4.0 * A),
          sgn2 * std::sinh(2.0 * kPi * a2) / (4.0 * A)};
}

GreenEval g_periodic_eval(const CellPoint& offset) {
  return {g_periodic(offset), grad_g_periodic(offset)};
}

double g_periodic_fourier(const CellPoint& offset, int n_terms) {
  if (offset.x2 == 0.0)
    throw NumericalError("g_periodic_fourier: x2 must be nonzero");
  if (n_terms < 1)
    throw NumericalError("g_periodic_fourier: n_terms must be >= 1");
  const double a2 = std::abs(offset.x2);
  double sum = 0.0;
  for (int n = n_terms; n >= 1; --n) {
    const double t = std::exp(-2.0 * kPi * n * a2);
    if (t == 0.0) continue;
    sum += t * std::cos(2.0 * kPi * n * offset.x1) / (2.0 * kPi * n);
  }
  return 0.5 * a2 - kLog2Over2Pi - sum;
}

double g_halfspace(const CellPoint& target, const CellPoint& source) {
  const CellPoint direct{target.x1 - source.x1, target.x2 - source.x2};
  const CellPoint image{target.x1 - source.x1, target.x2 + source.x2};
  return g_periodic(direct) - g_periodic(image);
}

Eigen::Vector2d grad_g_halfspace(const CellPoint& target, const CellPoint& source) {
  const CellPoint direct{target.x1 - source.x1, target.x2 - source.x2};
  const CellPoint image{target.x1 - source.x1, target.x2 + source.x2};
  return grad_g_periodic(direct) - grad_g_periodic(image);
}

GreenEval g_halfspace_eval(const CellPoint& target, const CellPoint& source) {
  return {g_halfspace(target, source), grad_g_halfspace(target, source)};
}

double g_remainder(const CellPoint& offset) {
  const double r2 = offset.x1 * offset.x1 + offset.x2 * offset.x2;
  if (r2 == 0.0) return std::log(kPi * kPi) / kFourPi;
  const double sh = std::sinh(kPi * std::abs(offset.x2));
  const double sn = std::sin(kPi * offset.x1);
  // Ratio form: both factors are positive, no cancellation near the origin.
  return std::log((sh * sh + sn * sn) / r2) / kFourPi;
}

KernelSplit kernel_split(const CellPoint& offset) {
  const double r2 = offset.x1 * offset.x1 + offset.x2 * offset.x2;
  if (r2 <= kLatticeTol * kLatticeTol)
    throw NumericalError("kernel_split: offset is (numerically) a lattice point");
  return {std::log(r2) / kFourPi, g_remainder(offset)};
}

double g_halfspace_tail(const CellPoint& target, const CellPoint& source) {
  if (!(target.x2 > source.x2))
    throw NumericalError("g_halfspace_tail: requires target.x2 > source.x2");
  double sum = 0.0;
  for (int n = 1; n <= 400; ++n) {
    const double t = std::exp(-2.0 * kPi * n * target.x2) *
                     std::sinh(2.0 * kPi * n * source.x2);
    if (std::abs(t) < 1e-300) break;
    sum -= t * std::cos(2.0 * kPi * n * (target.x1 - source.x1)) / (kPi * n);
  }
  return sum;
}

}  // namespace metasurf
