#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "metasurf/impedance.hpp"
#include "metasurf/verify.hpp"

using namespace metasurf;

namespace {
constexpr double kPi = std::numbers::pi;

struct Setup {
  ParticleBoundary b = make_disk({0.0, 0.5}, 0.2, 128);
  PeriodicOperators ops = assemble(b);
  SpectralDecomposition spec = eigendecompose(ops, b);
};
const Setup& setup() {
  static const Setup s;
  return s;
}
}  // namespace

TEST_CASE("drude model sign structure") {
  for (double nm : {300.0, 500.0, 800.0, 1100.0, 1500.0}) {
    const MaterialState m = drude_gold(nm * 1e-9);
    CHECK(m.mu_c.imag() > 0.0);
    CHECK(m.mu_c.real() < 0.0);  // below the plasma frequency
    CHECK(m.eps_c.imag() > 0.0);
    CHECK(m.lambda_mu.imag() < 0.0);
    CHECK(m.mu_m == doctest::Approx(1.25663706212e-6));
  }
  CHECK_THROWS_AS(drude_gold(200e-9), NumericalError);
  CHECK_THROWS_AS(drude_gold(2000e-9), NumericalError);
}

TEST_CASE("vanishing damping gives a real contrast") {
  DrudeParams p;
  p.damping_energy_ev = 1e-12;
  const MaterialState m = drude_gold(600e-9, p);
  CHECK(std::abs(m.lambda_mu.imag()) < 1e-9);
}

TEST_CASE("lambda_mu definition") {
  const Cplx mu_c(-3.0, 0.2);
  const double mu_m = 1.0;
  const Cplx lm = contrast_lambda(mu_c, mu_m);
  CHECK(std::abs(lm - (mu_c + mu_m) / (2.0 * (mu_c - mu_m))) < 1e-15);
}

TEST_CASE("sign lemma: Im alpha_inf > 0 across the sweep") {
  const auto& s = setup();
  for (int i = 0; i < 61; ++i) {
    const double nm = 300.0 + 1200.0 * i / 60.0;
    const MaterialState m = drude_gold(nm * 1e-9);
    const ImpedanceResult r = alpha_inf_direct(s.ops, s.b, m.lambda_mu);
    CHECK(r.alpha_inf.imag() > 0.0);
    CHECK(r.impedance_z == -r.alpha_inf);
  }
}

TEST_CASE("direct and spectral paths agree") {
  const auto& s = setup();
  for (double nm : {320.0, 500.0, 777.0, 1499.0}) {
    const MaterialState m = drude_gold(nm * 1e-9);
    const ImpedanceResult d = alpha_inf_direct(s.ops, s.b, m.lambda_mu);
    const ImpedanceResult sp = alpha_inf_spectral(s.spec, s.b, m.lambda_mu);
    CHECK(std::abs(d.alpha_inf - sp.alpha_inf) / std::abs(d.alpha_inf) <= 1e-8);
    CHECK(sp.ibp_route_residual <= 1e-6);
  }
}

TEST_CASE("neumann series limit |lambda_mu| -> inf") {
  const auto& s = setup();
  const double area = s.b.area();
  for (double lm : {1e3, -1e3}) {
    const ImpedanceResult r = alpha_inf_direct(s.ops, s.b, lm);
    CHECK(std::abs(r.alpha_inf - area / lm) <= 10.0 * area / (lm * lm));
  }
}

TEST_CASE("resonance peak sits where the dominant-mode distance is minimal") {
  const auto& s = setup();
  DrudeParams p;
  p.plasma_energy_ev = 3.0;  // brings the resonance band inside the window
  const int count = 241;
  std::vector<double> mag(count), dist(count);
  int jstar = -1;
  double best = 0.0;
  for (int i = 0; i < count; ++i) {
    const double nm = 300.0 + 1200.0 * i / double(count - 1);
    const Cplx lm = drude_gold(nm * 1e-9, p).lambda_mu;
    const ImpedanceResult r = alpha_inf_spectral(s.spec, s.b, lm);
    mag[i] = std::abs(r.alpha_inf);
    if (mag[i] > best) {
      best = mag[i];
      jstar = r.dominant_mode;
    }
  }
  for (int i = 0; i < count; ++i) {
    const double nm = 300.0 + 1200.0 * i / double(count - 1);
    dist[i] = std::abs(drude_gold(nm * 1e-9, p).lambda_mu + s.spec.lambda(jstar));
  }
  const int peak_at = static_cast<int>(
      std::max_element(mag.begin(), mag.end()) - mag.begin());
  const int dist_min_at = static_cast<int>(
      std::min_element(dist.begin(), dist.end()) - dist.begin());
  CHECK(std::abs(peak_at - dist_min_at) <= 1);
}

TEST_CASE("single-mode dominance near resonance") {
  const auto& s = setup();
  // place the resonance band in-window with a softer plasma energy
  DrudeParams p;
  p.plasma_energy_ev = 3.0;
  double best = 0.0;
  double dominance = 0.0;
  for (int i = 0; i < 241; ++i) {
    const double nm = 300.0 + 1200.0 * i / 240.0;
    const ImpedanceResult r =
        alpha_inf_spectral(s.spec, s.b, drude_gold(nm * 1e-9, p).lambda_mu);
    if (std::abs(r.alpha_inf) > best) {
      best = std::abs(r.alpha_inf);
      dominance = std::abs(r.modes[r.dominant_mode].term) / std::abs(r.alpha_inf);
    }
  }
  CHECK(dominance >= 0.9);
}

TEST_CASE("corrector field: plate trace, periodicity, far-field constant") {
  const auto& s = setup();
  const MaterialState m = drude_gold(800e-9);
  const CorrectorSolution sol = solve_corrector(s.ops, s.b, m.lambda_mu);

  CHECK(std::abs(corrector_field(s.b, sol, {0.3, 0.0}).value) < 1e-12);
  const Cplx a = corrector_field(s.b, sol, {0.2, 1.3}).value;
  const Cplx b2 = corrector_field(s.b, sol, {1.2, 1.3}).value;
  CHECK(std::abs(a - b2) <= 1e-12 * std::abs(a));

  CHECK(corrector_field(s.b, sol, {0.0, 0.71}).near_boundary_warning);
  CHECK_FALSE(corrector_field(s.b, sol, {0.0, 1.5}).near_boundary_warning);

  CHECK(corrector_far_limit_gap(s.b, sol) <= 1e-6);
  const double rate = corrector_decay_rate(s.b, sol);
  CHECK(rate >= 2.0 * kPi * 0.9);

  // the stable tail equals the direct difference where both are well-resolved
  const Cplx dev = corrector_far_deviation(s.b, sol, {0.1, 1.4});
  const Cplx direct = corrector_field(s.b, sol, {0.1, 1.4}).value - sol.alpha_inf;
  CHECK(std::abs(dev - direct) < 1e-10);
}

TEST_CASE("resolvent distance is reported near the spectrum") {
  const auto& s = setup();
  const ImpedanceResult r =
      alpha_inf_direct(s.ops, s.b, Cplx(0.25, -1e-3), &s.spec);
  CHECK(r.resolvent_distance > 0.0);
  const ImpedanceResult r2 = alpha_inf_spectral(s.spec, s.b, Cplx(0.25, -1e-3));
  CHECK(r.resolvent_distance == doctest::Approx(r2.resolvent_distance));
}

TEST_CASE("reflection coefficient") {
  const double km = 2.0 * kPi / 625e-9;
  // z = 0: sound-soft plate
  CHECK(reflection_coefficient(0.0, km, {0.0, -1.0}, 0.05) == Cplx(-1.0, 0.0));
  // delta -> 0 recovers the Dirichlet limit
  CHECK(std::abs(reflection_coefficient(Cplx(2.0, -3.0), km, {0.0, -1.0}, 1e-12) +
                 1.0) < 1e-3);
  // absorption: Im z < 0 gives |R| < 1 for any downgoing direction
  for (double zim : {-0.1, -2.0, -50.0}) {
    for (double d1 : {0.0, 0.3, -0.5}) {
      Eigen::Vector2d d(d1, -std::sqrt(1.0 - d1 * d1));
      const Cplx R = reflection_coefficient(Cplx(1.0, zim), km, d, 0.05);
      CHECK(std::abs(R) < 1.0);
    }
  }
  // gain medium flips it
  CHECK(std::abs(reflection_coefficient(Cplx(1.0, 0.5), km, {0.0, -1.0}, 0.05)) > 1.0);
  CHECK_THROWS_AS(reflection_coefficient(Cplx(0.0, 1.0), km, {0.0, 1.0}, 0.05),
                  NumericalError);
}
