#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sip/models.hpp"

using namespace sip;

namespace {
const ModelParams kT = ModelParams::tanh6(24.0, 0.35);
const ModelParams kS = ModelParams::scarf2(7.0, 4.0, 1.0);

// reference spectrum, tanh6 (B0=24, p=0.35), shifted convention
const double kLevels[9] = {49.1225, 142.835,  224.5425, 294.245, 351.9425,
                           397.635, 431.3225, 453.005,  462.6825};
}  // namespace

TEST_SUITE_BEGIN("models");

TEST_CASE("tanh6 shifted levels reproduce the reference table") {
  REQUIRE(n_max(kT) == 8);
  for (int n = 0; n <= 8; ++n)
    CHECK(exact_energy(kT, n) == doctest::Approx(kLevels[n]).epsilon(1e-12));
  CHECK(exact_energy(kT, 0, false) == 0.0);  // unshifted ground level
}

TEST_CASE("scarf2 levels are A^2 - (A - np)^2") {
  REQUIRE(n_max(kS) == 6);
  const double want[7] = {0, 13, 24, 33, 40, 45, 48};
  for (int n = 0; n <= 6; ++n)
    CHECK(exact_energy(kS, n) == doctest::Approx(want[n]).epsilon(1e-14));
}

TEST_CASE("level count") {
  CHECK(n_max(ModelParams::tanh6(24.0, 0.4)) == 7);
  CHECK(n_max(ModelParams::scarf2(7.0, 4.0, 1.0)) == 6);
  // exact-integer ratio drops by one: (5*33 + 6*0.5)/(42*0.5) = 8
  CHECK(n_max(ModelParams::tanh6(33.0, 0.5)) == 7);
}

TEST_CASE("monotonicity bound and its offset from the normalizability ratio") {
  CHECK(monotonicity_bound(kT) == doctest::Approx(8.806122448979592).epsilon(1e-12));
  CHECK(monotonicity_bound(ModelParams::tanh6(24.0, 0.4)) ==
        doctest::Approx(7.785714285714286).epsilon(1e-12));
  const double ratio = (5.0 * kT.B0 + 6.0 * kT.p) / (42.0 * kT.p);
  CHECK(monotonicity_bound(kT) - ratio == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("asymptote, shift and their relation") {
  CHECK(asymptote(kT) == doctest::Approx(463.245).epsilon(1e-12));
  CHECK(energy_shift(kT) == doctest::Approx(49.1225).epsilon(1e-12));
  CHECK(asymptote(kT, false) == doctest::Approx(414.1225).epsilon(1e-12));
  const double c0 = kT.a0() + kT.B0;
  CHECK(asymptote(kT) == doctest::Approx(c0 * c0 + energy_shift(kT)));
}

TEST_CASE("superpotential values and limits") {
  CHECK(superpotential(kT, stage(kT, 0), 0.0) == 0.0);
  CHECK(superpotential(kT, stage(kT, 0), 200.0) ==
        doctest::Approx(20.35).epsilon(1e-12));  // A0 + B0 = 5 B0/6 + p
  CHECK(superpotential(kS, stage(kS, 0), 0.0) == doctest::Approx(4.0));
  // odd in x
  for (double x : {0.3, 1.7, 9.0})
    CHECK(superpotential(kT, stage(kT, 0), x) ==
          doctest::Approx(-superpotential(kT, stage(kT, 0), -x)).epsilon(1e-14));
}

TEST_CASE("partner potentials: analytic derivative and finite-difference oracle") {
  for (const ModelParams& m : {kT, kS}) {
    const ParamStage s0 = stage(m, 0);
    for (double x : {-2.3, -0.4, 0.0, 0.8, 3.1}) {
      const auto [vm, vp] = partner_potentials(m, s0, x);
      const double wp = superpotential_prime(m, s0, x);
      CHECK(vp - vm == doctest::Approx(2.0 * wp).epsilon(1e-12));
      const double h = 1e-6;
      const double fd = (superpotential(m, s0, x + h) - superpotential(m, s0, x - h)) /
                        (2.0 * h);
      CHECK(wp == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("tanh6 potential minimum, shift and tails") {
  const ParamStage s0 = stage(kT, 0);
  CHECK(partner_potentials(kT, s0, 0.0).v_minus ==
        doctest::Approx(-49.1225).epsilon(1e-12));
  CHECK(shifted_potential(kT, 0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(shifted_potential(kT, 45.0) == doctest::Approx(463.245).epsilon(1e-9));
  CHECK(shifted_potential(kT, -45.0) == doctest::Approx(463.245).epsilon(1e-9));
  // even in x, and nonnegative everywhere after the shift
  for (double x : {0.4, 1.2, 2.6})
    CHECK(shifted_potential(kT, x) ==
          doctest::Approx(shifted_potential(kT, -x)).epsilon(1e-13));
  for (int i = -400; i <= 400; ++i) CHECK(shifted_potential(kT, i * 0.05) >= 0.0);
  CHECK_THROWS_AS((void)shifted_potential(kS, 0.0), std::domain_error);
}

TEST_CASE("stage-0 upper partner has the const + U(x) structure") {
  // V_+(x, a0) = (35 B0 + 6p) p / 6 + B0 (B0 - 6p)/36 * (tanh px - 6 tanh 6px)^2
  const ParamStage s0 = stage(kT, 0);
  const double lam = kT.B0 * (kT.B0 - 6.0 * kT.p) / 36.0;
  const double c = (35.0 * kT.B0 + 6.0 * kT.p) * kT.p / 6.0;
  for (double x : {-3.0, -0.9, 0.0, 0.2, 1.4, 6.0}) {
    const double t = std::tanh(kT.p * x) - 6.0 * std::tanh(6.0 * kT.p * x);
    CHECK(partner_potentials(kT, s0, x).v_plus ==
          doctest::Approx(c + lam * t * t).epsilon(1e-12));
  }
}

TEST_CASE("scarf2 lower partner matches its sech/sinh closed form") {
  const ParamStage s0 = stage(kS, 0);
  const double A = kS.A, B = kS.B, p = kS.p;
  for (double x : {-4.0, -1.0, 0.0, 0.7, 2.5}) {
    const double sech = 1.0 / std::cosh(p * x);
    const double want =
        A * A + sech * sech * (B * B - A * (A + p) + B * (2.0 * A + p) * std::sinh(p * x));
    CHECK(partner_potentials(kS, s0, x).v_minus == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("stage sequence and level-value steps") {
  for (int k = 0; k < 8; ++k) {
    const ParamStage s = stage(kT, k);
    CHECK(s.A_k == doctest::Approx(kT.a0() - k * kT.p).epsilon(1e-14));
    CHECK(s.B_k == doctest::Approx(kT.B0 - 6.0 * k * kT.p).epsilon(1e-14));
    CHECK(stage(kT, k).c_k - stage(kT, k + 1).c_k ==
          doctest::Approx(7.0 * kT.p).epsilon(1e-12));
  }
  for (int k = 0; k < 6; ++k) CHECK(stage(kS, k).c_k == doctest::Approx(kS.A - k));
}

TEST_CASE("shape-invariance constants telescope to the unshifted levels") {
  // C_0 = 93.7125 and C_1 = 81.7075 from the level differences
  CHECK(shape_invariance_constant(kT, 0) == doctest::Approx(93.7125).epsilon(1e-12));
  CHECK(shape_invariance_constant(kT, 1) == doctest::Approx(81.7075).epsilon(1e-12));
  double acc = 0.0;
  for (int n = 1; n <= n_max(kT); ++n) {
    acc += shape_invariance_constant(kT, n - 1);
    CHECK(acc == doctest::Approx(exact_energy(kT, n, false)).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)shape_invariance_constant(kT, 8), std::out_of_range);
}

TEST_CASE("percent relative error") {
  CHECK(relative_error(224.542, 227.456) == doctest::Approx(1.2977).epsilon(2e-4));
  CHECK(relative_error(351.943, 339.62) == doctest::Approx(3.5014).epsilon(2e-4));
  CHECK(relative_error(7.25, 7.25) == 0.0);
  CHECK_THROWS_AS((void)relative_error(0.0, 1.0), std::domain_error);
}

TEST_CASE("parameter constraints are named on violation") {
  CHECK_THROWS_WITH_AS((void)ModelParams::tanh6(24.0, 9.0),
                       doctest::Contains("0 < p < B0/3"), std::invalid_argument);
  CHECK_THROWS_AS((void)ModelParams::tanh6(24.0, 0.0), std::invalid_argument);
  CHECK_THROWS_WITH_AS((void)ModelParams::scarf2(1.0, 4.0, 2.0),
                       doctest::Contains("A > p > 0"), std::invalid_argument);
  CHECK_THROWS_AS((void)ModelParams::oscillator(0.0), std::invalid_argument);
  CHECK(kT.valid());
  ModelParams bad = kT;
  bad.p = bad.B0 / 3.0;  // boundary exactly
  CHECK(!bad.valid());
}

TEST_CASE("level index errors") {
  CHECK_THROWS_AS((void)exact_energy(kT, -1), std::invalid_argument);
  CHECK_THROWS_AS((void)exact_energy(kT, 9), std::out_of_range);
  CHECK_THROWS_AS((void)asymptote(kS), std::domain_error);
  CHECK_THROWS_AS((void)monotonicity_bound(kS), std::domain_error);
}

TEST_CASE("exact spectrum bundle") {
  const SpectrumExact s = exact_spectrum(kT);
  CHECK(s.nmax == 8);
  CHECK(s.levels.size() == 9);
  CHECK(s.shift == doctest::Approx(49.1225));
  REQUIRE(s.asymptote.has_value());
  CHECK(*s.asymptote == doctest::Approx(463.245));
  CHECK_FALSE(exact_spectrum(kS).asymptote.has_value());
  for (size_t i = 1; i < s.levels.size(); ++i)
    CHECK(s.levels[i].second > s.levels[i - 1].second);
}

TEST_CASE("oscillator fixture") {
  const ModelParams osc = ModelParams::oscillator(1.5);
  CHECK(exact_energy(osc, 3) == doctest::Approx(7.0 * 1.5));
  CHECK(energy_shift(osc) == doctest::Approx(1.5));
  CHECK(reporting_potential(osc, 2.0) == doctest::Approx(9.0));
  CHECK(superpotential(osc, stage(osc, 0), 2.0) == doctest::Approx(3.0));
}

TEST_SUITE_END();
