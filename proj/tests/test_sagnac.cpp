#include "bargmann_lab/fit.hpp"
#include "bargmann_lab/frame_ops.hpp"
#include "bargmann_lab/sagnac.hpp"

#include "test_support.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include <vector>

using namespace bargmann_lab;
using bargmann_lab::testing::uniform;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

RingConfig ring(double R, double W, double c, double m = 1.0, double v = 0.0)
{
  RingConfig cfg;
  cfg.radius   = R;
  cfg.omega    = W;
  cfg.mass     = m;
  cfg.v_signal = v;
  cfg.ctx      = PhysicalContext{1.0, c};
  return cfg;
}

double relative(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(RingConfig, Validation)
{
  EXPECT_THROW(sagnac_dt(ring(0.0, 1.0, 10.0)), std::invalid_argument);
  EXPECT_THROW(sagnac_dt(ring(1.0, -1.0, 10.0)), std::invalid_argument);
  EXPECT_THROW(sagnac_dt(ring(1.0, 0.1, 10.0, 0.0)), std::invalid_argument);
  EXPECT_THROW(sagnac_dt(ring(1.0, 0.1, 10.0, 1.0, -1.0)), std::invalid_argument);
  try {
    sagnac_dt(ring(2.0, 6.0, 10.0));
    FAIL() << "expected rejection";
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "ring: Omega*R must be < c");
  }
}

TEST(SagnacDt, ReferenceValues)
{
  EXPECT_EQ(sagnac_dt(ring(1.0, 0.0, 10.0)), 0.0);
  const Big pi50 = boost::math::constants::pi<Big>();
  const double expected = static_cast<double>(4 * pi50 / (10 * boost::multiprecision::sqrt(Big(99))));
  EXPECT_NEAR(sagnac_dt(ring(1.0, 1.0, 10.0)), expected, 1e-16);
  EXPECT_NEAR(sagnac_dt(ring(1.0, 1.0, 10.0)), 0.1262968, 5e-8);
}

TEST(SagnacDt, IncreasingInOmegaAndLimit)
{
  double prev = -1.0;
  for (int i = 0; i < 100; ++i) {
    const double dt = sagnac_dt(ring(1.0, 0.099 * i, 10.0));
    EXPECT_GT(dt, prev);
    prev = dt;
  }
  std::vector<double> cs, errs;
  for (double c : {10.0, 20.0, 40.0, 80.0}) {
    const double limit = 4.0 * pi * 1.5 * 1.5 * 0.3;
    cs.push_back(c);
    errs.push_back(std::abs(c * c * sagnac_dt(ring(1.5, 0.3, c)) - limit) / limit);
  }
  EXPECT_NEAR(fit_loglog(cs, errs).slope, -2.0, 0.05);
}

TEST(SagnacPhaseRel, ReferenceAndIdentity)
{
  EXPECT_EQ(sagnac_phase_rel(ring(1.0, 0.0, 10.0), 5.0), 0.0);
  EXPECT_NEAR(sagnac_phase_rel(ring(1.0, 0.1, 10.0), 5.0), 0.0628350, 5e-8);
  EXPECT_THROW(sagnac_phase_rel(ring(1.0, 0.1, 10.0), 0.0), std::invalid_argument);
  for (int i = 0; i < 100; ++i) {
    const double c = uniform(1, 100), R = uniform(0.1, 5), W = uniform(0.0, 0.99) * c / R, w = uniform(0.1, 100);
    const RingConfig cfg = ring(R, W, c);
    EXPECT_LE(relative(sagnac_phase_rel(cfg, w), w * sagnac_dt(cfg)), 1e-14);
  }
}

TEST(EinsteinPlanck, ClosedForms)
{
  EXPECT_DOUBLE_EQ(einstein_planck_omega(1.0, 0.0, PhysicalContext{}), 1.0);
  EXPECT_NEAR(einstein_planck_omega(1.0, 0.6, PhysicalContext{}), 1.25, 1e-15);
  EXPECT_THROW(einstein_planck_omega(1.0, 1.0, PhysicalContext{}), std::invalid_argument);
  std::vector<double> cs, errs;
  for (double c : {10.0, 20.0, 40.0, 80.0}) {
    const double m = 1.0, v = 0.5;
    const double series = m * c * c + 0.5 * m * v * v;
    cs.push_back(c);
    errs.push_back(std::abs(einstein_planck_omega(m, v, PhysicalContext{1.0, c}) - series));
  }
  EXPECT_NEAR(fit_loglog(cs, errs).slope, -2.0, 0.05);
}

TEST(SagnacNonRel, ValuesAndOddness)
{
  EXPECT_EQ(sagnac_phase_nonrel(ring(1.0, 0.0, 10.0)), 0.0);
  EXPECT_NEAR(sagnac_phase_nonrel(ring(1.0, 1.0, 10.0)), 4.0 * pi, 1e-15);
  EXPECT_NEAR(4.0 * pi, 12.566371, 1e-6);
  for (int i = 0; i < 20; ++i) {
    const double R = uniform(0.1, 3), W = uniform(0.1, 3), m = uniform(0.1, 3), v = uniform(0, 3), t = uniform(0.1, 5);
    EXPECT_DOUBLE_EQ(sagnac_phase_nonrel(R, -W, m), -sagnac_phase_nonrel(R, W, m));
    EXPECT_NEAR(sagnac_phase_projective(m, v, -W, R, t), -sagnac_phase_projective(m, v, W, R, t), 1e-12);
  }
}

TEST(SagnacNonRel, RelativisticPhaseApproachesLimit)
{
  std::vector<double> cs, diffs;
  for (double c : {10.0, 20.0, 40.0, 80.0, 160.0}) {
    const RingConfig cfg = ring(1.0, 0.1, c, 1.0, 0.2);
    const double rel     = sagnac_phase_rel(cfg, einstein_planck_omega(1.0, 0.2, cfg.ctx));
    cs.push_back(c);
    diffs.push_back(std::abs(rel - sagnac_phase_nonrel(cfg)));
  }
  EXPECT_NEAR(fit_loglog(cs, diffs).slope, -2.0, 0.1);
}

TEST(SagnacProjective, ValuesAndForms)
{
  EXPECT_EQ(sagnac_phase_projective(1.0, 0.0, 1.0, 1.0, pi), 0.0);
  EXPECT_NEAR(sagnac_phase_projective(1.0, 1.0, 1.0, 1.0, pi), 2.0 * pi, 1e-15);
  for (int i = 0; i < 100; ++i) {
    const double m = uniform(0.1, 3), v = uniform(0, 3), W = uniform(0.01, 3), R = uniform(0.1, 3), t = uniform(0.1, 5);
    const double a = sagnac_phase_projective(m, v, W, R, t);
    EXPECT_LE(relative(a, sagnac_phase_projective_simplified(m, v, W, R, t)), 1e-14);
    // Tangential-speed bookkeeping through the boost phase.
    const double b = boost_phase(m, Vec3(v + W * R, 0, 0), Vec3::Zero(), t) -
                     boost_phase(m, Vec3(v - W * R, 0, 0), Vec3::Zero(), t);
    EXPECT_NEAR(a, b, 1e-13 * std::max(1.0, std::abs(a)));
    // v = 2 Omega R with t = pi / Omega reproduces the non-relativistic Sagnac phase.
    const double special = sagnac_phase_projective(m, 2.0 * W * R, W, R, pi / W);
    EXPECT_LE(relative(special, sagnac_phase_nonrel(R, W, m)), 1e-14);
  }
}

TEST(SagnacReport, Flags)
{
  const SagnacReport still = sagnac_report(ring(1.0, 0.0, 10.0, 1.0, 0.5));
  EXPECT_EQ(still.dphi_rel, 0.0);
  EXPECT_EQ(still.dphi_n, 0.0);
  EXPECT_EQ(still.dphi_nqm, 0.0);
  EXPECT_TRUE(still.sweep.empty());

  const SagnacReport matched = sagnac_report(ring(1.0, 0.1, 10.0, 1.0, 0.2));
  EXPECT_TRUE(matched.nqm_equals_n);
  EXPECT_DOUBLE_EQ(matched.t_flight, pi / 0.1);

  const SagnacReport off = sagnac_report(ring(1.0, 0.1, 10.0, 1.0, 0.1));
  EXPECT_FALSE(off.nqm_equals_n);
  EXPECT_NEAR(off.nqm_minus_n, -2.0 * pi * 0.1, 1e-14);
  ASSERT_TRUE(off.limit_fit.has_value());
  EXPECT_NEAR(off.limit_fit->slope, -2.0, 0.1);
  EXPECT_EQ(off.sweep.size(), 5u);
}
