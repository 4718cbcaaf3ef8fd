#include "bargmann_lab/kinematic_groups.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace bargmann_lab;
using bargmann_lab::testing::uniform;

namespace {

const RepSpec bargmann1{Representation::extended_galilei, 1, 1.0};
const RepSpec bargmann3{Representation::extended_galilei, 3, 1.0};

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Vec3 random_vec(double scale) { return Vec3(uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)); }

GroupElement random_galilei(const RepSpec& r)
{
  return exponentiate(generator(r, "H"), uniform(-2, 2)) * translation(r, random_vec(2)) *
         galilean_boost(r, random_vec(2)) * exponentiate(generator(r, "M"), uniform(-2, 2));
}

}  // namespace

TEST(Generators, LabelsAndErrors)
{
  EXPECT_EQ(generator(bargmann1, "P").matrix, generator(bargmann1, "P1").matrix);
  EXPECT_THROW(generator(bargmann1, "K"), std::invalid_argument);
  EXPECT_THROW(generator(RepSpec{Representation::poincare, 1, 1.0}, "M"), std::invalid_argument);
  EXPECT_THROW(generator(bargmann1, "P2"), std::invalid_argument);
  EXPECT_THROW(generator(bargmann3, "Q"), std::invalid_argument);
  EXPECT_THROW(generator(bargmann3, ""), std::invalid_argument);
  EXPECT_THROW(generator(RepSpec{Representation::extended_galilei, 2, 1.0}, "H"), std::invalid_argument);
  EXPECT_NO_THROW(generator(bargmann3, "C3"));
}

TEST(Algebra, CentralExtensionRelations)
{
  const auto cp = commutator(generator(bargmann1, "C"), generator(bargmann1, "P"));
  EXPECT_LE(max_abs(cp.matrix - generator(bargmann1, "M").matrix), 1e-15);
  for (const char* x : {"H", "P", "C"}) {
    EXPECT_EQ(max_abs(commutator(generator(bargmann1, "M"), generator(bargmann1, x)).matrix), 0.0) << x;
  }
}

TEST(Algebra, PoincareBoostTranslationBracket)
{
  for (double c : {1.0, 3.0, 100.0}) {
    const RepSpec r{Representation::poincare, 1, c};
    const auto kp = commutator(generator(r, "K"), generator(r, "P"));
    EXPECT_LE(max_abs(kp.matrix - generator(r, "H").matrix / (c * c)), 1e-15) << c;
  }
}

TEST(Algebra, AllRelationsExact)
{
  for (int d : {1, 3}) {
    for (auto rep : {Representation::extended_galilei, Representation::poincare}) {
      for (double c : {1.0, 7.0}) {
        const auto checks = verify_algebra(RepSpec{rep, d, c});
        EXPECT_FALSE(checks.empty());
        for (const auto& rc : checks) EXPECT_LE(rc.error, 1e-14) << rc.relation << " d=" << d;
      }
    }
  }
}

TEST(Exponential, IdentityInverseAndHomomorphism)
{
  const RepSpec poincare{Representation::poincare, 3, 2.0};
  for (const auto& [rep, label] : std::vector<std::pair<RepSpec, std::string>>{
           {bargmann3, "H"}, {bargmann3, "P2"}, {bargmann3, "C1"}, {bargmann3, "M"},
           {poincare, "H"}, {poincare, "P3"}, {poincare, "K2"}}) {
    const auto x = generator(rep, label);
    const auto n = rep.dimension();
    EXPECT_EQ(exponentiate(x, 0.0).matrix, Matrix::Identity(n, n));
    for (int i = 0; i < 10; ++i) {
      const double a = uniform(-1.5, 1.5), b = uniform(-1.5, 1.5);
      EXPECT_LE(max_abs((exponentiate(x, a) * exponentiate(x, -a)).matrix - Matrix::Identity(n, n)), 1e-14) << label;
      EXPECT_LE(max_abs((exponentiate(x, a) * exponentiate(x, b)).matrix - exponentiate(x, a + b).matrix), 1e-13)
          << label;
    }
  }
}

TEST(Exponential, TranslationActsPassivelyOnEvents)
{
  // Passive convention: the new frame's origin sits at x = a.
  const ExtendedEvent e = event_shift(exponentiate(generator(bargmann1, "P"), 0.8), ExtendedEvent{1.0, Vec3(2, 0, 0), 3.0});
  EXPECT_DOUBLE_EQ(e.t, 1.0);
  EXPECT_DOUBLE_EQ(e.x.x(), 1.2);
  EXPECT_DOUBLE_EQ(e.s, 3.0);
}

TEST(Exponential, GalileanBoostCarriesTheWavefunctionPhase)
{
  const double v = 0.7, t = 1.3, x = 0.4;
  const ExtendedEvent e = event_shift(galilean_boost(bargmann1, Vec3(v, 0, 0)), ExtendedEvent{t, Vec3(x, 0, 0), 0.0});
  EXPECT_DOUBLE_EQ(e.t, t);
  EXPECT_NEAR(e.x.x(), x - v * t, 1e-15);
  EXPECT_NEAR(e.s, 0.5 * v * v * t - v * x, 1e-15);
}

TEST(Exponential, LorentzBoostMatchesScalarFormulas)
{
  for (double c : {1.0, 5.0}) {
    const RepSpec r{Representation::poincare, 1, c};
    for (double v : {0.3 * c, -0.6 * c, 0.95 * c}) {
      const double gamma = 1.0 / std::sqrt(1.0 - v * v / (c * c));
      const SpacetimeEvent e = event_shift(lorentz_boost(r, Vec3(v, 0, 0)), SpacetimeEvent{1.0, Vec3(0.5, 0, 0)});
      EXPECT_NEAR(e.t, gamma * (1.0 - v * 0.5 / (c * c)), 1e-13);
      EXPECT_NEAR(e.x.x(), gamma * (0.5 - v * 1.0), 1e-13);
    }
  }
  // Rest event (ct = 1, x = 0) at c = 1 goes to (gamma, -gamma v).
  const SpacetimeEvent e = event_shift(lorentz_boost(RepSpec{Representation::poincare, 1, 1.0}, Vec3(0.6, 0, 0)),
                                       SpacetimeEvent{1.0, Vec3::Zero()});
  EXPECT_NEAR(e.t, 1.25, 1e-14);
  EXPECT_NEAR(e.x.x(), -0.75, 1e-14);
  EXPECT_THROW(lorentz_boost(RepSpec{Representation::poincare, 1, 1.0}, Vec3(1.0, 0, 0)), std::invalid_argument);
  EXPECT_THROW(galilean_boost(RepSpec{Representation::poincare, 1, 1.0}, Vec3(0.1, 0, 0)), std::invalid_argument);
}

TEST(Exponential, LorentzBoostContractsToGalilean)
{
  const double v = 0.4, t = 0.9, x = 0.3;
  std::vector<double> cs, errs;
  for (double c : {10.0, 20.0, 40.0, 80.0}) {
    const SpacetimeEvent e =
        event_shift(lorentz_boost(RepSpec{Representation::poincare, 1, c}, Vec3(v, 0, 0)), SpacetimeEvent{t, Vec3(x, 0, 0)});
    const ExtendedEvent g = event_shift(galilean_boost(bargmann1, Vec3(v, 0, 0)), ExtendedEvent{t, Vec3(x, 0, 0), 0.0});
    cs.push_back(c);
    errs.push_back(std::max(std::abs(e.t - g.t), std::abs(e.x.x() - g.x.x())));
  }
  EXPECT_NEAR(fit_loglog(cs, errs).slope, -2.0, 0.1);
}

TEST(BargmannLoop, TrivialAndUnitCases)
{
  const Matrix id = Matrix::Identity(4, 4);
  EXPECT_LE(max_abs(bargmann_group_loop(Vec3::Zero(), Vec3(1, 0, 0)).matrix - id), 1e-15);
  EXPECT_LE(max_abs(bargmann_group_loop(Vec3(1, 0, 0), Vec3::Zero()).matrix - id), 1e-15);
  const GroupElement loop = bargmann_group_loop(Vec3(1, 0, 0), Vec3(1, 0, 0));
  const CentralShift cs  = central_shift(loop);
  EXPECT_DOUBLE_EQ(cs.shift, 1.0);
  EXPECT_LE(cs.deviation, 1e-15);
  const ExtendedEvent e = event_shift(loop, ExtendedEvent{});
  EXPECT_EQ(e.t, 0.0);
  EXPECT_EQ(e.x.norm(), 0.0);
  EXPECT_DOUBLE_EQ(e.s, 1.0);
}

TEST(BargmannLoop, PureCentralShiftForRandomVectors)
{
  for (int i = 0; i < 50; ++i) {
    const Vec3 v = random_vec(5), a = random_vec(5);
    const CentralShift cs = central_shift(bargmann_group_loop(v, a, 3));
    EXPECT_LE(cs.deviation, 1e-13);
    EXPECT_NEAR(cs.shift, v.dot(a), 1e-13 * std::max(1.0, std::abs(v.dot(a))));
  }
}

TEST(BargmannLoop, CommutesWithEveryElement)
{
  for (int i = 0; i < 20; ++i) {
    const GroupElement loop = bargmann_group_loop(random_vec(3), random_vec(3), 3);
    const GroupElement g    = random_galilei(bargmann3);
    EXPECT_LE(max_abs((loop * g).matrix - (g * loop).matrix), 1e-13);
  }
}

TEST(BargmannLoop, ProvenanceRecordsFactors)
{
  const GroupElement loop = bargmann_group_loop(Vec3(1, 0, 0), Vec3(2, 0, 0));
  ASSERT_EQ(loop.provenance.size(), 4u);
  EXPECT_EQ(loop.provenance.front().generator, "C.v");
  EXPECT_EQ(loop.provenance.back().generator, "P.a");
  EXPECT_EQ(loop.inverse().provenance.size(), 4u);
  EXPECT_LE(max_abs((loop * loop.inverse()).matrix - Matrix::Identity(4, 4)), 1e-14);
}

TEST(PoincareLoop, IdentityAndLeadingShift)
{
  EXPECT_LE(max_abs(poincare_group_loop(Vec3::Zero(), Vec3(1, 0, 0), 1.0).matrix - Matrix::Identity(3, 3)), 1e-15);

  const SpacetimeEvent e = event_shift(poincare_group_loop(Vec3(0.1, 0, 0), Vec3(1, 0, 0), 1.0), SpacetimeEvent{});
  const double gamma     = 1.0 / std::sqrt(1.0 - 0.01);
  EXPECT_NEAR(e.t, gamma * 0.1, 1e-14);
  EXPECT_NEAR(e.x.x(), gamma - 1.0, 1e-14);
  EXPECT_NEAR(e.t, 0.1, 1e-3);
  EXPECT_NEAR(e.x.x(), 0.005, 1e-4);

  const SpacetimeEvent f = event_shift(poincare_group_loop(Vec3(0.2, 0, 0), Vec3(0.5, 0, 0), 10.0), SpacetimeEvent{});
  EXPECT_NEAR(f.t, 0.001, 1e-6);
  EXPECT_NEAR(f.x.x(), 0.0001, 1e-7);
  EXPECT_THROW(poincare_group_loop(Vec3(1, 0, 0), Vec3(1, 0, 0), 1.0), std::invalid_argument);
}

TEST(PoincareLoop, NotTheIdentity)
{
  const GroupElement loop = poincare_group_loop(Vec3(0.3, 0, 0), Vec3(0.7, 0, 0), 1.0);
  EXPECT_GT(max_abs(loop.matrix - Matrix::Identity(3, 3)), 0.1);
}

TEST(PoincareLoop, ResidualFallsLikeInverseFourthPower)
{
  const Vec3 v(0.3, 0, 0), a(0.7, 0, 0);
  std::vector<double> cs, dt, dx;
  for (double c : {10.0, 20.0, 40.0, 80.0, 160.0}) {
    const SpacetimeEvent e    = event_shift(poincare_group_loop(v, a, c), SpacetimeEvent{});
    const SpacetimeEvent lead = poincare_loop_leading_shift(v, a, c);
    cs.push_back(c);
    dt.push_back(e.t - lead.t);
    dx.push_back(e.x.x() - lead.x.x());
  }
  EXPECT_NEAR(fit_loglog(cs, dt).slope, -4.0, 0.2);
  EXPECT_NEAR(fit_loglog(cs, dx).slope, -4.0, 0.2);
}

TEST(PoincareLoop, DeviationScalingInVelocity)
{
  // The time shift is linear in v and the spatial shift quadratic.
  const Vec3 a(1.0, 0, 0);
  std::vector<double> vs, ts, xs;
  for (double v : {0.1, 0.05, 0.025, 0.0125}) {
    const SpacetimeEvent e = event_shift(poincare_group_loop(Vec3(v, 0, 0), a, 1.0), SpacetimeEvent{});
    vs.push_back(v);
    ts.push_back(e.t);
    xs.push_back(e.x.x());
  }
  EXPECT_NEAR(fit_loglog(vs, ts).slope, 1.0, 0.1);
  EXPECT_NEAR(fit_loglog(vs, xs).slope, 2.0, 0.1);
}

TEST(EventShift, RepresentationMismatch)
{
  const GroupElement id = GroupElement::identity(bargmann1);
  const ExtendedEvent e = event_shift(id, ExtendedEvent{1.0, Vec3(2, 0, 0), 3.0});
  EXPECT_EQ(e.t, 1.0);
  EXPECT_EQ(e.x.x(), 2.0);
  EXPECT_EQ(e.s, 3.0);
  EXPECT_THROW(event_shift(id, SpacetimeEvent{}), std::invalid_argument);
  EXPECT_THROW(event_shift(poincare_group_loop(Vec3(0.1, 0, 0), Vec3(1, 0, 0), 1.0), ExtendedEvent{}),
               std::invalid_argument);
  EXPECT_THROW(GroupElement::identity(bargmann1) * GroupElement::identity(bargmann3), std::invalid_argument);
}

TEST(Contraction, ZeroProductGivesNoShift)
{
  const ContractionResult r = contraction_check(Vec3(0.3, 0, 0), Vec3(0, 0.7, 0), {10.0, 20.0, 40.0}, 3);
  for (const auto& row : r.rows) EXPECT_LE(std::abs(row.time_shift), 1e-15);
  EXPECT_FALSE(r.scaled_residual_fit.has_value());
}

TEST(Contraction, ScaledShiftApproachesCentralShift)
{
  const ContractionResult r = contraction_check(Vec3(0.3, 0, 0), Vec3(0.7, 0, 0), {80.0, 10.0, 40.0, 20.0});
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_DOUBLE_EQ(r.rows.front().c, 10.0);  // sorted
  EXPECT_NEAR(r.central_shift, 0.21, 1e-15);
  EXPECT_NEAR(r.rows.back().scaled_time_shift, 0.21, 1e-4);
  ASSERT_TRUE(r.scaled_residual_fit.has_value());
  EXPECT_NEAR(r.scaled_residual_fit->slope, -2.0, 0.1);
  EXPECT_NEAR(r.time_residual_fit->slope, -4.0, 0.2);
  EXPECT_NEAR(r.space_residual_fit->slope, -4.0, 0.2);
  EXPECT_LE(std::abs(*r.extrapolated - r.central_shift), *r.extrapolation_error);
}
