#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ltc/approximation.hpp"
#include "ltc/errors.hpp"
#include "ltc/field_expr.hpp"
#include "support.hpp"

namespace ltc {
namespace {

// Calibrated as twice the worst of 20 seeds (1..20).
constexpr double kNegIdentityFitThreshold = 4e-5;

VectorField field(std::vector<std::string> exprs, const std::string& box) { return parse_field(exprs, parse_box(box)); }

TEST(Lipschitz, KnownConstants) {
  EXPECT_NEAR(estimate_lipschitz(field({"-x1"}, "-1:1")), 1.0, 0.02);
  EXPECT_NEAR(estimate_lipschitz(field({"x2", "-x1"}, "-1.5:1.5,-1.5:1.5")), 1.0, 0.02);
  EXPECT_NEAR(estimate_lipschitz(field({"sin(3*x1)"}, "-1:1")), 3.0, 0.15);
}

TEST(Lipschitz, HighDimensionUsesRandomPairs) {
  EXPECT_NEAR(estimate_lipschitz(field({"-x1", "-x2", "-x3", "-x4"}, "-1:1,-1:1,-1:1,-1:1")), 1.0, 0.02);
}

TEST(Lipschitz, DegenerateDomain) {
  EXPECT_THROW(estimate_lipschitz(field({"x1"}, "0:0")), DomainError);
}

TEST(Fit, ZeroFieldGivesZeroReadout) {
  const auto fit = fit_feedforward(field({"0", "0"}, "-1:1,-2:2"), 16, 200, 1e-6, 3);
  EXPECT_TRUE(fit.readout.isZero(0.0));
  EXPECT_EQ(fit.sup_error, 0.0);
}

TEST(Fit, NegIdentityBelowCalibratedThreshold) {
  const auto fit = fit_feedforward(field({"-x1"}, "-1:1"), 32, 2000, 1e-8, 7);
  EXPECT_LT(fit.sup_error, kNegIdentityFitThreshold);
}

TEST(Fit, DeterministicPerSeed) {
  const auto f = field({"x2", "-x1"}, "-1:1,-1:1");
  const auto a = fit_feedforward(f, 24, 500, 1e-8, 11);
  const auto b = fit_feedforward(f, 24, 500, 1e-8, 11);
  const auto c = fit_feedforward(f, 24, 500, 1e-8, 12);
  EXPECT_EQ(a.readout, b.readout);
  EXPECT_EQ(a.projection, b.projection);
  EXPECT_EQ(a.bias, b.bias);
  EXPECT_NE(a.projection, c.projection);
}

TEST(Fit, SigmoidCentresInsideDomain) {
  const auto f = field({"x1", "x2"}, "-1:3,0:0.5");
  const auto fit = fit_feedforward(f, 64, 300, 1e-8, 2);
  for (Eigen::Index k = 0; k < fit.bias.size(); ++k) {
    const Eigen::RowVectorXd c = fit.projection.row(k);
    const double lo = std::min(-c[0], 3 * c[0]) + std::min(0.0, 0.5 * c[1]);
    const double hi = std::max(-c[0], 3 * c[0]) + std::max(0.0, 0.5 * c[1]);
    EXPECT_GE(-fit.bias[k], lo - 1e-12);
    EXPECT_LE(-fit.bias[k], hi + 1e-12);
  }
}

TEST(Fit, RidgeSolutionIsLocallyOptimal) {
  const auto f = field({"sin(2*x1)"}, "-1:1");
  const double ridge = 1e-4;
  const auto fit = fit_feedforward(f, 12, 400, ridge, 5);
  const double best = ridge_loss(f, fit, 400, ridge);
  for (Eigen::Index j = 0; j < fit.readout.cols(); ++j) {
    for (double delta : {-1e-3, 1e-3}) {
      auto moved = fit;
      moved.readout(0, j) += delta;
      EXPECT_GT(ridge_loss(f, moved, 400, ridge), best) << "entry " << j;
    }
  }
}

TEST(Fit, RankDeficientWithoutRidge) {
  // Far more features than samples.
  EXPECT_THROW(fit_feedforward(field({"x1"}, "-1:1"), 40, 5, 0.0, 1), RankDeficient);
  EXPECT_NO_THROW(fit_feedforward(field({"x1"}, "-1:1"), 40, 5, 1e-6, 1));
}

TEST(Assemble, BlockStructure) {
  std::mt19937_64 rng(9);
  FeedForwardApprox fit;
  const AugmentedSystem sys = test::random_augmented_system(rng, 2, 8, &fit);
  ASSERT_EQ(sys.block_w.rows(), 10);
  ASSERT_EQ(sys.block_w.cols(), 10);
  EXPECT_TRUE(sys.block_w.leftCols(2).isZero(0.0));
  EXPECT_EQ(sys.block_w.topRightCorner(2, 8), fit.readout);
  // E computed entry by entry.
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      double e = 0.0;
      for (int k = 0; k < 2; ++k) e += fit.projection(i, k) * fit.readout(k, j);
      EXPECT_NEAR(sys.block_w(2 + i, 2 + j), e, 1e-15);
    }
  }
  EXPECT_EQ(sys.bias_aug.head(2), Eigen::VectorXd::Zero(2));
  EXPECT_EQ(sys.bias_aug.tail(8), fit.bias);
}

TEST(Assemble, RejectsStrongCoupling) {
  FeedForwardApprox fit;
  fit.readout = Eigen::MatrixXd::Ones(1, 1);
  fit.projection = Eigen::MatrixXd::Ones(1, 1);
  fit.bias = Eigen::VectorXd::Zero(1);
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(1);
  EXPECT_THROW(assemble_augmented_system(fit, 10.0, 0.01, z, z), ConditionsViolated);
  EXPECT_NO_THROW(assemble_augmented_system(fit, 10.0, 0.001, z, z));
}

TEST(Assemble, ZeroFitDecaysToResting) {
  FeedForwardApprox fit;
  fit.readout = Eigen::MatrixXd::Zero(1, 2);
  fit.projection = Eigen::MatrixXd::Ones(2, 1);
  fit.bias = Eigen::VectorXd::Constant(2, 0.5);
  Eigen::VectorXd a1(1), a2(2);
  a1 << 0.02;
  a2 << -0.01, 0.03;
  const AugmentedSystem sys = assemble_augmented_system(fit, 5.0, 1e-4, a1, a2);
  const LtcNetwork net = realize_as_ltc(sys);
  EXPECT_TRUE(net.chemical_synapses().empty());
  Eigen::VectorXd z(3);
  z << 0.3, -0.2, 0.9;
  const Eigen::VectorXd dz = sys.derivative(z);
  for (Eigen::Index i = 0; i < 3; ++i) {
    EXPECT_NEAR(dz[i], -(z[i] - sys.bias_aug[i]) / 5.0 + sys.resting_aug[i], 1e-15);
  }
}

AugmentedSystem minimal_system(double tau, double w_l) {
  AugmentedSystem sys;
  sys.n = 1;
  sys.n_hidden = 1;
  sys.block_w = Eigen::MatrixXd::Zero(2, 2);
  sys.block_w(0, 1) = 0.5;
  sys.block_w(1, 1) = 0.25;
  sys.bias_aug = Eigen::VectorXd::Zero(2);
  sys.bias_aug[1] = 0.3;
  sys.resting_aug = Eigen::VectorXd::Zero(2);
  sys.tau_base = tau;
  sys.w_l = w_l;
  return sys;
}

TEST(Conditions, VanishingDecayPassesAll) {
  const AugmentedSystem sys = minimal_system(1e9, 1e-12);
  const TauConditions c = check_tau_conditions(sys, parse_box("-1:1"), 0.1, 0.05, 1.0, 1.0);
  EXPECT_TRUE(c.a.ok);
  EXPECT_TRUE(c.b_bias.ok);
  EXPECT_TRUE(c.b_rate.ok);
  EXPECT_TRUE(c.tau_coupling.ok);
  EXPECT_TRUE(c.all());
}

TEST(Conditions, FastDecayFailsA) {
  const AugmentedSystem sys = minimal_system(1.0, 1.0);
  const TauConditions c = check_tau_conditions(sys, parse_box("-1:1"), 0.1, 0.0, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(c.tau_sys_min, 0.5);
  EXPECT_FALSE(c.a.ok);
  EXPECT_DOUBLE_EQ(c.a.margin, 0.05 - 2.0);
  EXPECT_FALSE(c.tau_coupling.ok);
}

TEST(Conditions, MarginsImproveWithTau) {
  double prev_a = -INFINITY, prev_b = -INFINITY, prev_r = -INFINITY;
  for (double tau : {10.0, 100.0, 1000.0}) {
    const TauConditions c = check_tau_conditions(minimal_system(tau, 1e-3 / tau), parse_box("-1:1"), 0.1, 0.05, 1.0, 1.0);
    EXPECT_GT(c.a.margin, prev_a);
    EXPECT_GT(c.b_bias.margin, prev_b);
    EXPECT_GT(c.b_rate.margin, prev_r);
    prev_a = c.a.margin;
    prev_b = c.b_bias.margin;
    prev_r = c.b_rate.margin;
  }
}

TEST(Conditions, ChosenTimeConstantsSatisfyA) {
  const Box d = parse_box("-1.5:1.5,-1.5:1.5");
  const TimeConstants tc = choose_time_constants(d, 2e-3, 0.05, 64, std::nullopt, std::nullopt);
  EXPECT_LE(tc.tau * tc.w_l, kMaxTauCoupling);
  AugmentedSystem sys;
  sys.n = 2;
  sys.n_hidden = 64;
  sys.block_w = Eigen::MatrixXd::Zero(66, 66);
  sys.block_w.rightCols(64).setOnes();
  sys.bias_aug = Eigen::VectorXd::Zero(66);
  sys.resting_aug = Eigen::VectorXd::Zero(66);
  sys.tau_base = tc.tau;
  sys.w_l = tc.w_l;
  EXPECT_TRUE(check_tau_conditions(sys, d, 2e-3, 0.05, 1.0, 1.0).a.ok);

  EXPECT_EQ(choose_time_constants(d, 2e-3, 0.05, 64, 50.0, 1e-5).tau, 50.0);
  EXPECT_DOUBLE_EQ(choose_time_constants(d, 2e-3, 0.05, 64, 50.0, std::nullopt).w_l, kAutoTauCoupling / 50.0);
}

TEST(Realize, MinimalSystemShape) {
  const AugmentedSystem sys = minimal_system(10.0, 1e-4);
  const LtcNetwork net = realize_as_ltc(sys);
  ASSERT_EQ(net.size(), 2u);
  EXPECT_EQ(net.n_output(), 1u);
  EXPECT_EQ(net.chemical_synapses().size(), 2u);
  for (const auto& s : net.chemical_synapses()) {
    EXPECT_EQ(s.src, 0u);
    EXPECT_EQ(s.w, 1e-4);
  }
  EXPECT_DOUBLE_EQ(net.neuron(0).g_leak, 0.1);
}

TEST(Realize, DerivativesAgree) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const AugmentedSystem sys = test::random_augmented_system(rng, 2, 5);
    const LtcNetwork net = realize_as_ltc(sys);
    const Eigen::VectorXd z = Eigen::VectorXd::Random(7);
    const Eigen::VectorXd via_net = network_to_augmented(sys, network_derivative(augmented_to_network(sys, z), net));
    EXPECT_LT((via_net - sys.derivative(z)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Realize, DualPathMinimal) {
  const AugmentedSystem sys = minimal_system(10.0, 1e-4);
  Eigen::VectorXd z0(2);
  z0 << 0.4, -0.2;
  EXPECT_LT(test::dual_path_error(sys, z0, 1e-4, 1.0), 1e-10);
}

TEST(Realize, NonFiniteReversalIsReported) {
  AugmentedSystem sys = minimal_system(10.0, 1e-300);
  sys.block_w(0, 1) = 1e300;
  EXPECT_THROW(realize_as_ltc(sys), RealizationError);
}

TEST(Pipeline, RotationSmoke) {
  PipelineConfig cfg;
  cfg.n_features = 16;
  cfg.n_samples = 400;
  const auto f = field({"x2", "-x1"}, "-1.5:1.5,-1.5:1.5");
  Eigen::VectorXd x0(2);
  x0 << 1.0, 0.0;
  const ApproximationReport r = approximate_trajectory(f, x0, 1.0, cfg);
  EXPECT_EQ(r.network.size(), 18u);
  EXPECT_EQ(r.reference.samples(), r.ltc.samples());
  EXPECT_LT(r.sup_traj_error, 0.1);
  EXPECT_TRUE(r.conditions.a.ok);
  EXPECT_TRUE(r.conditions.tau_coupling.ok);
}

TEST(Pipeline, StartOutsideDomain) {
  const auto f = field({"-x1"}, "-1:1");
  Eigen::VectorXd x0(1);
  x0 << 2.0;
  EXPECT_THROW(approximate_trajectory(f, x0, 1.0, PipelineConfig{}), DomainError);
}

}  // namespace
}  // namespace ltc
