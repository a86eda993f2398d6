#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fredsim/error.hpp"
#include "fredsim/fock.hpp"
#include "fredsim/model.hpp"

using namespace fredsim;

namespace {

SystemParams fig_params(double g, double xi, double delta_c) {
  SystemParams p;
  p.delta_b = 1.0;
  p.delta_c = delta_c;
  p.g = g;
  p.xi_ss_mag = xi;
  p.resolve_drive_from_xi();
  return p;
}

}  // namespace

TEST(Model, SteadyDisplacement) {
  SystemParams p;
  p.omega_drive_amp_c = 0.0;
  EXPECT_EQ(steady_state_displacement(p).magnitude, 0.0);
  p.omega_drive_amp_c = 1.0;
  p.delta_c = 1.0;
  p.kappa_c = 0.0;
  const SteadyDisplacement sd = steady_state_displacement(p);
  EXPECT_NEAR(sd.magnitude, 1.0, 1e-15);
  EXPECT_NEAR(sd.theta, 0.0, 1e-15);

  SystemParams q;
  q.delta_c = 20.0;
  q.kappa_c = 0.001;
  q.xi_ss_mag = 1700.0;
  q.resolve_drive_from_xi();
  EXPECT_NEAR(std::abs(q.omega_drive_amp_c), 1700.0 * std::sqrt(400.0 + 2.5e-7), 1e-9);
  q.resolve_xi_from_drive();
  EXPECT_NEAR(q.xi_ss_mag, 1700.0, 1e-9);

  SystemParams bad;
  bad.delta_c = 0.0;
  bad.kappa_c = 0.0;
  EXPECT_THROW((void)steady_state_displacement(bad), Error);
}

TEST(Model, TransientDisplacement) {
  SystemParams p;
  p.delta_c = 2.0;
  p.kappa_c = 0.4;
  p.omega_drive_amp_c = cplx(1.0, 0.5);
  const cplx xi0(0.3, -0.2);
  EXPECT_NEAR(std::abs(transient_displacement(p, xi0, 0.0) - xi0), 0.0, 1e-15);
  const cplx xi_ss = steady_state_displacement(p).xi;
  const double t = 60.0;
  EXPECT_LE(std::abs(transient_displacement(p, xi0, t) - xi_ss), std::exp(-0.2 * t) * std::abs(xi0 - xi_ss) + 1e-15);

  SystemParams free;
  free.delta_c = 0.0;
  free.kappa_c = 0.0;
  free.omega_drive_amp_c = 0.7;
  EXPECT_NEAR(std::abs(transient_displacement(free, 0.0, 2.0) - cplx(0.0, 1.4)), 0.0, 1e-15);
}

TEST(Model, FreeHamiltoniansDiagonal) {
  const HilbertConfig cfg{3, 4, 3};
  SystemParams p;
  p.g = 0.0;
  p.omega_a = 0.3;
  p.delta_a = 0.3;
  p.delta_b = 1.0;
  p.delta_c = 2.5;
  for (auto v : {HamiltonianVariant::dis, HamiltonianVariant::app, HamiltonianVariant::dis_driven,
                 HamiltonianVariant::sys}) {
    const Matrix h = build_hamiltonian(cfg, p, v).matrix;
    for (int m = 0; m < 3; ++m)
      for (int j = 0; j < 4; ++j)
        for (int s = 0; s < 3; ++s) {
          const auto i = cfg.index(m, j, s);
          EXPECT_NEAR(std::abs(h(i, i) - (0.3 * m + 1.0 * j + 2.5 * s)), 0.0, 1e-14);
        }
    EXPECT_NEAR((h - Matrix(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0, 1e-15);
  }
}

TEST(Model, VariantRelations) {
  const HilbertConfig cfg{3, 5, 4};
  SystemParams p = fig_params(0.05, 4.0, 3.0);
  p.theta_c = 0.4;
  p.resolve_drive_from_xi();
  p.kappa_a = 0.2;
  p.omega_drive_amp_a = cplx(0.01, 0.02);
  const ModeOperators ops = build_mode_operators(cfg);
  const Matrix na = ops.a.matrix.adjoint() * ops.a.matrix;
  const Matrix exchange =
      na * (ops.b.matrix.adjoint() * ops.c.matrix + ops.c.matrix.adjoint() * ops.b.matrix);
  const Matrix dis = build_hamiltonian(cfg, p, HamiltonianVariant::dis).matrix;
  const Matrix app = build_hamiltonian(cfg, p, HamiltonianVariant::app).matrix;
  EXPECT_LT((dis - app - p.g * exchange).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((dis - dis.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  const Matrix eff = build_hamiltonian(cfg, p, HamiltonianVariant::eff).matrix;
  const Matrix anti = 0.5 * (eff - eff.adjoint());
  EXPECT_LT((anti - cplx(0.0, -0.5 * p.kappa_a) * na).cwiseAbs().maxCoeff(), 1e-15);
  const Matrix drv = build_hamiltonian(cfg, p, HamiltonianVariant::dis_driven).matrix;
  EXPECT_LT((drv - drv.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Model, NormalModeTrivialCases) {
  SystemParams p = fig_params(0.01, 100.0, 1.5);
  const NormalModeDecomposition nm0 = normal_mode_decomposition(0, p);
  EXPECT_EQ(nm0.lambda_m, 0.0);
  EXPECT_EQ(nm0.beta_m, 0.0);
  EXPECT_EQ(nm0.eta_m, 0.0);
  EXPECT_DOUBLE_EQ(nm0.chi_b_m, p.delta_b);
  EXPECT_DOUBLE_EQ(nm0.chi_c_m, p.delta_c);
  p.delta_c = p.delta_b;
  for (int m = 1; m <= 3; ++m) {
    EXPECT_NEAR(normal_mode_decomposition(m, p).lambda_m, std::numbers::pi / 4.0, 1e-15);
  }
}

// (cos, -sin) and (sin, cos) diagonalize the single-excitation b/c block.
TEST(Model, NormalModeEigenvectorResidual) {
  for (double dc : {20.0, 1.2, 0.6, -3.0}) {
    const SystemParams p = fig_params(0.07, 10.0, dc);
    for (int m = 1; m <= 3; ++m) {
      const NormalModeDecomposition nm = normal_mode_decomposition(m, p);
      Eigen::Matrix2d k;
      k << p.delta_b, m * p.g, m * p.g, p.delta_c;
      const Eigen::Vector2d vb(std::cos(nm.lambda_m), -std::sin(nm.lambda_m));
      const Eigen::Vector2d vc(std::sin(nm.lambda_m), std::cos(nm.lambda_m));
      EXPECT_LT((k * vb - nm.chi_b_m * vb).norm(), 1e-13) << dc << " " << m;
      EXPECT_LT((k * vc - nm.chi_c_m * vc).norm(), 1e-13) << dc << " " << m;
    }
  }
}

// Low spectrum of the m = 1 sector of H_dis against the closed-form energies.
TEST(Model, EigenenergiesMatchDiagonalization) {
  const HilbertConfig cfg{2, 30, 8};
  SystemParams p = fig_params(0.001, 1700.0, 20.0);
  p.omega_a = 0.0;
  const Matrix h = build_hamiltonian(cfg, p, HamiltonianVariant::dis).matrix;
  const Eigen::Index n = cfg.dim_b * cfg.dim_c;
  const Matrix block = h.block(n, n, n, n);
  Eigen::SelfAdjointEigenSolver<Matrix> es(block, Eigen::EigenvaluesOnly);
  std::vector<double> closed;
  for (int j = 0; j < 4; ++j)
    for (int s = 0; s < 2; ++s) closed.push_back(eigenenergy(1, j, s, p));
  std::sort(closed.begin(), closed.end());
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(es.eigenvalues()(k), closed[k], 1e-6 * std::max(1.0, std::abs(closed[k]))) << k;
  }
}

TEST(Model, EigenenergyLimits) {
  SystemParams p = fig_params(0.0, 0.0, 3.0);
  p.delta_a = 0.4;
  EXPECT_NEAR(eigenenergy(2, 3, 1, p), 0.8 + 3.0 + 3.0, 1e-14);

  // single-photon resonance tends to g0^2/delta_b as g -> 0 at fixed g0
  SystemParams q = fig_params(1e-7, 5e6, 20.0);
  q.delta_a = 0.0;
  const double resonance = -eigenenergy(1, 0, 0, q);
  EXPECT_NEAR(resonance, 0.25, 1e-6);

  // anharmonicity at the blockade parameters
  SystemParams r = fig_params(0.001, 500.0, 20.0);
  r.delta_a = 0.25;
  EXPECT_LT(eigenenergy(2, 0, 0, r) - 2.0 * eigenenergy(1, 0, 0, r), 0.0);
}

TEST(Model, RwaReport) {
  const SystemParams free = fig_params(0.0, 500.0, 1.01);
  const RwaReport r0 = rwa_condition_report(free, 1, 1, 1);
  EXPECT_TRUE(std::isinf(r0.fredkin_margin));
  EXPECT_EQ(r0.grade, RwaGrade::pass);

  const RwaReport fail = rwa_condition_report(fig_params(0.01, 500.0, 1.01), 1, 1, 1);
  EXPECT_NEAR(fail.fredkin_margin, 1.0, 1e-12);
  EXPECT_EQ(fail.grade, RwaGrade::fail);

  const RwaReport pass = rwa_condition_report(fig_params(0.01, 500.0, 11.0), 1, 1, 1);
  EXPECT_NEAR(pass.fredkin_margin, 1000.0, 1e-9);
  EXPECT_EQ(pass.grade, RwaGrade::pass);
  EXPECT_EQ(grade_name(RwaGrade::marginal), "marginal");
}
