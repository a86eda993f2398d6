// Seeded randomized checks of structural invariants.
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fredsim/analytic.hpp"
#include "fredsim/dynamics.hpp"
#include "fredsim/model.hpp"
#include "fredsim/tomography.hpp"

using namespace fredsim;

namespace {

constexpr unsigned kSeed = 20240611;

Matrix random_density(Eigen::Index n, std::mt19937& rng) {
  std::normal_distribution<double> nd;
  Matrix r(n, n);
  for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = cplx(nd(rng), nd(rng));
  Matrix rho = r * r.adjoint();
  return rho / rho.trace();
}

SystemParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemParams p;
  p.delta_b = 1.0;
  p.delta_c = 1.5 + 10.0 * u(rng);
  p.g = 0.001 + 0.05 * u(rng);
  p.xi_ss_mag = 5.0 * u(rng);
  p.kappa_a = 0.2 * u(rng);
  p.kappa_b = 0.2 * u(rng);
  p.kappa_c = 0.2 * u(rng);
  p.nbar_b = 2.0 * u(rng);
  p.resolve_drive_from_xi();
  return p;
}

}  // namespace

TEST(Properties, LindbladRhsTracelessHermitian) {
  std::mt19937 rng(kSeed);
  const HilbertConfig cfg{2, 4, 3};
  for (int trial = 0; trial < 20; ++trial) {
    const SystemParams p = random_params(rng);
    const Operator h = build_hamiltonian(cfg, p, HamiltonianVariant::dis);
    const Matrix rhs = lindblad_rhs(cfg, State::density(random_density(cfg.total(), rng)), h, p);
    EXPECT_LT(std::abs(rhs.trace()), 1e-13);
    EXPECT_LT((rhs - rhs.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Properties, DisplacementGroupLaw) {
  std::mt19937 rng(kSeed + 1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const cplx z(u(rng), u(rng));
    const Matrix d = displacement_block(90, 90, z);
    const Matrix dm = displacement_block(90, 90, -z);
    // D(z) D(-z) = 1 on levels far from the cut
    EXPECT_LT((d * dm - Matrix::Identity(90, 90)).topLeftCorner(15, 15).cwiseAbs().maxCoeff(), 1e-10) << z;
    EXPECT_LT((d.adjoint() - dm).cwiseAbs().maxCoeff(), 1e-12) << z;
  }
}

TEST(Properties, EvolutionKeepsDensityValid) {
  std::mt19937 rng(kSeed + 2);
  const HilbertConfig cfg{2, 5, 3};
  for (int trial = 0; trial < 4; ++trial) {
    const SystemParams p = random_params(rng);
    EvolutionSpec spec;
    spec.t_final = 2.0;
    spec.record_times = {0.5, 1.0, 1.5, 2.0};
    const EvolutionResult r = evolve(cfg, State::density(random_density(cfg.total(), rng)),
                                     build_sparse_hamiltonian(cfg, p, HamiltonianVariant::dis), p, spec);
    EXPECT_LT(r.diagnostics.max_trace_error, 1e-9);
    EXPECT_LT(r.diagnostics.max_hermiticity, 1e-10);
    EXPECT_GT(r.diagnostics.min_eigenvalue, -1e-8);
  }
}

TEST(Properties, FidelitySymmetricAndBounded) {
  std::mt19937 rng(kSeed + 3);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_density(5, rng);
    const Matrix b = random_density(5, rng);
    const double fab = uhlmann_fidelity(a, b).value;
    EXPECT_NEAR(fab, uhlmann_fidelity(b, a).value, 1e-9);
    EXPECT_GE(fab, 0.0);
    EXPECT_LE(fab, 1.0);
  }
}

TEST(Properties, FranckCondonSumsToOne) {
  std::mt19937 rng(kSeed + 4);
  std::uniform_real_distribution<double> u(0.0, 3000.0);
  for (int trial = 0; trial < 10; ++trial) {
    SystemParams p;
    p.delta_c = 20.0;
    p.g = 0.001;
    p.xi_ss_mag = u(rng);
    const double b2 = std::pow(normal_mode_decomposition(1, p).beta_m, 2);
    double sum = 0.0;
    for (int m = 0; m <= static_cast<int>(8.0 * b2) + 20; ++m) sum += fc_factor(m, p);
    EXPECT_NEAR(sum, 1.0, 1e-12) << p.xi_ss_mag;
  }
}

TEST(Properties, CatProbabilitiesComplete) {
  std::mt19937 rng(kSeed + 5);
  std::uniform_real_distribution<double> u(0.01, 2.0 * std::numbers::pi);
  SystemParams p;
  p.delta_c = 20.0;
  p.g = 0.001;
  for (int trial = 0; trial < 20; ++trial) {
    p.xi_ss_mag = 100.0 * u(rng) * u(rng);
    p.omega_a = u(rng);
    const CatStates cs = cat_states_analytic(u(rng), p, AnalyticVariant::app);
    EXPECT_NEAR(cs.plus.probability + cs.minus.probability, 1.0, 1e-9);
  }
}

TEST(Properties, WignerBound) {
  std::mt19937 rng(kSeed + 6);
  for (int trial = 0; trial < 3; ++trial) {
    const Matrix rho = random_density(12, rng);
    GridSpec grid;
    grid.n_re = 31;
    grid.n_im = 27;
    const WignerGrid w = wigner(State::density(rho), grid);
    EXPECT_LE(w.values.cwiseAbs().maxCoeff(), 2.0 / std::numbers::pi + 1e-9);
  }
}
