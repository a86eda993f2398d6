#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fredsim/analytic.hpp"
#include "fredsim/error.hpp"
#include "fredsim/tomography.hpp"

using namespace fredsim;

namespace {

constexpr double pi = std::numbers::pi;

State mode_density(const Vector& v) { return State::density(v * v.adjoint()); }

}  // namespace

TEST(Tomography, PostselectProductState) {
  const HilbertConfig cfg{2, 6, 3};
  Vector plus = Vector::Ones(2) / std::sqrt(2.0);
  const Vector chi = coherent_state(6, cplx(0.4, 0.2)).amplitudes;
  Vector c0 = Vector::Zero(3);
  c0(0) = 1.0;
  const State st = State::pure(product_state(cfg, plus, chi, c0));
  const PostselectResult r = postselect(cfg, st, Branch::plus);
  EXPECT_NEAR(r.probability, 1.0, 1e-14);
  EXPECT_LT((r.rho_b.matrix() - chi * chi.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  try {
    (void)postselect(cfg, st, Branch::minus);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::vanishing_branch);
  }
}

TEST(Tomography, PostselectCompleteness) {
  const HilbertConfig cfg{2, 4, 3};
  std::mt19937 rng(11);
  std::normal_distribution<double> nd;
  Matrix x(cfg.total(), cfg.total());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = cplx(nd(rng), nd(rng));
  Matrix rho = x * x.adjoint();
  rho /= rho.trace();
  const State st = State::density(rho);
  const double pp = postselect(cfg, st, Branch::plus).probability;
  const double pm = postselect(cfg, st, Branch::minus).probability;
  double rest = 0.0;
  for (int m = 0; m < 2; ++m)
    for (int j = 0; j < 4; ++j)
      for (int s = 1; s < 3; ++s) rest += rho(cfg.index(m, j, s), cfg.index(m, j, s)).real();
  EXPECT_NEAR(pp + pm + rest, 1.0, 1e-10);
}

TEST(Tomography, WignerVacuumAndCoherent) {
  Vector vac = Vector::Zero(20);
  vac(0) = 1.0;
  EXPECT_NEAR(wigner_point(vac * vac.adjoint(), 0.0), 2.0 / pi, 1e-14);
  const cplx alpha(1.2, -0.7);
  const Vector coh = coherent_state(30, alpha).amplitudes;
  EXPECT_NEAR(wigner_point(coh * coh.adjoint(), alpha), 2.0 / pi, 1e-9);
  EXPECT_NEAR(wigner_point(coh * coh.adjoint(), alpha + 0.5), 2.0 / pi * std::exp(-2.0 * 0.25), 1e-9);
}

TEST(Tomography, WignerOriginIsParity) {
  const Vector v = coherent_state(25, cplx(0.9, 0.4)).amplitudes;
  Vector cat = v;
  for (Eigen::Index n = 1; n < cat.size(); n += 2) cat(n) = 0.0;
  cat.normalize();
  const State rho = mode_density(cat);
  EXPECT_NEAR(wigner_point(rho.matrix(), 0.0), 2.0 / pi * parity_expectation(rho), 1e-12);
}

TEST(Tomography, WignerGridNormalizationAndBound) {
  const Vector v = coherent_state(30, cplx(1.0, 0.5)).amplitudes;
  const WignerGrid w = wigner(mode_density(v));
  EXPECT_NEAR(w.normalization(), 1.0, 1e-2);
  EXPECT_LE(w.values.cwiseAbs().maxCoeff(), 2.0 / pi + 1e-9);
  EXPECT_EQ(w.values.rows(), 141);
  EXPECT_EQ(w.values.cols(), 121);
}

TEST(Tomography, AnalyticCatWignerMatchesNumeric) {
  SystemParams p;
  p.delta_b = 1.0;
  p.delta_c = 20.0;
  p.g = 0.001;
  p.xi_ss_mag = 2000.0;
  p.resolve_drive_from_xi();
  const CatStates cs = cat_states_analytic(pi, p, AnalyticVariant::app);
  const Vector phi = cat_vector(70, cs.plus);
  const Matrix rho = phi * phi.adjoint();
  GridSpec grid;
  grid.n_re = 29;
  grid.n_im = 25;
  grid.re_max = 6.0;
  double worst = 0.0;
  for (int i = 0; i < grid.n_re; ++i)
    for (int k = 0; k < grid.n_im; ++k) {
      const cplx z(grid.re(i), grid.im(k));
      worst = std::max(worst, std::abs(wigner_point(rho, z) -
                                       wigner_analytic_cat(z, pi, p, Branch::plus, AnalyticVariant::app)));
    }
  EXPECT_LT(worst, 1e-8);
}

TEST(Tomography, CatWignerTrivialAndInterference) {
  SystemParams p;
  p.delta_b = 1.0;
  p.delta_c = 20.0;
  p.g = 0.001;
  p.xi_ss_mag = 1700.0;
  p.resolve_drive_from_xi();
  // t = 0: plus branch is the vacuum
  EXPECT_NEAR(wigner_analytic_cat(0.0, 0.0, p, Branch::plus, AnalyticVariant::app), 2.0 / pi, 1e-14);
  const CatStates cs = cat_states_analytic(pi, p, AnalyticVariant::app);
  const cplx beta = cs.plus.beta;
  // midpoint fringes: sign changes along the direction perpendicular to beta
  const cplx dir = cplx(0.0, 1.0) * beta / std::abs(beta);
  double lo = 1.0, hi = -1.0;
  for (int k = -20; k <= 20; ++k) {
    const double w = wigner_cat_branch(0.5 * beta + 0.05 * k * dir, cs.plus);
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  EXPECT_LT(lo, -0.1);
  EXPECT_GT(hi, 0.1);
}

TEST(Tomography, QuadratureVacuumAndNormalization) {
  Vector vac = Vector::Zero(15);
  vac(0) = 1.0;
  const std::vector<double> xs = default_quadrature_grid();
  ASSERT_EQ(xs.size(), 1200u);
  const std::vector<double> pv = quadrature_distribution(mode_density(vac), 0.3, xs);
  for (std::size_t i = 0; i < xs.size(); i += 97) {
    EXPECT_NEAR(pv[i], std::exp(-xs[i] * xs[i]) / std::sqrt(pi), 1e-13);
  }
  const Vector coh = coherent_state(30, cplx(1.1, 0.6)).amplitudes;
  const std::vector<double> pc = quadrature_distribution(mode_density(coh), 1.0, xs);
  const double h = xs[1] - xs[0];
  double sum = 0.0;
  for (double v : pc) sum += v * h;
  EXPECT_NEAR(sum, 1.0, 1e-6);
}

TEST(Tomography, OscillationAmplitude) {
  std::vector<double> flat(50, 1.0);
  EXPECT_EQ(oscillation_amplitude(flat), 0.0);
  std::vector<double> wave;
  for (int i = 0; i < 200; ++i) wave.push_back(2.0 + 0.3 * std::sin(0.2 * i));
  EXPECT_NEAR(oscillation_amplitude(wave), 0.6, 1e-2);
}

TEST(Tomography, DefaultQuadratureAngle) {
  SystemParams p;
  p.delta_b = 1.0;
  p.delta_c = 20.0;
  p.g = 0.001;
  p.xi_ss_mag = 1700.0;
  p.resolve_drive_from_xi();
  const double theta = default_quadrature_angle(p, pi);
  const cplx beta = cat_trajectory(pi, p).beta_t;
  EXPECT_NEAR(std::remainder(theta - (std::arg(beta) - pi / 2.0), 2.0 * pi), 0.0, 1e-14);
}

TEST(Tomography, G2NumericCoherentIsOne) {
  const HilbertConfig cfg{12, 1, 1};
  const Vector coh = coherent_state(12, 0.2).amplitudes;
  Vector one = Vector::Ones(1);
  const State st = State::pure(product_state(cfg, coh, one, one));
  EXPECT_NEAR(g2_numeric(cfg, st), 1.0, 1e-6);
}
