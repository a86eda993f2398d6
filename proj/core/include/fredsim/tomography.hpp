#pragma once

#include <vector>

#include "fredsim/analytic.hpp"
#include "fredsim/fock.hpp"
#include "fredsim/model.hpp"

namespace fredsim {

enum class Branch { plus, minus };

struct PostselectResult {
  State rho_b = State::density(Matrix::Identity(1, 1));
  double probability = 0.0;
};

inline constexpr double kVanishingBranch = 1e-12;

// Projects a onto a_state (or |+->), c onto |0>, traces them out.
PostselectResult postselect(const HilbertConfig& cfg, const State& state, Branch branch);
PostselectResult postselect(const HilbertConfig& cfg, const State& state, const Vector& a_state);

struct GridSpec {
  double re_min = -2.0;
  double re_max = 5.0;
  double im_min = -3.0;
  double im_max = 3.0;
  int n_re = 141;
  int n_im = 121;

  double step_re() const;
  double step_im() const;
  double re(int i) const;
  double im(int k) const;
};

struct WignerGrid {
  GridSpec grid;
  Eigen::MatrixXd values;  // values(i, k) at zeta = re(i) + i im(k)

  // Riemann sum of W dA.
  double normalization() const;
};

double wigner_point(const Matrix& rho_b, cplx zeta);
WignerGrid wigner(const State& rho_b, const GridSpec& grid = {});

double parity_expectation(const State& rho_b);

double wigner_analytic_cat(cplx zeta, double t, const SystemParams& p, Branch branch,
                           AnalyticVariant variant);
// Closed form for any norm (c0 |0> + c_beta |beta>).
double wigner_cat_branch(cplx zeta, const CatBranch& branch);

// Perpendicular to the line joining the two cat peaks.
double default_quadrature_angle(const SystemParams& p, double t_s = 0.0);

std::vector<double> default_quadrature_grid();  // [-6, 6], 1200 points

std::vector<double> quadrature_distribution(const State& rho_b, double theta, const std::vector<double>& x_grid);

// Largest drop from a local maximum to an adjacent local minimum.
double oscillation_amplitude(const std::vector<double>& values);

double g2_numeric(const HilbertConfig& cfg, const State& rho);

}  // namespace fredsim
