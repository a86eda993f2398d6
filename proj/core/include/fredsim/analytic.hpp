#pragma once

#include "fredsim/fock.hpp"
#include "fredsim/model.hpp"

namespace fredsim {

enum class AnalyticVariant { app, ext };

// |m>_a |beta_out>_b |eta_out>_c times a phase factor. The app state carries
// exp(-i phase), the ext state exp(+i phase).
struct AnalyticState {
  int m = 0;
  double phase = 0.0;
  cplx beta_out;
  cplx eta_out;
  AnalyticVariant variant = AnalyticVariant::app;

  cplx phase_factor() const;
};

AnalyticState approx_state(double t, int m, cplx beta0, cplx eta0, const SystemParams& p);
AnalyticState exact_state(double t, int m, cplx beta0, cplx eta0, const SystemParams& p);

// Truncated vector of an analytic state. Coherent amplitudes are renormalized.
Vector analytic_vector(const HilbertConfig& cfg, const AnalyticState& s);

// |<Psi_ext|Psi_app>| for the same initial |m>|beta0>|eta0>.
double closed_fidelity(double t, int m, cplx beta0, cplx eta0, const SystemParams& p);

struct CatTrajectory {
  double t = 0.0;
  cplx beta_t;
  double phi_t = 0.0;
};

CatTrajectory cat_trajectory(double t, const SystemParams& p);

// One post-selected branch: norm * (c0 |0>_b + c_beta |beta>_b).
struct CatBranch {
  cplx c0;
  cplx c_beta;
  cplx beta;
  double norm = 0.0;         // N or K, 0 when degenerate
  double probability = 0.0;  // P for |+->_a |0>_c
  bool degenerate = false;
};

struct CatStates {
  AnalyticVariant variant = AnalyticVariant::app;
  double t = 0.0;
  double phase = 0.0;  // phi(t) or Theta_ext(t)
  CatBranch plus;
  CatBranch minus;
};

inline constexpr double kDegenerateBranch = 1e-14;

// Initial state (|0> + |1>)_a |0>_b |0>_c / sqrt(2).
CatStates cat_states_analytic(double t, const SystemParams& p, AnalyticVariant variant);

// Normalized mode-b vector; throws degenerate_branch for a vanishing branch.
Vector cat_vector(int dim_b, const CatBranch& branch);

double fc_factor(int m, const SystemParams& p);

double weak_value(double vartheta);
double strong_value(double vartheta);

struct PointerConfig {
  double vartheta = 0.0;
  double t_s = 0.0;  // 0 selects pi/|delta_b|
  int omega_a_lock = 0;
};

struct PointerShift {
  cplx shift;             // <delta x>
  double normalized = 0;  // <delta x> / (sqrt(2) beta(t_s))
};

PointerShift pointer_shift(const PointerConfig& cfg, const SystemParams& p);

struct BlockadeResult {
  double p1 = 0.0;
  double p2 = 0.0;
  double normalization = 1.0;  // 1 + X + Y
  double x = 0.0;              // sum |C_1|^2
  double y = 0.0;              // sum |C_2|^2
  double tail = 0.0;
  bool linear = false;  // g0 = 0
};

struct BlockadeOptions {
  double tail_tolerance = 1e-8;
  int padding = 30;  // extra Fock levels for the intermediate two-mode space
};

BlockadeResult blockade_probabilities(const HilbertConfig& cfg, const SystemParams& p,
                                      const BlockadeOptions& options = {});

struct G2Analytic {
  double exact = 0.0;   // 2 P2 / (P1 + 2 P2)^2
  double approx = 0.0;  // 2 P2 / P1^2
};

G2Analytic g2_analytic(double p1, double p2);
// 2Y/X^2, the lowest order in the drive; 1 for a linear cavity.
double g2_leading_order(const BlockadeResult& r);

}  // namespace fredsim
