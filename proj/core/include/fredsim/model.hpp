#pragma once

#include <string>
#include <vector>

#include "fredsim/fock.hpp"

namespace fredsim {

// All frequencies and rates in units of delta_b.
struct SystemParams {
  double omega_a = 0.0;
  double delta_b = 1.0;
  double delta_c = 20.0;
  double g = 0.001;
  cplx omega_drive_amp_c = 0.0;
  double theta_c = 0.0;
  double xi_ss_mag = 0.0;
  double kappa_a = 0.0;
  double kappa_b = 0.0;
  double kappa_c = 0.0;
  double nbar_a = 0.0;
  double nbar_b = 0.0;
  double nbar_c = 0.0;
  double delta_a = 0.0;
  cplx omega_drive_amp_a = 0.0;

  double g0() const { return g * xi_ss_mag; }
  cplx xi_ss() const { return std::polar(xi_ss_mag, theta_c); }
  double kappa_max() const;
  bool lossless() const { return kappa_a == 0.0 && kappa_b == 0.0 && kappa_c == 0.0; }

  // Overwrites xi_ss_mag and theta_c from the mode-c drive.
  void resolve_xi_from_drive();
  // Overwrites omega_drive_amp_c so that the drive produces xi_ss().
  void resolve_drive_from_xi();

  std::vector<std::string> warnings() const;
};

inline constexpr double kWeakDriveLimit = 0.3;

struct SteadyDisplacement {
  cplx xi;
  double magnitude = 0.0;
  double theta = 0.0;
};

SteadyDisplacement steady_state_displacement(const SystemParams& p);
cplx transient_displacement(const SystemParams& p, cplx xi0, double t);

enum class HamiltonianVariant { sys, dis, app, dis_driven, eff };

Operator build_hamiltonian(const HilbertConfig& cfg, const SystemParams& p, HamiltonianVariant variant);
SparseMatrix build_sparse_hamiltonian(const HilbertConfig& cfg, const SystemParams& p,
                                      HamiltonianVariant variant);

struct NormalModeDecomposition {
  int m = 0;
  double lambda_m = 0.0;
  double beta_m = 0.0;
  double eta_m = 0.0;
  double chi_b_m = 0.0;
  double chi_c_m = 0.0;
};

NormalModeDecomposition normal_mode_decomposition(int m, const SystemParams& p);

double eigenenergy(int m, int j, int s, const SystemParams& p);

enum class RwaGrade { pass, marginal, fail };

struct RwaReport {
  double fredkin_margin = 0.0;  // |delta_c - delta_b| / (g n_a sqrt(n_b n_c))
  double coupling_margin = 0.0; // delta_b / (g |xi_ss| n_a sqrt(n_b))
  RwaGrade grade = RwaGrade::pass;
};

inline constexpr double kRwaPassMargin = 10.0;
inline constexpr double kRwaFailMargin = 1.0;

RwaReport rwa_condition_report(const SystemParams& p, int n_a, int n_b, int n_c);
std::string grade_name(RwaGrade grade);

}  // namespace fredsim
