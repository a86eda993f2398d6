#include "fredsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fredsim/error.hpp"

namespace fredsim {

double SystemParams::kappa_max() const { return std::max({kappa_a, kappa_b, kappa_c}); }

void SystemParams::resolve_xi_from_drive() {
  const SteadyDisplacement sd = steady_state_displacement(*this);
  xi_ss_mag = sd.magnitude;
  theta_c = sd.theta;
}

void SystemParams::resolve_drive_from_xi() {
  omega_drive_amp_c = xi_ss() * cplx(delta_c, -0.5 * kappa_c);
}

std::vector<std::string> SystemParams::warnings() const {
  std::vector<std::string> out;
  if (std::abs(omega_drive_amp_a) > 0.0) {
    if (kappa_a <= 0.0 || std::abs(omega_drive_amp_a) / kappa_a > kWeakDriveLimit) {
      out.emplace_back("weak-drive guard: |omega_drive_amp_a|/kappa_a exceeds 0.3");
    }
  }
  return out;
}

SteadyDisplacement steady_state_displacement(const SystemParams& p) {
  const cplx denom(p.delta_c, -0.5 * p.kappa_c);
  if (denom == cplx(0.0, 0.0)) {
    raise(ErrorKind::singular_drive, "steady-state displacement undefined for delta_c = kappa_c = 0");
  }
  SteadyDisplacement sd;
  sd.xi = p.omega_drive_amp_c / denom;
  sd.magnitude = std::abs(sd.xi);
  sd.theta = sd.magnitude == 0.0 ? 0.0 : std::arg(sd.xi);
  return sd;
}

cplx transient_displacement(const SystemParams& p, cplx xi0, double t) {
  if (t < 0.0) raise(ErrorKind::invalid_argument, "transient displacement needs t >= 0");
  const cplx rate(0.5 * p.kappa_c, p.delta_c);
  if (rate == cplx(0.0, 0.0)) return xi0 + cplx(0.0, 1.0) * p.omega_drive_amp_c * t;
  const cplx xi_ss = p.omega_drive_amp_c / cplx(p.delta_c, -0.5 * p.kappa_c);
  return xi_ss + (xi0 - xi_ss) * std::exp(-rate * t);
}

SparseMatrix build_sparse_hamiltonian(const HilbertConfig& cfg, const SystemParams& p,
                                      HamiltonianVariant variant) {
  const SparseModeOperators ops = build_sparse_mode_operators(cfg);
  const SparseMatrix ad = ops.a.adjoint();
  const SparseMatrix bd = ops.b.adjoint();
  const SparseMatrix cd = ops.c.adjoint();
  const SparseMatrix na = ad * ops.a;
  const SparseMatrix nb = bd * ops.b;
  const SparseMatrix nc = cd * ops.c;
  const SparseMatrix exchange = na * (bd * ops.c + cd * ops.b);
  const cplx phase = std::polar(1.0, p.theta_c);
  const SparseMatrix pushed = na * (phase * bd + std::conj(phase) * ops.b);

  const bool driven_frame =
      variant == HamiltonianVariant::dis_driven || variant == HamiltonianVariant::eff;
  const double freq_a = driven_frame ? p.delta_a : p.omega_a;

  SparseMatrix h = freq_a * na + p.delta_b * nb + p.delta_c * nc;
  switch (variant) {
    case HamiltonianVariant::sys:
      h += p.g * exchange;
      h += p.omega_drive_amp_c * cd + std::conj(p.omega_drive_amp_c) * ops.c;
      break;
    case HamiltonianVariant::dis:
      h += p.g * exchange - p.g0() * pushed;
      break;
    case HamiltonianVariant::app:
      h -= p.g0() * pushed;
      break;
    case HamiltonianVariant::dis_driven:
    case HamiltonianVariant::eff:
      h += p.g * exchange - p.g0() * pushed;
      h += p.omega_drive_amp_a * ad + std::conj(p.omega_drive_amp_a) * ops.a;
      if (variant == HamiltonianVariant::eff) h -= cplx(0.0, 0.5 * p.kappa_a) * na;
      break;
  }
  h.prune(cplx(0.0, 0.0));
  h.makeCompressed();
  return h;
}

Operator build_hamiltonian(const HilbertConfig& cfg, const SystemParams& p, HamiltonianVariant variant) {
  return {Matrix(build_sparse_hamiltonian(cfg, p, variant)), ModeTag::full};
}

NormalModeDecomposition normal_mode_decomposition(int m, const SystemParams& p) {
  if (m < 0) raise(ErrorKind::invalid_argument, "normal mode decomposition needs m >= 0");
  NormalModeDecomposition nm;
  nm.m = m;
  const double mg = m * p.g;
  if (mg == 0.0) {
    nm.lambda_m = 0.0;
  } else if (p.delta_c == p.delta_b) {
    nm.lambda_m = std::copysign(0.25 * std::numbers::pi, mg);
  } else {
    nm.lambda_m = 0.5 * std::atan(2.0 * mg / (p.delta_c - p.delta_b));
  }
  const double cl = std::cos(nm.lambda_m);
  const double sl = std::sin(nm.lambda_m);
  const double s2 = std::sin(2.0 * nm.lambda_m);
  nm.chi_b_m = p.delta_b * cl * cl + p.delta_c * sl * sl - mg * s2;
  nm.chi_c_m = p.delta_b * sl * sl + p.delta_c * cl * cl + mg * s2;
  const double scale = std::abs(p.delta_b) + std::abs(p.delta_c) + std::abs(mg);
  const double tiny = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  if (std::abs(nm.chi_b_m) <= tiny || std::abs(nm.chi_c_m) <= tiny) {
    raise(ErrorKind::degenerate_normal_mode,
          "normal-mode frequency vanishes at m=" + std::to_string(m));
  }
  const double mg0 = m * p.g0();
  nm.beta_m = mg0 * cl / nm.chi_b_m;
  nm.eta_m = mg0 * sl / nm.chi_c_m;
  return nm;
}

double eigenenergy(int m, int j, int s, const SystemParams& p) {
  const NormalModeDecomposition nm = normal_mode_decomposition(m, p);
  const double cl = std::cos(nm.lambda_m);
  const double sl = std::sin(nm.lambda_m);
  const double g0 = p.g0();
  const double shift = g0 * g0 * m * m * (cl * cl / nm.chi_b_m + sl * sl / nm.chi_c_m);
  return p.delta_a * m + nm.chi_b_m * j + nm.chi_c_m * s - shift;
}

RwaReport rwa_condition_report(const SystemParams& p, int n_a, int n_b, int n_c) {
  if (n_a < 0 || n_b < 0 || n_c < 0) {
    raise(ErrorKind::invalid_argument, "excitation estimates must be non-negative");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  RwaReport r;
  const double fredkin = p.g * n_a * std::sqrt(static_cast<double>(n_b) * n_c);
  r.fredkin_margin = fredkin == 0.0 ? inf : std::abs(p.delta_c - p.delta_b) / fredkin;
  const double pushed = p.g0() * n_a * std::sqrt(static_cast<double>(n_b));
  r.coupling_margin = pushed == 0.0 ? inf : std::abs(p.delta_b) / pushed;
  if (r.fredkin_margin > kRwaPassMargin) {
    r.grade = RwaGrade::pass;
  } else if (r.fredkin_margin > kRwaFailMargin * (1.0 + 1e-9)) {
    r.grade = RwaGrade::marginal;
  } else {
    r.grade = RwaGrade::fail;
  }
  return r;
}

std::string grade_name(RwaGrade grade) {
  switch (grade) {
    case RwaGrade::pass: return "pass";
    case RwaGrade::marginal: return "marginal";
    case RwaGrade::fail: return "fail";
  }
  return "unknown";
}

}  // namespace fredsim
