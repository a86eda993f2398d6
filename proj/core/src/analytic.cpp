#include "fredsim/analytic.hpp"

#include <cmath>
#include <numbers>

#include "fredsim/error.hpp"
#include "fredsim/special_functions.hpp"

namespace fredsim {

namespace {

constexpr cplx I{0.0, 1.0};

void require_theta_zero(const SystemParams& p, const char* what) {
  if (p.theta_c != 0.0) {
    raise(ErrorKind::invalid_argument, std::string(what) + " assumes theta_c = 0");
  }
}

void require_m(int m) {
  if (m < 0) raise(ErrorKind::invalid_argument, "photon index m must be >= 0");
}

}  // namespace

cplx AnalyticState::phase_factor() const {
  return std::polar(1.0, variant == AnalyticVariant::app ? -phase : phase);
}

AnalyticState approx_state(double t, int m, cplx beta0, cplx eta0, const SystemParams& p) {
  require_theta_zero(p, "approx_state");
  require_m(m);
  const double db = p.delta_b;
  const double mg0 = m * p.g0();
  const cplx rot_b = std::exp(-I * (db * t));
  AnalyticState s;
  s.m = m;
  s.variant = AnalyticVariant::app;
  s.beta_out = beta0 * rot_b + (mg0 / db) * (1.0 - rot_b);
  s.eta_out = eta0 * std::exp(-I * (p.delta_c * t));
  const double ramp = db * t - std::sin(db * t);
  s.phase = p.omega_a * m * t - (mg0 * mg0 / (db * db)) * ramp -
            (mg0 / db) * ((std::exp(I * (db * t)) - 1.0) * std::conj(beta0)).imag();
  return s;
}

AnalyticState exact_state(double t, int m, cplx beta0, cplx eta0, const SystemParams& p) {
  require_m(m);
  // H_dis at theta_c is e^{i theta (b'b + c'c)} H_dis(0) e^{-i theta (...)}, so
  // rotate the input amplitudes back, evolve at theta = 0, rotate forward.
  const cplx gauge = std::polar(1.0, p.theta_c);
  const cplx b0 = beta0 / gauge;
  const cplx e0 = eta0 / gauge;
  const NormalModeDecomposition nm = normal_mode_decomposition(m, p);
  const double cl = std::cos(nm.lambda_m);
  const double sl = std::sin(nm.lambda_m);
  const double bm = nm.beta_m;
  const double em = nm.eta_m;
  const cplx rb = std::exp(-I * (nm.chi_b_m * t));
  const cplx rc = std::exp(-I * (nm.chi_c_m * t));
  const cplx ub = bm * (1.0 - rb) + (b0 * cl - e0 * sl) * rb;
  const cplx uc = em * (1.0 - rc) + (b0 * sl + e0 * cl) * rc;

  AnalyticState s;
  s.m = m;
  s.variant = AnalyticVariant::ext;
  s.beta_out = (ub * cl + uc * sl) * gauge;
  s.eta_out = (uc * cl - ub * sl) * gauge;
  const double g0 = p.g0();
  const double mm = static_cast<double>(m) * m;
  s.phase = -p.omega_a * m * t + g0 * g0 * mm * cl * cl / nm.chi_b_m * t +
            g0 * g0 * mm * sl * sl / nm.chi_c_m * t +
            (em * b0.imag() - bm * e0.imag()) * sl + (bm * b0.imag() + em * e0.imag()) * cl +
            bm * ((e0 * rb).imag() * sl - (b0 * rb).imag() * cl) - bm * bm * std::sin(nm.chi_b_m * t) -
            em * ((e0 * rc).imag() * cl + (b0 * rc).imag() * sl) - em * em * std::sin(nm.chi_c_m * t);
  return s;
}

Vector analytic_vector(const HilbertConfig& cfg, const AnalyticState& s) {
  cfg.validate();
  if (s.m >= cfg.dim_a) raise(ErrorKind::truncation, "photon index m exceeds dim_a");
  Vector va = Vector::Zero(cfg.dim_a);
  va(s.m) = 1.0;
  const CoherentVector vb = coherent_state(cfg.dim_b, s.beta_out);
  const CoherentVector vc = coherent_state(cfg.dim_c, s.eta_out);
  return s.phase_factor() * product_state(cfg, va, vb.amplitudes, vc.amplitudes);
}

double closed_fidelity(double t, int m, cplx beta0, cplx eta0, const SystemParams& p) {
  const AnalyticState app = approx_state(t, m, beta0, eta0, p);
  const AnalyticState ext = exact_state(t, m, beta0, eta0, p);
  const double db = std::norm(app.beta_out - ext.beta_out);
  const double dc = std::norm(app.eta_out - ext.eta_out);
  return std::exp(-0.5 * (db + dc));
}

CatTrajectory cat_trajectory(double t, const SystemParams& p) {
  const double db = p.delta_b;
  const double g0 = p.g0();
  CatTrajectory c;
  c.t = t;
  c.phi_t = (g0 * g0 / (db * db)) * (db * t - std::sin(db * t)) - p.omega_a * t;
  c.beta_t = (g0 / db) * (1.0 - std::exp(-I * (db * t))) * std::polar(1.0, p.theta_c);
  return c;
}

namespace {

// norm^-2 = a + sign * 2 r cos(phase) for the vector c0 |0> + c_beta |beta>.
CatBranch make_branch(double sign, double phase, cplx beta, double c_scale, double prob_scale) {
  CatBranch b;
  b.beta = beta;
  b.c0 = 1.0;
  b.c_beta = sign * c_scale * std::polar(1.0, phase);
  const double overlap = std::exp(-0.5 * std::norm(beta));
  const double sq = 1.0 + c_scale * c_scale + sign * 2.0 * c_scale * overlap * std::cos(phase);
  b.probability = std::max(0.0, prob_scale * sq);
  if (sq < kDegenerateBranch) {
    b.degenerate = true;
    b.norm = 0.0;
  } else {
    b.norm = 1.0 / std::sqrt(sq);
  }
  return b;
}

}  // namespace

CatStates cat_states_analytic(double t, const SystemParams& p, AnalyticVariant variant) {
  CatStates cs;
  cs.variant = variant;
  cs.t = t;
  if (variant == AnalyticVariant::app) {
    const CatTrajectory tr = cat_trajectory(t, p);
    cs.phase = tr.phi_t;
    // <+-|_a applied to (|0>|0> + e^{i phi}|1>|beta>)/sqrt(2) leaves half of
    // (|0> +- e^{i phi}|beta>), so P = |.|^2 / 4.
    cs.plus = make_branch(+1.0, tr.phi_t, tr.beta_t, 1.0, 0.25);
    cs.minus = make_branch(-1.0, tr.phi_t, tr.beta_t, 1.0, 0.25);
  } else {
    const AnalyticState ext = exact_state(t, 1, 0.0, 0.0, p);
    cs.phase = ext.phase;
    // the c projection onto |0> keeps e^{-|eta_2|^2/2} of the m = 1 branch
    const double c_scale = std::exp(-0.5 * std::norm(ext.eta_out));
    cs.plus = make_branch(+1.0, ext.phase, ext.beta_out, c_scale, 0.25);
    cs.minus = make_branch(-1.0, ext.phase, ext.beta_out, c_scale, 0.25);
  }
  return cs;
}

Vector cat_vector(int dim_b, const CatBranch& branch) {
  if (branch.degenerate) {
    raise(ErrorKind::degenerate_branch, "post-selected branch has vanishing norm");
  }
  Vector v = branch.c_beta * coherent_state(dim_b, branch.beta).amplitudes;
  v(0) += branch.c0;
  const double n = v.norm();
  if (n < kDegenerateBranch) raise(ErrorKind::degenerate_branch, "post-selected branch has vanishing norm");
  return v / n;
}

double fc_factor(int m, const SystemParams& p) {
  require_m(m);
  const double b1 = normal_mode_decomposition(1, p).beta_m;
  const double x = b1 * b1;
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  return std::exp(-x + m * std::log(x) - log_factorial(m));
}

double weak_value(double vartheta) {
  if (!(vartheta >= 0.0 && vartheta <= std::numbers::pi)) {
    raise(ErrorKind::invalid_argument, "post-selection angle must lie in (0, pi)");
  }
  const double s = std::sin(vartheta);
  if (vartheta == 0.0 || vartheta == std::numbers::pi || std::abs(s) < 1e-14) {
    raise(ErrorKind::orthogonal_postselection, "post-selected state is orthogonal to the initial state");
  }
  return 0.5 * (1.0 - std::cos(vartheta) / s);
}

namespace {

// 2*vartheta measured from pi/2, so vartheta = pi/4 lands on u = 0 exactly
struct DoubleAngle {
  double cos2;
  double sin2;
};

DoubleAngle double_angle(double vartheta) {
  const double u = 2.0 * vartheta - 0.5 * std::numbers::pi;
  return {-std::sin(u), std::cos(u)};
}

}  // namespace

double strong_value(double vartheta) { return 0.5 * (1.0 - double_angle(vartheta).sin2); }

PointerShift pointer_shift(const PointerConfig& cfg, const SystemParams& p) {
  require_theta_zero(p, "pointer_shift");
  if (!(cfg.vartheta > 0.0 && cfg.vartheta < std::numbers::pi)) {
    raise(ErrorKind::invalid_argument, "post-selection angle must lie in (0, pi)");
  }
  const double lock = 2.0 * cfg.omega_a_lock * p.delta_b;
  if (std::abs(p.omega_a - lock) > 1e-12 * std::max(1.0, std::abs(lock))) {
    raise(ErrorKind::invalid_argument, "pointer shift needs omega_a = 2 n delta_b");
  }
  const double ts = cfg.t_s > 0.0 ? cfg.t_s : std::numbers::pi / std::abs(p.delta_b);
  if (cfg.t_s < 0.0) raise(ErrorKind::invalid_argument, "detection time must be > 0");
  const CatTrajectory tr = cat_trajectory(ts, p);
  const DoubleAngle da = double_angle(cfg.vartheta);
  const double denom = 1.0 - std::exp(-0.5 * std::norm(tr.beta_t)) * std::cos(tr.phi_t) * da.cos2;
  if (std::abs(denom) < 1e-14) {
    raise(ErrorKind::degenerate_branch, "pointer-shift denominator vanishes");
  }
  PointerShift ps;
  ps.normalized = 0.5 * (1.0 - da.sin2 / denom);
  ps.shift = std::sqrt(2.0) * tr.beta_t * ps.normalized;
  return ps;
}

G2Analytic g2_analytic(double p1, double p2) {
  if (!(p1 > 0.0)) raise(ErrorKind::vanishing_photon_number, "single-photon probability is zero");
  G2Analytic g;
  g.exact = 2.0 * p2 / ((p1 + 2.0 * p2) * (p1 + 2.0 * p2));
  g.approx = 2.0 * p2 / (p1 * p1);
  return g;
}

double g2_leading_order(const BlockadeResult& r) {
  if (!(r.x > 0.0)) raise(ErrorKind::vanishing_photon_number, "single-photon amplitude is zero");
  // linear cavity: the two Lorentzians cancel, skip the rounding
  if (r.linear) return 1.0;
  return 2.0 * r.y / (r.x * r.x);
}

}  // namespace fredsim
