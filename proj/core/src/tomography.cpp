#include "fredsim/tomography.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fredsim/error.hpp"
#include "fredsim/special_functions.hpp"

namespace fredsim {

namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

void check_full(const HilbertConfig& cfg, const State& st) {
  if (st.dimension() != static_cast<Eigen::Index>(cfg.total())) {
    raise(ErrorKind::shape_mismatch, "state does not match the Hilbert config");
  }
}

// <a|_a <0|_c applied to the full vector, leaving a mode-b vector.
Vector project_pure(const HilbertConfig& cfg, const Vector& psi, const Vector& a_conj) {
  Vector out = Vector::Zero(cfg.dim_b);
  for (int m = 0; m < cfg.dim_a; ++m) {
    if (a_conj(m) == 0.0) continue;
    for (int j = 0; j < cfg.dim_b; ++j) out(j) += a_conj(m) * psi(cfg.index(m, j, 0));
  }
  return out;
}

}  // namespace

PostselectResult postselect(const HilbertConfig& cfg, const State& state, const Vector& a_state) {
  cfg.validate();
  check_full(cfg, state);
  if (a_state.size() != cfg.dim_a) raise(ErrorKind::shape_mismatch, "post-selection state needs dim_a entries");
  const double an = a_state.norm();
  if (!(an > 0.0)) raise(ErrorKind::invalid_argument, "post-selection state is zero");
  const Vector a_conj = a_state.conjugate() / an;

  Matrix rho_b;
  if (state.kind() == StateKind::pure) {
    const Vector phi = project_pure(cfg, state.vector(), a_conj);
    rho_b = phi * phi.adjoint();
  } else {
    const Matrix& rho = state.matrix();
    rho_b = Matrix::Zero(cfg.dim_b, cfg.dim_b);
    for (int m = 0; m < cfg.dim_a; ++m) {
      if (a_conj(m) == 0.0) continue;
      for (int n = 0; n < cfg.dim_a; ++n) {
        if (a_conj(n) == 0.0) continue;
        const cplx w = a_conj(m) * std::conj(a_conj(n));
        for (int k = 0; k < cfg.dim_b; ++k) {
          const Eigen::Index col = cfg.index(n, k, 0);
          for (int j = 0; j < cfg.dim_b; ++j) rho_b(j, k) += w * rho(cfg.index(m, j, 0), col);
        }
      }
    }
  }
  const double prob = rho_b.trace().real();
  if (!(prob >= kVanishingBranch)) {
    raise(ErrorKind::vanishing_branch, "post-selection probability " + std::to_string(prob) + " below 1e-12");
  }
  rho_b /= prob;
  rho_b = 0.5 * (rho_b + rho_b.adjoint()).eval();
  return {State::density(std::move(rho_b), state.frame(), 10.0), prob};
}

PostselectResult postselect(const HilbertConfig& cfg, const State& state, Branch branch) {
  if (cfg.dim_a < 2) raise(ErrorKind::truncation, "post-selection on |+-> needs dim_a >= 2");
  Vector a = Vector::Zero(cfg.dim_a);
  a(0) = 1.0;
  a(1) = branch == Branch::plus ? 1.0 : -1.0;
  return postselect(cfg, state, a);
}

double GridSpec::step_re() const { return n_re > 1 ? (re_max - re_min) / (n_re - 1) : 0.0; }
double GridSpec::step_im() const { return n_im > 1 ? (im_max - im_min) / (n_im - 1) : 0.0; }
double GridSpec::re(int i) const { return re_min + i * step_re(); }
double GridSpec::im(int k) const { return im_min + k * step_im(); }

double WignerGrid::normalization() const { return values.sum() * grid.step_re() * grid.step_im(); }

double wigner_point(const Matrix& rho_b, cplx zeta) {
  // W = (2/pi) sum_jk rho_jk <k|D(2 zeta)|j> (-1)^j
  const int d = static_cast<int>(rho_b.rows());
  const Matrix disp = displacement_block(d, d, 2.0 * zeta);
  cplx acc = 0.0;
  for (int j = 0; j < d; ++j) {
    cplx col = 0.0;
    for (int k = 0; k < d; ++k) col += rho_b(j, k) * disp(k, j);
    acc += (j % 2 == 0) ? col : -col;
  }
  return kTwoOverPi * acc.real();
}

WignerGrid wigner(const State& rho_b, const GridSpec& grid) {
  if (grid.n_re < 1 || grid.n_im < 1 || !std::isfinite(grid.re_min) || !std::isfinite(grid.re_max) ||
      !std::isfinite(grid.im_min) || !std::isfinite(grid.im_max)) {
    raise(ErrorKind::invalid_argument, "Wigner grid must be finite and non-empty");
  }
  const Matrix rho = rho_b.as_density();
  WignerGrid w;
  w.grid = grid;
  w.values.resize(grid.n_re, grid.n_im);
  for (int i = 0; i < grid.n_re; ++i) {
    for (int k = 0; k < grid.n_im; ++k) w.values(i, k) = wigner_point(rho, cplx(grid.re(i), grid.im(k)));
  }
  return w;
}

double parity_expectation(const State& rho_b) {
  double acc = 0.0;
  if (rho_b.kind() == StateKind::pure) {
    const Vector& v = rho_b.vector();
    for (Eigen::Index j = 0; j < v.size(); ++j) acc += (j % 2 == 0 ? 1.0 : -1.0) * std::norm(v(j));
  } else {
    const Matrix& r = rho_b.matrix();
    for (Eigen::Index j = 0; j < r.rows(); ++j) acc += (j % 2 == 0 ? 1.0 : -1.0) * r(j, j).real();
  }
  return acc;
}

double wigner_cat_branch(cplx zeta, const CatBranch& branch) {
  if (branch.degenerate) raise(ErrorKind::degenerate_branch, "post-selected branch has vanishing norm");
  // Wigner function of |alpha><beta| for coherent alpha, beta
  auto term = [zeta](cplx a, cplx b) {
    const cplx e = -0.5 * std::norm(a) - 0.5 * std::norm(b) - 2.0 * std::norm(zeta) +
                   2.0 * zeta * std::conj(b) + 2.0 * a * std::conj(zeta) - a * std::conj(b);
    return kTwoOverPi * std::exp(e);
  };
  const cplx amps[2] = {branch.c0, branch.c_beta};
  const cplx alphas[2] = {0.0, branch.beta};
  cplx acc = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) acc += amps[i] * std::conj(amps[j]) * term(alphas[i], alphas[j]);
  }
  return branch.norm * branch.norm * acc.real();
}

double wigner_analytic_cat(cplx zeta, double t, const SystemParams& p, Branch branch, AnalyticVariant variant) {
  const CatStates cs = cat_states_analytic(t, p, variant);
  return wigner_cat_branch(zeta, branch == Branch::plus ? cs.plus : cs.minus);
}

double default_quadrature_angle(const SystemParams& p, double t_s) {
  const double ts = t_s > 0.0 ? t_s : std::numbers::pi / std::abs(p.delta_b);
  return std::arg(cat_trajectory(ts, p).beta_t) - 0.5 * std::numbers::pi;
}

std::vector<double> default_quadrature_grid() {
  std::vector<double> x(1200);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = -6.0 + 12.0 * static_cast<double>(i) / (x.size() - 1);
  return x;
}

std::vector<double> quadrature_distribution(const State& rho_b, double theta, const std::vector<double>& x_grid) {
  const Matrix rho = rho_b.as_density();
  const int d = static_cast<int>(rho.rows());
  Vector phase(d);
  for (int m = 0; m < d; ++m) phase(m) = std::polar(1.0, -theta * m);
  // rho_jk <X|j><k|X> with <X|m> = psi_m(X) e^{-i theta m}
  const Matrix rot = phase.asDiagonal() * rho * phase.conjugate().asDiagonal();
  std::vector<double> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    const std::vector<double> psi = hermite_functions(d - 1, x);
    const Eigen::Map<const Eigen::VectorXd> v(psi.data(), d);
    const Vector vc = v.cast<cplx>();
    out.push_back((vc.transpose() * rot * vc).value().real());
  }
  return out;
}

double oscillation_amplitude(const std::vector<double>& values) {
  double best = 0.0;
  double last_max = std::numeric_limits<double>::quiet_NaN();
  double last_min = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    const double v = values[i];
    if (v > values[i - 1] && v >= values[i + 1]) {
      if (!std::isnan(last_min)) best = std::max(best, v - last_min);
      last_max = v;
    } else if (v < values[i - 1] && v <= values[i + 1]) {
      if (!std::isnan(last_max)) best = std::max(best, last_max - v);
      last_min = v;
    }
  }
  return best;
}

double g2_numeric(const HilbertConfig& cfg, const State& rho) {
  check_full(cfg, rho);
  const int block = cfg.dim_b * cfg.dim_c;
  double n1 = 0.0;
  double n2 = 0.0;
  for (int m = 1; m < cfg.dim_a; ++m) {
    double pm = 0.0;
    for (int k = 0; k < block; ++k) {
      const Eigen::Index i = static_cast<Eigen::Index>(m) * block + k;
      pm += rho.kind() == StateKind::pure ? std::norm(rho.vector()(i)) : rho.matrix()(i, i).real();
    }
    n1 += m * pm;
    n2 += static_cast<double>(m) * (m - 1) * pm;
  }
  if (!(n1 > 1e-14)) raise(ErrorKind::vanishing_photon_number, "mean photon number of mode a vanishes");
  return n2 / (n1 * n1);
}

}  // namespace fredsim
