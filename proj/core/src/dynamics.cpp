#include "fredsim/dynamics.hpp"

#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>

#include "fredsim/error.hpp"

namespace fredsim {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void check_shape(const HilbertConfig& cfg, Eigen::Index rows, Eigen::Index cols, const char* what) {
  const auto d = static_cast<Eigen::Index>(cfg.total());
  if (rows != d || cols != d) {
    raise(ErrorKind::shape_mismatch, std::string(what) + " does not match the Hilbert config");
  }
}

std::vector<double> sample_times(const EvolutionSpec& spec) {
  if (!(spec.t_final >= 0.0) || !std::isfinite(spec.t_final)) {
    raise(ErrorKind::invalid_argument, "t_final must be finite and >= 0");
  }
  std::vector<double> times = spec.record_times;
  if (times.empty()) times.push_back(spec.t_final);
  const double slack = 1e-12 * std::max(1.0, spec.t_final);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < -slack || times[i] > spec.t_final + slack) {
      raise(ErrorKind::invalid_argument, "record time " + fmt(times[i]) + " outside [0, t_final]");
    }
    if (i > 0 && times[i] < times[i - 1]) {
      raise(ErrorKind::invalid_argument, "record times must be sorted");
    }
    times[i] = std::clamp(times[i], 0.0, spec.t_final);
  }
  return times;
}

// Fixed-step classical RK4; intervals between record times are split into
// equal sub-steps no longer than dt.
template <typename T, typename Rhs>
std::vector<T> integrate(const T& initial, const std::vector<double>& times, double dt, Rhs&& rhs,
                         std::size_t& steps) {
  std::vector<T> out;
  out.reserve(times.size());
  T y = initial;
  T k1, k2, k3, k4, tmp;
  double t = 0.0;
  steps = 0;
  for (double target : times) {
    const double span = target - t;
    const auto n = static_cast<std::size_t>(std::max(0.0, std::ceil(span / dt - 1e-9)));
    if (n > 0) {
      const double h = span / static_cast<double>(n);
      for (std::size_t s = 0; s < n; ++s) {
        rhs(y, k1);
        tmp = y + (0.5 * h) * k1;
        rhs(tmp, k2);
        tmp = y + (0.5 * h) * k2;
        rhs(tmp, k3);
        tmp = y + h * k3;
        rhs(tmp, k4);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      steps += n;
      if (!y.allFinite()) raise(ErrorKind::instability, "non-finite state during integration");
    }
    t = target;
    out.push_back(y);
  }
  return out;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

Matrix lindblad_rhs(const HilbertConfig& cfg, const State& rho, const Operator& h, const SystemParams& p) {
  if (rho.kind() != StateKind::density) raise(ErrorKind::invalid_argument, "lindblad_rhs needs a density");
  check_shape(cfg, h.matrix.rows(), h.matrix.cols(), "Hamiltonian");
  check_shape(cfg, rho.dimension(), rho.dimension(), "density");
  const Liouvillian liou(cfg, h.matrix.sparseView(), p);
  return liou.apply(rho.matrix());
}

double default_time_step(const SystemParams& p) {
  double fastest = std::max({std::abs(p.delta_c), std::abs(p.g0()), p.kappa_max()});
  if (fastest == 0.0) fastest = std::max(std::abs(p.delta_b), 1.0);
  return 2.0 * std::numbers::pi / (200.0 * fastest);
}

EvolutionResult evolve(const HilbertConfig& cfg, const State& state, const Operator& h,
                       const SystemParams& p, const EvolutionSpec& spec) {
  return evolve(cfg, state, SparseMatrix(h.matrix.sparseView()), p, spec);
}

EvolutionResult evolve(const HilbertConfig& cfg, const State& state, const SparseMatrix& h,
                       const SystemParams& p, const EvolutionSpec& spec) {
  cfg.validate();
  check_shape(cfg, h.rows(), h.cols(), "Hamiltonian");
  check_shape(cfg, state.dimension(), state.dimension(), "state");
  const std::vector<double> times = sample_times(spec);
  const double dt = spec.dt > 0.0 ? spec.dt : default_time_step(p);

  EvolutionResult res;
  res.times = times;
  EvolutionDiagnostics& diag = res.diagnostics;
  diag.dt = spec.step_halving ? 0.5 * dt : dt;
  diag.min_eigenvalue = 0.0;

  if (state.kind() == StateKind::pure) {
    if (!p.lossless()) {
      raise(ErrorKind::invalid_argument, "pure-state evolution requires all decay rates to be zero");
    }
    const SparseMatrix mih = cplx(0.0, -1.0) * h;
    auto rhs = [&mih](const Vector& y, Vector& out) { out.noalias() = mih * y; };
    diag.stability_product = diag.dt * max_row_sum(h);
    std::size_t steps = 0;
    std::vector<Vector> coarse = integrate(state.vector(), times, dt, rhs, steps);
    std::vector<Vector> fine;
    if (spec.step_halving) {
      fine = integrate(state.vector(), times, 0.5 * dt, rhs, steps);
    }
    diag.steps = steps;
    const std::vector<Vector>& kept = spec.step_halving ? fine : coarse;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const double err = std::abs(kept[i].squaredNorm() - 1.0);
      diag.max_norm_error = std::max(diag.max_norm_error, err);
      if (err > kTraceDriftLimit) {
        raise(ErrorKind::instability, "norm drift " + fmt(err) + " at t=" + fmt(times[i]) +
                                          "; reduce the time step");
      }
      if (spec.step_halving) {
        const double scale = std::max(max_abs(kept[i]), 1e-300);
        diag.step_halving_change =
            std::max(diag.step_halving_change, max_abs(Vector(kept[i] - coarse[i])) / scale);
      }
    }
    for (const Vector& v : kept) {
      res.states.push_back(State::pure(v, state.frame(), spec.validate_samples ? kPureSampleTolerance : 1e12));
    }
    if (spec.step_halving) {
      for (const Vector& v : coarse) res.coarse_states.push_back(State::pure(v, state.frame(), 1e12));
    }
  } else {
    const Liouvillian liou(cfg, h, p);
    auto rhs = [&liou](const RowMatrix& y, RowMatrix& out) { liou.apply(y, out); };
    diag.stability_product = diag.dt * liou.spectral_bound();
    std::size_t steps = 0;
    const RowMatrix rho0 = state.matrix();
    auto to_matrix = [](const std::vector<RowMatrix>& rs) {
      return std::vector<Matrix>(rs.begin(), rs.end());
    };
    std::vector<Matrix> coarse = to_matrix(integrate(rho0, times, dt, rhs, steps));
    std::vector<Matrix> fine;
    if (spec.step_halving) {
      fine = to_matrix(integrate(rho0, times, 0.5 * dt, rhs, steps));
    }
    diag.steps = steps;
    const std::vector<Matrix>& kept = spec.step_halving ? fine : coarse;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const DensityCheck chk = spec.validate_samples
                                   ? check_density(kept[i])
                                   : DensityCheck{0.0, std::abs(kept[i].trace() - cplx(1.0, 0.0)), 0.0};
      diag.max_trace_error = std::max(diag.max_trace_error, chk.trace_error);
      diag.max_hermiticity = std::max(diag.max_hermiticity, chk.hermiticity);
      diag.min_eigenvalue = std::min(diag.min_eigenvalue, chk.min_eigenvalue);
      if (chk.trace_error > kTraceDriftLimit) {
        raise(ErrorKind::instability, "trace drift " + fmt(chk.trace_error) + " at t=" +
                                          fmt(times[i]) + "; reduce the time step");
      }
      if (spec.step_halving) {
        const double scale = std::max(max_abs(kept[i]), 1e-300);
        diag.step_halving_change =
            std::max(diag.step_halving_change, max_abs(Matrix(kept[i] - coarse[i])) / scale);
      }
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
      try {
        res.states.push_back(State::density(kept[i], state.frame(), spec.validate_samples ? kSampleTolerance : 1e12));
      } catch (const Error& e) {
        raise(ErrorKind::instability, std::string("evolved density failed validation at t=") +
                                          fmt(times[i]) + ": " + e.what());
      }
    }
    if (spec.step_halving) {
      for (const Matrix& m : coarse) res.coarse_states.push_back(State::density(m, state.frame(), 1e12));
    }
  }

  if (diag.stability_product >= kStabilityProduct) {
    diag.warnings.push_back("stability: dt * spectral bound = " + fmt(diag.stability_product) +
                            " >= " + fmt(kStabilityProduct));
  }
  if (spec.step_halving && diag.step_halving_change > spec.convergence) {
    diag.warnings.push_back("step halving changed the state by " + fmt(diag.step_halving_change) +
                            " > " + fmt(spec.convergence));
  }
  return res;
}

namespace {

// Superoperator with the equation for rho_{kk} replaced by Tr rho = 1.
SparseMatrix constrained_superoperator(const SparseMatrix& sup, Eigen::Index d, Eigen::Index k) {
  const Eigen::Index n = d * d;
  const Eigen::Index replaced = k + k * d;
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<std::size_t>(sup.nonZeros() + d));
  for (Eigen::Index col = 0; col < sup.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(sup, col); it; ++it) {
      if (it.row() != replaced) trip.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (Eigen::Index i = 0; i < d; ++i) trip.emplace_back(replaced, i + i * d, cplx(1.0, 0.0));
  SparseMatrix a(n, n);
  a.setFromTriplets(trip.begin(), trip.end());
  a.makeCompressed();
  return a;
}

Vector sparse_solve(const SparseMatrix& a, Eigen::Index rhs_row, int refinements) {
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success) {
    raise(ErrorKind::degenerate_steady_state,
          "Liouvillian with trace constraint is singular: steady state is not unique");
  }
  Vector b = Vector::Zero(a.rows());
  b(rhs_row) = 1.0;
  Vector x = lu.solve(b);
  for (int r = 0; r < refinements; ++r) {
    const Vector resid = b - a * x;
    x += lu.solve(resid);
  }
  if (!x.allFinite()) {
    raise(ErrorKind::degenerate_steady_state, "steady-state solve produced non-finite values");
  }
  return x;
}

// Preconditioner for the constrained superoperator. Unknowns rho_{(m,..),(n,..)}
// are grouped into mode-a blocks (m, n); only couplings from block (m+k, n+k),
// k >= 0, are kept (number-conserving terms, a-loss jumps, the trace row).
// That matrix is block triangular, so it is solved blockwise with exact LU.
class BlockPreconditioner {
 public:
  BlockPreconditioner() = default;

  void setup(const SparseMatrix& a, Eigen::Index d, Eigen::Index dim_a) {
    const Eigen::Index bs = d / dim_a;
    const Eigen::Index local = bs * bs;
    const Eigen::Index nb = dim_a * dim_a;
    n_ = a.rows();
    block_of_.resize(n_);
    local_of_.resize(n_);
    for (Eigen::Index u = 0; u < n_; ++u) {
      const Eigen::Index r = u % d;
      const Eigen::Index c = u / d;
      block_of_[u] = (r / bs) * dim_a + c / bs;
      local_of_[u] = (r % bs) + (c % bs) * bs;
    }
    std::vector<std::vector<Eigen::Triplet<cplx>>> diag(nb), off(nb);
    for (Eigen::Index col = 0; col < a.outerSize(); ++col) {
      const Eigen::Index bc = block_of_[col];
      for (SparseMatrix::InnerIterator it(a, col); it; ++it) {
        const Eigen::Index br = block_of_[it.row()];
        const Eigen::Index dm = bc / dim_a - br / dim_a;
        const Eigen::Index dn = bc % dim_a - br % dim_a;
        if (dm != dn || dm < 0) continue;
        if (dm == 0) {
          diag[br].emplace_back(local_of_[it.row()], local_of_[col], it.value());
        } else {
          off[br].emplace_back(local_of_[it.row()], col, it.value());
        }
      }
    }
    // blocks that only depend on blocks further down the diagonal go first
    order_.resize(nb);
    for (Eigen::Index b = 0; b < nb; ++b) order_[b] = b;
    std::sort(order_.begin(), order_.end(), [dim_a](Eigen::Index x, Eigen::Index y) {
      return std::min(x / dim_a, x % dim_a) > std::min(y / dim_a, y % dim_a);
    });
    members_.assign(nb, {});
    for (Eigen::Index u = 0; u < n_; ++u) members_[block_of_[u]].push_back(u);
    lu_.clear();
    off_.clear();
    for (Eigen::Index b = 0; b < nb; ++b) {
      SparseMatrix blk(local, local);
      blk.setFromTriplets(diag[b].begin(), diag[b].end());
      blk.makeCompressed();
      auto lu = std::make_unique<Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>>();
      lu->analyzePattern(blk);
      lu->factorize(blk);
      if (lu->info() != Eigen::Success) {
        raise(ErrorKind::degenerate_steady_state,
              "Liouvillian with trace constraint is singular: steady state is not unique");
      }
      lu_.push_back(std::move(lu));
      SparseMatrix o(local, n_);
      o.setFromTriplets(off[b].begin(), off[b].end());
      o.makeCompressed();
      off_.push_back(std::move(o));
    }
    ready_ = true;
  }

  template <typename M>
  BlockPreconditioner& analyzePattern(const M&) { return *this; }
  template <typename M>
  BlockPreconditioner& factorize(const M&) { return *this; }
  template <typename M>
  BlockPreconditioner& compute(const M&) { return *this; }

  Vector solve(const Vector& r) const {
    Vector z = Vector::Zero(n_);
    Vector rb;
    for (Eigen::Index b : order_) {
      const auto& idx = members_[b];
      rb.resize(static_cast<Eigen::Index>(idx.size()));
      for (std::size_t i = 0; i < idx.size(); ++i) rb(local_of_[idx[i]]) = r(idx[i]);
      if (off_[b].nonZeros() > 0) rb -= off_[b] * z;
      const Vector zb = lu_[b]->solve(rb);
      for (std::size_t i = 0; i < idx.size(); ++i) z(idx[i]) = zb(local_of_[idx[i]]);
    }
    return z;
  }

  Eigen::ComputationInfo info() const { return ready_ ? Eigen::Success : Eigen::InvalidInput; }

 private:
  Eigen::Index n_ = 0;
  bool ready_ = false;
  std::vector<Eigen::Index> block_of_;
  std::vector<Eigen::Index> local_of_;
  std::vector<Eigen::Index> order_;
  std::vector<std::vector<Eigen::Index>> members_;
  std::vector<std::unique_ptr<Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>>> lu_;
  std::vector<SparseMatrix> off_;
};

Vector gmres_solve(const SparseMatrix& a, Eigen::Index d, Eigen::Index dim_a, const SteadyStateOptions& options,
                   int& iterations) {
  Eigen::GMRES<SparseMatrix, BlockPreconditioner> solver;
  solver.preconditioner().setup(a, d, dim_a);
  solver.set_restart(options.gmres_restart);
  solver.setMaxIterations(options.gmres_max_iterations);
  solver.setTolerance(1e-14);
  solver.compute(a);
  Vector b = Vector::Zero(a.rows());
  b(0) = 1.0;
  Vector x = solver.solve(b);
  iterations = static_cast<int>(solver.iterations());
  if (!x.allFinite()) {
    raise(ErrorKind::degenerate_steady_state, "steady-state solve produced non-finite values");
  }
  const double resid = (b - a * x).cwiseAbs().maxCoeff();
  if (!(resid < 1e-10)) {
    raise(ErrorKind::degenerate_steady_state,
          "preconditioned GMRES stalled at residual " + fmt(resid) + " after " + std::to_string(iterations) +
              " iterations: steady state is singular or ill-conditioned");
  }
  return x;
}

Matrix unvec(const Vector& x, Eigen::Index d) {
  return Eigen::Map<const Matrix>(x.data(), d, d);
}

}  // namespace

SteadyStateResult steady_state(const HilbertConfig& cfg, const Operator& h, const SystemParams& p,
                               const SteadyStateOptions& options) {
  return steady_state(cfg, SparseMatrix(h.matrix.sparseView()), p, options);
}

SteadyStateResult steady_state(const HilbertConfig& cfg, const SparseMatrix& h, const SystemParams& p,
                               const SteadyStateOptions& options) {
  cfg.validate();
  check_shape(cfg, h.rows(), h.cols(), "Hamiltonian");
  if (p.lossless()) raise(ErrorKind::invalid_argument, "steady state needs at least one decay rate > 0");
  const Liouvillian liou(cfg, h, p);
  const Eigen::Index d = liou.dimension();
  const Eigen::Index n = d * d;
  SteadyStateResult res;
  Matrix rho;

  if (n <= options.dense_limit) {
    res.method = "dense-lu";
    const Matrix a = Matrix(constrained_superoperator(liou.superoperator(), d, 0));
    Eigen::FullPivLU<Matrix> lu(a);
    lu.setThreshold(1e-10);
    if (lu.rank() < n) {
      raise(ErrorKind::degenerate_steady_state,
            "Liouvillian nullity exceeds 1: steady state is not unique");
    }
    Vector b = Vector::Zero(n);
    b(0) = 1.0;
    rho = unvec(lu.solve(b), d);
  } else if (n <= options.direct_limit) {
    res.method = "sparse-lu";
    const SparseMatrix sup = liou.superoperator();
    const SparseMatrix a = constrained_superoperator(sup, d, 0);
    const Vector x = sparse_solve(a, 0, 2);
    rho = unvec(x, d);
    if (options.check_uniqueness) {
      const SparseMatrix a2 = constrained_superoperator(sup, d, d - 1);
      const Vector x2 = sparse_solve(a2, (d - 1) + (d - 1) * d, 2);
      const double diff = (x - x2).cwiseAbs().maxCoeff();
      if (!(diff < 1e-8)) {
        raise(ErrorKind::degenerate_steady_state,
              "steady state depends on the constraint row (difference " + fmt(diff) +
                  "): Liouvillian nullity exceeds 1");
      }
    }
  } else if (n <= options.sparse_limit) {
    res.method = "block-gmres";
    const SparseMatrix a = constrained_superoperator(liou.superoperator(), d, 0);
    rho = unvec(gmres_solve(a, d, static_cast<Eigen::Index>(cfg.dim_a), options, res.iterations), d);
    if (options.check_uniqueness) {
      res.warnings.emplace_back("uniqueness inferred from convergence of the constrained solve only");
    }
  } else {
    res.method = "integration";
    res.warnings.emplace_back("steady state by long-time integration; uniqueness not checked");
    const double dt = options.integration_dt > 0.0 ? options.integration_dt : default_time_step(p);
    RowMatrix r = RowMatrix::Zero(d, d);
    r(0, 0) = 1.0;
    RowMatrix k1, k2, k3, k4, tmp;
    double t = 0.0;
    bool converged = false;
    while (t < options.integration_t_max) {
      for (int s = 0; s < 100; ++s) {
        liou.apply(r, k1);
        tmp = r + (0.5 * dt) * k1;
        liou.apply(tmp, k2);
        tmp = r + (0.5 * dt) * k2;
        liou.apply(tmp, k3);
        tmp = r + dt * k3;
        liou.apply(tmp, k4);
        r += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      t += 100 * dt;
      if (!r.allFinite()) raise(ErrorKind::instability, "non-finite state in steady-state integration");
      liou.apply(r, k1);
      if (k1.cwiseAbs().maxCoeff() < options.residual_tolerance) {
        converged = true;
        break;
      }
    }
    rho = r;
    if (!converged) {
      raise(ErrorKind::instability, "steady-state integration did not converge by t=" + fmt(t));
    }
  }

  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace();
  if (asym > 1e-10) res.warnings.push_back("steady state Hermitian part taken, removed " + fmt(asym));
  res.residual = max_abs(liou.apply(rho));
  if (res.residual > options.residual_tolerance) {
    res.warnings.push_back("steady-state residual " + fmt(res.residual) + " above " +
                           fmt(options.residual_tolerance));
  }
  try {
    res.rho = State::density(std::move(rho), Frame::displaced, 10.0);
  } catch (const Error& e) {
    raise(ErrorKind::degenerate_steady_state, std::string("steady state is not a valid density: ") + e.what());
  }
  return res;
}

FidelityResult uhlmann_fidelity(const Matrix& rho1, const Matrix& rho2) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols() || rho1.rows() != rho1.cols()) {
    raise(ErrorKind::shape_mismatch, "fidelity: density shapes differ");
  }
  FidelityResult out;
  Eigen::SelfAdjointEigenSolver<Matrix> es1(0.5 * (rho1 + rho1.adjoint()));
  Eigen::VectorXd l1 = es1.eigenvalues();
  if (l1.minCoeff() < -kPsdTolerance) {
    raise(ErrorKind::non_psd, "fidelity: first argument has eigenvalue " + fmt(l1.minCoeff()));
  }
  out.floor = std::max(0.0, -l1.minCoeff());
  l1 = l1.cwiseMax(0.0).cwiseSqrt();
  const Matrix sqrt1 = es1.eigenvectors() * l1.asDiagonal() * es1.eigenvectors().adjoint();
  const Matrix inner = sqrt1 * rho2 * sqrt1;
  Eigen::SelfAdjointEigenSolver<Matrix> es2(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd l2 = es2.eigenvalues();
  if (l2.minCoeff() < -kPsdTolerance) {
    raise(ErrorKind::non_psd, "fidelity: second argument is not positive semidefinite");
  }
  out.floor = std::max(out.floor, -l2.minCoeff());
  // eigenvalues at roundoff level would add sqrt(eps)-sized junk
  const double noise = static_cast<double>(l2.size()) * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, l2.maxCoeff());
  const double raw = (l2.array() > noise).select(l2.cwiseMax(0.0).cwiseSqrt(), 0.0).sum();
  out.value = std::clamp(raw, 0.0, 1.0);
  out.clamp = std::abs(raw - out.value);
  return out;
}

FidelityResult uhlmann_fidelity(const State& rho1, const State& rho2) {
  if (rho1.dimension() != rho2.dimension()) raise(ErrorKind::shape_mismatch, "fidelity: dimensions differ");
  if (rho1.kind() == StateKind::pure && rho2.kind() == StateKind::pure) {
    FidelityResult out;
    out.value = pure_fidelity(rho1, rho2);
    return out;
  }
  if (rho1.kind() == StateKind::pure || rho2.kind() == StateKind::pure) {
    const Vector& psi = rho1.kind() == StateKind::pure ? rho1.vector() : rho2.vector();
    const Matrix& rho = rho1.kind() == StateKind::pure ? rho2.matrix() : rho1.matrix();
    const double overlap = psi.dot(rho * psi).real();
    if (overlap < -kPsdTolerance) raise(ErrorKind::non_psd, "fidelity: negative overlap with density");
    FidelityResult out;
    out.floor = std::max(0.0, -overlap);
    const double raw = std::sqrt(std::max(overlap, 0.0));
    out.value = std::clamp(raw, 0.0, 1.0);
    out.clamp = std::abs(raw - out.value);
    return out;
  }
  return uhlmann_fidelity(rho1.matrix(), rho2.matrix());
}

double pure_fidelity(const State& psi1, const State& psi2) {
  if (psi1.kind() != StateKind::pure || psi2.kind() != StateKind::pure) {
    raise(ErrorKind::invalid_argument, "pure_fidelity needs two pure states");
  }
  if (psi1.dimension() != psi2.dimension()) raise(ErrorKind::shape_mismatch, "pure_fidelity: dimensions differ");
  return std::abs(psi1.vector().dot(psi2.vector()));
}

}  // namespace fredsim
