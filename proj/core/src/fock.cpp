#include "fredsim/fock.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "fredsim/error.hpp"
#include "fredsim/special_functions.hpp"

namespace fredsim {

std::size_t HilbertConfig::total() const {
  return static_cast<std::size_t>(dim_a) * static_cast<std::size_t>(dim_b) *
         static_cast<std::size_t>(dim_c);
}

void HilbertConfig::validate(std::size_t cap) const {
  if (dim_a < 2 || dim_b < 2 || dim_c < 2) {
    raise(ErrorKind::invalid_argument, "every mode needs at least 2 levels, got (" +
                                           std::to_string(dim_a) + "," + std::to_string(dim_b) +
                                           "," + std::to_string(dim_c) + ")");
  }
  if (total() > cap) {
    raise(ErrorKind::dimension_cap, "total dimension " + std::to_string(total()) +
                                        " exceeds cap " + std::to_string(cap));
  }
}

Eigen::Index HilbertConfig::index(int m, int j, int s) const {
  if (m < 0 || m >= dim_a || j < 0 || j >= dim_b || s < 0 || s >= dim_c) {
    raise(ErrorKind::invalid_argument, "Fock index out of range");
  }
  return (static_cast<Eigen::Index>(m) * dim_b + j) * dim_c + s;
}

DensityCheck check_density(const Matrix& rho) {
  DensityCheck out;
  if (rho.rows() != rho.cols()) raise(ErrorKind::shape_mismatch, "density matrix is not square");
  out.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  out.trace_error = std::abs(rho.trace() - cplx(1.0, 0.0));
  if (rho.rows() <= kEigenCheckLimit) {
    const Matrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
  }
  return out;
}

static std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

State State::pure(Vector psi, Frame frame, double tol_scale) {
  const double norm2 = psi.squaredNorm();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > 1e-10 * tol_scale) {
    raise(ErrorKind::invalid_argument,
          "pure state norm^2 = " + sci(norm2) + " is not 1");
  }
  State st;
  st.kind_ = StateKind::pure;
  st.frame_ = frame;
  st.psi_ = std::move(psi);
  return st;
}

State State::density(Matrix rho, Frame frame, double tol_scale) {
  const DensityCheck chk = check_density(rho);
  if (!(chk.hermiticity <= 1e-12 * tol_scale)) {
    raise(ErrorKind::invalid_argument,
          "density matrix not Hermitian (deviation " + sci(chk.hermiticity) + ")");
  }
  if (!(chk.trace_error <= 1e-10 * tol_scale)) {
    raise(ErrorKind::invalid_argument,
          "density matrix trace error " + sci(chk.trace_error));
  }
  if (!(chk.min_eigenvalue >= -1e-10 * tol_scale)) {
    raise(ErrorKind::non_psd,
          "density matrix has eigenvalue " + sci(chk.min_eigenvalue));
  }
  State st;
  st.kind_ = StateKind::density;
  st.frame_ = frame;
  st.rho_ = std::move(rho);
  return st;
}

Eigen::Index State::dimension() const {
  return kind_ == StateKind::pure ? psi_.size() : rho_.rows();
}

const Vector& State::vector() const {
  if (kind_ != StateKind::pure) raise(ErrorKind::invalid_argument, "state is not pure");
  return psi_;
}

const Matrix& State::matrix() const {
  if (kind_ != StateKind::density) raise(ErrorKind::invalid_argument, "state is not a density");
  return rho_;
}

Matrix State::as_density() const {
  if (kind_ == StateKind::density) return rho_;
  return psi_ * psi_.adjoint();
}

Matrix annihilation(int dim) {
  Matrix op = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) op(n - 1, n) = std::sqrt(static_cast<double>(n));
  return op;
}

SparseMatrix sparse_annihilation(int dim) {
  SparseMatrix op(dim, dim);
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<std::size_t>(std::max(dim - 1, 0)));
  for (int n = 1; n < dim; ++n) trip.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
  op.setFromTriplets(trip.begin(), trip.end());
  return op;
}

Matrix kron(const Matrix& lhs, const Matrix& rhs) {
  return Eigen::kroneckerProduct(lhs, rhs).eval();
}

Vector kron(const Vector& lhs, const Vector& rhs) {
  Vector out(lhs.size() * rhs.size());
  for (Eigen::Index i = 0; i < lhs.size(); ++i) out.segment(i * rhs.size(), rhs.size()) = lhs(i) * rhs;
  return out;
}

Vector product_state(const HilbertConfig& cfg, const Vector& va, const Vector& vb, const Vector& vc) {
  if (va.size() != cfg.dim_a || vb.size() != cfg.dim_b || vc.size() != cfg.dim_c) {
    raise(ErrorKind::shape_mismatch, "product_state: factor sizes do not match the config");
  }
  return kron(va, kron(vb, vc));
}

ModeOperators build_mode_operators(const HilbertConfig& cfg, std::size_t cap) {
  cfg.validate(cap);
  const Matrix ia = Matrix::Identity(cfg.dim_a, cfg.dim_a);
  const Matrix ib = Matrix::Identity(cfg.dim_b, cfg.dim_b);
  const Matrix ic = Matrix::Identity(cfg.dim_c, cfg.dim_c);
  ModeOperators ops;
  ops.a = {kron(annihilation(cfg.dim_a), kron(ib, ic)), ModeTag::a};
  ops.b = {kron(ia, kron(annihilation(cfg.dim_b), ic)), ModeTag::b};
  ops.c = {kron(ia, kron(ib, annihilation(cfg.dim_c))), ModeTag::c};
  return ops;
}

SparseModeOperators build_sparse_mode_operators(const HilbertConfig& cfg, std::size_t cap) {
  cfg.validate(cap);
  SparseMatrix ia(cfg.dim_a, cfg.dim_a);
  SparseMatrix ib(cfg.dim_b, cfg.dim_b);
  SparseMatrix ic(cfg.dim_c, cfg.dim_c);
  ia.setIdentity();
  ib.setIdentity();
  ic.setIdentity();
  SparseModeOperators ops;
  ops.a = Eigen::kroneckerProduct(sparse_annihilation(cfg.dim_a),
                                  SparseMatrix(Eigen::kroneckerProduct(ib, ic)));
  ops.b = Eigen::kroneckerProduct(ia, SparseMatrix(Eigen::kroneckerProduct(
                                          sparse_annihilation(cfg.dim_b), ic)));
  ops.c = Eigen::kroneckerProduct(ia, SparseMatrix(Eigen::kroneckerProduct(
                                          ib, sparse_annihilation(cfg.dim_c))));
  return ops;
}

State fock_state(const HilbertConfig& cfg, int m, int j, int s) {
  cfg.validate();
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(cfg.total()));
  psi(cfg.index(m, j, s)) = 1.0;
  return State::pure(std::move(psi));
}

Vector coherent_amplitudes(int dim, cplx alpha) {
  if (dim < 1) raise(ErrorKind::invalid_argument, "coherent state needs dim >= 1");
  Vector amp = Vector::Zero(dim);
  const double r = std::abs(alpha);
  if (r == 0.0) {
    amp(0) = 1.0;
    return amp;
  }
  const double log_r = std::log(r);
  const double arg = std::arg(alpha);
  for (int n = 0; n < dim; ++n) {
    const double mag = std::exp(-0.5 * r * r + n * log_r - 0.5 * log_factorial(n));
    amp(n) = std::polar(mag, n * arg);
  }
  return amp;
}

CoherentVector coherent_state(int dim, cplx alpha) {
  CoherentVector out;
  out.amplitudes = coherent_amplitudes(dim, alpha);
  out.truncation_loss = poisson_tail(std::norm(alpha), dim);
  if (out.truncation_loss > kCoherentMaxLoss) {
    raise(ErrorKind::truncation, "coherent state |alpha|=" + std::to_string(std::abs(alpha)) +
                                     " loses " + std::to_string(out.truncation_loss) +
                                     " of its weight at dim " + std::to_string(dim));
  }
  out.truncation_warning = out.truncation_loss > kCoherentWarnLoss;
  out.amplitudes /= out.amplitudes.norm();
  return out;
}

cplx displacement_matrix_element(int m, int n, cplx zeta) {
  if (m < 0 || n < 0) raise(ErrorKind::invalid_argument, "displacement element: negative index");
  const double r = std::abs(zeta);
  if (r == 0.0) return m == n ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
  const double x = r * r;
  const int lo = std::min(m, n);
  const int diff = std::abs(m - n);
  const ScaledValue lag = assoc_laguerre_scaled(lo, diff, x);
  if (lag.mantissa == 0.0) return {0.0, 0.0};
  const double log_mag = 0.5 * (log_factorial(lo) - log_factorial(lo + diff)) + diff * std::log(r) -
                         0.5 * x + std::log(std::abs(lag.mantissa)) + lag.log_scale;
  const double sign = lag.mantissa < 0.0 ? -1.0 : 1.0;
  // m >= n carries zeta^{m-n}, m < n carries (-zeta*)^{n-m}
  const double phase = m >= n ? diff * std::arg(zeta) : diff * (std::numbers::pi - std::arg(zeta));
  return std::polar(sign * std::exp(log_mag), phase);
}

Matrix displacement_block(int rows, int cols, cplx zeta) {
  if (rows < 1 || cols < 1) raise(ErrorKind::invalid_argument, "displacement block needs positive size");
  const double r = std::abs(zeta);
  if (r == 0.0) return Matrix::Identity(rows, cols);
  const double x = r * r;
  const cplx lower_phase = zeta / r;
  const cplx upper_phase = -std::conj(zeta) / r;
  Matrix d = Matrix::Zero(rows, cols);
  // walk each diagonal with the normalized Laguerre recurrence,
  // g_n = sqrt(n!/(n+k)!) L_n^(k)(x) times |zeta|^k e^{-x/2}
  const int kmax = std::max(rows, cols) - 1;
  for (int k = 0; k <= kmax; ++k) {
    const int len_lo = std::min(rows - k, cols);  // (n+k, n)
    const int len_up = std::min(rows, cols - k);  // (n, n+k)
    const int len = std::max(len_lo, len_up);
    if (len <= 0) continue;
    const double start = std::exp(k * std::log(r) - 0.5 * x - 0.5 * log_factorial(k));
    const cplx pl = std::pow(lower_phase, k);
    const cplx pu = std::pow(upper_phase, k);
    double prev = 0.0;
    double cur = start;
    for (int n = 0; n < len; ++n) {
      if (n < len_lo) d(n + k, n) = cur * pl;
      if (k > 0 && n < len_up) d(n, n + k) = cur * pu;
      const double next = ((2.0 * n + 1.0 + k - x) * cur - std::sqrt(double(n) * (n + k)) * prev) /
                          std::sqrt((n + 1.0) * (n + 1.0 + k));
      prev = cur;
      cur = next;
    }
  }
  return d;
}

cplx expectation(const Operator& op, const State& st) {
  if (op.matrix.rows() != st.dimension() || op.matrix.cols() != st.dimension()) {
    raise(ErrorKind::shape_mismatch, "expectation: operator and state shapes differ");
  }
  if (st.kind() == StateKind::pure) {
    const Vector& psi = st.vector();
    return psi.dot(op.matrix * psi);
  }
  return (op.matrix.transpose().cwiseProduct(st.matrix())).sum();
}

}  // namespace fredsim
