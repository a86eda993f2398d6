#include "fredsim/liouvillian.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

#include "fredsim/error.hpp"

namespace fredsim {

namespace {

// out (+)= s * x, row by row; several times faster than Eigen's generic
// sparse-dense product for complex operands
void sparse_rows_times(const RowSparseMatrix& s, const RowMatrix& x, RowMatrix& out, bool accumulate) {
  if (!accumulate) out.setZero(s.rows(), x.cols());
  for (Eigen::Index k = 0; k < s.outerSize(); ++k) {
    for (RowSparseMatrix::InnerIterator it(s, k); it; ++it) out.row(k) += it.value() * x.row(it.col());
  }
}

}  // namespace

double max_row_sum(const SparseMatrix& m) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(m.rows());
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) rows(it.row()) += std::abs(it.value());
  }
  return rows.size() == 0 ? 0.0 : rows.maxCoeff();
}

Liouvillian::Liouvillian(const HilbertConfig& cfg, const SparseMatrix& h, const SystemParams& p) {
  const auto d = static_cast<Eigen::Index>(cfg.total());
  if (h.rows() != d || h.cols() != d) {
    raise(ErrorKind::shape_mismatch, "Hamiltonian shape does not match the Hilbert config");
  }
  const SparseModeOperators ops = build_sparse_mode_operators(cfg);
  struct Channel {
    const SparseMatrix* op;
    double kappa;
    double nbar;
  };
  const Channel channels[] = {{&ops.a, p.kappa_a, p.nbar_a},
                              {&ops.b, p.kappa_b, p.nbar_b},
                              {&ops.c, p.kappa_c, p.nbar_c}};
  for (const Channel& ch : channels) {
    if (ch.kappa < 0.0 || ch.nbar < 0.0) {
      raise(ErrorKind::invalid_argument, "decay rates and thermal occupations must be >= 0");
    }
    if (ch.kappa == 0.0) continue;
    jumps_.push_back(std::sqrt(ch.kappa * (ch.nbar + 1.0)) * *ch.op);
    if (ch.nbar > 0.0) jumps_.push_back(std::sqrt(ch.kappa * ch.nbar) * SparseMatrix(ch.op->adjoint()));
  }
  heff_ = h;
  for (const SparseMatrix& l : jumps_) {
    SparseMatrix ldag = l.adjoint();
    heff_ -= cplx(0.0, 0.5) * SparseMatrix(ldag * l);
    jumps_adj_.push_back(std::move(ldag));
  }
  heff_.prune(cplx(0.0, 0.0));
  heff_.makeCompressed();
  heff_rows_ = heff_;
  for (const SparseMatrix& l : jumps_) {
    const RowSparseMatrix rows = l;
    Monomial mono{std::vector<Eigen::Index>(d, -1), std::vector<cplx>(d, cplx(0.0, 0.0))};
    for (Eigen::Index k = 0; k < rows.outerSize(); ++k) {
      for (RowSparseMatrix::InnerIterator it(rows, k); it; ++it) {
        if (mono.source[k] >= 0) raise(ErrorKind::invalid_argument, "jump operator is not a ladder operator");
        mono.source[k] = it.col();
        mono.weight[k] = it.value();
      }
    }
    jumps_mono_.push_back(std::move(mono));
  }
}

void Liouvillian::apply(const RowMatrix& rho, RowMatrix& out) const {
  // rho is Hermitian, so rho H_eff^dagger = (H_eff rho)^dagger and the
  // coherent part is Y + Y^dagger with Y = -i H_eff rho.
  RowMatrix y;
  sparse_rows_times(heff_rows_, rho, y, false);
  y *= cplx(0.0, -1.0);
  out = y + y.adjoint();
  const Eigen::Index d = rho.rows();
  for (const Monomial& l : jumps_mono_) {
    // (L rho L^dagger)(i, j) = w_i conj(w_j) rho(src_i, src_j)
    for (Eigen::Index i = 0; i < d; ++i) {
      const Eigen::Index si = l.source[i];
      if (si < 0) continue;
      const cplx wi = l.weight[i];
      const cplx* src = rho.data() + si * d;
      cplx* dst = out.data() + i * d;
      for (Eigen::Index j = 0; j < d; ++j) {
        const Eigen::Index sj = l.source[j];
        if (sj >= 0) dst[j] += wi * std::conj(l.weight[j]) * src[sj];
      }
    }
  }
}

void Liouvillian::apply(const Matrix& rho, Matrix& out) const {
  const RowMatrix r = rho;
  RowMatrix o;
  apply(r, o);
  out = o;
}

Matrix Liouvillian::apply(const Matrix& rho) const {
  Matrix out;
  apply(rho, out);
  return out;
}

SparseMatrix Liouvillian::superoperator() const {
  const Eigen::Index d = dimension();
  SparseMatrix id(d, d);
  id.setIdentity();
  const SparseMatrix heff_conj = heff_.conjugate();
  SparseMatrix sup = cplx(0.0, -1.0) * SparseMatrix(Eigen::kroneckerProduct(id, heff_));
  sup += cplx(0.0, 1.0) * SparseMatrix(Eigen::kroneckerProduct(heff_conj, id));
  for (const SparseMatrix& l : jumps_) {
    const SparseMatrix lconj = l.conjugate();
    sup += SparseMatrix(Eigen::kroneckerProduct(lconj, l));
  }
  sup.prune(cplx(0.0, 0.0));
  sup.makeCompressed();
  return sup;
}

double Liouvillian::spectral_bound() const {
  double bound = 2.0 * max_row_sum(heff_);
  for (std::size_t k = 0; k < jumps_.size(); ++k) {
    bound += max_row_sum(jumps_[k]) * max_row_sum(jumps_adj_[k]);
  }
  return bound;
}

}  // namespace fredsim
