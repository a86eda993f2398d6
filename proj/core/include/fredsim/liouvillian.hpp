#pragma once

#include <vector>

#include "fredsim/fock.hpp"
#include "fredsim/model.hpp"

namespace fredsim {

// Lindblad generator stored as H_eff = H - (i/2) sum L^dagger L plus the jump
// operators L = sqrt(kappa (nbar+1)) o and sqrt(kappa nbar) o^dagger.
class Liouvillian {
 public:
  Liouvillian(const HilbertConfig& cfg, const SparseMatrix& h, const SystemParams& p);

  Eigen::Index dimension() const { return heff_.rows(); }
  bool dissipative() const { return !jumps_.empty(); }

  // drho/dt for a Hermitian rho.
  void apply(const Matrix& rho, Matrix& out) const;
  Matrix apply(const Matrix& rho) const;
  void apply(const RowMatrix& rho, RowMatrix& out) const;

  // Column-stacked superoperator, vec(A X B) = (B^T kron A) vec(X).
  SparseMatrix superoperator() const;

  // Gershgorin-type bound on the spectral radius of the generator.
  double spectral_bound() const;

  const SparseMatrix& effective_hamiltonian() const { return heff_; }
  const std::vector<SparseMatrix>& jumps() const { return jumps_; }

 private:
  SparseMatrix heff_;
  std::vector<SparseMatrix> jumps_;
  std::vector<SparseMatrix> jumps_adj_;
  RowSparseMatrix heff_rows_;
  // ladder jumps have one entry per row: row i -> (source[i], weight[i]), source -1 if empty
  struct Monomial {
    std::vector<Eigen::Index> source;
    std::vector<cplx> weight;
  };
  std::vector<Monomial> jumps_mono_;
};

double max_row_sum(const SparseMatrix& m);

}  // namespace fredsim
