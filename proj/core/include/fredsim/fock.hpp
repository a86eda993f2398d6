#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstddef>

namespace fredsim {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;
// row-major pair: sparse * dense products run along contiguous rows
using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowSparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

inline constexpr std::size_t kDefaultDimensionCap = 200000;

// Truncation of the three bosonic modes. Basis index of |m>_a|j>_b|s>_c is
// (m * dim_b + j) * dim_c + s.
struct HilbertConfig {
  int dim_a = 3;
  int dim_b = 40;
  int dim_c = 5;

  std::size_t total() const;
  void validate(std::size_t cap = kDefaultDimensionCap) const;
  Eigen::Index index(int m, int j, int s) const;
};

enum class ModeTag { a, b, c, full, single };

struct Operator {
  Matrix matrix;
  ModeTag tag = ModeTag::full;
};

enum class StateKind { pure, density };
enum class Frame { lab, displaced };

struct DensityCheck {
  double hermiticity = 0.0;    // max |rho - rho^dagger| entrywise
  double trace_error = 0.0;    // |Tr rho - 1|
  double min_eigenvalue = 0.0;
};

// Eigenvalues are skipped (reported as 0) above this dimension.
inline constexpr Eigen::Index kEigenCheckLimit = 2000;

DensityCheck check_density(const Matrix& rho);

class State {
 public:
  // Construction enforces the invariants; tol_scale widens every tolerance
  // (10 for reduced states, kSampleTolerance for evolved samples).
  static State pure(Vector psi, Frame frame = Frame::displaced, double tol_scale = 1.0);
  static State density(Matrix rho, Frame frame = Frame::displaced, double tol_scale = 1.0);

  StateKind kind() const { return kind_; }
  Frame frame() const { return frame_; }
  Eigen::Index dimension() const;
  const Vector& vector() const;
  const Matrix& matrix() const;
  Matrix as_density() const;

 private:
  State() = default;
  StateKind kind_ = StateKind::pure;
  Frame frame_ = Frame::displaced;
  Vector psi_;
  Matrix rho_;
};

Matrix annihilation(int dim);
SparseMatrix sparse_annihilation(int dim);

struct ModeOperators {
  Operator a;
  Operator b;
  Operator c;
};

struct SparseModeOperators {
  SparseMatrix a;
  SparseMatrix b;
  SparseMatrix c;
};

ModeOperators build_mode_operators(const HilbertConfig& cfg, std::size_t cap = kDefaultDimensionCap);
SparseModeOperators build_sparse_mode_operators(const HilbertConfig& cfg,
                                                std::size_t cap = kDefaultDimensionCap);

Matrix kron(const Matrix& lhs, const Matrix& rhs);
Vector kron(const Vector& lhs, const Vector& rhs);
Vector product_state(const HilbertConfig& cfg, const Vector& va, const Vector& vb, const Vector& vc);

State fock_state(const HilbertConfig& cfg, int m, int j, int s);

struct CoherentVector {
  Vector amplitudes;             // renormalized on the truncated space
  double truncation_loss = 0.0;  // weight beyond the last kept level
  bool truncation_warning = false;
};

inline constexpr double kCoherentWarnLoss = 1e-6;
inline constexpr double kCoherentMaxLoss = 1e-2;

CoherentVector coherent_state(int dim, cplx alpha);

// Un-renormalized amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!), n < dim.
Vector coherent_amplitudes(int dim, cplx alpha);

// <m|D(zeta)|n> of the untruncated displacement operator, Laguerre form.
cplx displacement_matrix_element(int m, int n, cplx zeta);

// Block [0, rows) x [0, cols) of the untruncated displacement operator built
// diagonal by diagonal; entries agree with displacement_matrix_element.
Matrix displacement_block(int rows, int cols, cplx zeta);

cplx expectation(const Operator& op, const State& st);

}  // namespace fredsim
