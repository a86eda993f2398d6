#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "fredsim/analytic.hpp"
#include "fredsim/error.hpp"
#include "fredsim/special_functions.hpp"

namespace fredsim {

namespace {

using BlockList = std::vector<Eigen::MatrixXd>;

// exp(theta (b'c - c'b)) on the k x k two-mode grid, one block per total
// number N; block N acts on j = jmin(N) .. jmax(N) with s = N - j.
BlockList beam_splitter_blocks(double theta, int k) {
  BlockList blocks;
  blocks.reserve(static_cast<std::size_t>(2 * k - 1));
  for (int n = 0; n <= 2 * (k - 1); ++n) {
    const int jmin = std::max(0, n - (k - 1));
    const int jmax = std::min(n, k - 1);
    const int size = jmax - jmin + 1;
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(size, size);
    for (int j = jmin; j < jmax; ++j) {
      const int s = n - j;
      // b'c |j, s> = sqrt((j+1) s) |j+1, s-1>
      const double amp = std::sqrt(static_cast<double>(j + 1) * s);
      gen(j + 1 - jmin, j - jmin) = amp;
      gen(j - jmin, j + 1 - jmin) = -amp;
    }
    blocks.push_back((theta * gen).exp());
  }
  return blocks;
}

const BlockList& cached_beam_splitter(double theta, int k) {
  static std::shared_mutex mutex;
  static std::map<std::pair<double, int>, std::unique_ptr<BlockList>> cache;
  const auto key = std::make_pair(theta, k);
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<BlockList>(beam_splitter_blocks(theta, k));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.try_emplace(key, std::move(built));
  return *it->second;
}

}  // namespace

BlockadeResult blockade_probabilities(const HilbertConfig& cfg, const SystemParams& p,
                                      const BlockadeOptions& options) {
  cfg.validate();
  if (p.theta_c != 0.0) raise(ErrorKind::invalid_argument, "blockade amplitudes assume theta_c = 0");
  if (options.padding < 0) raise(ErrorKind::invalid_argument, "padding must be >= 0");
  BlockadeResult r;
  r.linear = p.g0() == 0.0;
  const double omega = std::abs(p.omega_drive_amp_a);
  if (omega == 0.0) return r;

  const int nb = cfg.dim_b;
  const int nc = cfg.dim_c;
  const int k = std::max(nb, nc) + options.padding;
  const NormalModeDecomposition m1 = normal_mode_decomposition(1, p);
  const NormalModeDecomposition m2 = normal_mode_decomposition(2, p);
  const double kappa = p.kappa_a;

  // C1(f, h) = -Omega <f|D(-beta1)|0> <h|D(-eta1)|0> / (E1 - i kappa/2)
  const Matrix d1b = displacement_block(nb, 1, -m1.beta_m);
  const Matrix d1c = displacement_block(nc, 1, -m1.eta_m);
  Matrix c1(nb, nc);
  for (int f = 0; f < nb; ++f) {
    for (int h = 0; h < nc; ++h) {
      const cplx den(eigenenergy(1, f, h, p), -0.5 * kappa);
      if (std::abs(den) == 0.0) raise(ErrorKind::invalid_argument, "undamped single-photon resonance");
      c1(f, h) = -omega * d1b(f, 0) * d1c(h, 0) / den;
    }
  }
  r.x = c1.squaredNorm();
  const double tail1 =
      poisson_tail(m1.beta_m * m1.beta_m, nb) + poisson_tail(m1.eta_m * m1.eta_m, nc);

  // sum_{f,h} M2 C1 = D_b(-beta2) D_c(-eta2) e^{-(lambda2-lambda1) G} D_b(beta1) D_c(eta1) C1
  const Matrix ub = displacement_block(k, nb, m1.beta_m);
  const Matrix uc = displacement_block(k, nc, m1.eta_m);
  Matrix w = ub * c1 * uc.transpose();  // w(j, s)
  double high = 0.0;
  const BlockList& bs = cached_beam_splitter(-(m2.lambda_m - m1.lambda_m), k);
  Vector seg;
  for (int n = 0; n <= 2 * (k - 1); ++n) {
    const int jmin = std::max(0, n - (k - 1));
    const int jmax = std::min(n, k - 1);
    seg.resize(jmax - jmin + 1);
    for (int j = jmin; j <= jmax; ++j) seg(j - jmin) = w(j, n - j);
    if (n >= k) high += seg.squaredNorm();
    seg = bs[static_cast<std::size_t>(n)].cast<cplx>() * seg;
    for (int j = jmin; j <= jmax; ++j) w(j, n - j) = seg(j - jmin);
  }
  const Matrix vb = displacement_block(nb, k, -m2.beta_m);
  const Matrix vc = displacement_block(nc, k, -m2.eta_m);
  const Matrix proj = vb * w * vc.transpose();
  const double kept = proj.squaredNorm();
  const double tail2 = r.x > 0.0 ? std::max(0.0, r.x - kept + high) / r.x : 0.0;
  r.tail = std::max(tail1, tail2);
  if (r.tail > options.tail_tolerance) {
    raise(ErrorKind::cutoff, "blockade amplitude tail " + std::to_string(r.tail) +
                                 " exceeds tolerance; increase dim_b/dim_c");
  }

  const double s2 = std::sqrt(2.0) * omega;
  double y = 0.0;
  for (int m = 0; m < nb; ++m) {
    for (int n = 0; n < nc; ++n) {
      const cplx den(eigenenergy(2, m, n, p), -kappa);
      if (std::abs(den) == 0.0) raise(ErrorKind::invalid_argument, "undamped two-photon resonance");
      y += std::norm(s2 * proj(m, n) / den);
    }
  }
  r.y = y;
  r.normalization = 1.0 + r.x + r.y;
  r.p1 = r.x / r.normalization;
  r.p2 = r.y / r.normalization;
  return r;
}

}  // namespace fredsim
