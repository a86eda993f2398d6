#include <benchmark/benchmark.h>

#include "fredsim/dynamics.hpp"
#include "fredsim/fock.hpp"
#include "fredsim/liouvillian.hpp"
#include "fredsim/model.hpp"
#include "fredsim/tomography.hpp"

using namespace fredsim;

namespace {

SystemParams lossy_params() {
  SystemParams p;
  p.delta_b = 1.0;
  p.delta_c = 20.0;
  p.g = 0.001;
  p.xi_ss_mag = 1700.0;
  p.kappa_a = p.kappa_b = p.kappa_c = 0.01;
  p.nbar_b = 1.0;
  p.resolve_drive_from_xi();
  return p;
}

}  // namespace

// one Lindblad RHS evaluation at dims (2, dim_b, 4)
static void BM_LindbladRhs(benchmark::State& state) {
  HilbertConfig cfg{2, static_cast<int>(state.range(0)), 4};
  const SystemParams p = lossy_params();
  const Liouvillian liou(cfg, build_sparse_hamiltonian(cfg, p, HamiltonianVariant::dis), p);
  RowMatrix rho = RowMatrix::Zero(cfg.total(), cfg.total());
  rho(0, 0) = 0.5;
  rho(cfg.total() - 1, cfg.total() - 1) = 0.5;
  RowMatrix out;
  for (auto _ : state) {
    liou.apply(rho, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_LindbladRhs)->Arg(8)->Arg(20)->Arg(30)->Arg(40)->Unit(benchmark::kMicrosecond);

static void BM_DisplacementBlock(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Matrix d = displacement_block(n, n, cplx(1.3, 0.2));
    benchmark::DoNotOptimize(d.data());
  }
}
BENCHMARK(BM_DisplacementBlock)->Arg(20)->Arg(60)->Arg(120);

// default 141 x 121 grid
static void BM_WignerGrid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CoherentVector cv = coherent_state(n, cplx(1.5, 0.5));
  const State rho = State::density(cv.amplitudes * cv.amplitudes.adjoint());
  for (auto _ : state) {
    WignerGrid w = wigner(rho);
    benchmark::DoNotOptimize(w.values.data());
  }
}
BENCHMARK(BM_WignerGrid)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_SteadyStateSmall(benchmark::State& state) {
  HilbertConfig cfg{3, static_cast<int>(state.range(0)), 3};
  SystemParams p;
  p.delta_b = 1.0;
  p.delta_c = 20.0;
  p.g = 0.001;
  p.xi_ss_mag = 500.0;
  p.kappa_a = 0.1;
  p.kappa_b = p.kappa_c = 0.001;
  p.delta_a = 0.25;
  p.omega_drive_amp_a = 0.01;
  p.resolve_drive_from_xi();
  const SparseMatrix h = build_sparse_hamiltonian(cfg, p, HamiltonianVariant::dis_driven);
  for (auto _ : state) {
    SteadyStateResult r = steady_state(cfg, h, p);
    benchmark::DoNotOptimize(r.residual);
  }
}
BENCHMARK(BM_SteadyStateSmall)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
