#pragma once

#include <string>
#include <vector>

#include "fredsim/fock.hpp"
#include "fredsim/liouvillian.hpp"
#include "fredsim/model.hpp"

namespace fredsim {

Matrix lindblad_rhs(const HilbertConfig& cfg, const State& rho, const Operator& h, const SystemParams& p);

struct EvolutionSpec {
  double t_final = 0.0;
  double dt = 0.0;                   // 0 selects default_time_step
  std::vector<double> record_times;  // empty records t_final only
  double convergence = 1e-8;
  bool step_halving = true;
  bool validate_samples = true;
};

double default_time_step(const SystemParams& p);

inline constexpr double kStabilityProduct = 0.1;
inline constexpr double kTraceDriftLimit = 1e-6;
// evolved samples: State tolerances scaled by this (eigenvalues down to -1e-8)
inline constexpr double kSampleTolerance = 100.0;
// pure samples: the norm is already held to kTraceDriftLimit
inline constexpr double kPureSampleTolerance = kTraceDriftLimit / 1e-10;

struct EvolutionDiagnostics {
  double dt = 0.0;
  std::size_t steps = 0;
  double stability_product = 0.0;
  double step_halving_change = 0.0;  // max entry change between dt and dt/2, relative
  double max_trace_error = 0.0;
  double max_hermiticity = 0.0;
  double min_eigenvalue = 0.0;
  double max_norm_error = 0.0;
  std::vector<std::string> warnings;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<State> states;         // from the finer (dt/2) run when halving is on
  std::vector<State> coarse_states;  // from the dt run, empty when halving is off
  EvolutionDiagnostics diagnostics;
};

// Pure states need a lossless p; densities follow the Lindblad equation.
EvolutionResult evolve(const HilbertConfig& cfg, const State& state, const Operator& h,
                       const SystemParams& p, const EvolutionSpec& spec);
EvolutionResult evolve(const HilbertConfig& cfg, const State& state, const SparseMatrix& h,
                       const SystemParams& p, const EvolutionSpec& spec);

struct SteadyStateOptions {
  Eigen::Index dense_limit = 900;        // unknowns (D^2) solved by dense full-pivot LU
  Eigen::Index direct_limit = 20'000;    // unknowns solved by sparse LU
  Eigen::Index sparse_limit = 4'000'000; // unknowns solved by preconditioned GMRES, else integration
  double residual_tolerance = 1e-10;
  bool check_uniqueness = true;
  double integration_dt = 0.0;
  double integration_t_max = 1e5;
  int gmres_restart = 60;
  int gmres_max_iterations = 600;
};

struct SteadyStateResult {
  State rho = State::density(Matrix::Identity(1, 1));
  double residual = 0.0;
  std::string method;
  int iterations = 0;  // GMRES only
  std::vector<std::string> warnings;
};

SteadyStateResult steady_state(const HilbertConfig& cfg, const Operator& h, const SystemParams& p,
                               const SteadyStateOptions& options = {});
SteadyStateResult steady_state(const HilbertConfig& cfg, const SparseMatrix& h, const SystemParams& p,
                               const SteadyStateOptions& options = {});

struct FidelityResult {
  double value = 0.0;
  double clamp = 0.0;  // amount removed by clamping to [0, 1]
  double floor = 0.0;  // largest negative eigenvalue magnitude floored to 0
};

inline constexpr double kPsdTolerance = 1e-8;

FidelityResult uhlmann_fidelity(const State& rho1, const State& rho2);
FidelityResult uhlmann_fidelity(const Matrix& rho1, const Matrix& rho2);
double pure_fidelity(const State& psi1, const State& psi2);

}  // namespace fredsim
