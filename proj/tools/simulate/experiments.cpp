#include "experiments.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "fredsim/analytic.hpp"
#include "fredsim/dynamics.hpp"
#include "fredsim/error.hpp"
#include "fredsim/special_functions.hpp"
#include "fredsim/tomography.hpp"

namespace simulate {

using namespace fredsim;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) raise(ErrorKind::config, "grid size must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return out;
}

double period_b(const SystemParams& p) { return 2.0 * kPi / std::abs(p.delta_b); }

double option_or(const Options& o, const std::string& key, double fallback) {
  return o.is_auto(key) ? fallback : o.number(key);
}

json diagnostics_json(const EvolutionDiagnostics& d) {
  return {{"dt", d.dt},
          {"steps", d.steps},
          {"stability_product", d.stability_product},
          {"step_halving_change", d.step_halving_change},
          {"max_trace_error", d.max_trace_error},
          {"max_hermiticity", d.max_hermiticity},
          {"min_eigenvalue", d.min_eigenvalue},
          {"max_norm_error", d.max_norm_error},
          {"warnings", d.warnings}};
}

void add_warnings(ExperimentResult& r, const std::vector<std::string>& w) {
  r.warnings.insert(r.warnings.end(), w.begin(), w.end());
}

EvolutionSpec make_spec(const Options& o, std::vector<double> times) {
  EvolutionSpec spec;
  spec.t_final = times.empty() ? 0.0 : times.back();
  spec.record_times = std::move(times);
  spec.dt = option_or(o, "dt", 0.0);
  if (o.values().count("step_halving")) spec.step_halving = o.flag("step_halving");
  return spec;
}

HamiltonianVariant variant_option(const Options& o) {
  const std::string& h = o.text("hamiltonian");
  if (h == "dis") return HamiltonianVariant::dis;
  if (h == "app") return HamiltonianVariant::app;
  raise(ErrorKind::config, "hamiltonian must be dis or app, got '" + h + "'");
}

AnalyticVariant reference_option(const Options& o) {
  const std::string& r = o.text("reference");
  if (r == "app") return AnalyticVariant::app;
  if (r == "ext") return AnalyticVariant::ext;
  raise(ErrorKind::config, "reference must be app or ext, got '" + r + "'");
}

Branch branch_option(const Options& o) {
  const std::string& b = o.text("branch");
  if (b == "plus") return Branch::plus;
  if (b == "minus") return Branch::minus;
  raise(ErrorKind::config, "branch must be plus or minus, got '" + b + "'");
}

// (|0> + |1>)_a |0>_b |0>_c / sqrt(2) evolved to t_s.
struct CatRun {
  double t_s = 0.0;
  State state = State::density(Matrix::Identity(1, 1));
};

CatRun run_cat_pipeline(const ExperimentConfig& cfg, ExperimentResult& res) {
  const SystemParams& p = cfg.params;
  const HilbertConfig& h = cfg.hilbert;
  if (h.dim_a < 2) raise(ErrorKind::truncation, "cat pipeline needs dim_a >= 2");
  CatRun run;
  run.t_s = option_or(cfg.options, "t_s", kPi / std::abs(p.delta_b));
  Vector va = Vector::Zero(h.dim_a);
  va(0) = va(1) = 1.0 / std::sqrt(2.0);
  Vector vb = Vector::Zero(h.dim_b);
  vb(0) = 1.0;
  Vector vc = Vector::Zero(h.dim_c);
  vc(0) = 1.0;
  const Vector psi0 = product_state(h, va, vb, vc);
  const State init = p.lossless() ? State::pure(psi0) : State::density(psi0 * psi0.adjoint());
  const SparseMatrix ham = build_sparse_hamiltonian(h, p, variant_option(cfg.options));
  const EvolutionResult ev = evolve(h, init, ham, p, make_spec(cfg.options, {run.t_s}));
  run.state = ev.states.back();
  res.report["evolution"] = diagnostics_json(ev.diagnostics);
  add_warnings(res, ev.diagnostics.warnings);

  const double beta_max = 2.0 * p.g0() / std::abs(p.delta_b);
  res.report["truncation"] = truncation_report(h, beta_max, std::abs(exact_state(run.t_s, 1, 0.0, 0.0, p).eta_out));
  return run;
}

ExperimentResult fidelity_closed(const ExperimentConfig& cfg) {
  const Options& o = cfg.options;
  const int m = o.integer("m");
  const cplx beta0(o.number("beta0_re"), o.number("beta0_im"));
  const cplx eta0(o.number("eta0_re"), o.number("eta0_im"));
  const bool numeric = o.flag("numeric");
  std::vector<double> dcs = o.list("delta_c_values");
  if (dcs.empty()) dcs.push_back(cfg.params.delta_c);
  ExperimentResult res;
  std::vector<std::string> cols = {"delta_c", "t", "fidelity"};
  if (numeric) cols.insert(cols.end(), {"fidelity_numeric", "oracle_ext", "oracle_app"});
  res.table = Table(cols);
  double beta_max = std::abs(beta0);
  double eta_max = std::abs(eta0);
  json runs = json::array();
  for (double dc : dcs) {
    SystemParams q = cfg.params;
    q.delta_c = dc;
    q.resolve_drive_from_xi();
    const std::vector<double> times = linspace(0.0, option_or(o, "t_final", period_b(q)), o.integer("n_times"));
    std::vector<State> dis_states;
    std::vector<State> app_states;
    if (numeric) {
      if (!q.lossless()) raise(ErrorKind::invalid_argument, "fidelity-closed numeric check needs zero decay rates");
      const State init = State::pure(analytic_vector(cfg.hilbert, approx_state(0.0, m, beta0, eta0, q)));
      const EvolutionSpec spec = make_spec(o, times);
      const EvolutionResult dis =
          evolve(cfg.hilbert, init, build_sparse_hamiltonian(cfg.hilbert, q, HamiltonianVariant::dis), q, spec);
      const EvolutionResult app =
          evolve(cfg.hilbert, init, build_sparse_hamiltonian(cfg.hilbert, q, HamiltonianVariant::app), q, spec);
      dis_states = dis.states;
      app_states = app.states;
      runs.push_back({{"delta_c", dc},
                      {"dis", diagnostics_json(dis.diagnostics)},
                      {"app", diagnostics_json(app.diagnostics)}});
      add_warnings(res, dis.diagnostics.warnings);
      add_warnings(res, app.diagnostics.warnings);
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double t = times[i];
      const AnalyticState ext = exact_state(t, m, beta0, eta0, q);
      const AnalyticState app = approx_state(t, m, beta0, eta0, q);
      beta_max = std::max({beta_max, std::abs(ext.beta_out), std::abs(app.beta_out)});
      eta_max = std::max({eta_max, std::abs(ext.eta_out), std::abs(app.eta_out)});
      std::vector<Table::Cell> row = {Table::cell(dc), Table::cell(t), Table::cell(closed_fidelity(t, m, beta0, eta0, q))};
      if (numeric) {
        const State ext_vec = State::pure(analytic_vector(cfg.hilbert, ext));
        const State app_vec = State::pure(analytic_vector(cfg.hilbert, app));
        row.push_back(Table::cell(pure_fidelity(dis_states[i], app_states[i])));
        row.push_back(Table::cell(pure_fidelity(dis_states[i], ext_vec)));
        row.push_back(Table::cell(pure_fidelity(app_states[i], app_vec)));
      }
      res.table.add(q, cfg.hilbert, std::move(row));
    }
  }
  if (numeric) res.report["evolution"] = runs;
  res.report["truncation"] = truncation_report(cfg.hilbert, beta_max, eta_max);
  return res;
}

ExperimentResult fidelity_open(const ExperimentConfig& cfg) {
  const Options& o = cfg.options;
  const SystemParams& p = cfg.params;
  const int m = o.integer("m");
  const cplx beta0(o.number("beta0_re"), o.number("beta0_im"));
  const cplx eta0(o.number("eta0_re"), o.number("eta0_im"));
  if (p.lossless()) raise(ErrorKind::invalid_argument, "fidelity-open needs at least one decay rate > 0");
  const std::vector<double> times = linspace(0.0, option_or(o, "t_final", period_b(p)), o.integer("n_times"));
  const Vector psi0 = analytic_vector(cfg.hilbert, approx_state(0.0, m, beta0, eta0, p));
  const State init = State::density(psi0 * psi0.adjoint());
  const EvolutionSpec spec = make_spec(o, times);
  const EvolutionResult dis =
      evolve(cfg.hilbert, init, build_sparse_hamiltonian(cfg.hilbert, p, HamiltonianVariant::dis), p, spec);
  const EvolutionResult app =
      evolve(cfg.hilbert, init, build_sparse_hamiltonian(cfg.hilbert, p, HamiltonianVariant::app), p, spec);
  ExperimentResult res;
  res.table = Table({"t", "fidelity", "fidelity_clamp", "fidelity_floor"});
  for (std::size_t i = 0; i < times.size(); ++i) {
    const FidelityResult f = uhlmann_fidelity(dis.states[i], app.states[i]);
    res.table.add(p, cfg.hilbert,
                  {Table::cell(times[i]), Table::cell(f.value), Table::cell(f.clamp), Table::cell(f.floor)});
  }
  res.report["evolution"] = {{"dis", diagnostics_json(dis.diagnostics)}, {"app", diagnostics_json(app.diagnostics)}};
  add_warnings(res, dis.diagnostics.warnings);
  add_warnings(res, app.diagnostics.warnings);
  const double beta_max = std::abs(beta0) + 2.0 * m * p.g0() / std::abs(p.delta_b);
  res.report["truncation"] = truncation_report(cfg.hilbert, beta_max, std::abs(eta0));
  return res;
}

ExperimentResult coupling_ratios(const ExperimentConfig& cfg) {
  const SystemParams& p = cfg.params;
  if (!(p.kappa_a > 0.0)) raise(ErrorKind::invalid_argument, "coupling ratios need kappa_a > 0");
  ExperimentResult res;
  res.table = Table({"omega_drive_amp_c_abs", "g0_over_kappa_a", "g0sq_over_delta_b_kappa_a", "g0_over_delta_b"});
  const double g0 = p.g0();
  res.table.add(p, cfg.hilbert,
                {Table::cell(std::abs(p.omega_drive_amp_c)), Table::cell(g0 / p.kappa_a),
                 Table::cell(g0 * g0 / (std::abs(p.delta_b) * p.kappa_a)), Table::cell(g0 / std::abs(p.delta_b))});
  return res;
}

ExperimentResult fc_factors(const ExperimentConfig& cfg) {
  const int m_max = cfg.options.integer("m_max");
  if (m_max < 0) raise(ErrorKind::config, "m_max must be >= 0");
  ExperimentResult res;
  res.table = Table({"m", "fc_factor"});
  double total = 0.0;
  for (int m = 0; m <= m_max; ++m) {
    const double f = fc_factor(m, cfg.params);
    total += f;
    res.table.add(cfg.params, cfg.hilbert, {Table::cell(m), Table::cell(f)});
  }
  res.report["beta_1"] = normal_mode_decomposition(1, cfg.params).beta_m;
  res.report["listed_weight"] = total;
  return res;
}

ExperimentResult cat(const ExperimentConfig& cfg) {
  ExperimentResult res;
  const CatRun run = run_cat_pipeline(cfg, res);
  const SystemParams& p = cfg.params;
  const CatStates app = cat_states_analytic(run.t_s, p, AnalyticVariant::app);
  const CatStates ext = cat_states_analytic(run.t_s, p, AnalyticVariant::ext);
  const CatStates& ref = reference_option(cfg.options) == AnalyticVariant::app ? app : ext;
  res.table = Table({"t_s", "branch", "probability", "probability_app", "probability_ext", "fidelity",
                     "uhlmann_fidelity", "mean_nb"});
  for (Branch b : {Branch::plus, Branch::minus}) {
    const bool plus = b == Branch::plus;
    const CatBranch& rb = plus ? ref.plus : ref.minus;
    std::vector<Table::Cell> row = {Table::cell(run.t_s), Table::cell(plus ? "plus" : "minus")};
    try {
      const PostselectResult ps = postselect(cfg.hilbert, run.state, b);
      const Vector phi = cat_vector(cfg.hilbert.dim_b, rb);
      const Matrix& rho = ps.rho_b.matrix();
      const double overlap = (phi.adjoint() * rho * phi).value().real();
      const FidelityResult uf = uhlmann_fidelity(ps.rho_b, State::pure(phi));
      double nb = 0.0;
      for (int j = 0; j < cfg.hilbert.dim_b; ++j) nb += j * rho(j, j).real();
      row.insert(row.end(), {Table::cell(ps.probability), Table::cell((plus ? app.plus : app.minus).probability),
                             Table::cell((plus ? ext.plus : ext.minus).probability), Table::cell(overlap),
                             Table::cell(uf.value), Table::cell(nb)});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::vanishing_branch && e.kind() != ErrorKind::degenerate_branch) throw;
      res.warnings.push_back(std::string(plus ? "plus" : "minus") + " branch: " + e.what());
      row.insert(row.end(), {Table::cell(0.0), Table::cell((plus ? app.plus : app.minus).probability),
                             Table::cell((plus ? ext.plus : ext.minus).probability), "nan", "nan", "nan"});
    }
    res.table.add(p, cfg.hilbert, std::move(row));
  }
  return res;
}

ExperimentResult wigner_experiment(const ExperimentConfig& cfg) {
  ExperimentResult res;
  const Options& o = cfg.options;
  const CatRun run = run_cat_pipeline(cfg, res);
  const Branch branch = branch_option(o);
  const PostselectResult ps = postselect(cfg.hilbert, run.state, branch);
  GridSpec grid;
  grid.re_min = o.number("re_min");
  grid.re_max = o.number("re_max");
  grid.im_min = o.number("im_min");
  grid.im_max = o.number("im_max");
  grid.n_re = o.integer("n_re");
  grid.n_im = o.integer("n_im");
  const WignerGrid w = wigner(ps.rho_b, grid);
  const bool analytic = o.flag("analytic");
  CatBranch ref;
  if (analytic) {
    const CatStates cs = cat_states_analytic(run.t_s, cfg.params, reference_option(o));
    ref = branch == Branch::plus ? cs.plus : cs.minus;
  }
  std::vector<std::string> cols = {"re", "im", "w"};
  if (analytic) cols.push_back("w_analytic");
  res.table = Table(cols);
  for (int i = 0; i < grid.n_re; ++i) {
    for (int k = 0; k < grid.n_im; ++k) {
      const double re = grid.re(i);
      const double im = grid.im(k);
      std::vector<Table::Cell> row = {Table::cell(re), Table::cell(im), Table::cell(w.values(i, k))};
      if (analytic) row.push_back(Table::cell(wigner_cat_branch(cplx(re, im), ref)));
      res.table.add(cfg.params, cfg.hilbert, std::move(row));
    }
  }
  res.report["probability"] = ps.probability;
  res.report["normalization"] = w.normalization();
  res.report["w_origin"] = wigner_point(ps.rho_b.matrix(), 0.0);
  res.report["parity_w_origin"] = 2.0 / kPi * parity_expectation(ps.rho_b);
  res.report["max_abs_w"] = w.values.cwiseAbs().maxCoeff();
  return res;
}

ExperimentResult quadrature_experiment(const ExperimentConfig& cfg) {
  ExperimentResult res;
  const Options& o = cfg.options;
  const CatRun run = run_cat_pipeline(cfg, res);
  const Branch branch = branch_option(o);
  const PostselectResult ps = postselect(cfg.hilbert, run.state, branch);
  const double theta = option_or(o, "theta", default_quadrature_angle(cfg.params, run.t_s));
  const std::vector<double> x = linspace(o.number("x_min"), o.number("x_max"), o.integer("n_x"));
  const std::vector<double> prob = quadrature_distribution(ps.rho_b, theta, x);
  const CatStates cs = cat_states_analytic(run.t_s, cfg.params, reference_option(o));
  const Vector phi = cat_vector(cfg.hilbert.dim_b, branch == Branch::plus ? cs.plus : cs.minus);
  const std::vector<double> ref = quadrature_distribution(State::pure(phi), theta, x);
  res.table = Table({"theta", "x", "probability", "probability_analytic"});
  double integral = 0.0;
  const double dx = x.size() > 1 ? x[1] - x[0] : 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    integral += prob[i] * dx;
    res.table.add(cfg.params, cfg.hilbert,
                  {Table::cell(theta), Table::cell(x[i]), Table::cell(prob[i]), Table::cell(ref[i])});
  }
  res.report["theta"] = theta;
  res.report["probability"] = ps.probability;
  res.report["integral"] = integral;
  res.report["oscillation_amplitude"] = oscillation_amplitude(prob);
  res.report["oscillation_amplitude_analytic"] = oscillation_amplitude(ref);
  return res;
}

ExperimentResult pointer(const ExperimentConfig& cfg) {
  const Options& o = cfg.options;
  PointerConfig pc;
  pc.omega_a_lock = o.integer("omega_a_lock");
  pc.t_s = option_or(o, "t_s", 0.0);
  ExperimentResult res;
  res.table = Table({"vartheta", "normalized_shift", "shift_re", "shift_im", "weak_value", "strong_value"});
  for (double th : linspace(o.number("vartheta_min"), o.number("vartheta_max"), o.integer("n_vartheta"))) {
    pc.vartheta = th;
    const PointerShift s = pointer_shift(pc, cfg.params);
    res.table.add(cfg.params, cfg.hilbert,
                  {Table::cell(th), Table::cell(s.normalized), Table::cell(s.shift.real()), Table::cell(s.shift.imag()),
                   Table::cell(weak_value(th)), Table::cell(strong_value(th))});
  }
  return res;
}

ExperimentResult blockade(const ExperimentConfig& cfg) {
  const SystemParams& p = cfg.params;
  ExperimentResult res;
  BlockadeOptions bo;
  bo.padding = cfg.options.integer("padding");
  const BlockadeResult br = blockade_probabilities(cfg.hilbert, p, bo);
  const G2Analytic ga = g2_analytic(br.p1, br.p2);
  std::vector<std::string> cols = {"delta_a", "p1", "p2", "normalization", "g2_exact", "g2_approx",
                                   "g2_leading_order", "tail"};
  std::vector<Table::Cell> row = {Table::cell(p.delta_a),       Table::cell(br.p1),      Table::cell(br.p2),
                                  Table::cell(br.normalization), Table::cell(ga.exact),   Table::cell(ga.approx),
                                  Table::cell(g2_leading_order(br)), Table::cell(br.tail)};
  if (cfg.options.flag("numeric")) {
    cols.insert(cols.end(), {"g2_numeric", "steady_residual"});
    const SparseMatrix h = build_sparse_hamiltonian(cfg.hilbert, p, HamiltonianVariant::dis_driven);
    const SteadyStateResult ss = steady_state(cfg.hilbert, h, p);
    row.push_back(Table::cell(g2_numeric(cfg.hilbert, ss.rho)));
    row.push_back(Table::cell(ss.residual));
    res.report["steady_state"] = {{"method", ss.method}, {"iterations", ss.iterations}, {"residual", ss.residual}};
    add_warnings(res, ss.warnings);
  }
  res.table = Table(cols);
  res.table.add(p, cfg.hilbert, std::move(row));
  const NormalModeDecomposition m2 = normal_mode_decomposition(2, p);
  res.report["truncation"] = truncation_report(cfg.hilbert, std::abs(m2.beta_m), std::abs(m2.eta_m));
  res.report["amplitude_tail"] = br.tail;
  return res;
}

ExperimentResult displacement(const ExperimentConfig& cfg) {
  const Options& o = cfg.options;
  const SystemParams& p = cfg.params;
  const cplx xi0(o.number("xi0_re"), o.number("xi0_im"));
  double t_auto = 2.0 * kPi / std::max(std::abs(p.delta_c), 1e-12);
  if (p.kappa_c > 0.0) t_auto = 10.0 / p.kappa_c;
  const std::vector<double> times = linspace(0.0, option_or(o, "t_final", t_auto), o.integer("n_times"));
  ExperimentResult res;
  res.table = Table({"t", "xi_re", "xi_im", "xi_abs"});
  for (double t : times) {
    const cplx xi = transient_displacement(p, xi0, t);
    res.table.add(p, cfg.hilbert, {Table::cell(t), Table::cell(xi.real()), Table::cell(xi.imag()), Table::cell(std::abs(xi))});
  }
  return res;
}

}  // namespace

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
  for (const char* c : {"g0", "xi_ss_re", "xi_ss_im", "rwa_margin", "rwa_coupling_margin"}) columns_.push_back(c);
}

void Table::add(const SystemParams& p, const HilbertConfig& h, std::vector<Cell> cells) {
  const RwaReport r = rwa_condition_report(p, h.dim_a - 1, h.dim_b - 1, h.dim_c - 1);
  const cplx xi = p.xi_ss();
  for (double v : {p.g0(), xi.real(), xi.imag(), r.fredkin_margin, r.coupling_margin}) cells.push_back(cell(v));
  if (cells.size() != columns_.size()) raise(ErrorKind::shape_mismatch, "table row length does not match its header");
  rows_.push_back(std::move(cells));
}

json truncation_report(const HilbertConfig& h, double beta_max, double eta_max) {
  const double tb = poisson_tail(beta_max * beta_max, h.dim_b);
  const double tc = poisson_tail(eta_max * eta_max, h.dim_c);
  return {{"dim_b", h.dim_b},
          {"beta_max", beta_max},
          {"tail_b", tb},
          {"dim_c", h.dim_c},
          {"eta_max", eta_max},
          {"tail_c", tc},
          {"converged", tb < 1e-8 && tc < 1e-8}};
}

json rwa_json(const SystemParams& p, const HilbertConfig& h) {
  const RwaReport r = rwa_condition_report(p, h.dim_a - 1, h.dim_b - 1, h.dim_c - 1);
  return {{"n_a", h.dim_a - 1},
          {"n_b", h.dim_b - 1},
          {"n_c", h.dim_c - 1},
          {"fredkin_margin", r.fredkin_margin},
          {"coupling_margin", r.coupling_margin},
          {"grade", grade_name(r.grade)}};
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  static const std::map<std::string, std::function<ExperimentResult(const ExperimentConfig&)>> table = {
      {"fidelity-closed", fidelity_closed},
      {"fidelity-open", fidelity_open},
      {"coupling-ratios", coupling_ratios},
      {"fc-factors", fc_factors},
      {"cat", cat},
      {"wigner", wigner_experiment},
      {"quadrature", quadrature_experiment},
      {"pointer", pointer},
      {"blockade", blockade},
      {"displacement", displacement},
  };
  auto it = table.find(cfg.experiment);
  if (it == table.end()) raise(ErrorKind::config, "unknown experiment '" + cfg.experiment + "'");
  ExperimentResult res = it->second(cfg);
  add_warnings(res, cfg.params.warnings());
  if (!res.report.contains("truncation")) res.report["truncation"] = "not applicable (closed forms only)";
  return res;
}

}  // namespace simulate
