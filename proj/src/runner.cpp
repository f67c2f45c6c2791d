#include "efield/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <numbers>
#include <tuple>

#include "efield/error.hpp"
#include "efield/io.hpp"
#include "efield/kinetic.hpp"
#include "efield/parallel.hpp"
#include "efield/simd/kernels.hpp"
#include "efield/waves.hpp"
#include "json.hpp"

namespace efield::runner {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using scenario::InitialCondition;
using scenario::Mode;
using scenario::ScenarioConfig;

namespace {

// Growth regimes amplify round-off at grid scale far faster than any resolved
// mode; drop Fourier content below this fraction of the peak unless the
// scenario says otherwise.
constexpr double kAutoNoiseFilter = 1e-12;

struct Context {
  const ScenarioConfig& cfg;
  fs::path out;
  std::uint64_t seed;
  bool quiet;
  std::ostream& log;
  ordered_json meta;
  ordered_json discrepancy;
  std::vector<std::string> files;

  fs::path file(const std::string& name) {
    files.push_back(name);
    return out / name;
  }
  void say(const std::string& line) {
    if (!quiet) log << line << '\n';
  }
};

fs::path resolve(const ScenarioConfig& cfg, const std::string& path) {
  const fs::path p(path);
  if (p.is_absolute() || cfg.source_dir.empty()) return p;
  return fs::path(cfg.source_dir) / p;
}

std::string snapshot_name(std::size_t step) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "snapshots/step_%06zu.csv", step);
  return buf;
}

ordered_json grid_json(const ScenarioConfig& cfg) {
  ordered_json bounds = ordered_json::array();
  for (const auto& b : cfg.bounds) bounds.push_back({b.lo, b.hi});
  return {{"dim", cfg.bounds.size()},
          {"bounds", bounds},
          {"nodes_per_axis", cfg.nodes_per_axis},
          {"boundary", espace::to_string(cfg.boundary)}};
}

ordered_json params_json(const hydro::CouplingParams& p) {
  return {{"a1", p.a1}, {"a2", p.a2}, {"b1", p.b1}, {"b2", p.b2}};
}

waves::Background background(const ScenarioConfig& cfg) {
  waves::Background bg{cfg.cl0, cfg.pc0, cfg.params};
  bg.validate();
  return bg;
}

// Characteristic root selected by the plane-wave initial condition.
waves::Complex chosen_root(const ScenarioConfig& cfg) {
  const auto [a, b] = waves::biwave_coeffs(cfg.params);
  const auto disp = waves::dispersion_derived(waves::wave_number(cfg.initial.k), a, b);
  return disp.roots[cfg.initial.branch];
}

ordered_json dispersion_report(double k_norm, double a, double b, waves::Complex s) {
  ordered_json d;
  d["k_norm"] = k_norm;
  d["a"] = a;
  d["b"] = b;
  d["regime"] = waves::to_string(waves::classify_regime(a, b));
  d["derived"] = {{"omega", -s.imag()},
                  {"gamma", s.real()},
                  {"omega_sq", s.imag() * s.imag()},
                  {"gamma_sq", s.real() * s.real()},
                  {"residual", waves::biwave_residual(s, k_norm, a, b)}};
  try {
    const auto paper = waves::dispersion_paper(k_norm, a, b);
    d["paper"] = {{"omega_sq", paper.omega_sq},
                  {"gamma_sq", paper.gamma_sq},
                  {"residual", waves::biwave_residual(paper.root(), k_norm, a, b)}};
    d["delta_omega_sq"] = paper.omega_sq - s.imag() * s.imag();
    d["delta_gamma_sq"] = paper.gamma_sq - s.real() * s.real();
  } catch (const InvalidArgument& e) {
    d["paper"] = {{"undefined", e.what()}};
  }
  d["residual_tolerance"] = waves::residual_tolerance(k_norm, b);
  return d;
}

// Fixed step count and size covering `periods` of the chosen branch.
std::pair<std::size_t, double> period_plan(double periods, double omega, double dt_max) {
  if (!(omega > 0.0))
    throw ConfigError("run.periods needs an oscillating branch; the chosen root has omega = 0");
  const double t_end = periods * 2.0 * std::numbers::pi / omega;
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt_max));
  return {steps, t_end / static_cast<double>(steps)};
}

// ---- dispersion-sweep ----

void run_sweep(Context& ctx) {
  const auto& sw = *ctx.cfg.sweep;
  ordered_json per_k = ordered_json::array();
  for (std::size_t ki = 0; ki < sw.k_norms.size(); ++ki) {
    const double k = sw.k_norms[ki];
    const std::string name = "dispersion_k" + std::to_string(ki) + ".csv";
    io::CsvWriter w(ctx.file(name), {"alpha1", "alpha2", "beta1", "beta2", "a", "b", "regime",
                                     "c1_sq", "c2_sq", "omega", "gamma"});
    std::size_t rows = 0;
    std::size_t paper_defined = 0;
    std::size_t paper_failing = 0;
    double max_paper_residual = 0.0;
    double max_derived_residual = 0.0;
    for (std::size_t i = 0; i < sw.alpha1.count; ++i) {
      for (std::size_t j = 0; j < sw.alpha2.count; ++j) {
        const hydro::CouplingParams p{sw.alpha1.at(i), sw.alpha2.at(j), sw.beta1, sw.beta2};
        const auto [a, b] = waves::biwave_coeffs(p);
        const auto d = waves::dispersion_derived(k, a, b);
        const auto s = d.dominant_root();
        w.cell(p.a1).cell(p.a2).cell(p.b1).cell(p.b2).cell(a).cell(b);
        w.cell(waves::to_string(d.regime));
        w.cell(d.speeds.c1_sq.real()).cell(d.speeds.c2_sq.real());
        w.cell(-s.imag()).cell(s.real());
        w.end_row();
        ++rows;
        for (const auto& r : d.roots)
          max_derived_residual = std::max(max_derived_residual, waves::biwave_residual(r, k, a, b));
        if (4.0 * b + 3.0 * a * a >= 0.0) {
          ++paper_defined;
          const double res =
              waves::biwave_residual(waves::dispersion_paper(k, a, b).root(), k, a, b);
          max_paper_residual = std::max(max_paper_residual, res);
          if (res > waves::residual_tolerance(k, b)) ++paper_failing;
        }
      }
    }
    w.close();
    per_k.push_back({{"file", name},
                     {"k_norm", k},
                     {"rows", rows},
                     {"paper_defined_rows", paper_defined},
                     {"paper_rows_failing_residual", paper_failing},
                     {"max_paper_residual", max_paper_residual},
                     {"max_derived_residual", max_derived_residual}});
    ctx.say(name + ": " + std::to_string(rows) + " rows");
  }
  // The probe where the printed closed form visibly misses the quartic.
  const auto probe = waves::dispersion_derived(1.0, 0.0, 0.75);
  ctx.discrepancy["probe"] = dispersion_report(1.0, 0.0, 0.75, probe.dominant_root());
  ctx.discrepancy["sweep"] = per_k;
  ctx.meta["sweep"] = {{"alpha1", {sw.alpha1.min, sw.alpha1.max, sw.alpha1.count}},
                       {"alpha2", {sw.alpha2.min, sw.alpha2.max, sw.alpha2.count}},
                       {"beta1", sw.beta1},
                       {"beta2", sw.beta2},
                       {"k", sw.k_norms}};
}

// ---- kinetic-aggregate ----

void run_kinetic(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto& kin = *cfg.kinetic;
  const espace::EconomicSpace space = cfg.space();
  const espace::Grid grid = espace::build_grid(space, cfg.nodes_per_axis, cfg.boundary);
  const std::size_t n = space.dim();

  kinetic::EmpiricalEnsemble ensemble;
  if (!kin.input.empty()) {
    ensemble.realizations.push_back(io::read_transactions(resolve(cfg, kin.input)));
    ensemble.seeds.push_back(0);
  } else {
    ensemble = kinetic::generate_ensemble(space, kin.realizations, kin.transactions,
                                          kin.mean_amount, kin.velocity_scale, ctx.seed);
    for (std::size_t r = 0; r < ensemble.realizations.size(); ++r) {
      char buf[48];
      std::snprintf(buf, sizeof buf, "transactions/realization_%03zu.csv", r);
      io::write_transactions(ctx.file(buf), ensemble.realizations[r]);
    }
  }

  const kinetic::FieldDensity field = kinetic::field_density(ensemble, grid);
  io::write_field_density(ctx.file("field_density.csv"), field);

  const kinetic::CounterpartyIntegrals ci = kinetic::counterparty_integrals(field.cl);
  io::write_scalar_field(ctx.file("loans.csv"), ci.loans, io::block_names("x", n), "L");
  io::write_scalar_field(ctx.file("credits.csv"), ci.credits, io::block_names("y", n), "C");

  double amount_sum = 0.0;
  for (const auto& real : ensemble.realizations)
    for (const auto& r : real) amount_sum += r.amount;
  amount_sum /= static_cast<double>(ensemble.realizations.size());
  const double total = ci.total;
  ctx.meta["kinetic"] = {
      {"realizations", ensemble.realizations.size()},
      {"seeds", ensemble.seeds},
      {"mean_amount_sum", amount_sum},
      {"field_integral", total},
      {"relative_conservation_error", std::abs(total - amount_sum) / std::max(1e-300, amount_sum)},
      {"loans_integral", espace::integrate_all(ci.loans)},
      {"credits_integral", espace::integrate_all(ci.credits)}};

  if (kin.particles > 0) {
    const espace::Grid sgrid = espace::build_space_grid(space, cfg.nodes_per_axis, cfg.boundary);
    const auto particles = kinetic::generate_particles(space, kin.particles, kin.variables,
                                                       kin.velocity_scale, ctx.seed);
    io::write_particles(ctx.file("particles.csv"), particles);
    const kinetic::MacroState macro = kinetic::macro_state(particles, kin.variables, sgrid);
    auto header = io::block_names("x", n);
    header.push_back("U");
    for (const auto& c : io::block_names("P", n)) header.push_back(c);
    for (const auto& c : io::block_names("v", n)) header.push_back(c);
    std::vector<double> z(n);
    for (std::size_t j = 0; j < kin.variables; ++j) {
      io::CsvWriter w(ctx.file("macro_u" + std::to_string(j + 1) + ".csv"), header);
      for (std::size_t i = 0; i < sgrid.node_count(); ++i) {
        sgrid.node_coords(i, z);
        for (double c : z) w.cell(c);
        w.cell(macro.density[j][i]);
        for (std::size_t c = 0; c < n; ++c) w.cell(macro.impulse[j].at(c, i));
        for (std::size_t c = 0; c < n; ++c) w.cell(macro.velocity[j].at(c, i));
        w.end_row();
      }
      w.close();
    }
  }
  ctx.say("field integral " + io::format_double(total) + ", amount sum " +
          io::format_double(amount_sum));
}

// ---- simulations ----

struct Negativity {
  std::size_t max_cl_nodes = 0;
  std::size_t max_pc_nodes = 0;
  std::size_t steps_with_negative = 0;
  double min_cl = INFINITY;
  double min_pc = INFINITY;

  void observe(const hydro::FieldState& s) {
    const auto c = hydro::count_negative(s);
    max_cl_nodes = std::max(max_cl_nodes, c.cl_nodes);
    max_pc_nodes = std::max(max_pc_nodes, c.pc_nodes);
    if (c.cl_nodes + c.pc_nodes > 0) ++steps_with_negative;
    min_cl = std::min(min_cl, c.min_cl);
    min_pc = std::min(min_pc, c.min_pc);
  }
  ordered_json json() const {
    return {{"max_cl_nodes", max_cl_nodes},
            {"max_pc_nodes", max_pc_nodes},
            {"steps_with_negative", steps_with_negative},
            {"min_cl", min_cl},
            {"min_pc", min_pc}};
  }
};

void add_into(hydro::FieldState& s, const hydro::FieldState& d) {
  const auto& k = simd::kernels();
  auto acc = [&](std::span<double> o, std::span<const double> x) {
    k.axpy(o.data(), 1.0, x.data(), o.size());
  };
  acc(s.cl.values(), d.cl.values());
  acc(s.pc.values(), d.pc.values());
  acc(s.v.values(), d.v.values());
  acc(s.u.values(), d.u.values());
}

// Disturbance (linear) or full state (nonlinear) at t = 0.
hydro::FieldState initial_state(Context& ctx, const espace::Grid& grid, bool disturbance) {
  const auto& cfg = ctx.cfg;
  const auto& init = cfg.initial;
  hydro::FieldState s = disturbance ? hydro::FieldState::zeros(grid)
                                    : hydro::FieldState::uniform(grid, cfg.cl0, cfg.pc0);
  switch (init.kind) {
    case InitialCondition::Kind::uniform:
      break;
    case InitialCondition::Kind::plane_wave:
      add_into(s, waves::plane_wave_disturbance(grid, background(cfg), init.k, init.amplitude,
                                                chosen_root(cfg)));
      break;
    case InitialCondition::Kind::file: {
      s = io::read_snapshot(resolve(cfg, init.path), grid);
      if (disturbance) {
        for (double& x : s.cl.values()) x -= cfg.cl0;
        for (double& x : s.pc.values()) x -= cfg.pc0;
      }
      break;
    }
  }
  s.t = 0.0;
  return s;
}

double l2_error(const hydro::FieldState& a, const hydro::FieldState& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.cl.size(); ++i) {
    const double d = a.cl[i] - b.cl[i];
    sum += d * d * a.grid().cell_volume(i);
  }
  return std::sqrt(sum);
}

void run_nonlinear(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const espace::Grid grid = espace::build_grid(cfg.space(), cfg.nodes_per_axis, cfg.boundary);
  if (cfg.run.noise_filter && *cfg.run.noise_filter > 0.0)
    throw ConfigError("run.noise_filter applies to linear modes only");
  hydro::FieldState state = initial_state(ctx, grid, false);

  std::size_t steps = cfg.run.steps;
  double fixed_dt = 0.0;
  if (cfg.run.periods > 0.0) {
    const auto s = chosen_root(cfg);
    std::tie(steps, fixed_dt) = period_plan(cfg.run.periods, std::abs(s.imag()),
                                            cfg.run.cfl_factor * hydro::cfl_dt(state, cfg.params, 1.0));
  }

  Negativity neg;
  neg.observe(state);
  double dt_min = INFINITY;
  double dt_max = 0.0;
  io::write_snapshot(ctx.file(snapshot_name(0)), state);
  ctx.meta["steps_planned"] = steps;
  try {
    for (std::size_t i = 1; i <= steps; ++i) {
      const double dt =
          fixed_dt > 0.0 ? fixed_dt : cfg.run.cfl_factor * hydro::cfl_dt(state, cfg.params, 1.0);
      dt_min = std::min(dt_min, dt);
      dt_max = std::max(dt_max, dt);
      state = hydro::step(state, cfg.params, dt);
      neg.observe(state);
      if ((cfg.run.snapshot_every > 0 && i % cfg.run.snapshot_every == 0) || i == steps)
        io::write_snapshot(ctx.file(snapshot_name(i)), state);
    }
  } catch (...) {
    ctx.meta["negativity"] = neg.json();
    throw;
  }
  ctx.meta["steps"] = steps;
  ctx.meta["t_end"] = state.t;
  ctx.meta["dt_min"] = steps ? dt_min : 0.0;
  ctx.meta["dt_max"] = dt_max;
  ctx.meta["negativity"] = neg.json();
  ctx.say("nonlinear run: " + std::to_string(steps) + " steps to t = " +
          io::format_double(state.t));
}

void run_linear(Context& ctx, bool credit) {
  const auto& cfg = ctx.cfg;
  const espace::Grid grid = espace::build_grid(cfg.space(), cfg.nodes_per_axis, cfg.boundary);
  const waves::Background bg = background(cfg);
  const auto [a, b] = waves::biwave_coeffs(cfg.params);
  hydro::FieldState state = initial_state(ctx, grid, true);

  const bool plane = cfg.initial.kind == InitialCondition::Kind::plane_wave;
  const waves::Complex s = plane ? chosen_root(cfg) : waves::Complex(0.0, 0.0);
  const double dt_max = cfg.run.cfl_factor * waves::linear_cfl_dt(grid, bg, 1.0);
  std::size_t steps = cfg.run.steps;
  double dt = dt_max;
  if (cfg.run.periods > 0.0) std::tie(steps, dt) = period_plan(cfg.run.periods, std::abs(s.imag()), dt_max);

  waves::LinearOptions options;
  const auto regime = waves::classify_regime(a, b);
  const bool grows = regime == waves::Regime::oscillatory_growth ||
                     regime == waves::Regime::monotone_instability;
  options.noise_filter = cfg.run.noise_filter.value_or(
      grows && cfg.boundary == espace::Boundary::periodic ? kAutoNoiseFilter : 0.0);
  if (options.noise_filter > 0.0 && cfg.boundary != espace::Boundary::periodic)
    throw ConfigError("run.noise_filter needs a periodic grid");

  waves::PlaneWave wave;
  double X = 0.0;
  std::unique_ptr<io::CsvWriter> series;
  std::vector<double> ts;
  std::vector<double> cq;
  double max_paper_dev = 0.0;
  double max_quad_dev = 0.0;
  if (plane) wave = {cfg.initial.k, -s.imag(), s.real(), cfg.initial.amplitude};
  auto record = [&](const hydro::FieldState& st) {
    const double quad = waves::credit_total_quadrature(st.cl, X);
    const auto paper = waves::credit_total_paper(st.t, wave, X, cfg.cl0);
    const double closed = waves::credit_total_closed_form(st.t, wave, X);
    series->cell(st.t).cell(paper.background + quad).cell(paper.background);
    series->cell(paper.disturbance).cell(quad);
    series->end_row();
    ts.push_back(st.t);
    cq.push_back(quad);
    max_paper_dev = std::max(max_paper_dev, std::abs(paper.disturbance - closed));
    max_quad_dev = std::max(max_quad_dev, std::abs(quad - closed));
  };
  if (credit) {
    X = cfg.credit->X;
    series = std::make_unique<io::CsvWriter>(
        ctx.file("credit_series.csv"),
        std::vector<std::string>{"t", "C_total", "C0", "c_paper", "c_quadrature"});
    record(state);
  }

  io::write_snapshot(ctx.file(snapshot_name(0)), state, cfg.cl0, cfg.pc0);
  ctx.meta["steps_planned"] = steps;
  ctx.meta["dt"] = dt;
  ctx.meta["noise_filter"] = options.noise_filter;
  for (std::size_t i = 1; i <= steps; ++i) {
    state = waves::linear_step(state, bg, dt, options);
    if (credit) record(state);
    if ((cfg.run.snapshot_every > 0 && i % cfg.run.snapshot_every == 0) || i == steps)
      io::write_snapshot(ctx.file(snapshot_name(i)), state, cfg.cl0, cfg.pc0);
  }
  if (series) series->close();
  ctx.meta["steps"] = steps;
  ctx.meta["t_end"] = state.t;
  ctx.meta["regime"] = waves::to_string(regime);

  if (plane) {
    const double k_norm = waves::wave_number(cfg.initial.k);
    ctx.discrepancy["dispersion"] = dispersion_report(k_norm, a, b, s);
    const auto exact = waves::plane_wave_disturbance(grid, bg, cfg.initial.k,
                                                     cfg.initial.amplitude, s, state.t);
    const double err = l2_error(state, exact);
    const double norm = l2_error(exact, hydro::FieldState::zeros(grid));
    ctx.meta["cl_l2_error_vs_analytic"] = err;
    ctx.meta["cl_l2_rel_error_vs_analytic"] = norm > 0.0 ? err / norm : err;
  }
  if (credit) {
    const auto t0 = waves::credit_total_paper(0.0, wave, X, cfg.cl0);
    ordered_json c;
    c["X"] = X;
    c["t0"] = {{"c_paper", t0.disturbance},
               {"c_closed_form", waves::credit_total_closed_form(0.0, wave, X)},
               {"c_quadrature", cq.front()}};
    c["max_abs_paper_minus_closed_form"] = max_paper_dev;
    c["max_abs_quadrature_minus_closed_form"] = max_quad_dev;
    try {
      const auto est = waves::extract_frequency(ts, cq);
      c["frequency"] = {{"omega", est.omega},
                        {"gamma", est.gamma},
                        {"periods", est.periods},
                        {"derived_omega", wave.omega},
                        {"derived_gamma", wave.gamma},
                        {"rel_error_omega",
                         std::abs(est.omega - std::abs(wave.omega)) / std::abs(wave.omega)},
                        {"rel_error_gamma",
                         wave.gamma != 0.0 ? std::abs(est.gamma - wave.gamma) / std::abs(wave.gamma)
                                           : std::abs(est.gamma)}};
    } catch (const InvalidArgument& e) {
      c["frequency"] = {{"error", e.what()}};
    }
    ctx.discrepancy["credit"] = c;
  }
  ctx.say("linear run: " + std::to_string(steps) + " steps to t = " + io::format_double(state.t));
}

void write_reports(Context& ctx, const std::string& status) {
  ctx.meta["status"] = status;
  if (!ctx.discrepancy.empty()) {
    ctx.files.push_back("discrepancy.json");
    io::write_text(ctx.out / "discrepancy.json", ctx.discrepancy.dump(2) + "\n");
  }
  ctx.files.push_back("metadata.json");
  ctx.meta["files"] = ctx.files;
  io::write_text(ctx.out / "metadata.json", ctx.meta.dump(2) + "\n");
}

}  // namespace

RunResult run(const ScenarioConfig& config, const RunOptions& options, std::ostream& log) {
  RunResult result;
  const std::string out_dir = options.out_dir.value_or(config.out_dir);
  if (out_dir.empty()) {
    result.exit_code = kExitConfig;
    result.message = "missing required key \"out_dir\" (or --out-dir)";
    return result;
  }
  set_thread_count(std::max<std::size_t>(1, options.threads));
  Context ctx{config, fs::path(out_dir), options.seed.value_or(config.seed), options.quiet, log,
              {}, {}, {}};
  ctx.meta["mode"] = scenario::to_string(config.mode);
  ctx.meta["seed"] = ctx.seed;
  ctx.meta["threads"] = thread_count();
  ctx.meta["simd"] = simd::kernels().name;
  if (config.mode != Mode::dispersion_sweep) ctx.meta["grid"] = grid_json(config);
  if (config.mode == Mode::simulate_nonlinear || config.mode == Mode::simulate_linear ||
      config.mode == Mode::credit_series) {
    ctx.meta["params"] = params_json(config.params);
    ctx.meta["background"] = {{"CL0", config.cl0}, {"PC0", config.pc0}};
    ctx.meta["cfl_factor"] = config.run.cfl_factor;
  }

  auto fail = [&](int code, const std::string& status, const std::string& what) {
    result.exit_code = code;
    result.message = what;
    if (code == kExitIo) return;
    try {
      ctx.meta["error"] = what;
      write_reports(ctx, status);
    } catch (const std::exception&) {
      // The primary failure is what gets reported.
    }
  };

  try {
    std::error_code ec;
    fs::create_directories(ctx.out, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());
    switch (config.mode) {
      case Mode::dispersion_sweep: run_sweep(ctx); break;
      case Mode::kinetic_aggregate: run_kinetic(ctx); break;
      case Mode::simulate_nonlinear: run_nonlinear(ctx); break;
      case Mode::simulate_linear: run_linear(ctx, false); break;
      case Mode::credit_series: run_linear(ctx, true); break;
    }
    write_reports(ctx, "ok");
  } catch (const BlowUp& e) {
    ctx.meta["blow_up_time"] = e.time();
    fail(kExitBlowUp, "blow-up", e.what());
  } catch (const CflViolation& e) {
    fail(kExitBlowUp, "cfl-violation", e.what());
  } catch (const IoError& e) {
    fail(kExitIo, "io-error", e.what());
  } catch (const fs::filesystem_error& e) {
    fail(kExitIo, "io-error", e.what());
  } catch (const OutOfBounds& e) {
    fail(kExitConfig, "invalid-input", e.what());
  } catch (const Error& e) {
    // ConfigError, InvalidArgument, ShapeMismatch: the scenario asked for
    // something the model cannot do.
    fail(kExitConfig, "invalid-config", e.what());
  }
  result.files = ctx.files;
  return result;
}

RunResult run_file(const std::string& path, const RunOptions& options, std::ostream& log) {
  try {
    return run(scenario::load_scenario(path), options, log);
  } catch (const IoError& e) {
    return {kExitIo, e.what(), {}};
  } catch (const ConfigError& e) {
    return {kExitConfig, e.what(), {}};
  }
}

}  // namespace efield::runner
