#include "rotor/app/run.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <numbers>
#include <thread>

#include "core/text.hpp"
#include "rotor/classical.hpp"
#include "rotor/core.hpp"
#include "rotor/nonlinear.hpp"
#include "rotor/quantum.hpp"
#include "rotor/scaling.hpp"
#include "rotor/semiclassics.hpp"

namespace rotor::app {

namespace {

const Column kKickCol{"kick", "kick index n"};
const Column kThetaCol{"theta", "rad"};
const Column kAmplitudeCol{"amplitude", "|psi| (rad^-1/2)"};

std::string job_tag(std::size_t index) {
  std::string s = std::to_string(index);
  if (s.size() < 3) s.insert(0, 3 - s.size(), '0');
  return "job_" + s;
}

CsvTable axis_table(const quantum::EvolutionRecord& rec) {
  CsvTable t;
  t.columns = {kKickCol, kThetaCol, kAmplitudeCol};
  const double theta = AngleGrid(rec.params.basis_size()).node(rec.params.basis_size() / 2);
  for (std::size_t n = 0; n < rec.axis_cut.size(); ++n) {
    t.rows.push_back({static_cast<double>(n), theta, rec.axis_cut[n]});
  }
  return t;
}

void write_field_output(const RunConfig& c, Manifest& m, const AmplitudeField& field) {
  if (c.field_format == "binary") {
    m.files.push_back(write_field(c.output_dir, "field.bin", field));
  } else if (c.field_format == "csv") {
    m.files.push_back(write_field_csv(c.output_dir, "field.csv", field));
  }
}

void summarize_peak(Manifest& m, const quantum::EvolutionRecord& rec) {
  m.summary.emplace_back("tail_mass", rec.tail_mass);
  if (rec.axis_cut.size() < 2) return;
  const auto peak = quantum::axis_peak(rec, {1, rec.axis_cut.size() - 1});
  m.summary.emplace_back("axis_peak_kick", static_cast<double>(peak.kick));
  m.summary.emplace_back("axis_peak_amplitude", peak.value);
}

std::size_t auto_kicks(const RunConfig& c, double K, double delta, unsigned m, double factor) {
  if (c.kicks) return *c.kicks;
  const double n = semiclassics::mean_caustic_kicks(K, delta, m);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(factor * n)));
}

void run_evolve(const RunConfig& c, Manifest& m) {
  const auto params = SimParams::make(c.K, c.delta, c.basis_size, *c.kicks);
  quantum::EvolveOptions options;
  if (c.delta == 0.0) {
    // At exact resonance the free phase is 1 for every bin, so wrap-around
    // of momenta past M/2 does not change the angle-space evolution.
    options.enforce_tail_mass = false;
    m.notes.push_back("delta = 0: free phase is trivial, momentum tail mass not enforced");
  }
  const auto rec = quantum::evolve(uniform_state(c.basis_size), params, options);
  m.files.push_back(write_csv(c.output_dir, "axis_cut.csv", axis_table(rec)));
  write_field_output(c, m, rec.field);
  summarize_peak(m, rec);
  m.summary.emplace_back("max_norm_error", max_row_normalization_error(rec.field));
}

void run_classical(const RunConfig& c, Manifest& m) {
  const auto kind = classical::parse_map_kind(c.map);
  const auto params = SimParams::make(c.K, c.delta, 2, *c.kicks);
  const std::size_t steps = *c.kicks;

  if (c.trajectories > 0) {
    const auto ensemble = classical::ClassicalEnsemble::uniform(c.trajectories);
    const auto snaps = classical::propagate(ensemble, kind, params, steps);
    CsvTable t;
    t.columns = {{"step", "map iterate"}, {"index", "trajectory"}, {"theta0", "rad"},
                 kThetaCol, {"p", "momentum (map units)"}};
    for (std::size_t n = 0; n < snaps.size(); ++n) {
      for (std::size_t i = 0; i < snaps[n].points.size(); ++i) {
        t.rows.push_back({static_cast<double>(n), static_cast<double>(i),
                          ensemble.points[i].theta, snaps[n].points[i].theta,
                          snaps[n].points[i].p});
      }
    }
    m.files.push_back(write_csv(c.output_dir, "trajectories.csv", t));
  }

  if (c.fold_grid > 0) {
    std::vector<double> grid(c.fold_grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid[i] = kTwoPi * (static_cast<double>(i) + 0.5) / static_cast<double>(grid.size());
    }
    const auto folds = classical::fold_detect(grid, kind, params, steps);
    CsvTable t;
    t.columns = {{"step", "map iterate"}, kThetaCol, {"theta0", "rad"}};
    for (const auto& f : folds) t.rows.push_back({static_cast<double>(f.step), f.theta, f.theta0});
    m.files.push_back(write_csv(c.output_dir, "folds.csv", t));
    m.summary.emplace_back("fold_points", static_cast<double>(folds.size()));
  }

  if (c.section_seeds > 0) {
    std::vector<classical::PhasePoint> seeds(c.section_seeds);
    const double n = static_cast<double>(c.section_seeds);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const double f = (static_cast<double>(i) + 0.5) / n;
      seeds[i] = {kTwoPi * f, std::numbers::pi * (2.0 * f - 1.0)};
    }
    const auto pts = classical::poincare_section(params, kind, seeds, steps);
    CsvTable t;
    t.columns = {{"seed", "seed index"}, {"step", "map iterate"}, kThetaCol,
                 {"p", "momentum (map units)"}};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      t.rows.push_back({static_cast<double>(i / (steps + 1)), static_cast<double>(i % (steps + 1)),
                        pts[i].theta, pts[i].p});
    }
    m.files.push_back(write_csv(c.output_dir, "section.csv", t));
  }
  m.summary.emplace_back("K_delta", c.K * c.delta);
}

void run_semiclassical(const RunConfig& c, Manifest& m) {
  const std::size_t kicks = c.kicks.value_or(300);
  const double t_max = static_cast<double>(kicks) * c.delta;
  CsvTable traj;
  traj.columns = {{"theta0", "rad"},          kKickCol,
                  {"time", "t = n delta"},    {"map_theta", "rad"},
                  {"pendulum_theta", "rad"},  {"discrepancy", "rad"}};
  CsvTable zeros;
  zeros.columns = {{"theta0", "rad"},
                   {"kind", "0 = variational, 1 = gelfand_yaglom"},
                   {"index", "zero number"},
                   {"time", "t = n delta"},
                   {"kick", "t / delta"}};
  double worst = 0.0;
  double worst_literal = 0.0;
  for (const double theta0 : c.theta0_list) {
    classical::PhasePoint pt{theta0, 0.0};
    for (std::size_t n = 1; n <= kicks; ++n) {
      pt = classical::eps_classical_step(pt, c.K, c.delta);
      const double t = semiclassics::map_sample_time(n, c.delta);
      const double pend = semiclassics::pendulum_solution(theta0, t, c.K, c.delta);
      const double err = std::abs(std::remainder(pt.theta - pend, kTwoPi));
      const double literal = semiclassics::pendulum_solution(
          theta0, static_cast<double>(n) * c.delta, c.K, c.delta);
      worst = std::max(worst, err);
      worst_literal = std::max(worst_literal, std::abs(std::remainder(pt.theta - literal, kTwoPi)));
      traj.rows.push_back({theta0, static_cast<double>(n), t, pt.theta, pend, err});
    }
    for (const auto kind :
         {semiclassics::TangentKind::variational, semiclassics::TangentKind::gelfand_yaglom}) {
      const auto times = semiclassics::tangent_zero_times(kind, theta0, t_max, c.K, c.delta);
      for (std::size_t i = 0; i < times.size(); ++i) {
        zeros.rows.push_back({theta0,
                              kind == semiclassics::TangentKind::variational ? 0.0 : 1.0,
                              static_cast<double>(i), times[i], times[i] / c.delta});
      }
    }
  }
  m.files.push_back(write_csv(c.output_dir, "pendulum.csv", traj));
  m.files.push_back(write_csv(c.output_dir, "tangent_zeros.csv", zeros));
  m.summary.emplace_back("max_discrepancy", worst);
  m.summary.emplace_back("max_discrepancy_at_t_equals_n_delta", worst_literal);
  m.notes.push_back("iterate n is compared with the pendulum at t = (n - 1/2) delta");
}

void run_caustics(const RunConfig& c, Manifest& m) {
  CsvTable t;
  t.columns = {{"m", "branch"},
               {"k", "modulus"},
               {"time", "t = n delta"},
               {"kick_index", "round(t / delta)"},
               kThetaCol};
  for (unsigned branch = 0; branch <= c.m_max; ++branch) {
    const auto curve = semiclassics::caustic_curve(c.K, c.delta, branch, c.k_grid);
    for (const auto& p : curve.points) {
      t.rows.push_back({static_cast<double>(p.m), p.k, p.time, static_cast<double>(p.kick_index),
                        p.theta});
    }
    for (const auto& s : curve.skipped) m.notes.push_back("m = " + std::to_string(branch) + ", " + s);
  }
  m.files.push_back(write_csv(c.output_dir, "caustics.csv", t));
}

void run_scaling(const RunConfig& c, Manifest& m) {
  const auto jobs = enumerate_jobs(c);
  std::vector<scaling::ScalingRecord> records(jobs.size());
  parallel_for(jobs.size(), c.workers, [&](std::size_t i) {
    records[i] = scaling::measure_cusp_amplitude(
        SimParams::make(jobs[i].K, jobs[i].delta, c.basis_size, 0));
  });
  double prefactor = scaling::kCuspPrefactor;
  if (c.refit_prefactor) {
    prefactor = scaling::refit_prefactor(records);
    for (auto& r : records) r.predicted = scaling::predicted_cusp_amplitude(r.K, r.delta, prefactor);
    m.notes.push_back("predicted column uses the refitted prefactor");
  }
  CsvTable t;
  t.columns = {{"K", "kick strength"},
               {"delta", "detuning"},
               {"lambda", "-(pi/48) sqrt(K/delta)"},
               {"measured", "max |psi| (rad^-1/2)"},
               {"predicted", "c |lambda|^(1/4) (rad^-1/2)"}};
  for (const auto& r : records) t.rows.push_back({r.K, r.delta, r.lambda, r.measured, r.predicted});
  m.files.push_back(write_csv(c.output_dir, "scaling.csv", t));

  try {
    const auto fit = scaling::fit_arnold_index(records);
    CsvTable f;
    f.columns = {{"exponent", "d log|psi| / d log(K/delta)"},
                 {"intercept", "log|psi| at K/delta = 1"},
                 {"residual", "rms of log residuals"},
                 {"prefactor", "c"}};
    f.rows.push_back({fit.exponent, fit.intercept, fit.residual, prefactor});
    m.files.push_back(write_csv(c.output_dir, "fit.csv", f));
    m.summary.emplace_back("arnold_exponent", fit.exponent);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::validation) throw;
    m.notes.push_back(std::string("no exponent fit: ") + e.what());
  }
  m.summary.emplace_back("prefactor", prefactor);
}

void run_nonlinear(const RunConfig& c, Manifest& m) {
  const std::size_t kicks = auto_kicks(c, c.K, c.delta, 1, 1.3);
  const auto base_params = SimParams::make(c.K, c.delta, c.basis_size, kicks);
  const nonlinear::NonlinearConfig nl{c.g, nonlinear::parse_variant(c.variant), c.substeps};
  const auto initial = uniform_state(c.basis_size);
  const auto baseline = quantum::evolve(initial, base_params);
  const auto run = nonlinear::evolve(initial, base_params, nl);
  m.files.push_back(write_csv(c.output_dir, "axis_cut.csv", axis_table(run)));
  write_field_output(c, m, run.field);

  CsvTable t;
  t.columns = {{"m", "branch"},
               {"lo", "window start / mean caustic time"},
               {"hi", "window end / mean caustic time"},
               {"first_kick", "kick index"},
               {"last_kick", "kick index"},
               {"ratio", "max |psi| interacting / linear"}};
  for (unsigned branch : {0u, 1u}) {
    const auto w = quantum::caustic_window(base_params, branch, 0.75, 1.25);
    const double ratio = nonlinear::window_peak_ratio(run, baseline, branch, 0.75, 1.25);
    t.rows.push_back({static_cast<double>(branch), 0.75, 1.25, static_cast<double>(w.first),
                      static_cast<double>(w.last), ratio});
    m.summary.emplace_back(branch == 0 ? "first_window_ratio" : "second_window_ratio", ratio);
  }
  m.files.push_back(write_csv(c.output_dir, "suppression.csv", t));
  summarize_peak(m, run);
}

struct SweepOutcome {
  std::size_t kicks = 0;
  quantum::PeakSample peak;
  double tail = 0.0;
  CsvTable axis;
};

void run_sweep(const RunConfig& c, Manifest& m) {
  const auto jobs = enumerate_jobs(c);
  std::vector<SweepOutcome> out(jobs.size());
  parallel_for(jobs.size(), c.workers, [&](std::size_t i) {
    const auto& job = jobs[i];
    const std::size_t kicks = auto_kicks(c, job.K, job.delta, 0, 1.5);
    const auto params = SimParams::make(job.K, job.delta, c.basis_size, kicks);
    const auto rec = quantum::evolve(uniform_state(c.basis_size), params);
    out[i].kicks = kicks;
    out[i].peak = quantum::axis_peak(rec, {1, kicks});
    out[i].tail = rec.tail_mass;
    out[i].axis = axis_table(rec);
  });
  CsvTable t;
  t.columns = {{"job", "row-major index"}, {"K", "kick strength"}, {"delta", "detuning"},
               {"kicks", "kick count"},     {"peak_kick", "kick index"}, {"peak_theta", "rad"},
               {"peak_amplitude", "|psi| (rad^-1/2)"}, {"tail_mass", "probability"}};
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    m.files.push_back(write_csv(c.output_dir, job_tag(i) + "_axis_cut.csv", out[i].axis));
    t.rows.push_back({static_cast<double>(i), jobs[i].K, jobs[i].delta,
                      static_cast<double>(out[i].kicks), static_cast<double>(out[i].peak.kick),
                      out[i].peak.theta, out[i].peak.value, out[i].tail});
  }
  m.files.push_back(write_csv(c.output_dir, "sweep.csv", t));
  m.summary.emplace_back("jobs", static_cast<double>(jobs.size()));
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept { return is_validation_kind(kind) ? 1 : 2; }

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& job) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::min(std::max<std::size_t>(workers, 1), count);
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Manifest run(const RunConfig& config) {
  Manifest m;
  m.mode = to_string(config.mode);
  m.version = artifact_version();
  m.config = config.echo();
  const auto start = std::chrono::steady_clock::now();
  auto fail = [&](const std::string& kind, const std::string& message, int code) {
    m.status = "error";
    m.error_kind = kind;
    m.error_message = message;
    m.exit_code = code;
  };
  try {
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw Error(ErrorKind::io, "cannot create output directory '" + config.output_dir + "'");
    switch (config.mode) {
      case Mode::evolve: run_evolve(config, m); break;
      case Mode::classical: run_classical(config, m); break;
      case Mode::semiclassical: run_semiclassical(config, m); break;
      case Mode::caustics: run_caustics(config, m); break;
      case Mode::scaling: run_scaling(config, m); break;
      case Mode::nonlinear: run_nonlinear(config, m); break;
      case Mode::sweep: run_sweep(config, m); break;
    }
  } catch (const Error& e) {
    fail(to_string(e.kind()), e.what(), exit_code_for(e.kind()));
  } catch (const std::exception& e) {
    fail("internal", e.what(), 2);
  }
  m.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    write_manifest(config.output_dir, m);
  } catch (const Error& e) {
    if (m.exit_code == 0) fail(to_string(e.kind()), e.what(), 2);
  }
  return m;
}

}  // namespace rotor::app
