#include "gpelab/pipelines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <thread>

#include <json.hpp>

#include "gpelab/carpet.hpp"
#include "gpelab/csv.hpp"
#include "gpelab/errors.hpp"
#include "gpelab/ground_state.hpp"
#include "gpelab/observables.hpp"
#include "gpelab/particle_model.hpp"
#include "gpelab/potentials.hpp"
#include "gpelab/propagator.hpp"
#include "gpelab/quantities.hpp"
#include "gpelab/resolution.hpp"
#include "gpelab/soliton.hpp"
#include "gpelab/track.hpp"

namespace gpelab {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

class StageTimer {
 public:
  void start(const std::string& name) {
    name_ = name;
    t0_ = std::chrono::steady_clock::now();
  }
  void stop() {
    const auto dt = std::chrono::steady_clock::now() - t0_;
    timings_[name_] +=
        std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
  }
  const std::map<std::string, double>& timings() const { return timings_; }

 private:
  std::string name_;
  std::chrono::steady_clock::time_point t0_;
  std::map<std::string, double> timings_;
};

struct InternalSetup {
  UnitSystem units{};
  double omega_z = 0.0;
  double omega_perp = 0.0;
  double a_s = 0.0;       // internal
  NonlinearSpec spec;     // at the (final) trap
  double mu_tf = 0.0;     // cubic TF estimate
  double r_tf = 0.0;
  double xi = 0.0;
};

InternalSetup makeSetup(const ExperimentConfig& cfg) {
  cfg.trap.validate();
  InternalSetup s;
  s.units = UnitSystem(cfg.trap.mass_kg);
  s.omega_z = s.units.omegaFromHz(cfg.trap.nu_z_hz);
  s.omega_perp = s.units.omegaFromHz(cfg.trap.nu_perp_hz);
  s.a_s = s.units.lengthFromM(cfg.trap.scattering_length_m);
  s.spec = cfg.model == NonlinearSpec::Kind::Gpe1d
               ? NonlinearSpec::gpe1d(s.omega_perp, s.a_s, cfg.trap.atom_number)
               : NonlinearSpec::npse(s.omega_perp, s.a_s, cfg.trap.atom_number);
  s.mu_tf = tfChemicalPotential(s.spec.g1, s.omega_z);
  s.r_tf = tfRadius(s.mu_tf, s.omega_z);
  s.xi = healingLength(s.mu_tf);
  return s;
}

// Box >= 4.5 cloud radii (largest phase of the run) and dz <= xi/4.
std::shared_ptr<const Grid1D> makeGrid(const ExperimentConfig& cfg,
                                       const InternalSetup& s,
                                       double min_half_extent = 0.0) {
  if (!cfg.grid.automatic) {
    return Grid1D::make(cfg.grid.n_points, cfg.grid.box_length_um);
  }
  double r = s.r_tf;
  double xi = s.xi;
  if (cfg.trap.ramp) {
    const double wz0 = s.units.omegaFromHz(cfg.trap.ramp->nu_z_initial_hz);
    const double wp0 = s.units.omegaFromHz(cfg.trap.ramp->nu_perp_initial_hz);
    const double g1_0 = 2.0 * wp0 * s.a_s * cfg.trap.atom_number;
    const double mu0 = tfChemicalPotential(g1_0, wz0);
    r = std::max(r, tfRadius(mu0, wz0));
    xi = std::min(xi, healingLength(mu0));
  }
  const double box = std::max({4.5 * r, 2.5 * min_half_extent, 24.0});
  int n = 256;
  while (box / n > xi / 4.5 && n < 8192) n *= 2;
  if (box / n > xi / 4.0) {
    throw NumericalError("makeGrid: cannot resolve the healing length within 8192 points");
  }
  return Grid1D::make(n, box);
}

Wavefunction tfGuess(std::shared_ptr<const Grid1D> grid, std::span<const double> v,
                     double g1) {
  const double v_min = *std::min_element(v.begin(), v.end());
  const double dz = grid->dz();
  auto deficit = [&](double mu_t) {
    double s = 0.0;
    for (double vi : v) s += std::max(mu_t - vi, 0.0);
    return s * dz / g1 - 1.0;
  };
  double lo = v_min, hi = v_min + 1.0;
  while (deficit(hi) < 0) hi = v_min + 2.0 * (hi - v_min);
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (deficit(mid) < 0 ? lo : hi) = mid;
  }
  const double mu_t = 0.5 * (lo + hi);
  Wavefunction psi(grid);
  for (int i = 0; i < grid->size(); ++i) {
    psi.values[i] = std::sqrt(std::max(mu_t - v[i], 0.0) / g1);
  }
  normalize(psi);
  return psi;
}

struct EvolutionPlan {
  double dt = 0.0;
  long n_steps = 0;
  int observe_every = 0;
  double snapshot = 0.0;  // internal
};

EvolutionPlan planEvolution(const ExperimentConfig& cfg, const InternalSetup& s,
                            double duration_ms, double snapshot_ms,
                            const Wavefunction& psi0, const PotentialFn& potential,
                            const Nonlinearity& nl) {
  const int n = psi0.grid->size();
  std::vector<double> v(n), g(n);
  potential(psi0.time, v);
  auto dens = density(psi0);
  nl.evaluate(dens, psi0.time, g);
  double e_max = 0.0;
  for (int i = 0; i < n; ++i) e_max = std::max(e_max, std::abs(v[i]) + std::abs(g[i]));

  EvolutionPlan plan;
  const double guard = e_max > 0 ? cfg.time.safety / e_max : 1e-2;
  double dt = cfg.time.dt_ms > 0 ? s.units.timeFromMs(cfg.time.dt_ms) : guard;
  plan.snapshot = s.units.timeFromMs(snapshot_ms);
  const long substeps = std::max<long>(1, std::lround(std::ceil(plan.snapshot / dt)));
  plan.dt = plan.snapshot / substeps;
  plan.observe_every = static_cast<int>(substeps);
  const long frames = std::max<long>(1, std::lround(duration_ms / snapshot_ms));
  plan.n_steps = frames * substeps;
  return plan;
}

DensityCarpet evolveToCarpet(const Wavefunction& psi0, const PotentialFn& potential,
                             const Nonlinearity& nl, const EvolutionPlan& plan) {
  DensityCarpet carpet;
  carpet.grid = psi0.grid;
  EvolveOptions opt{plan.dt, plan.n_steps, plan.observe_every};
  evolveRealTime(psi0, potential, nl, opt, [&](long, const Wavefunction& psi) {
    carpet.append(psi.time, density(psi));
  });
  return carpet;
}

TrackOptions trackOptions(const ExperimentConfig& cfg) {
  TrackOptions opts;
  opts.detect.search_window_fraction = cfg.tracking.search_window_fraction;
  opts.detect.min_contrast = cfg.tracking.min_contrast;
  opts.collision_guard = cfg.tracking.collision_guard_um;
  return opts;
}

void writeManifest(const fs::path& dir, const std::string& pipeline,
                   const InternalSetup& s, const StageTimer& timer,
                   const std::vector<std::string>& artifacts, const json& extra) {
  json j;
  j["pipeline"] = pipeline;
  j["version"] = kVersion;
  j["config_echo"] = "config_echo.json";
  j["unit_system"] = {{"length_unit_m", s.units.lengthUnitM()},
                      {"time_unit_s", s.units.timeUnitS()},
                      {"energy_unit_J", s.units.energyUnitJ()},
                      {"mass_kg", s.units.massKg()}};
  j["timings_ms"] = timer.timings();
  j["artifacts"] = artifacts;
  j["results"] = extra;
  std::ofstream out(dir / "manifest.json");
  out << j.dump(2) << "\n";
}

void writeFailureMarker(const fs::path& dir, const std::string& pipeline,
                        const std::string& what) {
  if (dir.empty()) return;
  fs::create_directories(dir);
  json j;
  j["pipeline"] = pipeline;
  j["failed"] = true;
  j["error"] = what;
  std::ofstream out(dir / "failure_marker.json");
  out << j.dump(2) << "\n";
}

struct PreparedGround {
  std::shared_ptr<const Grid1D> grid;
  std::vector<double> potential;  // static final-trap potential
  std::unique_ptr<Nonlinearity> nl;
  GroundStateResult ground;
};

PreparedGround prepareHarmonicGround(const ExperimentConfig& cfg, const InternalSetup& s) {
  PreparedGround p;
  p.grid = makeGrid(cfg, s);
  p.potential = harmonicPotential(*p.grid, s.omega_z);
  p.nl = makeNonlinearity(s.spec);
  GroundStateOptions opts;
  opts.tol = 1e-9;
  p.ground = groundStateImaginaryTime(p.grid, staticPotential(p.potential), *p.nl, opts,
                                      tfGuess(p.grid, p.potential, s.spec.g1));
  return p;
}

struct PairRunOutcome {
  FrequencyFit fit;
  AmplitudeMeasure amplitude;
  int usable_frames = 0;
};

PairRunOutcome runPairOnce(const ExperimentConfig& cfg, const InternalSetup& s,
                           const PreparedGround& prep, double z0) {
  const double mu = prep.ground.chemical_potential;
  Wavefunction psi = imprintSolitonPair(prep.ground.psi, z0, 0.0, mu);
  auto potential = staticPotential(prep.potential);
  const EvolutionPlan plan = planEvolution(cfg, s, cfg.sweep.evolve_ms,
                                           cfg.sweep.snapshot_ms, psi, potential,
                                           *prep.nl);
  const DensityCarpet carpet = evolveToCarpet(psi, potential, *prep.nl, plan);
  const TrackResult track = trackPair(carpet, trackOptions(cfg));
  PairRunOutcome out;
  out.fit = fitFrequency(track);
  out.amplitude = measureAmplitude(track);
  out.usable_frames = track.usableCount();
  return out;
}

SweepRow matchAmplitude(const ExperimentConfig& cfg, const InternalSetup& s,
                        const PreparedGround& prep, double target) {
  const bool use_rms = cfg.sweep.amplitude_definition == "rms";
  const double mu = prep.ground.chemical_potential;
  const double r = tfRadius(mu, s.omega_z);
  const double xi = healingLength(mu);
  const double z_lo = std::max(2.0 * xi, 0.05 * r);
  const double z_hi = 0.92 * r;
  auto clampZ = [&](double z) { return std::clamp(z, z_lo, z_hi); };

  SweepRow row;
  row.requested_amplitude_um = s.units.lengthToUm(target);

  // released at rest, z0 is close to the turning point already; the secant
  // absorbs radiation losses and waveform bias
  double z0 = clampZ(use_rms ? target * std::numbers::sqrt2 : target);
  double z_prev = 0.0, m_prev = 0.0;
  PairRunOutcome outcome;
  double measured = 0.0;
  for (int attempt = 0; attempt <= cfg.sweep.max_refinements; ++attempt) {
    outcome = runPairOnce(cfg, s, prep, z0);
    measured = use_rms ? outcome.amplitude.rms : outcome.amplitude.peak;
    ++row.runs;
    if (!(measured > 0) || !outcome.fit.oscillation_found) break;
    if (std::abs(measured - target) <= cfg.sweep.match_tolerance * target) {
      row.matched = true;
      break;
    }
    double z_next;
    if (attempt == 0 || measured == m_prev) {
      z_next = z0 * target / measured;  // proportional first correction
    } else {
      z_next = z0 - (measured - target) * (z0 - z_prev) / (measured - m_prev);
    }
    z_prev = z0;
    m_prev = measured;
    z0 = clampZ(z_next);
    if (z0 == z_prev) break;
  }

  row.measured_amplitude_um = s.units.lengthToUm(measured);
  row.z0_um = s.units.lengthToUm(z0);
  row.nu_s_hz = s.units.frequencyToHz(outcome.fit.soliton_frequency);
  row.ratio = row.nu_s_hz / (cfg.trap.nu_z_hz * kInvSqrt2);
  row.sigma_hz = 0.5 * s.units.frequencyToHz(outcome.fit.frequency_sigma);
  return row;
}

std::vector<SweepRow> sweepRows(const ExperimentConfig& cfg, const InternalSetup& s,
                                const PreparedGround& prep,
                                std::span<const double> amplitudes) {
  std::vector<std::future<SweepRow>> futures;
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<SweepRow> rows(amplitudes.size());
  std::size_t next = 0;
  while (next < amplitudes.size()) {
    const std::size_t batch = std::min<std::size_t>(workers, amplitudes.size() - next);
    futures.clear();
    for (std::size_t i = 0; i < batch; ++i) {
      const double a = amplitudes[next + i];
      futures.push_back(std::async(std::launch::async, [&cfg, &s, &prep, a] {
        return matchAmplitude(cfg, s, prep, a);
      }));
    }
    for (std::size_t i = 0; i < batch; ++i) rows[next + i] = futures[i].get();
    next += batch;
  }
  return rows;
}

std::vector<double> sweepAmplitudesOrThrow(const ExperimentConfig& cfg,
                                           const std::vector<double>& primary,
                                           const char* context) {
  if (!primary.empty()) return primary;
  if (!cfg.sweep.amplitudes_um.empty()) return cfg.sweep.amplitudes_um;
  throw ValidationError(std::string(context) + ": no amplitudes configured");
}

}  // namespace

GroundStateArtifacts runGroundState(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const InternalSetup s = makeSetup(cfg);
  StageTimer timer;
  timer.start("ground_state");

  // lattice from the trap block, if present (double-well preparation)
  double min_half_extent = 0.0;
  if (cfg.trap.lattice) min_half_extent = cfg.trap.lattice->spacing_um;
  auto grid = makeGrid(cfg, s, min_half_extent);
  std::vector<double> v = harmonicPotential(*grid, s.omega_z);
  if (cfg.trap.lattice) {
    const auto lat = latticePotential(*grid, s.units.energyFromHHz(cfg.trap.lattice->depth_h_hz),
                                      cfg.trap.lattice->spacing_um, cfg.trap.lattice->offset_um);
    for (int i = 0; i < grid->size(); ++i) v[i] += lat[i];
  }
  auto nl = makeNonlinearity(s.spec);
  GroundStateOptions opts;
  opts.tol = 1e-9;
  const auto gs = groundStateImaginaryTime(grid, staticPotential(v), *nl, opts,
                                           tfGuess(grid, v, s.spec.g1));
  timer.stop();

  GroundStateArtifacts art;
  art.mu_internal = gs.chemical_potential;
  art.mu_h_hz = gs.chemical_potential / (2.0 * std::numbers::pi * s.units.timeUnitS());
  art.tf_radius_um = s.units.lengthToUm(tfRadius(gs.chemical_potential, s.omega_z));
  art.healing_length_um = s.units.lengthToUm(healingLength(gs.chemical_potential));
  art.steps = gs.steps;

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    writeConfigEcho(cfg, out_dir);
    std::vector<std::vector<double>> rows;
    const auto dens = density(gs.psi);
    for (int i = 0; i < grid->size(); ++i) {
      rows.push_back({grid->z()[i], cfg.trap.atom_number * dens[i], v[i]});
    }
    writeCsv(out_dir / "ground_state.csv",
             "z[um],atom density[1/um],potential[internal]", rows);
    writeManifest(out_dir, "ground-state", s, timer, {"ground_state.csv"},
                  {{"mu_internal", art.mu_internal},
                   {"mu_h_hz", art.mu_h_hz},
                   {"tf_radius_um", art.tf_radius_um},
                   {"healing_length_um", art.healing_length_um},
                   {"imaginary_time_steps", art.steps},
                   {"residual", gs.residual}});
  }
  return art;
}

SingleFrequencyResult runSingleSolitonFrequency(const ExperimentConfig& cfg,
                                                const fs::path& out_dir) {
  const InternalSetup s = makeSetup(cfg);
  StageTimer timer;
  try {
    timer.start("ground_state");
    PreparedGround prep = prepareHarmonicGround(cfg, s);
    timer.stop();

    const double mu = prep.ground.chemical_potential;
    const double r = tfRadius(mu, s.omega_z);
    const double z_off = cfg.sweep.single_offset_fraction * r;
    Wavefunction psi = imprintSoliton(prep.ground.psi, z_off, 0.0, mu);

    // at least 5.5 periods of the expected nu_z/sqrt(2) oscillation
    const double period_ms = 1000.0 * std::numbers::sqrt2 / cfg.trap.nu_z_hz;
    const double duration_ms = std::max(cfg.sweep.evolve_ms, 5.5 * period_ms);
    const double snapshot_ms = std::max(cfg.sweep.snapshot_ms, duration_ms / 600.0);

    timer.start("evolution");
    auto potential = staticPotential(prep.potential);
    const EvolutionPlan plan =
        planEvolution(cfg, s, duration_ms, snapshot_ms, psi, potential, *prep.nl);
    const DensityCarpet carpet = evolveToCarpet(psi, potential, *prep.nl, plan);
    timer.stop();

    timer.start("tracking");
    DetectOptions detect = trackOptions(cfg).detect;
    const SingleTrack track = trackSingle(carpet, detect);
    if (static_cast<int>(track.t.size()) < 10) {
      throw NumericalError("single-freq: fewer than 10 tracked frames");
    }
    const SinusoidFit fit = fitSinusoid(track.t, track.z);
    timer.stop();
    if (!fit.oscillation_found) {
      throw NumericalError("single-freq: no oscillation found in the dip track");
    }

    SingleFrequencyResult res;
    res.fit = fit;
    res.nu_1s_hz = s.units.frequencyToHz(fit.frequency);
    res.mu_internal = mu;
    res.nu_z_hz = cfg.trap.nu_z_hz;
    res.ratio = res.nu_1s_hz / (cfg.trap.nu_z_hz * kInvSqrt2);
    res.amplitude_um = s.units.lengthToUm(fit.amplitude);
    res.sigma_hz = s.units.frequencyToHz(fit.frequency_sigma);

    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      writeConfigEcho(cfg, out_dir);
      writeCsv(out_dir / "single_freq.csv",
               "nu_1s[Hz],nu_z_over_sqrt2[Hz],ratio,mu[internal],amplitude[um],sigma[Hz]",
               {{res.nu_1s_hz, cfg.trap.nu_z_hz * kInvSqrt2, res.ratio, res.mu_internal,
                 res.amplitude_um, res.sigma_hz}});
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < track.t.size(); ++i) {
        rows.push_back({s.units.timeToMs(track.t[i]), track.z[i]});
      }
      writeCsv(out_dir / "single_track.csv", "t[ms],z_dip[um]", rows);
      writeManifest(out_dir, "single-freq", s, timer,
                    {"single_freq.csv", "single_track.csv"},
                    {{"nu_1s_hz", res.nu_1s_hz},
                     {"ratio", res.ratio},
                     {"mu_internal", res.mu_internal}});
    }
    return res;
  } catch (const NumericalError& e) {
    writeFailureMarker(out_dir, "single-freq", e.what());
    throw;
  }
}

SweepResult runSweep(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const InternalSetup s = makeSetup(cfg);
  StageTimer timer;
  try {
    const auto amplitudes = sweepAmplitudesOrThrow(cfg, cfg.sweep.amplitudes_um, "sweep");

    timer.start("ground_state");
    PreparedGround prep = prepareHarmonicGround(cfg, s);
    timer.stop();

    timer.start("sweep_runs");
    SweepResult result;
    result.rows = sweepRows(cfg, s, prep, amplitudes);
    timer.stop();

    timer.start("single_reference");
    result.single = runSingleSolitonFrequency(cfg);
    timer.stop();

    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      writeConfigEcho(cfg, out_dir);
      std::vector<std::vector<double>> rows;
      rows.push_back({0.0, result.single.amplitude_um, result.single.amplitude_um,
                      result.single.nu_1s_hz, result.single.ratio, result.single.sigma_hz,
                      1.0, 1.0});
      for (const auto& r : result.rows) {
        rows.push_back({r.requested_amplitude_um, r.measured_amplitude_um, r.z0_um,
                        r.nu_s_hz, r.ratio, r.sigma_hz, r.matched ? 1.0 : 0.0,
                        static_cast<double>(r.runs)});
      }
      writeCsv(out_dir / "sweep.csv",
               "requested amplitude[um] (0: single reference),measured amplitude[um],"
               "z0[um],nu_s[Hz],nu_s/(nu_z/sqrt2),sigma[Hz],matched,runs",
               rows);
      json extra;
      extra["single_nu_1s_hz"] = result.single.nu_1s_hz;
      extra["single_ratio"] = result.single.ratio;
      writeManifest(out_dir, "sweep", s, timer, {"sweep.csv"}, extra);
    }
    return result;
  } catch (const NumericalError& e) {
    writeFailureMarker(out_dir, "sweep", e.what());
    throw;
  }
}

MergeSummary runMerge(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const InternalSetup s = makeSetup(cfg);
  StageTimer timer;
  try {
    const double omega_z0 =
        cfg.trap.ramp ? s.units.omegaFromHz(cfg.trap.ramp->nu_z_initial_hz) : s.omega_z;
    const double omega_perp0 = cfg.trap.ramp
                                   ? s.units.omegaFromHz(cfg.trap.ramp->nu_perp_initial_hz)
                                   : s.omega_perp;

    auto grid = makeGrid(cfg, s, 1.5 * cfg.merge.lattice_spacing_um);

    // preparation: double well = initial trap + lattice barrier at the center
    timer.start("ground_state");
    const double depth = s.units.energyFromHHz(cfg.merge.barrier_depth_h_hz);
    std::vector<double> v_prep = harmonicPotential(*grid, omega_z0);
    const auto lat = latticePotential(*grid, depth, cfg.merge.lattice_spacing_um, 0.0);
    for (int i = 0; i < grid->size(); ++i) v_prep[i] += lat[i];

    const NonlinearSpec spec0 =
        cfg.model == NonlinearSpec::Kind::Gpe1d
            ? NonlinearSpec::gpe1d(omega_perp0, s.a_s, cfg.trap.atom_number)
            : NonlinearSpec::npse(omega_perp0, s.a_s, cfg.trap.atom_number);
    auto nl_prep = makeNonlinearity(spec0);
    GroundStateOptions gs_opts;
    gs_opts.tol = 1e-9;
    const auto gs = groundStateImaginaryTime(grid, staticPotential(v_prep), *nl_prep,
                                             gs_opts, tfGuess(grid, v_prep, spec0.g1));
    timer.stop();

    // double-well minima from the prepared potential
    double well_sep = 0.0;
    {
      const auto z = grid->z();
      double best = 0.0, best_v = std::numeric_limits<double>::infinity();
      for (int i = 1; i + 1 < grid->size(); ++i) {
        if (z[i] <= 0) continue;
        if (v_prep[i] < v_prep[i - 1] && v_prep[i] <= v_prep[i + 1] && v_prep[i] < best_v) {
          best_v = v_prep[i];
          const double denom = v_prep[i - 1] - 2.0 * v_prep[i] + v_prep[i + 1];
          best = z[i] + (denom > 0 ? 0.5 * (v_prep[i - 1] - v_prep[i + 1]) / denom * grid->dz()
                                   : 0.0);
        }
      }
      well_sep = 2.0 * best;
    }

    // lattice off at t = 0, then the frequency ramp
    RampSchedule ramp;
    ramp.omega_z_initial = omega_z0;
    ramp.omega_perp_initial = omega_perp0;
    ramp.omega_z_final = s.omega_z;
    ramp.omega_perp_final = s.omega_perp;
    ramp.t0 = s.units.timeFromMs(cfg.merge.hold_ms);
    ramp.duration = cfg.trap.ramp ? s.units.timeFromMs(cfg.trap.ramp->duration_ms) : 0.0;

    auto potential = rampedHarmonicPotential(*grid, ramp);
    auto nl = makeNonlinearity(s.spec, [ramp](double t) { return ramp.omegaPerp(t); });

    timer.start("evolution");
    Wavefunction psi0 = gs.psi;
    const EvolutionPlan plan = planEvolution(cfg, s, cfg.merge.evolve_ms,
                                             cfg.merge.snapshot_ms, psi0, potential, *nl);
    const DensityCarpet carpet = evolveToCarpet(psi0, potential, *nl, plan);
    timer.stop();

    timer.start("resolution");
    const DensityCarpet blurred =
        applyResolution(carpet, cfg.resolution.sigma_z_um,
                        s.units.timeFromMs(cfg.resolution.sigma_t_ms));
    timer.stop();

    // flush the heavy artifacts before the fit so a tracking failure still
    // leaves the carpets next to the failure marker
    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      writeConfigEcho(cfg, out_dir);
      timer.start("io");
      writeCarpetCsv(out_dir / "carpet_raw.csv", carpet, s.units, cfg.trap.atom_number);
      writeCarpetCsv(out_dir / "carpet_blurred.csv", blurred, s.units,
                     cfg.trap.atom_number);
      timer.stop();
    }

    timer.start("tracking");
    const TrackResult track = trackPair(carpet, trackOptions(cfg));
    const FrequencyFit fit = fitFrequency(track);
    const AmplitudeMeasure amp = measureAmplitude(track);
    timer.stop();

    // detection-count statistics over the late two thirds of the run
    std::map<int, int> count_histogram;
    double center_sum = 0.0;
    int center_n = 0;
    const std::size_t late_start = track.frames.size() / 3;
    for (std::size_t i = late_start; i < track.frames.size(); ++i) {
      const auto& f = track.frames[i];
      count_histogram[static_cast<int>(f.positions.size())]++;
      if (f.usable) {
        center_sum += 0.5 * (f.z_left + f.z_right);
        ++center_n;
      }
    }
    int modal_count = 0, modal_hits = 0;
    for (const auto& [count, hits] : count_histogram) {
      if (hits > modal_hits) {
        modal_hits = hits;
        modal_count = count;
      }
    }

    MergeSummary summary;
    summary.nu_s_hz = s.units.frequencyToHz(fit.soliton_frequency);
    summary.ratio = summary.nu_s_hz / (cfg.trap.nu_z_hz * kInvSqrt2);
    summary.sigma_hz = 0.5 * s.units.frequencyToHz(fit.frequency_sigma);
    summary.measured_amplitude_um = s.units.lengthToUm(amp.peak);
    summary.modal_soliton_count = modal_count;
    summary.mean_pair_center_um =
        center_n > 0 ? std::abs(center_sum / center_n) : std::numeric_limits<double>::quiet_NaN();
    summary.well_separation_um = s.units.lengthToUm(well_sep);
    summary.usable_frames = track.usableCount();
    summary.oscillation_found = fit.oscillation_found;

    if (!out_dir.empty()) {
      timer.start("io");
      std::vector<std::vector<double>> rows;
      for (const auto& f : track.frames) {
        rows.push_back({s.units.timeToMs(f.t), static_cast<double>(f.positions.size()),
                        f.usable ? 1.0 : 0.0, f.usable ? f.z_left : 0.0,
                        f.usable ? f.z_right : 0.0, f.usable ? f.distance : 0.0,
                        f.weight});
      }
      writeCsv(out_dir / "track.csv",
               "t[ms],detections,usable,z_left[um],z_right[um],distance[um],weight", rows);
      writeCsv(out_dir / "fit_summary.csv",
               "nu_d[Hz],nu_s[Hz],nu_s/(nu_z/sqrt2),amplitude[um],sigma[Hz],usable frames",
               {{2.0 * summary.nu_s_hz, summary.nu_s_hz, summary.ratio,
                 summary.measured_amplitude_um, summary.sigma_hz,
                 static_cast<double>(summary.usable_frames)}});
      timer.stop();
      json extra;
      extra["nu_s_hz"] = summary.nu_s_hz;
      extra["ratio"] = summary.ratio;
      extra["modal_soliton_count"] = summary.modal_soliton_count;
      extra["mean_pair_center_um"] = summary.mean_pair_center_um;
      extra["well_separation_um"] = summary.well_separation_um;
      extra["ground_state_mu_internal"] = gs.chemical_potential;
      writeManifest(out_dir, "merge", s, timer,
                    {"carpet_raw.csv", "carpet_blurred.csv", "track.csv",
                     "fit_summary.csv"},
                    extra);
    }
    return summary;
  } catch (const NumericalError& e) {
    writeFailureMarker(out_dir, "merge", e.what());
    throw;
  }
}

namespace {

// Model-side amplitude matching: peak amplitude is z0 itself for a release
// from rest; the rms definition needs a small secant loop.
std::vector<FrequencyPoint> modelCurve(const ParticleParams& params,
                                       std::span<const double> amplitudes,
                                       bool use_rms) {
  if (!use_rms) {
    std::vector<double> a(amplitudes.begin(), amplitudes.end());
    return frequencyVsAmplitude(params, a);
  }
  const double period = 2.0 * std::numbers::pi / params.omega_1s;
  std::vector<FrequencyPoint> out;
  for (double target : amplitudes) {
    double z0 = target * std::numbers::sqrt2;
    double z_prev = 0.0, m_prev = 0.0;
    FrequencyPoint point{target, 0.0};
    for (int it = 0; it < 12; ++it) {
      TrajectoryOptions opt;
      opt.t_max = 8.0 * period;
      opt.dt_output = period / 1024.0;
      const Trajectory traj = integrateTrajectory(z0, params, opt);
      double mean = 0.0;
      for (double z : traj.z) mean += z;
      mean /= traj.z.size();
      double ss = 0.0;
      for (double z : traj.z) ss += (z - mean) * (z - mean);
      const double rms = std::sqrt(ss / traj.z.size());
      point.frequency = oscillationFrequency(traj, params);
      if (std::abs(rms - target) < 1e-3 * target) break;
      double z_next = (it == 0 || rms == m_prev)
                          ? z0 * target / rms
                          : z0 - (rms - target) * (z0 - z_prev) / (rms - m_prev);
      z_prev = z0;
      m_prev = rms;
      z0 = std::max(z_next, 1e-3 * target);
    }
    out.push_back(point);
  }
  return out;
}

}  // namespace

Fig2cResult runFig2c(const ExperimentConfig& cfg, const fs::path& out_dir) {
  if (cfg.model != NonlinearSpec::Kind::Npse) {
    throw ValidationError("fig2c: the curve set is defined for model \"npse\"");
  }
  const InternalSetup s = makeSetup(cfg);
  StageTimer timer;
  try {
    const auto amplitudes =
        sweepAmplitudesOrThrow(cfg, cfg.fig2c.amplitudes_um, "fig2c");

    timer.start("single_reference");
    Fig2cResult result;
    result.single = runSingleSolitonFrequency(cfg);
    timer.stop();

    timer.start("ground_state");
    PreparedGround prep = prepareHarmonicGround(cfg, s);
    timer.stop();

    timer.start("sweep_runs");
    result.sweep_rows = sweepRows(cfg, s, prep, amplitudes);
    timer.stop();

    timer.start("particle_model");
    ParticleParams params;
    params.omega_1s = 2.0 * std::numbers::pi * s.units.frequencyFromHz(result.single.nu_1s_hz);
    params.mu = result.single.mu_internal;
    params.mode = ParticleParams::Mode::Pair;
    const bool use_rms = cfg.sweep.amplitude_definition == "rms";
    const auto model = modelCurve(params, amplitudes, use_rms);
    timer.stop();

    const double nu_tf1d = cfg.trap.nu_z_hz * kInvSqrt2;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
      Fig2cRow row;
      row.amplitude_um = amplitudes[i];
      row.nu_tf1d_hz = nu_tf1d;
      row.nu_single_hz = result.single.nu_1s_hz;
      row.nu_pair_hz = result.sweep_rows[i].nu_s_hz;
      row.nu_model_hz = s.units.frequencyToHz(model[i].frequency);
      result.rows.push_back(row);
    }

    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      writeConfigEcho(cfg, out_dir);
      std::vector<std::vector<double>> rows;
      for (const auto& r : result.rows) {
        rows.push_back({r.amplitude_um, r.nu_tf1d_hz, r.nu_single_hz, r.nu_pair_hz,
                        r.nu_model_hz});
      }
      writeCsv(out_dir / "fig2c.csv",
               "amplitude[um],nu_tf1d[Hz],nu_single_npse[Hz],nu_pair_npse[Hz],"
               "nu_particle_model[Hz]",
               rows);
      json extra;
      extra["nu_1s_hz"] = result.single.nu_1s_hz;
      extra["mu_internal"] = result.single.mu_internal;
      writeManifest(out_dir, "fig2c", s, timer, {"fig2c.csv"}, extra);
    }
    return result;
  } catch (const NumericalError& e) {
    writeFailureMarker(out_dir, "fig2c", e.what());
    throw;
  }
}

double runCriticalDistance(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const double dc_m = criticalDistanceM(cfg.trap.atom_number, cfg.trap.scattering_length_m,
                                        cfg.trap.nu_z_hz, cfg.trap.mass_kg);
  const double dc_um = dc_m * 1e6;
  if (!out_dir.empty()) {
    const InternalSetup s = makeSetup(cfg);
    StageTimer timer;
    fs::create_directories(out_dir);
    writeConfigEcho(cfg, out_dir);
    writeCsv(out_dir / "critical_distance.csv",
             "D_c[um],atom_number,scattering_length[nm],nu_z[Hz],mass[kg]",
             {{dc_um, cfg.trap.atom_number, cfg.trap.scattering_length_m * 1e9,
               cfg.trap.nu_z_hz, cfg.trap.mass_kg}});
    writeManifest(out_dir, "critical-distance", s, timer, {"critical_distance.csv"},
                  {{"critical_distance_um", dc_um}});
  }
  return dc_um;
}

}  // namespace gpelab
