#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpelab/nonlinearity.hpp"
#include "gpelab/trap_config.hpp"

namespace gpelab {

struct GridSpec {
  bool automatic = true;
  int n_points = 0;
  double box_length_um = 0.0;
};

struct TimeSpec {
  double dt_ms = 0.0;    // 0: derived from the guard
  double safety = 0.05;  // dt * max(|V|+|G|) <= safety
};

struct MergeSpec {
  double barrier_depth_h_hz = 1000.0;
  double lattice_spacing_um = 5.7;
  double hold_ms = 0.0;      // time in the initial trap before the ramp
  double evolve_ms = 120.0;
  double snapshot_ms = 0.5;
};

struct SweepSpec {
  std::vector<double> amplitudes_um;
  double evolve_ms = 120.0;
  double snapshot_ms = 0.5;
  double match_tolerance = 0.02;
  int max_refinements = 5;
  double single_offset_fraction = 0.1;   // single-soliton imprint, in R_TF
  std::string amplitude_definition = "peak";  // "peak" or "rms"
};

struct Fig2cSpec {
  std::vector<double> amplitudes_um;
};

struct TrackingSpec {
  double search_window_fraction = 0.7;
  double min_contrast = 0.2;
  double collision_guard_um = 1.0;
};

struct ResolutionSpec {
  double sigma_z_um = 1.0;
  double sigma_t_ms = 0.0;
};

struct OutputSpec {
  std::string directory = "out";
};

struct ExperimentConfig {
  TrapConfig trap;
  NonlinearSpec::Kind model = NonlinearSpec::Kind::Npse;
  GridSpec grid;
  TimeSpec time;
  MergeSpec merge;
  SweepSpec sweep;
  Fig2cSpec fig2c;
  TrackingSpec tracking;
  ResolutionSpec resolution;
  OutputSpec output;

  nlohmann::json toJson() const;  // fully resolved, reload-stable
};

// Strict parse: unknown keys anywhere are errors, cross-field constraints are
// checked at load.
ExperimentConfig configFromJson(const nlohmann::json& j);
ExperimentConfig loadConfig(const std::filesystem::path& path);

// "a.b.c=value" with a JSON-parsed value (falls back to a string).
void applyOverride(nlohmann::json& j, const std::string& assignment);

void writeConfigEcho(const ExperimentConfig& cfg, const std::filesystem::path& dir);

}  // namespace gpelab
