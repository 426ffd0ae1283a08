#pragma once

#include <filesystem>
#include <vector>

#include "gpelab/config.hpp"
#include "gpelab/sinusoid_fit.hpp"

namespace gpelab {

// Every runner writes CSV artifacts, a config echo and a manifest into
// out_dir when it is non-empty; results are also returned for callers.

struct GroundStateArtifacts {
  double mu_internal = 0.0;
  double mu_h_hz = 0.0;          // mu / h, for comparison with trap depths
  double tf_radius_um = 0.0;     // from the measured mu
  double healing_length_um = 0.0;
  long steps = 0;
};

GroundStateArtifacts runGroundState(const ExperimentConfig& cfg,
                                    const std::filesystem::path& out_dir = {});

struct SingleFrequencyResult {
  double nu_1s_hz = 0.0;
  double mu_internal = 0.0;
  double ratio = 0.0;            // nu_1s / (nu_z / sqrt 2)
  double nu_z_hz = 0.0;
  double amplitude_um = 0.0;     // fitted dip oscillation amplitude
  double sigma_hz = 0.0;
  SinusoidFit fit;
};

SingleFrequencyResult runSingleSolitonFrequency(const ExperimentConfig& cfg,
                                                const std::filesystem::path& out_dir = {});

struct SweepRow {
  double requested_amplitude_um = 0.0;
  double measured_amplitude_um = 0.0;
  double z0_um = 0.0;            // imprint offset that realized the amplitude
  double nu_s_hz = 0.0;          // fitted distance frequency / 2
  double ratio = 0.0;            // nu_s / (nu_z / sqrt 2)
  double sigma_hz = 0.0;
  bool matched = false;          // amplitude matched within tolerance
  int runs = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SingleFrequencyResult single;
};

SweepResult runSweep(const ExperimentConfig& cfg,
                     const std::filesystem::path& out_dir = {});

struct MergeSummary {
  double nu_s_hz = 0.0;
  double ratio = 0.0;
  double sigma_hz = 0.0;
  double measured_amplitude_um = 0.0;
  int modal_soliton_count = 0;     // most frequent detection count, late frames
  double mean_pair_center_um = 0.0;
  double well_separation_um = 0.0;  // minima distance of the prepared double well
  int usable_frames = 0;
  bool oscillation_found = false;
};

MergeSummary runMerge(const ExperimentConfig& cfg,
                      const std::filesystem::path& out_dir = {});

struct Fig2cRow {
  double amplitude_um = 0.0;
  double nu_tf1d_hz = 0.0;    // nu_z / sqrt 2
  double nu_single_hz = 0.0;  // NPSE single soliton
  double nu_pair_hz = 0.0;    // NPSE two-soliton sweep
  double nu_model_hz = 0.0;   // effective particle model
};

struct Fig2cResult {
  std::vector<Fig2cRow> rows;
  SingleFrequencyResult single;
  std::vector<SweepRow> sweep_rows;
};

Fig2cResult runFig2c(const ExperimentConfig& cfg,
                     const std::filesystem::path& out_dir = {});

// D_c in micrometres, from the SI trap parameters.
double runCriticalDistance(const ExperimentConfig& cfg,
                           const std::filesystem::path& out_dir = {});

}  // namespace gpelab
