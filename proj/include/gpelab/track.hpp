#pragma once

#include <vector>

#include "gpelab/carpet.hpp"
#include "gpelab/detect.hpp"

namespace gpelab {

struct TrackedFrame {
  double t = 0.0;
  std::vector<double> positions;  // all gated detections, ascending
  bool usable = false;            // at least two detections
  double z_left = 0.0;            // dominant pair (usable frames only)
  double z_right = 0.0;
  double distance = 0.0;          // z_right - z_left >= 0 by construction
  double weight = 1.0;
};

struct TrackResult {
  std::vector<TrackedFrame> frames;

  int usableCount() const;
  std::vector<double> times() const;      // usable frames only
  std::vector<double> distances() const;
  std::vector<double> weights() const;
};

struct TrackOptions {
  DetectOptions detect;
  // frames with distance below this get down-weighted in the fit; the pair may
  // blur into one dip there
  double collision_guard = 1.0;
};

// Per frame, picks the two highest-contrast minima as the dominant central
// pair. Positions are sorted, so the distance observable never depends on
// whether the solitons cross or reflect. Frames with fewer than two gated
// detections are flagged and excluded from fitting.
TrackResult trackPair(const DensityCarpet& carpet, const TrackOptions& opts = {});

// Highest-contrast single dip per frame, for the one-soliton pipelines.
struct SingleTrack {
  std::vector<double> t;
  std::vector<double> z;
};
SingleTrack trackSingle(const DensityCarpet& carpet, const DetectOptions& opts = {});

// Amplitude of the dominant-pair motion: half the per-cycle maxima of d(t)
// (median over cycles, parabolic refinement) and the rms of d/2 - mean(d/2).
struct AmplitudeMeasure {
  double peak = 0.0;
  double rms = 0.0;
};
AmplitudeMeasure measureAmplitude(const TrackResult& track);

}  // namespace gpelab
