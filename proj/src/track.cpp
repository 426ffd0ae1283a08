#include "gpelab/track.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpelab/errors.hpp"

namespace gpelab {

int TrackResult::usableCount() const {
  int c = 0;
  for (const auto& f : frames) c += f.usable ? 1 : 0;
  return c;
}

std::vector<double> TrackResult::times() const {
  std::vector<double> v;
  for (const auto& f : frames) {
    if (f.usable) v.push_back(f.t);
  }
  return v;
}

std::vector<double> TrackResult::distances() const {
  std::vector<double> v;
  for (const auto& f : frames) {
    if (f.usable) v.push_back(f.distance);
  }
  return v;
}

std::vector<double> TrackResult::weights() const {
  std::vector<double> v;
  for (const auto& f : frames) {
    if (f.usable) v.push_back(f.weight);
  }
  return v;
}

TrackResult trackPair(const DensityCarpet& carpet, const TrackOptions& opts) {
  carpet.validate();
  if (carpet.frameCount() < 10) {
    throw ValidationError("trackPair: need at least 10 frames, got " +
                          std::to_string(carpet.frameCount()));
  }
  TrackResult result;
  result.frames.reserve(carpet.frameCount());
  for (int i = 0; i < carpet.frameCount(); ++i) {
    auto detections = detectSolitons(carpet.frame(i), *carpet.grid, opts.detect);
    TrackedFrame tf;
    tf.t = carpet.times[i];
    for (const auto& d : detections) tf.positions.push_back(d.position);
    tf.usable = detections.size() >= 2;
    if (tf.usable) {
      // dominant central pair: drop low-contrast ripples relative to the
      // strongest dip, then take the two minima nearest the trap center
      auto ranked = detections;
      double c_max = 0.0;
      for (const auto& d : ranked) c_max = std::max(c_max, d.contrast);
      std::erase_if(ranked, [c_max](const auto& d) { return d.contrast < 0.4 * c_max; });
      if (ranked.size() < 2) {
        tf.usable = false;
        result.frames.push_back(std::move(tf));
        continue;
      }
      std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (std::abs(a.position) != std::abs(b.position)) {
          return std::abs(a.position) < std::abs(b.position);
        }
        return a.position < b.position;
      });
      tf.z_left = std::min(ranked[0].position, ranked[1].position);
      tf.z_right = std::max(ranked[0].position, ranked[1].position);
      tf.distance = tf.z_right - tf.z_left;
      tf.weight = (opts.collision_guard > 0 && tf.distance < opts.collision_guard)
                      ? 0.25
                      : 1.0;
    }
    result.frames.push_back(std::move(tf));
  }
  return result;
}

SingleTrack trackSingle(const DensityCarpet& carpet, const DetectOptions& opts) {
  carpet.validate();
  SingleTrack track;
  for (int i = 0; i < carpet.frameCount(); ++i) {
    auto detections = detectSolitons(carpet.frame(i), *carpet.grid, opts);
    if (detections.empty()) continue;
    const auto best = std::max_element(
        detections.begin(), detections.end(),
        [](const auto& a, const auto& b) { return a.contrast < b.contrast; });
    track.t.push_back(carpet.times[i]);
    track.z.push_back(best->position);
  }
  return track;
}

AmplitudeMeasure measureAmplitude(const TrackResult& track) {
  const auto d = track.distances();
  AmplitudeMeasure out;
  if (d.size() < 3) return out;

  // rms of the oscillating part of d/2
  double mean = 0.0;
  for (double v : d) mean += v;
  mean /= static_cast<double>(d.size());
  double ss = 0.0;
  for (double v : d) ss += (v - mean) * (v - mean);
  out.rms = 0.5 * std::sqrt(ss / static_cast<double>(d.size()));

  // per-cycle maxima of d with parabolic refinement
  std::vector<double> maxima;
  for (std::size_t i = 1; i + 1 < d.size(); ++i) {
    if (d[i] >= d[i - 1] && d[i] > d[i + 1]) {
      double peak = d[i];
      const double denom = d[i - 1] - 2.0 * d[i] + d[i + 1];
      if (denom < 0) {
        const double shift = 0.5 * (d[i - 1] - d[i + 1]) / denom;
        if (std::abs(shift) <= 1.0) {
          peak = d[i] - 0.25 * (d[i - 1] - d[i + 1]) * shift;
        }
      }
      maxima.push_back(peak);
    }
  }
  if (maxima.empty()) {
    out.peak = 0.5 * *std::max_element(d.begin(), d.end());
  } else {
    std::sort(maxima.begin(), maxima.end());
    out.peak = 0.5 * maxima[maxima.size() / 2];
  }
  return out;
}

}  // namespace gpelab
