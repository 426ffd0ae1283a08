#pragma once

#include <span>

#include "gpelab/track.hpp"

namespace gpelab {

// y(t) ~ offset + amplitude cos(2 pi f t + phase), weighted least squares.
// The frequency comes from an oversampled spectral scan and is refined by
// minimizing the profiled residual (linear parameters solved exactly at each
// trial frequency). Uncertainties from the linearized covariance at the
// optimum.
struct SinusoidFit {
  double frequency = 0.0;   // cycles per unit of t
  double amplitude = 0.0;
  double offset = 0.0;
  double phase = 0.0;
  double residual_rms = 0.0;
  double frequency_sigma = 0.0;
  bool oscillation_found = false;
  bool refined = false;     // false: spectral estimate only
};

SinusoidFit fitSinusoid(std::span<const double> t, std::span<const double> y,
                        std::span<const double> weights = {});

// Distance-series frequency of the dominant pair. The distance oscillates at
// twice the single-soliton frequency, so nu_s = nu_d / 2; single-soliton
// amplitudes are half the distance ones.
struct FrequencyFit {
  double distance_frequency = 0.0;      // nu_d
  double soliton_frequency = 0.0;       // nu_d / 2, exactly
  double peak_single_amplitude = 0.0;   // A/2 of the fitted cosine
  double rms_single_amplitude = 0.0;    // A/(2 sqrt 2)
  double mean_distance = 0.0;
  double residual_rms = 0.0;
  double frequency_sigma = 0.0;
  bool oscillation_found = false;
  SinusoidFit raw;
};

// Requires >= 10 usable frames spanning >= 1.5 distance periods.
FrequencyFit fitFrequency(const TrackResult& track);

}  // namespace gpelab
