#include "gpelab/sinusoid_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "gpelab/errors.hpp"

namespace gpelab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Gauss-Jordan solve of a small SPD system; returns false when singular.
template <int N>
bool solveSymmetric(const double m[N][N], const double rhs[N], double out[N]) {
  double aug[N][N + 1];
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < N; ++c) aug[r][c] = m[r][c];
    aug[r][N] = rhs[r];
  }
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int r = col + 1; r < N; ++r) {
      if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
    }
    if (std::abs(aug[piv][col]) < 1e-300) return false;
    for (int c = 0; c <= N; ++c) std::swap(aug[col][c], aug[piv][c]);
    for (int r = 0; r < N; ++r) {
      if (r == col) continue;
      const double f = aug[r][col] / aug[col][col];
      for (int c = col; c <= N; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  for (int r = 0; r < N; ++r) out[r] = aug[r][N] / aug[r][r];
  return true;
}

template <int N>
bool invertSymmetric(const double m[N][N], double inv[N][N]) {
  double aug[N][2 * N];
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < N; ++c) {
      aug[r][c] = m[r][c];
      aug[r][N + c] = (r == c) ? 1.0 : 0.0;
    }
  }
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int r = col + 1; r < N; ++r) {
      if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
    }
    if (std::abs(aug[piv][col]) < 1e-300) return false;
    for (int c = 0; c < 2 * N; ++c) std::swap(aug[col][c], aug[piv][c]);
    const double scale = aug[col][col];
    for (int c = 0; c < 2 * N; ++c) aug[col][c] /= scale;
    for (int r = 0; r < N; ++r) {
      if (r == col) continue;
      const double f = aug[r][col];
      for (int c = 0; c < 2 * N; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < N; ++c) inv[r][c] = aug[r][N + c];
  }
  return true;
}

struct LinearSolution {
  // y = c0 + c1 t + a cos(2 pi f t) + b sin(2 pi f t)
  double c0 = 0.0, c1 = 0.0, a = 0.0, b = 0.0;
  double rss = std::numeric_limits<double>::infinity();
};

LinearSolution solveAtFrequency(std::span<const double> t, std::span<const double> y,
                                std::span<const double> w, double f) {
  double m[4][4] = {};
  double rhs[4] = {};
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double th = kTwoPi * f * t[i];
    const double basis[4] = {1.0, t[i], std::cos(th), std::sin(th)};
    for (int r = 0; r < 4; ++r) {
      rhs[r] += w[i] * basis[r] * y[i];
      for (int c = 0; c < 4; ++c) m[r][c] += w[i] * basis[r] * basis[c];
    }
  }
  LinearSolution sol;
  double x[4];
  if (!solveSymmetric<4>(m, rhs, x)) return sol;
  sol.c0 = x[0];
  sol.c1 = x[1];
  sol.a = x[2];
  sol.b = x[3];
  sol.rss = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double th = kTwoPi * f * t[i];
    const double r = y[i] - (sol.c0 + sol.c1 * t[i] + sol.a * std::cos(th) +
                             sol.b * std::sin(th));
    sol.rss += w[i] * r * r;
  }
  return sol;
}

double refineFrequency(std::span<const double> t, std::span<const double> y,
                       std::span<const double> w, double f_lo, double f_hi) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = f_lo, b = f_hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = solveAtFrequency(t, y, w, c).rss;
  double fd = solveAtFrequency(t, y, w, d).rss;
  for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = solveAtFrequency(t, y, w, c).rss;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = solveAtFrequency(t, y, w, d).rss;
    }
  }
  return 0.5 * (a + b);
}

// Weighted quadratic trend, subtracted before the power scan so slow drifts
// of the distance baseline cannot masquerade as the oscillation peak.
std::vector<double> detrended(std::span<const double> t, std::span<const double> y,
                              std::span<const double> w) {
  double m[3][3] = {};
  double rhs[3] = {};
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double basis[3] = {1.0, t[i], t[i] * t[i]};
    for (int r = 0; r < 3; ++r) {
      rhs[r] += w[i] * basis[r] * y[i];
      for (int c = 0; c < 3; ++c) m[r][c] += w[i] * basis[r] * basis[c];
    }
  }
  std::vector<double> out(y.begin(), y.end());
  double coef[3];
  if (!solveSymmetric<3>(m, rhs, coef)) return out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    out[i] -= coef[0] + coef[1] * t[i] + coef[2] * t[i] * t[i];
  }
  return out;
}

}  // namespace

SinusoidFit fitSinusoid(std::span<const double> t, std::span<const double> y,
                        std::span<const double> weights) {
  const std::size_t m = t.size();
  if (m != y.size() || m < 6) {
    throw ValidationError("fitSinusoid: need matching t/y with at least 6 samples");
  }
  std::vector<double> w(m, 1.0);
  if (!weights.empty()) {
    if (weights.size() != m) throw ValidationError("fitSinusoid: weight size mismatch");
    std::copy(weights.begin(), weights.end(), w.begin());
  }

  const double t0 = t.front();
  std::vector<double> ts(m);
  for (std::size_t i = 0; i < m; ++i) ts[i] = t[i] - t0;
  const double span = ts.back() - ts.front();
  if (!(span > 0)) throw ValidationError("fitSinusoid: zero time span");

  double wsum = 0.0, ymean = 0.0, tmean = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    wsum += w[i];
    ymean += w[i] * y[i];
    tmean += w[i] * ts[i];
  }
  ymean /= wsum;
  tmean /= wsum;
  double variation = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    variation = std::max(variation, std::abs(y[i] - ymean));
  }

  SinusoidFit fit;
  fit.offset = ymean;
  if (variation < 1e-12 * (std::abs(ymean) + 1.0)) {
    return fit;  // constant series: no oscillation
  }

  // oversampled power scan on the detrended series
  const auto yd = detrended(ts, y, w);
  std::vector<double> dt_sorted;
  for (std::size_t i = 1; i < m; ++i) dt_sorted.push_back(ts[i] - ts[i - 1]);
  std::sort(dt_sorted.begin(), dt_sorted.end());
  const double dt_med = dt_sorted[dt_sorted.size() / 2];
  const double f_lo = 0.35 / span;
  const double f_hi = 0.5 / dt_med;
  const int n_freq = std::clamp(static_cast<int>(std::ceil((f_hi - f_lo) * span * 8.0)),
                                64, 400000);
  double best_f = f_lo, best_p = -1.0;
  for (int j = 0; j < n_freq; ++j) {
    const double f = f_lo + (f_hi - f_lo) * j / (n_freq - 1);
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double th = kTwoPi * f * ts[i];
      re += w[i] * yd[i] * std::cos(th);
      im += w[i] * yd[i] * std::sin(th);
    }
    const double p = re * re + im * im;
    if (p > best_p) {
      best_p = p;
      best_f = f;
    }
  }

  const double cell = 1.0 / span;
  const double f_ref = refineFrequency(ts, y, w, std::max(f_lo, best_f - cell),
                                       std::min(f_hi, best_f + cell));
  LinearSolution sol = solveAtFrequency(ts, y, w, f_ref);
  double f_best = f_ref;
  fit.refined = true;
  if (!std::isfinite(sol.rss)) {
    f_best = best_f;
    sol = solveAtFrequency(ts, y, w, best_f);
    fit.refined = false;
  }

  fit.frequency = f_best;
  fit.amplitude = std::hypot(sol.a, sol.b);
  fit.offset = sol.c0 + sol.c1 * tmean;  // baseline at the window mean time
  double ph = std::atan2(-sol.b, sol.a) - kTwoPi * f_best * t0;
  fit.phase = std::remainder(ph, kTwoPi);
  fit.residual_rms = std::sqrt(std::max(0.0, sol.rss) / wsum);

  // linearized covariance of (c0, c1, a, b, f) at the optimum
  double jtj[5][5] = {};
  for (std::size_t i = 0; i < m; ++i) {
    const double th = kTwoPi * f_best * ts[i];
    const double cs = std::cos(th), sn = std::sin(th);
    const double jrow[5] = {1.0, ts[i], cs, sn,
                            kTwoPi * ts[i] * (-sol.a * sn + sol.b * cs)};
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 5; ++c) jtj[r][c] += w[i] * jrow[r] * jrow[c];
    }
  }
  double cov[5][5];
  const double dof = std::max(1.0, static_cast<double>(m) - 5.0);
  const double s2 = sol.rss / dof;
  double sigma_amp = 0.0;
  if (invertSymmetric<5>(jtj, cov)) {
    fit.frequency_sigma = std::sqrt(std::max(0.0, cov[4][4] * s2));
    const double a2 = fit.amplitude * fit.amplitude;
    if (a2 > 0) {
      const double va = cov[2][2] * s2, vb = cov[3][3] * s2, vab = cov[2][3] * s2;
      sigma_amp = std::sqrt(std::max(
          0.0, (sol.a * sol.a * va + sol.b * sol.b * vb + 2.0 * sol.a * sol.b * vab) / a2));
    }
  }

  fit.oscillation_found =
      fit.amplitude > 4.0 * sigma_amp && fit.amplitude > 1e-9 * (std::abs(ymean) + 1.0);
  return fit;
}

FrequencyFit fitFrequency(const TrackResult& track) {
  const auto t = track.times();
  const auto d = track.distances();
  const auto w = track.weights();
  if (static_cast<int>(t.size()) < 10) {
    throw NumericalError("fitFrequency: fewer than 10 usable frames (" +
                         std::to_string(t.size()) + ")");
  }
  SinusoidFit raw = fitSinusoid(t, d, w);
  FrequencyFit out;
  out.raw = raw;
  out.oscillation_found = raw.oscillation_found;
  if (!raw.oscillation_found) return out;

  const double span = t.back() - t.front();
  if (span * raw.frequency < 1.5) {
    throw NumericalError("fitFrequency: series spans fewer than 1.5 distance periods (" +
                         std::to_string(span * raw.frequency) + " at frequency " +
                         std::to_string(raw.frequency) + ")");
  }
  out.distance_frequency = raw.frequency;
  out.soliton_frequency = 0.5 * raw.frequency;
  out.peak_single_amplitude = 0.5 * raw.amplitude;
  out.rms_single_amplitude = 0.5 * raw.amplitude / std::numbers::sqrt2;
  out.mean_distance = raw.offset;
  out.residual_rms = raw.residual_rms;
  out.frequency_sigma = raw.frequency_sigma;
  return out;
}

}  // namespace gpelab
