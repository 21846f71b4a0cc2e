#ifndef CTC_GEOMETRY_HPP
#define CTC_GEOMETRY_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ctc/series.hpp"

namespace ctc {

struct GridSpec {
  std::vector<double> radii;  // strictly increasing, all < 1
  int angular_steps = 720;    // >= 8
};

/// radii {0.1, ..., 0.9, 0.99}, 720 angular steps.
GridSpec default_grid();
void validate_grid(const GridSpec& grid);

/// One point of a traced circle image. w1 and w2 are the first and second
/// t-derivatives obtained by exact term-wise differentiation of the series.
struct CurveSample {
  double t;    // angle in [-pi, pi)
  Complex w;
  Complex w1;
  Complex w2;
};

struct CuspProximityError : std::runtime_error {
  explicit CuspProximityError(const std::string& msg, std::vector<double> ts)
      : std::runtime_error(msg), offending_t(std::move(ts)) {}
  std::vector<double> offending_t;
};

/// Samples w(t) = f(r e^{it}) at `steps` uniform angles t_k = -pi + 2 pi k/steps.
/// 0 < r <= 1 (truncated polynomials are defined on the closed disk).
std::vector<CurveSample> trace_circle_image(const HarmonicMap& map, double r, int steps);

/// min over the grid of |h'(z)| - |g'(z)| and its location (r, theta).
struct MarginSample {
  double min_margin;
  double argmin_r;
  double argmin_theta;
};
MarginSample local_univalence_margin(const HarmonicMap& map, const GridSpec& grid);

/// max over sampled t of Im(w''(t)/w'(t)) along the circle image.
///
/// Family maps with closed forms are evaluated through their exact
/// derivatives; the truncated series is used otherwise. Samples within
/// `exclusion_width` of a cusp detected at r = 1 are skipped, and for
/// families singular on |z| = 1 a requested r = 1 is nudged to 1 - 1e-6.
struct ConcavityReport {
  double max_im;
  double argmax_t;
  double radius_used;
  std::vector<double> excluded_cusps;  // cusp angles found at r = 1
  int steps;
};
ConcavityReport concavity_indicator(const HarmonicMap& map, double r, int steps,
                                    double exclusion_width = 0.05);

/// Minimal slack of u + v^2 + 1/4 over the samples; holds iff min > 0.
struct RegionSlack {
  double min_slack;
  double argmin_t;
  bool holds;
};
RegionSlack region_slack(const std::vector<CurveSample>& samples);

/// Profile functions of the parabola-region bound, t = cos(theta) in [-1, 1]:
///   phi = 4r(r-t)(1-rt)/(1+r^2-2rt)^2,  psi = 4r/(1+r)^2.
/// Contract: phi <= psi < 1 for 0 <= r < 1.
std::pair<double, double> phi_psi_profile(double r, double t);

/// Local minima of |w1| below `threshold`, merged within two grid steps.
/// Returns the t values of the surviving minima, sorted.
std::vector<double> cusp_detect(const std::vector<CurveSample>& samples, double threshold);

}  // namespace ctc

#endif
