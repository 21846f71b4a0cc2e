#include "ctc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ctc/families.hpp"

namespace ctc {

GridSpec default_grid() {
  GridSpec g;
  g.radii = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  g.angular_steps = 720;
  return g;
}

void validate_grid(const GridSpec& grid) {
  if (grid.radii.empty()) throw std::invalid_argument("grid: radii must be nonempty");
  double prev = 0.0;
  for (double r : grid.radii) {
    if (!(r > prev && r < 1.0)) {
      throw std::invalid_argument("grid: radii must be strictly increasing in (0, 1)");
    }
    prev = r;
  }
  if (grid.angular_steps < 8) throw std::invalid_argument("grid: angular_steps must be >= 8");
}

std::vector<CurveSample> trace_circle_image(const HarmonicMap& map, double r, int steps) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw std::domain_error("trace_circle_image: r must lie in (0, 1]");
  }
  if (steps < 1) throw std::invalid_argument("trace_circle_image: steps must be >= 1");

  const int N = map.order;
  // coefficients scaled onto the circle of radius r
  std::vector<Complex> ca(static_cast<std::size_t>(N) + 1);
  std::vector<Complex> cb(static_cast<std::size_t>(N) + 1);
  double rn = 1.0;
  for (int n = 0; n <= N; ++n) {
    ca[static_cast<std::size_t>(n)] = map.a(n) * rn;
    cb[static_cast<std::size_t>(n)] = std::conj(map.bcoef(n)) * rn;
    rn *= r;
  }

  std::vector<CurveSample> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    const double t = -M_PI + 2.0 * M_PI * k / steps;
    const Complex e = std::polar(1.0, t);
    Complex p{1.0, 0.0};  // e^{i n t}
    Complex w{0.0, 0.0};
    Complex s1a{0.0, 0.0}, s1b{0.0, 0.0};
    Complex s2{0.0, 0.0};
    for (int n = 0; n <= N; ++n) {
      const Complex pa = ca[static_cast<std::size_t>(n)] * p;
      const Complex pb = cb[static_cast<std::size_t>(n)] * std::conj(p);
      w += pa + pb;
      s1a += static_cast<double>(n) * pa;
      s1b += static_cast<double>(n) * pb;
      s2 += static_cast<double>(n) * n * (pa + pb);
      p *= e;
    }
    CurveSample s;
    s.t = t;
    s.w = w;
    s.w1 = Complex{0.0, 1.0} * (s1a - s1b);
    s.w2 = -s2;
    out.push_back(s);
  }
  return out;
}

MarginSample local_univalence_margin(const HarmonicMap& map, const GridSpec& grid) {
  validate_grid(grid);
  const CoeffSeq hp = derivative(map.h);
  const CoeffSeq gp = derivative(map.g);
  auto horner = [](const std::vector<Complex>& c, Complex z) {
    Complex acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  MarginSample best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (double r : grid.radii) {
    for (int j = 0; j < grid.angular_steps; ++j) {
      const double theta = -M_PI + 2.0 * M_PI * j / grid.angular_steps;
      const Complex z = std::polar(r, theta);
      const double margin = std::abs(horner(hp.coeffs, z)) - std::abs(horner(gp.coeffs, z));
      if (margin < best.min_margin) best = {margin, r, theta};
    }
  }
  return best;
}

namespace {

double circular_distance(double a, double b) {
  double d = std::fmod(std::fabs(a - b), 2.0 * M_PI);
  return std::min(d, 2.0 * M_PI - d);
}

}  // namespace

ConcavityReport concavity_indicator(const HarmonicMap& map, double r, int steps,
                                    double exclusion_width) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw std::domain_error("concavity_indicator: r must lie in (0, 1]");
  }
  double rho = r;
  if (rho == 1.0 && singular_on_circle(map)) rho = 1.0 - 1e-6;

  const std::vector<double> cusps = cusp_detect(trace_circle_image(map, 1.0, steps), 0.05);
  const double half_arc = 0.5 * exclusion_width;

  ConcavityReport rep;
  rep.radius_used = rho;
  rep.excluded_cusps = cusps;
  rep.steps = steps;
  rep.max_im = -std::numeric_limits<double>::infinity();
  rep.argmax_t = 0.0;

  const bool closed_form = closed_form_derivatives(map, Complex{0.0, 0.0}).has_value();
  std::vector<CurveSample> series_samples;
  if (!closed_form) series_samples = trace_circle_image(map, rho, steps);

  std::vector<double> offenders;
  bool any_included = false;
  for (int k = 0; k < steps; ++k) {
    const double t = -M_PI + 2.0 * M_PI * k / steps;
    bool excluded = false;
    for (double c : cusps) {
      if (circular_distance(t, c) < half_arc) {
        excluded = true;
        break;
      }
    }
    if (excluded) continue;

    Complex w1, w2;
    if (closed_form) {
      const Complex z = std::polar(rho, t);
      const DerivativeBundle d = *closed_form_derivatives(map, z);
      w1 = Complex{0.0, 1.0} * (z * d.hp - std::conj(z * d.gp));
      w2 = -(z * d.hp + z * z * d.hpp) - std::conj(z * d.gp + z * z * d.gpp);
    } else {
      const CurveSample& s = series_samples[static_cast<std::size_t>(k)];
      w1 = s.w1;
      w2 = s.w2;
    }
    if (std::abs(w1) < 1e-9) {
      offenders.push_back(t);
      continue;
    }
    any_included = true;
    const double im = (w2 / w1).imag();
    if (im > rep.max_im) {
      rep.max_im = im;
      rep.argmax_t = t;
    }
  }
  if (!offenders.empty()) {
    const std::string msg = "concavity_indicator: |w'(t)| < 1e-9 at " +
                            std::to_string(offenders.size()) +
                            " sample(s) outside the exclusion arcs, first at t = " +
                            std::to_string(offenders.front());
    throw CuspProximityError(msg, std::move(offenders));
  }
  if (!any_included) {
    throw std::runtime_error("concavity_indicator: every sample fell in an exclusion arc");
  }
  return rep;
}

RegionSlack region_slack(const std::vector<CurveSample>& samples) {
  if (samples.empty()) throw std::invalid_argument("region_slack: empty sample list");
  RegionSlack out{std::numeric_limits<double>::infinity(), 0.0, false};
  for (const CurveSample& s : samples) {
    const double slack = s.w.real() + s.w.imag() * s.w.imag() + 0.25;
    if (slack < out.min_slack) {
      out.min_slack = slack;
      out.argmin_t = s.t;
    }
  }
  out.holds = out.min_slack > 0.0;
  return out;
}

std::pair<double, double> phi_psi_profile(double r, double t) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw std::invalid_argument("phi_psi_profile: r must lie in [0, 1)");
  }
  if (!(t >= -1.0 && t <= 1.0)) {
    throw std::invalid_argument("phi_psi_profile: t = cos(theta) must lie in [-1, 1]");
  }
  const double den = 1.0 + r * r - 2.0 * r * t;
  const double phi = 4.0 * r * (r - t) * (1.0 - r * t) / (den * den);
  const double psi = 4.0 * r / ((1.0 + r) * (1.0 + r));
  return {phi, psi};
}

std::vector<double> cusp_detect(const std::vector<CurveSample>& samples, double threshold) {
  const int n = static_cast<int>(samples.size());
  if (n < 3) return {};
  std::vector<double> mag(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) mag[static_cast<std::size_t>(i)] = std::abs(samples[i].w1);

  std::vector<int> minima;
  for (int i = 0; i < n; ++i) {
    const double m = mag[static_cast<std::size_t>(i)];
    if (m >= threshold) continue;
    const double prev = mag[static_cast<std::size_t>((i + n - 1) % n)];
    const double next = mag[static_cast<std::size_t>((i + 1) % n)];
    if (m <= prev && m <= next) minima.push_back(i);
  }
  if (minima.empty()) return {};

  // merge minima within two grid steps (circularly), keeping the deepest
  std::vector<std::vector<int>> groups;
  for (int idx : minima) {
    if (!groups.empty() && idx - groups.back().back() <= 2) {
      groups.back().push_back(idx);
    } else {
      groups.push_back({idx});
    }
  }
  if (groups.size() > 1) {
    const int wrap_gap = (minima.front() + n) - groups.back().back();
    if (wrap_gap <= 2) {
      for (int idx : groups.front()) groups.back().push_back(idx);
      groups.erase(groups.begin());
    }
  }

  std::vector<double> cusps;
  for (const auto& group : groups) {
    int best = group.front();
    for (int idx : group) {
      if (mag[static_cast<std::size_t>(idx)] < mag[static_cast<std::size_t>(best)]) best = idx;
    }
    cusps.push_back(samples[static_cast<std::size_t>(best)].t);
  }
  std::sort(cusps.begin(), cusps.end());
  return cusps;
}

}  // namespace ctc
