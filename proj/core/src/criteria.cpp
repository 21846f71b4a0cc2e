#include "ctc/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ctc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNormTol = 1e-12;

// Compensated accumulator; checker sums must survive an absolute 1e-12 gate.
struct KahanSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

void require_normalized_h(const CoeffSeq& h) {
  if (h.coeffs.empty() || std::abs(h.coeffs[0]) > kNormTol ||
      std::abs(h.at(1) - Complex{1.0, 0.0}) > kNormTol) {
    throw std::invalid_argument("checker requires a normalized analytic part (c_0 = 0, a_1 = 1)");
  }
}

ConditionReport finish(ConditionId id, double partial, std::optional<double> tail,
                       double threshold, int horizon) {
  ConditionReport r;
  r.id = id;
  r.partial_sum = partial;
  r.tail_bound = tail;
  r.threshold = threshold;
  r.horizon = horizon;
  const double effective = partial + (tail ? *tail : 0.0);
  r.margin = threshold - effective;
  if (effective > threshold + kVerdictTol) {
    r.verdict = Verdict::Fail;
  } else {
    r.verdict = tail ? Verdict::Pass : Verdict::PassTruncated;
  }
  return r;
}

// --- family tails ----------------------------------------------------------
// Exact remainders of each checker sum past the truncation order, per
// coefficient shape. nullopt = no closed form (verdict stays truncated).

std::optional<double> linear_sum_tail(const std::optional<TailDescriptor>& tail, int N) {
  if (!tail) return 0.0;  // exact finite polynomial
  const double s = std::abs(tail->scale);
  if (s == 0.0) return 0.0;
  switch (tail->shape) {
    case TailShape::HalvingOverN:
      return s * std::ldexp(1.0, 2 - N);  // sum_{n>N} n * 2^{2-n}/n
    default:
      return kInf;  // n|c_n| diverges for every other built-in shape
  }
}

std::optional<double> square_sum_tail(const std::optional<TailDescriptor>& tail, int N) {
  if (!tail) return 0.0;
  const double s = std::abs(tail->scale);
  if (s == 0.0) return 0.0;
  switch (tail->shape) {
    case TailShape::HalvingOverN:
      return s * (N + 2) * std::ldexp(1.0, 2 - N);  // sum_{n>N} n^2 2^{2-n}/n
    default:
      return kInf;
  }
}

std::optional<double> pair_diff_tail(const std::optional<TailDescriptor>& tail, double aN,
                                     int N) {
  if (!tail) {
    // the n = N+1 term is the only one left: n|(n-1)a_N| + (n-1)|(n-2)... with
    // a_{N+1} = 0 it collapses to 2 N^2 |a_N|
    return 2.0 * static_cast<double>(N) * N * aN;
  }
  const double s = std::abs(tail->scale);
  if (s == 0.0) return 0.0;
  switch (tail->shape) {
    case TailShape::InvSquare:
      return s * 2.0 / N;  // telescoping sum of 2/(n(n-1))
    case TailShape::InvSquareX2:
      return s * 4.0 / N;
    case TailShape::HalvingOverN:
      return s * static_cast<double>(N) * std::ldexp(1.0, 3 - N);
    default:
      return kInf;
  }
}

std::optional<double> rotated_diff_tail(const HarmonicMap& map, double phi, int N) {
  const bool h_poly = !map.h.tail.has_value();
  const bool g_poly = !map.g.tail.has_value();
  if (h_poly && g_poly) {
    // cross terms at n = N+1; everything beyond vanishes
    return static_cast<double>(N) * (std::abs(map.a(N)) + std::abs(map.bcoef(N)));
  }
  if (!map.family) return std::nullopt;
  const double babs = std::abs(map.b);
  switch (*map.family) {
    case Family::Log:
      return phi == 0.0 ? std::optional<double>(0.0) : std::optional<double>(kInf);
    case Family::Dilog:
      if (phi == 0.0) return 1.0 / N + 1.0 / (N - 1);
      return kInf;
    case Family::Parabola:
      return kInf;  // terms approach n|(n+1) - e^{i phi}(n-1)|/2 >= n
    case Family::NullDirect:
      if (phi == 0.0) return (1.0 + babs) * 2.0 / N;
      return kInf;
    case Family::NullCumulative:
      if (phi == 0.0) return (1.0 + babs) * std::ldexp(1.0, 2 - N);
      return kInf;
    default:
      return std::nullopt;
  }
}

std::optional<double> add_tails(std::optional<double> a, std::optional<double> b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

}  // namespace

const char* condition_id_name(ConditionId id) {
  switch (id) {
    case ConditionId::LinearSum: return "linear_sum";
    case ConditionId::RotatedDiff: return "rotated_diff";
    case ConditionId::SquareSum: return "square_sum";
    case ConditionId::PairDiff: return "pair_diff";
    case ConditionId::BinomialDouble: return "binomial_double";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::PassTruncated: return "PassTruncated";
    case Verdict::Fail: return "Fail";
  }
  return "?";
}

const char* sampled_id_name(SampledId id) {
  switch (id) {
    case SampledId::CurvatureBound: return "curvature_bound";
    case SampledId::FejerPositivity: return "fejer_positivity";
    case SampledId::RotatedHalfplane: return "rotated_halfplane";
    case SampledId::LocalUnivalence: return "local_univalence";
    case SampledId::RegionMembership: return "region_membership";
  }
  return "?";
}

ConditionReport check_linear_coeff_sum(const HarmonicMap& map) {
  require_normalized_h(map.h);
  const int N = map.order;
  KahanSum sum;
  for (int n = 2; n <= N; ++n) sum.add(n * std::abs(map.a(n)));
  for (int n = 1; n <= N; ++n) sum.add(n * std::abs(map.bcoef(n)));
  auto tail = add_tails(linear_sum_tail(map.h.tail, N), linear_sum_tail(map.g.tail, N));
  return finish(ConditionId::LinearSum, sum.sum, tail, 1.0, N);
}

ConditionReport check_rotated_difference(const HarmonicMap& map, double phi) {
  require_normalized_h(map.h);
  if (!(phi >= 0.0 && phi < 2.0 * M_PI)) {
    throw std::invalid_argument("check_rotated_difference: phi must lie in [0, 2*pi)");
  }
  const int N = map.order;
  const Complex rot = std::polar(1.0, phi);
  KahanSum sum;
  for (int n = 2; n <= N; ++n) {
    sum.add(std::abs(static_cast<double>(n) * map.a(n) -
                     rot * static_cast<double>(n - 1) * map.a(n - 1)));
  }
  sum.add(std::abs(map.bcoef(1)));  // b_0 = 0, so the n = 1 term is |b_1|
  for (int n = 2; n <= N; ++n) {
    sum.add(std::abs(static_cast<double>(n) * map.bcoef(n) -
                     rot * static_cast<double>(n - 1) * map.bcoef(n - 1)));
  }
  ConditionReport r =
      finish(ConditionId::RotatedDiff, sum.sum, rotated_diff_tail(map, phi, N), 1.0, N);
  r.params["phi"] = phi;
  return r;
}

ConditionReport check_square_sum(const CoeffSeq& h) {
  require_normalized_h(h);
  const int N = h.order();
  KahanSum sum;
  for (int n = 2; n <= N; ++n) sum.add(static_cast<double>(n) * n * std::abs(h.at(n)));
  return finish(ConditionId::SquareSum, sum.sum, square_sum_tail(h.tail, N), 1.0, N);
}

ConditionReport check_pair_diff(const CoeffSeq& h) {
  require_normalized_h(h);
  const int N = h.order();
  KahanSum sum;
  for (int n = 2; n <= N; ++n) {
    const Complex an = h.at(n);
    const Complex am = h.at(n - 1);
    sum.add(n * std::abs(static_cast<double>(n + 1) * an - static_cast<double>(n - 1) * am) +
            (n - 1) * std::abs(static_cast<double>(n) * an - static_cast<double>(n - 2) * am));
  }
  return finish(ConditionId::PairDiff, sum.sum, pair_diff_tail(h.tail, std::abs(h.at(N)), N), 2.0,
                N);
}

double generalized_binomial(double alpha, int m) {
  if (m < 0) throw std::invalid_argument("generalized_binomial: m must be >= 0");
  double c = 1.0;
  for (int i = 1; i <= m; ++i) c *= (alpha - i + 1) / i;
  return c;
}

namespace {

bool is_nonneg_integer(double x) { return x >= 0.0 && x == std::floor(x) && x <= 1e6; }

// |sum_k S1_k C(beta,n-k)| + |sum_k S2_k C(beta,n-k)| for n in [lo, hi],
// with S1/S2 the alpha-binomial inner sums over the (zero-extended) a_j.
double binomial_terms(const CoeffSeq& h, double alpha, double beta, int lo, int hi) {
  std::vector<Complex> s1(static_cast<std::size_t>(hi) + 1, Complex{0.0, 0.0});
  std::vector<Complex> s2(static_cast<std::size_t>(hi) + 1, Complex{0.0, 0.0});
  for (int k = 1; k <= hi; ++k) {
    Complex acc1{0.0, 0.0};
    Complex acc2{0.0, 0.0};
    for (int j = 1; j <= k; ++j) {
      const Complex aj = h.at(j);
      if (aj == Complex{0.0, 0.0}) continue;
      const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
      const double cb = generalized_binomial(alpha, k - j);
      acc1 += sign * (static_cast<double>(j) * (j + 1)) * cb * aj;
      acc2 += sign * (static_cast<double>(j) * (j - 1)) * cb * aj;
    }
    s1[k] = acc1;
    s2[k] = acc2;
  }
  KahanSum sum;
  for (int n = lo; n <= hi; ++n) {
    Complex t1{0.0, 0.0};
    Complex t2{0.0, 0.0};
    for (int k = 1; k <= n; ++k) {
      const double cb = generalized_binomial(beta, n - k);
      t1 += s1[k] * cb;
      t2 += s2[k] * cb;
    }
    sum.add(std::abs(t1) + std::abs(t2));
  }
  return sum.sum;
}

}  // namespace

ConditionReport check_binomial_double(const CoeffSeq& h, double alpha, double beta) {
  require_normalized_h(h);
  const int N = h.order();
  const double partial = binomial_terms(h, alpha, beta, 2, N);
  std::optional<double> tail;
  if (!h.tail && is_nonneg_integer(alpha) && is_nonneg_integer(beta)) {
    // outer binomial vanishes past beta and the inner past alpha, so the sum
    // is exactly a finite one over n <= N + alpha + beta
    const int ext = N + static_cast<int>(alpha) + static_cast<int>(beta);
    tail = (ext > N) ? binomial_terms(h, alpha, beta, N + 1, ext) : 0.0;
  }
  ConditionReport r = finish(ConditionId::BinomialDouble, partial, tail, 2.0, N);
  r.params["alpha"] = alpha;
  r.params["beta"] = beta;
  return r;
}

std::pair<double, ConditionReport> best_phi(const HarmonicMap& map, int steps) {
  if (steps < 8) throw std::invalid_argument("best_phi: steps must be >= 8");
  const double two_pi = 2.0 * M_PI;
  auto effective = [&](double phi) {
    const ConditionReport r = check_rotated_difference(map, phi);
    return r.partial_sum + (r.tail_bound ? *r.tail_bound : 0.0);
  };

  double best_phi_val = 0.0;
  double best_val = effective(0.0);
  int best_k = 0;
  for (int k = 1; k < steps; ++k) {
    const double phi = two_pi * k / steps;
    const double v = effective(phi);
    if (v < best_val) {
      best_val = v;
      best_phi_val = phi;
      best_k = k;
    }
  }

  // golden-section refinement of the bracketing cell
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = two_pi * (best_k - 1) / steps;
  double hi = two_pi * (best_k + 1) / steps;
  auto wrapped = [&](double phi) {
    double w = std::fmod(phi, two_pi);
    if (w < 0.0) w += two_pi;
    return effective(w);
  };
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = wrapped(x1);
  double f2 = wrapped(x2);
  while (hi - lo > 1e-10) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = wrapped(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = wrapped(x2);
    }
    const double cand = (f1 <= f2) ? x1 : x2;
    const double cval = std::min(f1, f2);
    if (cval < best_val) {
      best_val = cval;
      double w = std::fmod(cand, two_pi);
      if (w < 0.0) w += two_pi;
      best_phi_val = w;
    }
  }
  return {best_phi_val, check_rotated_difference(map, best_phi_val)};
}

// ---------------------------------------------------------------------------

ConvexNullSeq convex_seq_reciprocal(int horizon) {
  ConvexNullSeq s;
  s.values = [](int n) { return 2.0 / (n + 1); };
  s.check_horizon = horizon;
  s.certificate = NullForm::ReciprocalLinear;
  return s;
}

ConvexNullSeq convex_seq_halving(int horizon) {
  ConvexNullSeq s;
  s.values = [](int n) { return std::ldexp(1.0, 1 - n); };
  s.check_horizon = horizon;
  s.certificate = NullForm::Halving;
  return s;
}

ConvexNullSeq convex_seq_from_values(std::vector<double> values, int horizon) {
  ConvexNullSeq s;
  s.values = [vals = std::move(values)](int n) {
    return (n >= 0 && n < static_cast<int>(vals.size())) ? vals[static_cast<std::size_t>(n)]
                                                         : 0.0;
  };
  s.check_horizon = horizon;
  return s;
}

NullSeqValidation validate_convex_null(const ConvexNullSeq& seq) {
  if (seq.check_horizon < 3) {
    throw std::invalid_argument("validate_convex_null: check horizon must be >= 3");
  }
  NullSeqValidation v;
  v.horizon = seq.check_horizon;
  const int M = seq.check_horizon;
  for (int n = 0; n <= M; ++n) {
    if (seq.values(n) < 0.0) {
      v.nonnegative = false;
      v.first_negative = n;
      break;
    }
  }
  for (int n = 0; n + 2 <= M; ++n) {
    const double d0 = seq.values(n) - seq.values(n + 1);
    const double d1 = seq.values(n + 1) - seq.values(n + 2);
    if (d0 < d1 || d1 < 0.0) {
      // d1 < 0 with d0 >= d1 still breaks "differences nonincreasing to 0"
      v.convex = false;
      v.first_convex_violation = n;
      break;
    }
  }
  v.null_certified = seq.certificate.has_value();
  v.value_at_horizon = seq.values(M);
  return v;
}

namespace {

HarmonicMap null_seq_map(const ConvexNullSeq& seq, Complex b, int N, bool cumulative) {
  if (std::abs(b) >= 1.0) {
    throw std::invalid_argument("null-sequence map requires |b| < 1");
  }
  if (std::abs(seq.values(0) - 2.0) > kNormTol) {
    throw std::invalid_argument("null-sequence map requires c_0 = 2");
  }
  if (N < 2) throw std::invalid_argument("null-sequence map requires N >= 2");
  {
    ConvexNullSeq probe = seq;
    probe.check_horizon = std::max(seq.check_horizon, N + 1);
    const NullSeqValidation v = validate_convex_null(probe);
    if (!v.valid()) {
      throw std::invalid_argument(
          "null-sequence map requires a convex null sequence (violation at n = " +
          std::to_string(v.nonnegative ? v.first_convex_violation : v.first_negative) + ")");
    }
  }
  CoeffSeq h;
  h.coeffs.assign(static_cast<std::size_t>(N) + 1, Complex{0.0, 0.0});
  h.coeffs[1] = 1.0;
  double cumsum = 0.0;  // sum_{j=1}^{n-1} c_j
  for (int n = 2; n <= N; ++n) {
    cumsum += seq.values(n - 1);
    h.coeffs[n] = cumulative ? Complex{(1.0 + cumsum) / n, 0.0}
                             : Complex{seq.values(n - 1) / n, 0.0};
  }
  CoeffSeq g;
  g.coeffs.assign(static_cast<std::size_t>(N) + 1, Complex{0.0, 0.0});
  for (int n = 1; n <= N; ++n) g.coeffs[n] = b * h.coeffs[n];
  HarmonicMap map = harmonic_map_from_parts(std::move(h), std::move(g));
  map.b = b;
  if (seq.certificate == NullForm::ReciprocalLinear && !cumulative) {
    map.family = Family::NullDirect;
    map.h.tail = TailDescriptor{TailShape::InvSquareX2};
    map.g.tail = TailDescriptor{TailShape::InvSquareX2, b};
  } else if (seq.certificate == NullForm::Halving && cumulative) {
    map.family = Family::NullCumulative;
    map.h.tail = TailDescriptor{TailShape::GeomMix};
    map.g.tail = TailDescriptor{TailShape::GeomMix, b};
  } else if (seq.certificate == NullForm::Halving && !cumulative) {
    map.h.tail = TailDescriptor{TailShape::HalvingOverN};
    map.g.tail = TailDescriptor{TailShape::HalvingOverN, b};
  } else if (seq.certificate == NullForm::ReciprocalLinear && cumulative) {
    map.h.tail = TailDescriptor{TailShape::HarmonicOverN};
    map.g.tail = TailDescriptor{TailShape::HarmonicOverN, b};
  }
  return map;
}

}  // namespace

HarmonicMap map_from_null_seq_direct(const ConvexNullSeq& seq, Complex b, int N) {
  return null_seq_map(seq, b, N, false);
}

HarmonicMap map_from_null_seq_cumulative(const ConvexNullSeq& seq, Complex b, int N) {
  return null_seq_map(seq, b, N, true);
}

// ---------------------------------------------------------------------------

namespace {

// Deterministic grid scan: lexicographic (r, theta), strict improvement only.
template <typename F>
SampledPositivityReport scan_grid(SampledId id, const GridSpec& grid, double threshold, F&& value) {
  validate_grid(grid);
  SampledPositivityReport rep;
  rep.id = id;
  rep.grid = grid;
  rep.claim_threshold = threshold;
  double best = kInf;
  double br = 0.0;
  double bt = 0.0;
  for (double r : grid.radii) {
    for (int j = 0; j < grid.angular_steps; ++j) {
      const double theta = -M_PI + 2.0 * M_PI * j / grid.angular_steps;
      const double v = value(r, theta);
      if (v < best) {
        best = v;
        br = r;
        bt = theta;
      }
    }
  }
  rep.min_value = best;
  rep.argmin_r = br;
  rep.argmin_theta = bt;
  rep.holds_on_grid = best > threshold;
  return rep;
}

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace

SampledPositivityReport check_curvature_bound(const CoeffSeq& h, const GridSpec& grid) {
  require_normalized_h(h);
  const CoeffSeq hp = derivative(h);
  const CoeffSeq hpp = derivative(hp);
  std::vector<std::pair<double, double>> near_zeros;
  auto rep = scan_grid(SampledId::CurvatureBound, grid, -0.5, [&](double r, double theta) {
    const Complex z = std::polar(r, theta);
    const Complex d1 = horner(hp.coeffs, z);
    if (std::abs(d1) < 1e-9) {
      near_zeros.emplace_back(r, theta);
      return kInf;  // reported via the exception below
    }
    const Complex d2 = horner(hpp.coeffs, z);
    return (Complex{1.0, 0.0} + z * d2 / d1).real();
  });
  if (!near_zeros.empty()) {
    std::string msg = "curvature check: |h'| < 1e-9 at " + std::to_string(near_zeros.size()) +
                      " grid point(s), first at r = " + std::to_string(near_zeros.front().first) +
                      ", theta = " + std::to_string(near_zeros.front().second);
    throw SingularDerivativeError(msg, std::move(near_zeros));
  }
  return rep;
}

SampledPositivityReport check_fejer_positivity(const ConvexNullSeq& seq, const GridSpec& grid,
                                               int N) {
  if (N < 1) throw std::invalid_argument("check_fejer_positivity: N must be >= 1");
  std::vector<Complex> c(static_cast<std::size_t>(N) + 1);
  c[0] = 0.5 * seq.values(0);
  for (int n = 1; n <= N; ++n) c[static_cast<std::size_t>(n)] = seq.values(n);
  auto rep = scan_grid(SampledId::FejerPositivity, grid, 0.0, [&](double r, double theta) {
    return horner(c, std::polar(r, theta)).real();
  });
  rep.params["N"] = static_cast<double>(N);
  return rep;
}

SampledPositivityReport check_halfplane_rotated(const CoeffSeq& F, double phi,
                                                const GridSpec& grid) {
  const CoeffSeq Fp = derivative(F);
  const Complex rot = std::polar(1.0, phi);
  auto rep = scan_grid(SampledId::RotatedHalfplane, grid, 0.0, [&](double r, double theta) {
    const Complex z = std::polar(r, theta);
    return ((Complex{1.0, 0.0} - rot * z) * horner(Fp.coeffs, z)).real();
  });
  rep.params["phi"] = phi;
  return rep;
}

SampledPositivityReport check_local_univalence(const HarmonicMap& map, const GridSpec& grid) {
  const CoeffSeq hp = derivative(map.h);
  const CoeffSeq gp = derivative(map.g);
  return scan_grid(SampledId::LocalUnivalence, grid, 0.0, [&](double r, double theta) {
    const Complex z = std::polar(r, theta);
    return std::abs(horner(hp.coeffs, z)) - std::abs(horner(gp.coeffs, z));
  });
}

}  // namespace ctc
