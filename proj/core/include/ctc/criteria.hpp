#ifndef CTC_CRITERIA_HPP
#define CTC_CRITERIA_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctc/geometry.hpp"
#include "ctc/series.hpp"

namespace ctc {

/// Absolute slack applied to all threshold comparisons. The inequalities are
/// non-strict, so boundary equality passes.
inline constexpr double kVerdictTol = 1e-12;

enum class ConditionId {
  LinearSum,       // sum n|a_n| + sum n|b_n| <= 1
  RotatedDiff,     // sum |n a_n - e^{i phi}(n-1)a_{n-1}| + co-analytic <= 1
  SquareSum,       // sum n^2 |a_n| <= 1
  PairDiff,        // sum n|(n+1)a_n-(n-1)a_{n-1}| + (n-1)|n a_n-(n-2)a_{n-1}| <= 2
  BinomialDouble,  // (alpha, beta) double-binomial sum <= 2
};
const char* condition_id_name(ConditionId id);

enum class Verdict { Pass, PassTruncated, Fail };
const char* verdict_name(Verdict v);

/// Outcome of a coefficient-sum checker.
///  Pass          tail known and partial + tail <= threshold + tol
///  PassTruncated tail unknown and partial <= threshold + tol
///  Fail          partial (+ known tail) exceeds threshold + tol
struct ConditionReport {
  ConditionId id;
  double partial_sum = 0.0;
  std::optional<double> tail_bound;  // may be +infinity for divergent families
  double threshold = 1.0;
  double margin = 0.0;  // threshold - partial_sum - tail_bound (tail taken as 0 if unknown)
  Verdict verdict = Verdict::Fail;
  int horizon = 0;  // truncation order the partial sum ran to
  std::map<std::string, double> params;
};

ConditionReport check_linear_coeff_sum(const HarmonicMap& map);
ConditionReport check_rotated_difference(const HarmonicMap& map, double phi);
ConditionReport check_square_sum(const CoeffSeq& h);
ConditionReport check_pair_diff(const CoeffSeq& h);

/// C(alpha, m) = alpha (alpha-1) ... (alpha-m+1) / m! for real alpha.
double generalized_binomial(double alpha, int m);

ConditionReport check_binomial_double(const CoeffSeq& h, double alpha, double beta);

/// Minimizes the rotated-difference total over phi: uniform grid of `steps`
/// points refined by golden-section to 1e-10. Returns the minimizer and its
/// report. steps >= 8.
std::pair<double, ConditionReport> best_phi(const HarmonicMap& map, int steps = 360);

// ---------------------------------------------------------------------------
// Convex null sequences
// ---------------------------------------------------------------------------

/// Closed forms whose convexity and null limit hold for all n.
enum class NullForm {
  ReciprocalLinear,  // c_n = 2/(n+1)
  Halving,           // c_n = 2^{1-n}
};

struct ConvexNullSeq {
  std::function<double(int)> values;  // n >= 0
  int check_horizon = 64;             // M >= 3
  std::optional<NullForm> certificate;
};

ConvexNullSeq convex_seq_reciprocal(int horizon = 64);
ConvexNullSeq convex_seq_halving(int horizon = 64);
/// Finite list, zero beyond; no certificate.
ConvexNullSeq convex_seq_from_values(std::vector<double> values, int horizon = 64);

struct NullSeqValidation {
  bool nonnegative = true;
  int first_negative = -1;
  bool convex = true;
  int first_convex_violation = -1;  // smallest n with c_n - c_{n+1} < c_{n+1} - c_{n+2}
  bool null_certified = false;      // via certificate only
  double value_at_horizon = 0.0;    // sampled decay, heuristic
  int horizon = 0;
  bool valid() const { return nonnegative && convex; }
};

/// Checks c_n >= 0 and c_n - c_{n+1} >= c_{n+1} - c_{n+2} >= 0 up to the
/// horizon. The null limit is only certified through the certificate.
NullSeqValidation validate_convex_null(const ConvexNullSeq& seq);

/// Map z + sum_{n>=2} (c_{n-1}/n) z^n with g = b h. Requires |b| < 1, c_0 = 2
/// and a convex-null seq; throws std::invalid_argument otherwise.
HarmonicMap map_from_null_seq_direct(const ConvexNullSeq& seq, Complex b, int N);

/// Map z + sum_{n>=2} (1 + sum_{j<n} c_j)/n z^n with g = b h.
HarmonicMap map_from_null_seq_cumulative(const ConvexNullSeq& seq, Complex b, int N);

// ---------------------------------------------------------------------------
// Sampled positivity checks (numerical evidence, not proof)
// ---------------------------------------------------------------------------

enum class SampledId {
  CurvatureBound,    // Re(1 + z h''/h') > -1/2
  FejerPositivity,   // Re(c_0/2 + sum c_n z^n) > 0
  RotatedHalfplane,  // Re((1 - e^{i phi} z) F'(z)) > 0
  LocalUnivalence,   // |h'| - |g'| > 0
  RegionMembership,  // u + v^2 + 1/4 > 0
};
const char* sampled_id_name(SampledId id);

struct SampledPositivityReport {
  SampledId id;
  double min_value = 0.0;
  double argmin_r = 0.0;
  double argmin_theta = 0.0;
  GridSpec grid;
  double claim_threshold = 0.0;
  bool holds_on_grid = false;  // min_value > claim_threshold
  std::map<std::string, double> params;
};

struct SingularDerivativeError : std::runtime_error {
  SingularDerivativeError(const std::string& msg, std::vector<std::pair<double, double>> pts)
      : std::runtime_error(msg), near_zeros(std::move(pts)) {}
  std::vector<std::pair<double, double>> near_zeros;  // (r, theta) with |h'| < 1e-9
};

/// Samples Re(1 + z h''/h') against the -1/2 bound.
/// Throws SingularDerivativeError when |h'| < 1e-9 somewhere on the grid.
SampledPositivityReport check_curvature_bound(const CoeffSeq& h, const GridSpec& grid);

/// Samples Re(c_0/2 + sum_{n=1}^{N} c_n z^n) against 0.
SampledPositivityReport check_fejer_positivity(const ConvexNullSeq& seq, const GridSpec& grid,
                                               int N);

/// Samples Re((1 - e^{i phi} z) F'(z)) against 0.
SampledPositivityReport check_halfplane_rotated(const CoeffSeq& F, double phi,
                                                const GridSpec& grid);

/// min over the grid of |h'| - |g'| wrapped as a positivity report.
SampledPositivityReport check_local_univalence(const HarmonicMap& map, const GridSpec& grid);

}  // namespace ctc

#endif
