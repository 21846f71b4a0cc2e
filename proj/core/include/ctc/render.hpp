#ifndef CTC_RENDER_HPP
#define CTC_RENDER_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctc/criteria.hpp"
#include "ctc/families.hpp"
#include "ctc/geometry.hpp"

namespace ctc {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FamilySpec {
  Family id;
  double m = 1.0;
  Complex b{0.25, 0.0};
};

/// Explicit coefficient lists; index 0 holds the coefficient of z^1.
struct ExplicitSpec {
  std::vector<Complex> h;
  std::vector<Complex> g;
};

/// Exactly one of family / explicit_coeffs is present.
struct MapSpec {
  std::optional<FamilySpec> family;
  std::optional<ExplicitSpec> explicit_coeffs;
  int truncation = 64;
};

/// Parses a JSON MapSpec document. Malformed JSON raises ParseError with the
/// byte position; violated invariants raise ParseError naming the field.
MapSpec parse_map_spec(const std::string& text);

/// Canonical JSON form; parse(write(spec)) == spec.
std::string write_map_spec(const MapSpec& spec);

/// Instantiates the map (via from_family or the explicit coefficients).
/// Returns warnings (e.g. |b_1| >= 1 in user input) through `warnings`.
HarmonicMap build_map(const MapSpec& spec, std::vector<std::string>* warnings = nullptr);

/// CSV rows `t,u,v,du,dv` with 17 significant digits and LF endings.
/// Returns the byte count written.
std::size_t write_curve_csv(const std::vector<CurveSample>& samples, std::ostream& sink);

struct SvgOptions {
  double width = 640.0;           // pixel width; height follows the aspect ratio
  bool overlay_parabola = false;  // draw u = -v^2 - 1/4
  std::string title;
};

/// SVG 1.1 document: one polyline per traced circle, auto-scaled viewBox with
/// a 5% margin, the last (largest-radius) curve drawn boldest, y axis flipped
/// so the imaginary axis points up. Output is deterministic.
std::string write_svg(const std::vector<std::pair<double, std::vector<CurveSample>>>& curves,
                      const SvgOptions& options);

struct ReportDocument {
  MapSpec spec;
  std::vector<ConditionReport> conditions;
  std::vector<SampledPositivityReport> sampled;
  std::optional<ConcavityReport> concavity;
  std::optional<std::vector<double>> cusps;
  std::optional<NullSeqValidation> seq_validation;
  std::vector<std::string> warnings;
  std::string version;
  GridSpec grid;
  int truncation = 64;
};

/// Deterministic JSON with stable key order and 17-significant-digit numbers;
/// infinities are serialized as the strings "inf" / "-inf".
std::size_t write_report_json(const ReportDocument& doc, std::ostream& sink);

/// Several documents under one root (used by reproduce-paper).
std::size_t write_consolidated_json(const std::vector<ReportDocument>& docs, std::ostream& sink);

}  // namespace ctc

#endif
