#include "ctc/render.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ctc {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_svg(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8g", x);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

Complex parse_complex_entry(const json& j, const std::string& field) {
  if (j.is_number()) return Complex{j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex{j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError("map spec: field '" + field + "' must be a number or an [re, im] pair");
}

std::vector<Complex> parse_coeff_array(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError("map spec: field '" + field + "' must be an array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& item : j) out.push_back(parse_complex_entry(item, field));
  return out;
}

}  // namespace

MapSpec parse_map_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("map spec: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("map spec: document root must be an object");

  const bool has_family = doc.contains("family");
  const bool has_explicit = doc.contains("explicit");
  if (has_family == has_explicit) {
    throw ParseError("map spec: exactly one of 'family' or 'explicit' must be present");
  }

  MapSpec spec;
  if (has_family) {
    if (!doc["family"].is_string()) throw ParseError("map spec: field 'family' must be a string");
    const std::string id = doc["family"].get<std::string>();
    const auto fam = family_from_id(id);
    if (!fam) {
      std::string known;
      for (const auto& k : known_family_ids()) {
        if (!known.empty()) known += ", ";
        known += k;
      }
      throw ParseError("map spec: unknown family '" + id + "' (known ids: " + known + ")");
    }
    FamilySpec fs;
    fs.id = *fam;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      const std::string& key = it.key();
      if (key == "family" || key == "N") continue;
      if (key == "m") {
        if (*fam != Family::Log) throw ParseError("map spec: field 'm' only applies to 'log'");
        if (!it.value().is_number()) throw ParseError("map spec: field 'm' must be a number");
        fs.m = it.value().get<double>();
        if (!(fs.m > 0.0 && fs.m <= 1.0)) throw ParseError("map spec: field 'm' must lie in (0, 1]");
      } else if (key == "b") {
        if (*fam != Family::NullDirect && *fam != Family::NullCumulative) {
          throw ParseError("map spec: field 'b' only applies to the null-* families");
        }
        fs.b = parse_complex_entry(it.value(), "b");
        if (std::abs(fs.b) >= 1.0) throw ParseError("map spec: field 'b' requires |b| < 1");
      } else {
        throw ParseError("map spec: unknown field '" + key + "'");
      }
    }
    spec.family = fs;
    if (doc.contains("N")) {
      if (!doc["N"].is_number_integer()) throw ParseError("map spec: field 'N' must be an integer");
      spec.truncation = doc["N"].get<int>();
      if (spec.truncation < 2) throw ParseError("map spec: field 'N' must be >= 2");
    }
  } else {
    const json& ex = doc["explicit"];
    if (!ex.is_object() || !ex.contains("h")) {
      throw ParseError("map spec: 'explicit' must be an object with an 'h' array");
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (it.key() != "explicit") throw ParseError("map spec: unknown field '" + it.key() + "'");
    }
    for (auto it = ex.begin(); it != ex.end(); ++it) {
      if (it.key() != "h" && it.key() != "g") {
        throw ParseError("map spec: unknown field 'explicit." + it.key() + "'");
      }
    }
    ExplicitSpec es;
    es.h = parse_coeff_array(ex["h"], "explicit.h");
    if (es.h.empty()) throw ParseError("map spec: field 'explicit.h' must be nonempty");
    if (std::abs(es.h[0] - Complex{1.0, 0.0}) > 1e-12) {
      throw ParseError("map spec: field 'explicit.h' must start with [1, 0]");
    }
    if (ex.contains("g")) es.g = parse_coeff_array(ex["g"], "explicit.g");
    spec.explicit_coeffs = es;
    spec.truncation =
        static_cast<int>(std::max<std::size_t>(es.h.size(), es.g.size()));
  }
  return spec;
}

std::string write_map_spec(const MapSpec& spec) {
  std::string out = "{";
  if (spec.family) {
    out += "\"family\":\"";
    out += family_id(spec.family->id);
    out += "\"";
    if (spec.family->id == Family::Log) {
      out += ",\"m\":" + fmt17(spec.family->m);
    }
    if (spec.family->id == Family::NullDirect || spec.family->id == Family::NullCumulative) {
      out += ",\"b\":[" + fmt17(spec.family->b.real()) + "," + fmt17(spec.family->b.imag()) + "]";
    }
    out += ",\"N\":" + std::to_string(spec.truncation);
  } else if (spec.explicit_coeffs) {
    auto coeff_array = [](const std::vector<Complex>& v) {
      std::string s = "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += "[" + fmt17(v[i].real()) + "," + fmt17(v[i].imag()) + "]";
      }
      return s + "]";
    };
    out += "\"explicit\":{\"h\":" + coeff_array(spec.explicit_coeffs->h);
    if (!spec.explicit_coeffs->g.empty()) {
      out += ",\"g\":" + coeff_array(spec.explicit_coeffs->g);
    }
    out += "}";
  }
  out += "}";
  return out;
}

HarmonicMap build_map(const MapSpec& spec, std::vector<std::string>* warnings) {
  if (spec.family) {
    FamilyParams params;
    params.m = spec.family->m;
    params.b = spec.family->b;
    return from_family(spec.family->id, params, spec.truncation);
  }
  if (!spec.explicit_coeffs) throw std::invalid_argument("map spec carries no map");
  const ExplicitSpec& es = *spec.explicit_coeffs;
  CoeffSeq h;
  h.coeffs.assign(es.h.size() + 1, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < es.h.size(); ++i) h.coeffs[i + 1] = es.h[i];
  CoeffSeq g;
  g.coeffs.assign(std::max<std::size_t>(es.g.size() + 1, 2), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < es.g.size(); ++i) g.coeffs[i + 1] = es.g[i];
  if (warnings && !es.g.empty() && std::abs(es.g[0]) >= 1.0) {
    warnings->push_back("|b_1| >= 1: the map cannot be sense-preserving (|g'(0)| >= |h'(0)|)");
  }
  return harmonic_map_from_parts(std::move(h), std::move(g));
}

std::size_t write_curve_csv(const std::vector<CurveSample>& samples, std::ostream& sink) {
  if (samples.empty()) throw std::invalid_argument("write_curve_csv: empty sample list");
  std::string out = "t,u,v,du,dv\n";
  for (const CurveSample& s : samples) {
    out += fmt17(s.t);
    out += ',';
    out += fmt17(s.w.real());
    out += ',';
    out += fmt17(s.w.imag());
    out += ',';
    out += fmt17(s.w1.real());
    out += ',';
    out += fmt17(s.w1.imag());
    out += '\n';
  }
  sink << out;
  if (!sink) throw std::runtime_error("write_curve_csv: sink write failure");
  return out.size();
}

std::string write_svg(const std::vector<std::pair<double, std::vector<CurveSample>>>& curves,
                      const SvgOptions& options) {
  if (curves.empty()) throw std::invalid_argument("write_svg: no curves");
  for (const auto& [r, samples] : curves) {
    if (samples.empty()) throw std::invalid_argument("write_svg: empty curve at r = " + fmt17(r));
  }
  double umin = std::numeric_limits<double>::infinity();
  double umax = -umin, vmin = umin, vmax = -umin;
  for (const auto& [r, samples] : curves) {
    for (const CurveSample& s : samples) {
      umin = std::min(umin, s.w.real());
      umax = std::max(umax, s.w.real());
      vmin = std::min(vmin, s.w.imag());
      vmax = std::max(vmax, s.w.imag());
    }
  }
  const double mx = 0.05 * std::max(umax - umin, 1e-9);
  const double my = 0.05 * std::max(vmax - vmin, 1e-9);
  const double x0 = umin - mx;
  const double bw = (umax - umin) + 2.0 * mx;
  const double y0 = -vmax - my;  // y axis flipped: y = -v
  const double bh = (vmax - vmin) + 2.0 * my;
  const double height = 640.0 * bh / bw;
  const double stroke = bw / options.width;

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
                    fmt_svg(options.width) + "\" height=\"" + fmt_svg(height) + "\" viewBox=\"" +
                    fmt_svg(x0) + " " + fmt_svg(y0) + " " + fmt_svg(bw) + " " + fmt_svg(bh) +
                    "\">\n";
  if (!options.title.empty()) svg += "<title>" + options.title + "</title>\n";

  if (options.overlay_parabola) {
    // u = -v^2 - 1/4, clipped to the traced data's u range
    const double data_span = std::max(std::fabs(vmin), std::fabs(vmax));
    const double reach = std::sqrt(std::max(0.0, -umin - 0.25));
    const double vspan = std::min(data_span, reach > 0.0 ? reach : data_span);
    svg += "<polyline fill=\"none\" stroke=\"#c02020\" stroke-width=\"" + fmt_svg(stroke * 1.2) +
           "\" stroke-dasharray=\"" + fmt_svg(8 * stroke) + " " + fmt_svg(5 * stroke) +
           "\" points=\"";
    const int pts = 256;
    for (int i = 0; i <= pts; ++i) {
      const double v = -vspan + 2.0 * vspan * i / pts;
      if (i) svg += ' ';
      svg += fmt_svg(-v * v - 0.25);
      svg += ',';
      svg += fmt_svg(-v);
    }
    svg += "\"/>\n";
  }

  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const bool boundary = (ci + 1 == curves.size());
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += boundary ? "#000000" : "#9090a0";
    svg += "\" stroke-width=\"";
    svg += fmt_svg(stroke * (boundary ? 2.5 : 1.0));
    svg += "\" points=\"";
    const auto& samples = curves[ci].second;
    for (std::size_t i = 0; i <= samples.size(); ++i) {
      const CurveSample& s = samples[i % samples.size()];  // close the loop
      if (i) svg += ' ';
      svg += fmt_svg(s.w.real());
      svg += ',';
      svg += fmt_svg(-s.w.imag());
    }
    svg += "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

namespace {

std::string condition_report_json(const ConditionReport& r) {
  std::string s = "{\"id\":\"";
  s += condition_id_name(r.id);
  s += "\",\"partial_sum\":" + fmt17(r.partial_sum);
  s += ",\"tail_bound\":";
  s += r.tail_bound ? fmt17(*r.tail_bound) : std::string("null");
  s += ",\"threshold\":" + fmt17(r.threshold);
  s += ",\"margin\":" + fmt17(r.margin);
  s += ",\"verdict\":\"";
  s += verdict_name(r.verdict);
  s += "\",\"horizon\":" + std::to_string(r.horizon);
  s += ",\"params\":{";
  bool first = true;
  for (const auto& [k, v] : r.params) {
    if (!first) s += ",";
    first = false;
    s += "\"" + json_escape(k) + "\":" + fmt17(v);
  }
  s += "}}";
  return s;
}

std::string grid_json(const GridSpec& g) {
  std::string s = "{\"radii\":[";
  for (std::size_t i = 0; i < g.radii.size(); ++i) {
    if (i) s += ",";
    s += fmt17(g.radii[i]);
  }
  s += "],\"angular_steps\":" + std::to_string(g.angular_steps) + "}";
  return s;
}

std::string sampled_report_json(const SampledPositivityReport& r) {
  std::string s = "{\"id\":\"";
  s += sampled_id_name(r.id);
  s += "\",\"min_value\":" + fmt17(r.min_value);
  s += ",\"argmin_r\":" + fmt17(r.argmin_r);
  s += ",\"argmin_theta\":" + fmt17(r.argmin_theta);
  s += ",\"claim_threshold\":" + fmt17(r.claim_threshold);
  s += ",\"verdict\":\"";
  s += r.holds_on_grid ? "SampledPass" : "SampledFail";
  s += "\",\"grid\":" + grid_json(r.grid);
  s += ",\"params\":{";
  bool first = true;
  for (const auto& [k, v] : r.params) {
    if (!first) s += ",";
    first = false;
    s += "\"" + json_escape(k) + "\":" + fmt17(v);
  }
  s += "}}";
  return s;
}

std::string document_json(const ReportDocument& doc) {
  std::string s = "{";
  s += "\"version\":\"" + json_escape(doc.version) + "\"";
  s += ",\"map_spec\":" + write_map_spec(doc.spec);
  s += ",\"truncation\":" + std::to_string(doc.truncation);
  s += ",\"grid\":" + grid_json(doc.grid);
  s += ",\"warnings\":[";
  for (std::size_t i = 0; i < doc.warnings.size(); ++i) {
    if (i) s += ",";
    s += "\"" + json_escape(doc.warnings[i]) + "\"";
  }
  s += "]";
  s += ",\"conditions\":[";
  for (std::size_t i = 0; i < doc.conditions.size(); ++i) {
    if (i) s += ",";
    s += condition_report_json(doc.conditions[i]);
  }
  s += "]";
  s += ",\"sampled\":[";
  for (std::size_t i = 0; i < doc.sampled.size(); ++i) {
    if (i) s += ",";
    s += sampled_report_json(doc.sampled[i]);
  }
  s += "]";
  if (doc.concavity) {
    const ConcavityReport& c = *doc.concavity;
    s += ",\"concavity\":{\"max_im\":" + fmt17(c.max_im);
    s += ",\"argmax_t\":" + fmt17(c.argmax_t);
    s += ",\"radius\":" + fmt17(c.radius_used);
    s += ",\"steps\":" + std::to_string(c.steps);
    s += ",\"excluded_cusps\":[";
    for (std::size_t i = 0; i < c.excluded_cusps.size(); ++i) {
      if (i) s += ",";
      s += fmt17(c.excluded_cusps[i]);
    }
    s += "]}";
  }
  if (doc.cusps) {
    s += ",\"cusps\":[";
    for (std::size_t i = 0; i < doc.cusps->size(); ++i) {
      if (i) s += ",";
      s += fmt17((*doc.cusps)[i]);
    }
    s += "]";
  }
  if (doc.seq_validation) {
    const NullSeqValidation& v = *doc.seq_validation;
    s += ",\"seq_validation\":{";
    s += "\"valid\":";
    s += v.valid() ? "true" : "false";
    s += ",\"nonnegative\":";
    s += v.nonnegative ? "true" : "false";
    s += ",\"first_negative\":" + std::to_string(v.first_negative);
    s += ",\"convex\":";
    s += v.convex ? "true" : "false";
    s += ",\"first_convex_violation\":" + std::to_string(v.first_convex_violation);
    s += ",\"null_certified\":";
    s += v.null_certified ? "true" : "false";
    s += ",\"value_at_horizon\":" + fmt17(v.value_at_horizon);
    s += ",\"horizon\":" + std::to_string(v.horizon);
    s += "}";
  }
  s += "}";
  return s;
}

}  // namespace

std::size_t write_report_json(const ReportDocument& doc, std::ostream& sink) {
  const std::string s = document_json(doc) + "\n";
  sink << s;
  if (!sink) throw std::runtime_error("write_report_json: sink write failure");
  return s.size();
}

std::size_t write_consolidated_json(const std::vector<ReportDocument>& docs, std::ostream& sink) {
  std::string s = "{\"version\":\"";
  s += docs.empty() ? "" : json_escape(docs.front().version);
  s += "\",\"documents\":[";
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (i) s += ",";
    s += document_json(docs[i]);
  }
  s += "]}\n";
  sink << s;
  if (!sink) throw std::runtime_error("write_consolidated_json: sink write failure");
  return s.size();
}

}  // namespace ctc
