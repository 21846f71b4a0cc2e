#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "ctc/criteria.hpp"
#include "ctc/families.hpp"
#include "ctc/geometry.hpp"
#include "ctc/render.hpp"
#include "ctc/series.hpp"
#include "ctc/version.hpp"

namespace fs = std::filesystem;

namespace ctc::cli {

namespace {

struct MapOptions {
  std::string family;
  std::string map_path;
  double m = 1.0;
  std::vector<double> b;
  int N = 64;
  bool n_given = false;
};

void add_map_options(CLI::App* cmd, MapOptions& opt) {
  cmd->add_option("--family", opt.family, "built-in family id");
  cmd->add_option("--map", opt.map_path, "path to a MapSpec JSON document");
  cmd->add_option("--m", opt.m, "log family parameter, 0 < m <= 1");
  cmd->add_option("--b", opt.b, "co-analytic scale for the null-* families (re [im])")
      ->expected(1, 2);
  cmd->add_option("--N", opt.N, "truncation order (default 64)");
}

MapSpec resolve_spec(const MapOptions& opt) {
  if (opt.family.empty() == opt.map_path.empty()) {
    throw std::invalid_argument("exactly one of --family or --map is required");
  }
  if (!opt.map_path.empty()) {
    std::ifstream in(opt.map_path);
    if (!in) throw std::runtime_error("cannot open map spec: " + opt.map_path);
    std::stringstream ss;
    ss << in.rdbuf();
    MapSpec spec = parse_map_spec(ss.str());
    if (opt.n_given && spec.family) spec.truncation = opt.N;
    return spec;
  }
  const auto fam = family_from_id(opt.family);
  if (!fam) {
    std::string known;
    for (const auto& k : known_family_ids()) {
      if (!known.empty()) known += ", ";
      known += k;
    }
    throw std::invalid_argument("unknown family '" + opt.family + "' (known ids: " + known + ")");
  }
  MapSpec spec;
  FamilySpec fspec;
  fspec.id = *fam;
  fspec.m = opt.m;
  if (!opt.b.empty()) fspec.b = Complex{opt.b[0], opt.b.size() > 1 ? opt.b[1] : 0.0};
  spec.family = fspec;
  spec.truncation = opt.N;
  return spec;
}

GridSpec resolve_grid(const std::vector<double>& radii, int steps) {
  GridSpec grid = default_grid();
  if (!radii.empty()) grid.radii = radii;
  grid.angular_steps = steps;
  validate_grid(grid);
  return grid;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << text;
  if (!f) throw std::runtime_error("write failure: " + path);
}

std::set<std::string> default_requested(const MapSpec& spec) {
  if (!spec.family) {
    return {"linear_sum", "rotated_diff", "square_sum", "pair_diff"};
  }
  switch (spec.family->id) {
    case Family::Identity:
    case Family::Hypocycloid:
      return {"linear_sum"};
    case Family::Parabola:
      return {"curvature_bound"};
    case Family::Log:
      return {"rotated_diff"};
    case Family::Dilog:
      return {"pair_diff"};
    case Family::NullDirect:
    case Family::NullCumulative:
      return {"seq_validation", "fejer_positivity"};
  }
  return {};
}

std::optional<ConvexNullSeq> family_sequence(const MapSpec& spec) {
  if (!spec.family) return std::nullopt;
  if (spec.family->id == Family::NullDirect) return convex_seq_reciprocal();
  if (spec.family->id == Family::NullCumulative) return convex_seq_halving();
  return std::nullopt;
}

std::string summarize(const ConditionReport& r) {
  std::ostringstream os;
  os << condition_id_name(r.id) << ": " << verdict_name(r.verdict)
     << " (partial=" << r.partial_sum;
  if (r.tail_bound) os << ", tail=" << *r.tail_bound;
  os << ", threshold=" << r.threshold << ", margin=" << r.margin << ")";
  return os.str();
}

std::string summarize(const SampledPositivityReport& r) {
  std::ostringstream os;
  os << sampled_id_name(r.id) << ": " << (r.holds_on_grid ? "SampledPass" : "SampledFail")
     << " (min=" << r.min_value << " at r=" << r.argmin_r << ", theta=" << r.argmin_theta
     << ", threshold=" << r.claim_threshold << ")";
  return os.str();
}

struct CheckOutcome {
  ReportDocument doc;
  bool any_requested_failed = false;
};

CheckOutcome run_checks(const MapSpec& spec, const GridSpec& grid,
                        const std::set<std::string>& requested, std::optional<double> phi,
                        std::optional<std::pair<double, double>> alpha_beta, bool full_report,
                        int geometry_order, std::ostream& err) {
  CheckOutcome outcome;
  ReportDocument& doc = outcome.doc;
  doc.spec = spec;
  doc.version = kVersion;
  doc.grid = grid;
  doc.truncation = spec.truncation;

  const HarmonicMap map = build_map(spec, &doc.warnings);
  auto requested_failed = [&](const std::string& key, bool pass) {
    if (requested.count(key) && !pass) outcome.any_requested_failed = true;
  };

  {
    const ConditionReport r = check_linear_coeff_sum(map);
    requested_failed("linear_sum", r.verdict != Verdict::Fail);
    doc.conditions.push_back(r);
  }
  {
    ConditionReport r =
        phi ? check_rotated_difference(map, *phi) : best_phi(map).second;
    requested_failed("rotated_diff", r.verdict != Verdict::Fail);
    doc.conditions.push_back(std::move(r));
  }
  {
    const ConditionReport r = check_square_sum(map.h);
    requested_failed("square_sum", r.verdict != Verdict::Fail);
    doc.conditions.push_back(r);
  }
  {
    const ConditionReport r = check_pair_diff(map.h);
    requested_failed("pair_diff", r.verdict != Verdict::Fail);
    doc.conditions.push_back(r);
  }
  if (alpha_beta) {
    const ConditionReport r = check_binomial_double(map.h, alpha_beta->first, alpha_beta->second);
    requested_failed("binomial_double", r.verdict != Verdict::Fail);
    doc.conditions.push_back(r);
  }

  // family maps deepen the truncation for near-boundary sampling; explicit
  // coefficient lists are exact polynomials and are sampled as given
  auto geometry_map = [&](int order) {
    MapSpec geo_spec = spec;
    if (geo_spec.family) geo_spec.truncation = std::max(geo_spec.truncation, order);
    return std::make_pair(build_map(geo_spec), geo_spec.truncation);
  };

  const bool want_curvature = requested.count("curvature_bound") > 0 || full_report;
  if (want_curvature) {
    try {
      const auto [geo, order] = geometry_map(geometry_order);
      SampledPositivityReport r = check_curvature_bound(geo.h, grid);
      r.params["N"] = static_cast<double>(order);
      requested_failed("curvature_bound", r.holds_on_grid);
      doc.sampled.push_back(std::move(r));
    } catch (const SingularDerivativeError& e) {
      if (requested.count("curvature_bound")) throw;
      doc.warnings.push_back(std::string("curvature check skipped: ") + e.what());
    }
  }

  if (const auto seq = family_sequence(spec)) {
    doc.seq_validation = validate_convex_null(*seq);
    requested_failed("seq_validation", doc.seq_validation->valid());
    SampledPositivityReport r = check_fejer_positivity(*seq, grid, spec.truncation);
    requested_failed("fejer_positivity", r.holds_on_grid);
    doc.sampled.push_back(std::move(r));
  }

  if (full_report || requested.count("local_univalence")) {
    const auto [geo, order] = geometry_map(geometry_order);
    SampledPositivityReport r = check_local_univalence(geo, grid);
    r.params["N"] = static_cast<double>(order);
    requested_failed("local_univalence", r.holds_on_grid);
    doc.sampled.push_back(std::move(r));
  }

  if (full_report) {
    try {
      doc.concavity = concavity_indicator(map, 1.0, grid.angular_steps);
    } catch (const std::exception& e) {
      doc.warnings.push_back(std::string("concavity indicator skipped: ") + e.what());
    }
    doc.cusps = cusp_detect(trace_circle_image(map, 1.0, grid.angular_steps), 0.05);
    if (spec.family && spec.family->id == Family::Parabola) {
      MapSpec region_spec = spec;
      region_spec.truncation = std::max(spec.truncation, 4096);
      const HarmonicMap region_map = build_map(region_spec);
      SampledPositivityReport r;
      r.id = SampledId::RegionMembership;
      r.grid = grid;
      r.claim_threshold = 0.0;
      r.min_value = std::numeric_limits<double>::infinity();
      for (double radius : grid.radii) {
        const auto samples = trace_circle_image(region_map, radius, grid.angular_steps);
        const RegionSlack slack = region_slack(samples);
        if (slack.min_slack < r.min_value) {
          r.min_value = slack.min_slack;
          r.argmin_r = radius;
          r.argmin_theta = slack.argmin_t;
        }
      }
      r.params["N"] = static_cast<double>(region_spec.truncation);
      r.holds_on_grid = r.min_value > 0.0;
      doc.sampled.push_back(std::move(r));
    }
  }

  for (const ConditionReport& r : doc.conditions) err << "  " << summarize(r) << "\n";
  for (const SampledPositivityReport& r : doc.sampled) err << "  " << summarize(r) << "\n";
  if (doc.seq_validation) {
    err << "  seq_validation: " << (doc.seq_validation->valid() ? "valid" : "invalid") << "\n";
  }
  for (const std::string& w : doc.warnings) err << "  warning: " << w << "\n";
  return outcome;
}

int cmd_check_or_report(const MapOptions& mopt, const std::vector<double>& radii, int steps,
                        std::optional<double> phi, std::optional<std::pair<double, double>> ab,
                        const std::vector<std::string>& conditions, const std::string& out_path,
                        bool full_report, std::ostream& out, std::ostream& err) {
  const MapSpec spec = resolve_spec(mopt);
  const GridSpec grid = resolve_grid(radii, steps);

  std::set<std::string> requested;
  if (!conditions.empty()) {
    requested.insert(conditions.begin(), conditions.end());
  } else {
    requested = default_requested(spec);
    if (phi) requested.insert("rotated_diff");
    if (ab) requested.insert("binomial_double");
  }

  const CheckOutcome outcome =
      run_checks(spec, grid, requested, phi, ab, full_report, 4096, err);
  std::ostringstream json;
  write_report_json(outcome.doc, json);
  write_text(out_path, json.str(), out);
  return outcome.any_requested_failed ? 1 : 0;
}

int cmd_trace(const MapOptions& mopt, double r, int steps, const std::string& out_path,
              std::ostream& out, std::ostream&) {
  const MapSpec spec = resolve_spec(mopt);
  const HarmonicMap map = build_map(spec);
  const auto samples = trace_circle_image(map, r, steps);
  std::ostringstream csv;
  write_curve_csv(samples, csv);
  write_text(out_path, csv.str(), out);
  return 0;
}

double boundary_radius(const HarmonicMap& map) { return singular_on_circle(map) ? 0.95 : 1.0; }

int cmd_render(const MapOptions& mopt, std::vector<double> radii, int steps, bool overlay,
               const std::string& out_path, std::ostream& out, std::ostream&) {
  const MapSpec spec = resolve_spec(mopt);
  const HarmonicMap map = build_map(spec);
  if (radii.empty()) {
    radii = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    radii.push_back(boundary_radius(map));
  }
  std::vector<std::pair<double, std::vector<CurveSample>>> curves;
  for (double r : radii) curves.emplace_back(r, trace_circle_image(map, r, steps));
  SvgOptions options;
  options.overlay_parabola = overlay;
  options.title = spec.family ? family_id(spec.family->id) : "explicit map";
  write_text(out_path, write_svg(curves, options), out);
  return 0;
}

int cmd_construct(const std::string& rule, const std::string& seq_id, std::vector<double> bvec,
                  int N, const std::string& out_path, std::ostream& out, std::ostream& err) {
  ConvexNullSeq seq = [&] {
    if (seq_id == "harmonic") return convex_seq_reciprocal(std::max(64, N + 1));
    if (seq_id == "geometric") return convex_seq_halving(std::max(64, N + 1));
    throw std::invalid_argument("unknown sequence id '" + seq_id +
                                "' (known: harmonic, geometric)");
  }();
  const Complex b{bvec.empty() ? 0.25 : bvec[0], bvec.size() > 1 ? bvec[1] : 0.0};
  HarmonicMap map = [&] {
    if (rule == "direct") return map_from_null_seq_direct(seq, b, N);
    if (rule == "cumulative") return map_from_null_seq_cumulative(seq, b, N);
    throw std::invalid_argument("unknown rule '" + rule + "' (known: direct, cumulative)");
  }();

  MapSpec spec;
  ExplicitSpec es;
  for (int n = 1; n <= map.order; ++n) {
    es.h.push_back(map.a(n));
    es.g.push_back(map.bcoef(n));
  }
  spec.explicit_coeffs = std::move(es);
  spec.truncation = map.order;
  write_text(out_path, write_map_spec(spec) + "\n", out);

  const NullSeqValidation v = validate_convex_null(seq);
  err << "  sequence " << seq_id << ": " << (v.valid() ? "valid" : "invalid")
      << (v.null_certified ? ", null limit certified" : ", null limit unverified") << "\n";
  return 0;
}

struct PaperMap {
  std::string figure;
  MapSpec spec;
  int figure_order;
  bool overlay;
  double rotated_phi;  // negative = search
};

int cmd_reproduce(const std::string& out_dir, std::ostream&, std::ostream& err) {
  if (out_dir.empty()) throw std::invalid_argument("reproduce-paper requires --out DIR");
  fs::create_directories(out_dir);

  auto family_spec = [](Family f, int N) {
    MapSpec s;
    s.family = FamilySpec{f, 1.0, Complex{0.25, 0.0}};
    s.truncation = N;
    return s;
  };

  const std::vector<PaperMap> plan = {
      {"fig1_parabola.svg", family_spec(Family::Parabola, 64), 4096, true, -1.0},
      {"fig2_hypocycloid.svg", family_spec(Family::Hypocycloid, 64), 64, false, -1.0},
      {"fig3_log.svg", family_spec(Family::Log, 64), 4096, false, 0.0},
      {"fig4_dilog.svg", family_spec(Family::Dilog, 64), 4096, false, 0.0},
      {"fig5_null_direct.svg", family_spec(Family::NullDirect, 64), 4096, false, 0.0},
      {"fig6_null_cumulative.svg", family_spec(Family::NullCumulative, 64), 4096, false, 0.0},
  };

  const GridSpec grid = default_grid();
  std::vector<ReportDocument> docs;
  for (const PaperMap& pm : plan) {
    // figure
    MapSpec fig_spec = pm.spec;
    fig_spec.truncation = pm.figure_order;
    const HarmonicMap fig_map = build_map(fig_spec);
    std::vector<std::pair<double, std::vector<CurveSample>>> curves;
    for (double r : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, boundary_radius(fig_map)}) {
      curves.emplace_back(r, trace_circle_image(fig_map, r, 720));
    }
    SvgOptions options;
    options.overlay_parabola = pm.overlay;
    options.title = family_id(pm.spec.family->id);
    std::ofstream svg(fs::path(out_dir) / pm.figure, std::ios::binary);
    if (!svg) throw std::runtime_error("cannot write " + pm.figure);
    svg << write_svg(curves, options);
    err << "  wrote " << pm.figure << "\n";

    // consolidated checker outcomes
    const std::set<std::string> requested;  // reproduce is informational
    std::ostringstream quiet;
    CheckOutcome outcome = run_checks(
        pm.spec, grid, requested,
        pm.rotated_phi >= 0.0 ? std::optional<double>(pm.rotated_phi) : std::nullopt,
        std::nullopt, true, 4096, quiet);
    docs.push_back(std::move(outcome.doc));
  }

  std::ofstream rep(fs::path(out_dir) / "report.json", std::ios::binary);
  if (!rep) throw std::runtime_error("cannot write report.json");
  write_consolidated_json(docs, rep);
  err << "  wrote report.json\n";
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"close-to-convexity analysis of planar harmonic mappings"};
  app.require_subcommand(1);

  MapOptions mopt;
  std::vector<double> grid_radii;
  int steps = 720;
  double phi_value = 0.0;
  double alpha = 0.0, beta = 0.0;
  std::vector<std::string> conditions;
  std::string out_path;
  double trace_r = 0.9;
  bool overlay = false;
  std::string rule, seq_id;
  std::vector<double> construct_b;

  auto add_common = [&](CLI::App* cmd) {
    add_map_options(cmd, mopt);
    cmd->add_option("--grid-radii", grid_radii, "sampling radii (strictly increasing, < 1)")
        ->delimiter(',');
    cmd->add_option("--steps", steps, "angular steps per circle (default 720)");
    cmd->add_option("--out", out_path, "output path (default stdout)");
  };

  CLI::App* check = app.add_subcommand("check", "run the coefficient checkers");
  add_common(check);
  CLI::Option* phi_opt = check->add_option("--phi", phi_value, "rotation angle in [0, 2*pi)");
  CLI::Option* alpha_opt = check->add_option("--alpha", alpha, "binomial double-sum alpha");
  CLI::Option* beta_opt = check->add_option("--beta", beta, "binomial double-sum beta");
  check->add_option("--conditions", conditions, "verdicts that drive the exit status")
      ->delimiter(',');

  CLI::App* report = app.add_subcommand("report", "full checker + geometry report");
  add_common(report);
  CLI::Option* rphi_opt = report->add_option("--phi", phi_value, "rotation angle in [0, 2*pi)");
  CLI::Option* ralpha_opt = report->add_option("--alpha", alpha, "binomial double-sum alpha");
  CLI::Option* rbeta_opt = report->add_option("--beta", beta, "binomial double-sum beta");

  CLI::App* trace = app.add_subcommand("trace", "emit a traced circle image as CSV");
  add_common(trace);
  trace->add_option("--r", trace_r, "circle radius in (0, 1]");

  CLI::App* render = app.add_subcommand("render", "emit traced circles as SVG");
  add_common(render);
  render->add_flag("--overlay-parabola", overlay, "draw u = -v^2 - 1/4");

  CLI::App* construct = app.add_subcommand("construct", "build a map from a convex null sequence");
  construct->add_option("--rule", rule, "direct | cumulative")->required();
  construct->add_option("--seq", seq_id, "harmonic | geometric")->required();
  construct->add_option("--b", construct_b, "co-analytic scale, |b| < 1")->expected(1, 2);
  construct->add_option("--N", mopt.N, "truncation order (default 64)");
  construct->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* reproduce = app.add_subcommand("reproduce-paper", "regenerate figures and report");
  reproduce->add_option("--out", out_path, "output directory")->required();

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  storage.insert(storage.begin(), "ctc");
  argv.reserve(storage.size());
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    mopt.n_given = check->count("--N") || report->count("--N") || trace->count("--N") ||
                   render->count("--N");
    if (app.got_subcommand(check) || app.got_subcommand(report)) {
      const bool full = app.got_subcommand(report);
      std::optional<double> phi;
      if ((full ? rphi_opt : phi_opt)->count()) phi = phi_value;
      std::optional<std::pair<double, double>> ab;
      const bool has_ab = full ? (ralpha_opt->count() || rbeta_opt->count())
                               : (alpha_opt->count() || beta_opt->count());
      if (has_ab) ab = std::make_pair(alpha, beta);
      return cmd_check_or_report(mopt, grid_radii, steps, phi, ab, conditions, out_path, full,
                                 out, err);
    }
    if (app.got_subcommand(trace)) return cmd_trace(mopt, trace_r, steps, out_path, out, err);
    if (app.got_subcommand(render)) {
      return cmd_render(mopt, grid_radii, steps, overlay, out_path, out, err);
    }
    if (app.got_subcommand(construct)) {
      return cmd_construct(rule, seq_id, construct_b, mopt.N, out_path, out, err);
    }
    if (app.got_subcommand(reproduce)) return cmd_reproduce(out_path, out, err);
    err << "error: no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ctc::cli
