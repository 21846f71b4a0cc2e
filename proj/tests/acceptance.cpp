// Acceptance suite: runs every shipping criterion at its stated tolerance and
// prints one line per criterion. Exit status = number of failed criteria.
//
// Usage: acceptance <path-to-ctc-binary>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ctc/criteria.hpp"
#include "ctc/families.hpp"
#include "ctc/geometry.hpp"
#include "ctc/render.hpp"
#include "ctc/series.hpp"

namespace fs = std::filesystem;
using namespace ctc;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& what, const std::function<std::string()>& body) {
  std::string detail;
  bool ok = true;
  try {
    detail = body();
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  if (!detail.empty() && detail.rfind("FAIL", 0) == 0) ok = false;
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << what;
  if (!detail.empty()) std::cout << " -- " << detail;
  std::cout << "\n";
  if (!ok) ++g_failures;
}

std::string fail(const std::string& why) { return "FAIL: " + why; }

double total_of(const ConditionReport& r) {
  return r.partial_sum + (r.tail_bound ? *r.tail_bound : 0.0);
}

CoeffSeq seq_of(const std::vector<Complex>& by_power) {
  CoeffSeq s;
  s.coeffs = by_power;
  return s;
}

// reference triple loop for the double-binomial sum, no shared code with the
// library implementation
double naive_binomial_double(const std::vector<Complex>& a, double alpha, double beta, int hi) {
  auto A = [&](int j) {
    return (j >= 1 && j < static_cast<int>(a.size())) ? a[static_cast<std::size_t>(j)]
                                                      : Complex{0.0, 0.0};
  };
  auto C = [](double x, int m) {
    double c = 1.0;
    for (int i = 1; i <= m; ++i) c *= (x - i + 1) / i;
    return c;
  };
  double total = 0.0;
  for (int n = 2; n <= hi; ++n) {
    Complex t1{0.0, 0.0}, t2{0.0, 0.0};
    for (int k = 1; k <= n; ++k) {
      for (int j = 1; j <= k; ++j) {
        const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
        const double w = sign * C(alpha, k - j) * C(beta, n - k);
        t1 += w * (static_cast<double>(j) * (j + 1)) * A(j);
        t2 += w * (static_cast<double>(j) * (j - 1)) * A(j);
      }
    }
    total += std::abs(t1) + std::abs(t2);
  }
  return total;
}

std::vector<Complex> random_vector(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(2, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int L = len(rng);
  std::vector<Complex> a(static_cast<std::size_t>(L) + 1, Complex{0.0, 0.0});
  a[1] = 1.0;
  for (int n = 2; n <= L; ++n) {
    a[static_cast<std::size_t>(n)] = std::polar(std::sqrt(unit(rng)), 2.0 * M_PI * unit(rng));
  }
  return a;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string ctc_bin = argc > 1 ? argv[1] : "";

  criterion(1, "hypocycloid linear coefficient sum sits on the boundary", [] {
    const ConditionReport r = check_linear_coeff_sum(from_family(Family::Hypocycloid, 64));
    if (std::abs(r.partial_sum - 1.0) > 1e-12) return fail("partial != 1");
    if (r.verdict != Verdict::Pass) return fail("verdict not Pass");
    return std::string("partial = ") + std::to_string(r.partial_sum);
  });

  criterion(2, "log family rotated-difference total is 1 at phi = 0", [] {
    for (double m : {0.25, 0.5, 1.0}) {
      const HarmonicMap map = from_family(Family::Log, FamilyParams{m, {}}, 64);
      const ConditionReport r = check_rotated_difference(map, 0.0);
      if (std::abs(total_of(r) - 1.0) > 1e-12) return fail("total != 1 at m = " + std::to_string(m));
      if (r.verdict != Verdict::Pass) return fail("verdict not Pass at m = " + std::to_string(m));
    }
    return std::string("m in {0.25, 0.5, 1.0}");
  });

  criterion(3, "dilog pair-difference sum telescopes to 2 - 2/N with tail 2/N", [] {
    for (int N : {10, 50, 100}) {
      const ConditionReport r = check_pair_diff(from_family(Family::Dilog, N).h);
      if (std::abs(r.partial_sum - (2.0 - 2.0 / N)) > 1e-12) {
        return fail("partial mismatch at N = " + std::to_string(N));
      }
      if (!r.tail_bound) return fail("missing tail at N = " + std::to_string(N));
      if (std::abs(total_of(r) - 2.0) > 1e-12) return fail("total != 2 at N = " + std::to_string(N));
      if (r.verdict != Verdict::Pass) return fail("verdict not Pass at N = " + std::to_string(N));
    }
    return std::string("N in {10, 50, 100}");
  });

  criterion(4, "binomial double sum specializes to the square and pair sums", [] {
    std::mt19937 rng(20240817);
    double worst00 = 0.0, worst10 = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = random_vector(rng);
      const CoeffSeq h = seq_of(a);
      worst00 = std::max(worst00, std::abs(check_binomial_double(h, 0.0, 0.0).partial_sum -
                                           2.0 * check_square_sum(h).partial_sum));
      worst10 = std::max(worst10, std::abs(check_binomial_double(h, 1.0, 0.0).partial_sum -
                                           check_pair_diff(h).partial_sum));
    }
    if (worst00 > 1e-12) return fail("alpha=beta=0 deviates by " + std::to_string(worst00));
    if (worst10 > 1e-12) return fail("alpha=1,beta=0 deviates by " + std::to_string(worst10));
    const auto a = random_vector(rng);
    const double lib = check_binomial_double(seq_of(a), 0.5, 0.7).partial_sum;
    const double ref = naive_binomial_double(a, 0.5, 0.7, static_cast<int>(a.size()) - 1);
    if (std::abs(lib - ref) > 1e-9 * std::max(1.0, ref)) return fail("oracle mismatch");
    std::ostringstream os;
    os << "max deviations " << worst00 << " / " << worst10;
    return os.str();
  });

  criterion(5, "parabola-region inequality holds on the dense sample grid", [] {
    const HarmonicMap map = from_family(Family::Parabola, 4096);
    const GridSpec grid = default_grid();
    double min_slack = 1e300;
    for (double r : grid.radii) {
      const RegionSlack s = region_slack(trace_circle_image(map, r, grid.angular_steps));
      min_slack = std::min(min_slack, s.min_slack);
    }
    if (!(min_slack > 0.0)) return fail("slack " + std::to_string(min_slack));
    for (int i = 0; i <= 99; ++i) {
      const double r = 0.999 * i / 99.0;
      for (int j = 0; j <= 99; ++j) {
        const double t = -1.0 + 2.0 * j / 99.0;
        const auto [phi, psi] = phi_psi_profile(r, t);
        if (!(phi <= psi + 1e-15)) return fail("phi > psi");
        if (!(1.0 - psi > 0.0)) return fail("psi >= 1");
      }
    }
    std::ostringstream os;
    os << "min slack " << min_slack;
    return os.str();
  });

  criterion(6, "curvature bound: parabola h passes, z - z^2/2 fails", [] {
    const SampledPositivityReport par =
        check_curvature_bound(from_family(Family::Parabola, 4096).h, default_grid());
    if (!par.holds_on_grid) return fail("parabola min " + std::to_string(par.min_value));
    // closed-form oracle (1+2z)/(1-z) at random moderate points
    const HarmonicMap m64 = from_family(Family::Parabola, 64);
    const CoeffSeq hp = derivative(m64.h);
    const CoeffSeq hpp = derivative(hp);
    auto horner = [](const std::vector<Complex>& c, Complex z) {
      Complex acc{0.0, 0.0};
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
      return acc;
    };
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> rad(0.0, 0.45);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Complex z = std::polar(rad(rng), ang(rng));
      const Complex series = Complex{1.0, 0.0} + z * horner(hpp.coeffs, z) / horner(hp.coeffs, z);
      const Complex closed = (Complex{1.0, 0.0} + 2.0 * z) / (Complex{1.0, 0.0} - z);
      worst = std::max(worst, std::abs(series - closed));
    }
    if (worst > 1e-9) return fail("oracle deviation " + std::to_string(worst));
    CoeffSeq counter;
    counter.coeffs = {Complex{0, 0}, Complex{1, 0}, Complex{-0.5, 0}};
    if (check_curvature_bound(counter, default_grid()).holds_on_grid) {
      return fail("z - z^2/2 did not fail");
    }
    std::ostringstream os;
    os << "min " << par.min_value << ", oracle dev " << worst;
    return os.str();
  });

  criterion(7, "coupling g' = z h' reproduces b_n = (n-1)/2 exactly", [] {
    CoeffSeq h;
    h.coeffs.assign(65, Complex{0.0, 0.0});
    for (int n = 1; n <= 64; ++n) h.coeffs[static_cast<std::size_t>(n)] = 0.5 * (n + 1);
    const CoeffSeq g = couple_g_from_h(h, 2);
    for (int n = 1; n <= 64; ++n) {
      if (g.at(n) != Complex{0.5 * (n - 1), 0.0}) {
        return fail("b_" + std::to_string(n) + " not exact");
      }
    }
    return std::string("n <= 64 exact");
  });

  criterion(8, "null-sequence constructors reproduce the closed coefficient forms", [] {
    const HarmonicMap direct =
        map_from_null_seq_direct(convex_seq_reciprocal(80), {0.25, 0.0}, 64);
    for (int n = 2; n <= 64; ++n) {
      if (std::abs(direct.a(n) - Complex{2.0 / (static_cast<double>(n) * n), 0.0}) > 1e-12) {
        return fail("direct a_" + std::to_string(n));
      }
      if (std::abs(direct.bcoef(n) - 0.25 * direct.a(n)) > 1e-12) {
        return fail("direct b_" + std::to_string(n));
      }
    }
    const HarmonicMap cumulative =
        map_from_null_seq_cumulative(convex_seq_halving(80), {0.25, 0.0}, 64);
    for (int n = 2; n <= 64; ++n) {
      const double expect = (3.0 - std::ldexp(1.0, 2 - n)) / n;
      if (std::abs(cumulative.a(n) - Complex{expect, 0.0}) > 1e-12) {
        return fail("cumulative a_" + std::to_string(n));
      }
    }
    return std::string("a_n = 2/n^2 and (3 - 2^{2-n})/n");
  });

  criterion(9, "convex-null validation accepts both reference sequences, rejects the spike", [] {
    const ConvexNullSeq rec = convex_seq_reciprocal(64);
    for (int n = 0; n <= 50; ++n) {
      const double d = rec.values(n) - rec.values(n + 1);
      if (std::abs(d - 2.0 / ((n + 1.0) * (n + 2.0))) > 1e-12) return fail("reciprocal diff");
    }
    const ConvexNullSeq halv = convex_seq_halving(64);
    for (int n = 0; n <= 50; ++n) {
      if (std::abs((halv.values(n) - halv.values(n + 1)) - std::ldexp(1.0, -n)) > 1e-12) {
        return fail("halving diff");
      }
    }
    if (!validate_convex_null(rec).valid()) return fail("reciprocal rejected");
    if (!validate_convex_null(halv).valid()) return fail("halving rejected");
    const NullSeqValidation bad = validate_convex_null(convex_seq_from_values({2.0, 1.0, 0.9}, 8));
    if (bad.valid()) return fail("spike accepted");
    if (bad.first_convex_violation != 1) return fail("violation not at n = 1");
    return std::string("differences match to 1e-12, spike rejected at n = 1");
  });

  criterion(10, "Fejer positivity holds on the sampled disk for both sequences", [] {
    const auto rec = check_fejer_positivity(convex_seq_reciprocal(), default_grid(), 64);
    if (!rec.holds_on_grid) return fail("reciprocal min " + std::to_string(rec.min_value));
    const auto halv = check_fejer_positivity(convex_seq_halving(), default_grid(), 64);
    if (!halv.holds_on_grid) return fail("halving min " + std::to_string(halv.min_value));
    std::ostringstream os;
    os << "mins " << rec.min_value << " / " << halv.min_value;
    return os.str();
  });

  criterion(11, "hypocycloid boundary shows exactly six cusps at k pi/3", [] {
    const auto cusps =
        cusp_detect(trace_circle_image(from_family(Family::Hypocycloid, 64), 1.0, 720), 0.05);
    if (cusps.size() != 6) return fail(std::to_string(cusps.size()) + " cusps");
    for (int k = -3; k <= 2; ++k) {
      if (std::abs(cusps[static_cast<std::size_t>(k + 3)] - k * M_PI / 3.0) > 0.01) {
        return fail("cusp offset at k = " + std::to_string(k));
      }
    }
    return std::string("6 cusps within 0.01 rad");
  });

  criterion(12, "boundary concavity indicator stays nonpositive for the coupled map", [] {
    const ConcavityReport r =
        concavity_indicator(from_family(Family::Parabola, 64), 1.0 - 1e-6, 720);
    if (r.max_im > 1e-6) return fail("max Im = " + std::to_string(r.max_im));
    std::ostringstream os;
    os << "max Im(w''/w') = " << r.max_im;
    return os.str();
  });

  criterion(13, "reproduce-paper emits six figures plus a byte-stable report", [&] {
    if (ctc_bin.empty()) return fail("no CLI binary path given");
    const fs::path base = fs::temp_directory_path() / "ctc_acceptance";
    fs::remove_all(base);
    const fs::path d1 = base / "run1";
    const fs::path d2 = base / "run2";
    for (const fs::path& d : {d1, d2}) {
      const std::string cmd =
          "\"" + ctc_bin + "\" reproduce-paper --out \"" + d.string() + "\" >/dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) return fail("reproduce-paper exited nonzero");
    }
    std::vector<std::string> svgs;
    bool has_report = false;
    for (const auto& entry : fs::directory_iterator(d1)) {
      const std::string name = entry.path().filename().string();
      if (name.size() > 4 && name.substr(name.size() - 4) == ".svg") svgs.push_back(name);
      if (name == "report.json") has_report = true;
    }
    if (svgs.size() != 6) return fail(std::to_string(svgs.size()) + " svg files");
    if (!has_report) return fail("report.json missing");
    std::sort(svgs.begin(), svgs.end());
    for (const std::string& name : svgs) {
      if (read_file(d1 / name) != read_file(d2 / name)) return fail(name + " differs");
    }
    if (read_file(d1 / "report.json") != read_file(d2 / "report.json")) {
      return fail("report.json differs");
    }
    fs::remove_all(base);
    return std::string("6 figures + report.json, second run byte-identical");
  });

  std::cout << (g_failures == 0 ? "all criteria passed\n"
                                : std::to_string(g_failures) + " criterion(s) failed\n");
  return g_failures;
}
