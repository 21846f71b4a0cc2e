#include "ctc/series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ctc {

namespace {
constexpr double kNormTol = 1e-12;
}

const char* family_id(Family f) {
  switch (f) {
    case Family::Identity: return "identity";
    case Family::Parabola: return "parabola";
    case Family::Hypocycloid: return "hypocycloid";
    case Family::Log: return "log";
    case Family::Dilog: return "dilog";
    case Family::NullDirect: return "null-direct";
    case Family::NullCumulative: return "null-cumulative";
  }
  return "?";
}

std::optional<Family> family_from_id(const std::string& id) {
  for (Family f : {Family::Identity, Family::Parabola, Family::Hypocycloid, Family::Log,
                   Family::Dilog, Family::NullDirect, Family::NullCumulative}) {
    if (id == family_id(f)) return f;
  }
  return std::nullopt;
}

std::vector<std::string> known_family_ids() {
  std::vector<std::string> ids;
  for (Family f : {Family::Identity, Family::Parabola, Family::Hypocycloid, Family::Log,
                   Family::Dilog, Family::NullDirect, Family::NullCumulative}) {
    ids.emplace_back(family_id(f));
  }
  return ids;
}

Complex eval_analytic(const CoeffSeq& seq, Complex z) {
  if (std::abs(z) >= 1.0) {
    throw std::domain_error("eval_analytic: |z| >= 1 (got |z| = " + std::to_string(std::abs(z)) +
                            ")");
  }
  Complex acc{0.0, 0.0};
  for (auto it = seq.coeffs.rbegin(); it != seq.coeffs.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

Complex eval_harmonic(const HarmonicMap& map, Complex z) {
  return eval_analytic(map.h, z) + std::conj(eval_analytic(map.g, z));
}

CoeffSeq derivative(const CoeffSeq& seq) {
  CoeffSeq out;
  const int n = static_cast<int>(seq.coeffs.size());
  out.coeffs.resize(n > 1 ? n - 1 : 1, Complex{0.0, 0.0});
  for (int k = 1; k < n; ++k) {
    out.coeffs[k - 1] = static_cast<double>(k) * seq.coeffs[k];
  }
  return out;
}

CoeffSeq couple_g_from_h(const CoeffSeq& h, int p) {
  if (p < 2) throw std::invalid_argument("couple_g_from_h: p must be >= 2");
  const int n = h.order();
  CoeffSeq g;
  g.coeffs.assign(static_cast<std::size_t>(n + p), Complex{0.0, 0.0});
  for (int m = 1; m <= n; ++m) {
    g.coeffs[static_cast<std::size_t>(m + p - 1)] =
        static_cast<double>(m) * h.at(m) / static_cast<double>(m + p - 1);
  }
  return g;
}

static void pad_to(CoeffSeq& s, int order) {
  if (s.order() < order) s.coeffs.resize(static_cast<std::size_t>(order) + 1, Complex{0.0, 0.0});
}

HarmonicMap harmonic_map_from_parts(CoeffSeq h, CoeffSeq g) {
  if (h.coeffs.empty() || std::abs(h.coeffs[0]) > kNormTol) {
    throw std::invalid_argument("harmonic map: h must have zero constant term");
  }
  if (h.order() < 1 || std::abs(h.at(1) - Complex{1.0, 0.0}) > kNormTol) {
    throw std::invalid_argument("harmonic map: h requires a_1 = 1");
  }
  if (!g.coeffs.empty() && std::abs(g.coeffs[0]) > kNormTol) {
    throw std::invalid_argument("harmonic map: g must have zero constant term");
  }
  if (g.coeffs.empty()) g.coeffs.assign(2, Complex{0.0, 0.0});
  const int order = std::max(h.order(), g.order());
  pad_to(h, order);
  pad_to(g, order);
  HarmonicMap map;
  map.h = std::move(h);
  map.g = std::move(g);
  map.order = order;
  return map;
}

HarmonicMap coupled_map(const CoeffSeq& h, int p) {
  return harmonic_map_from_parts(h, couple_g_from_h(h, p));
}

}  // namespace ctc
