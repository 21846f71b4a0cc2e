#include "ctc/families.hpp"

#include <cmath>
#include <stdexcept>

namespace ctc {

namespace {

CoeffSeq zeros(int order) {
  CoeffSeq s;
  s.coeffs.assign(static_cast<std::size_t>(order) + 1, Complex{0.0, 0.0});
  return s;
}

void check_order(int N, int minimum) {
  if (N < minimum) {
    throw std::invalid_argument("from_family: truncation order must be >= " +
                                std::to_string(minimum));
  }
}

}  // namespace

HarmonicMap from_family(Family family, const FamilyParams& params, int N) {
  switch (family) {
    case Family::Identity: {
      check_order(N, 2);
      CoeffSeq h = zeros(N);
      h.coeffs[1] = 1.0;
      HarmonicMap map = harmonic_map_from_parts(std::move(h), zeros(N));
      map.family = Family::Identity;
      return map;
    }
    case Family::Parabola: {
      // a_n = (n+1)/2 coupled through g' = z h', so g runs one slot further.
      check_order(N, 2);
      CoeffSeq h = zeros(N);
      for (int n = 1; n <= N; ++n) h.coeffs[n] = 0.5 * (n + 1);
      HarmonicMap map = coupled_map(h, 2);
      map.family = Family::Parabola;
      map.h.tail = TailDescriptor{TailShape::HalfLinearUp};
      map.g.tail = TailDescriptor{TailShape::HalfLinearDown};
      return map;
    }
    case Family::Hypocycloid: {
      check_order(N, 5);
      CoeffSeq h = zeros(N);
      h.coeffs[1] = 1.0;
      CoeffSeq g = zeros(N);
      g.coeffs[5] = 0.2;
      HarmonicMap map = harmonic_map_from_parts(std::move(h), std::move(g));
      map.family = Family::Hypocycloid;
      return map;
    }
    case Family::Log: {
      check_order(N, 2);
      if (!(params.m > 0.0 && params.m <= 1.0)) {
        throw std::invalid_argument("log family requires 0 < m <= 1");
      }
      CoeffSeq h = zeros(N);
      CoeffSeq g = zeros(N);
      h.coeffs[1] = 1.0;
      g.coeffs[1] = 1.0 - params.m;
      for (int n = 2; n <= N; ++n) {
        h.coeffs[n] = 1.0 / n;
        g.coeffs[n] = 1.0 / n;
      }
      HarmonicMap map = harmonic_map_from_parts(std::move(h), std::move(g));
      map.family = Family::Log;
      map.m = params.m;
      map.h.tail = TailDescriptor{TailShape::Reciprocal};
      map.g.tail = TailDescriptor{TailShape::Reciprocal};
      return map;
    }
    case Family::Dilog: {
      check_order(N, 2);
      CoeffSeq h = zeros(N);
      CoeffSeq g = zeros(N);
      h.coeffs[1] = 1.0;
      for (int n = 2; n <= N; ++n) {
        h.coeffs[n] = 1.0 / (static_cast<double>(n) * n);
        g.coeffs[n] = 1.0 / (static_cast<double>(n) * (n - 1));
      }
      HarmonicMap map = harmonic_map_from_parts(std::move(h), std::move(g));
      map.family = Family::Dilog;
      map.h.tail = TailDescriptor{TailShape::InvSquare};
      map.g.tail = TailDescriptor{TailShape::PairProduct};
      return map;
    }
    case Family::NullDirect: {
      check_order(N, 2);
      if (std::abs(params.b) >= 1.0) {
        throw std::invalid_argument("null-direct family requires |b| < 1");
      }
      CoeffSeq h = zeros(N);
      h.coeffs[1] = 1.0;
      for (int n = 2; n <= N; ++n) h.coeffs[n] = 2.0 / (static_cast<double>(n) * n);
      CoeffSeq g = zeros(N);
      for (int n = 1; n <= N; ++n) g.coeffs[n] = params.b * h.coeffs[n];
      HarmonicMap map = harmonic_map_from_parts(std::move(h), std::move(g));
      map.family = Family::NullDirect;
      map.b = params.b;
      map.h.tail = TailDescriptor{TailShape::InvSquareX2};
      map.g.tail = TailDescriptor{TailShape::InvSquareX2, params.b};
      return map;
    }
    case Family::NullCumulative: {
      check_order(N, 2);
      if (std::abs(params.b) >= 1.0) {
        throw std::invalid_argument("null-cumulative family requires |b| < 1");
      }
      CoeffSeq h = zeros(N);
      h.coeffs[1] = 1.0;
      for (int n = 2; n <= N; ++n) {
        // 1 + sum_{j=1}^{n-1} 2^{1-j} = 3 - 2^{2-n}
        h.coeffs[n] = (3.0 - std::ldexp(1.0, 2 - n)) / n;
      }
      CoeffSeq g = zeros(N);
      for (int n = 1; n <= N; ++n) g.coeffs[n] = params.b * h.coeffs[n];
      HarmonicMap map = harmonic_map_from_parts(std::move(h), std::move(g));
      map.family = Family::NullCumulative;
      map.b = params.b;
      map.h.tail = TailDescriptor{TailShape::GeomMix};
      map.g.tail = TailDescriptor{TailShape::GeomMix, params.b};
      return map;
    }
  }
  throw std::invalid_argument("from_family: unknown family");
}

namespace {

Complex log1z(Complex z) { return std::log(Complex{1.0, 0.0} - z); }

}  // namespace

std::optional<DerivativeBundle> closed_form_derivatives(const HarmonicMap& map, Complex z) {
  if (!map.family) return std::nullopt;
  const Complex one{1.0, 0.0};
  switch (*map.family) {
    case Family::Identity:
      return DerivativeBundle{one, 0.0, 0.0, 0.0};
    case Family::Hypocycloid: {
      const Complex z2 = z * z;
      return DerivativeBundle{one, 0.0, z2 * z2, 4.0 * z2 * z};
    }
    case Family::Parabola: {
      const Complex w = one - z;
      const Complex hp = 1.0 / (w * w * w);
      const Complex hpp = 3.0 * hp / w;
      return DerivativeBundle{hp, hpp, z * hp, hp + z * hpp};
    }
    case Family::Log: {
      const Complex w = one - z;
      const Complex hp = one / w;
      const Complex hpp = hp * hp;
      return DerivativeBundle{hp, hpp, hp - map.m, hpp};
    }
    case Family::Dilog: {
      if (std::abs(z) < 1e-8) {
        // series fallback near the removable singularity at 0
        return DerivativeBundle{one + 0.5 * z, Complex{0.5, 0.0} + z * (2.0 / 3.0), z + 0.5 * z * z,
                                one + z};
      }
      const Complex L = log1z(z);
      const Complex hp = -L / z;
      const Complex hpp = (z / (one - z) + L) / (z * z);
      return DerivativeBundle{hp, hpp, -L, one / (one - z)};
    }
    case Family::NullDirect: {
      Complex hp, hpp;
      if (std::abs(z) < 1e-8) {
        hp = one + z;
        hpp = one + z * (4.0 / 3.0);
      } else {
        const Complex L = log1z(z);
        hp = -2.0 * L / z - one;
        hpp = 2.0 * L / (z * z) + 2.0 / (z * (one - z));
      }
      return DerivativeBundle{hp, hpp, map.b * hp, map.b * hpp};
    }
    case Family::NullCumulative: {
      const Complex u = one - z;
      const Complex v = one - 0.5 * z;
      const Complex hp = 3.0 / u - 2.0 / v;
      const Complex hpp = 3.0 / (u * u) - 1.0 / (v * v);
      return DerivativeBundle{hp, hpp, map.b * hp, map.b * hpp};
    }
  }
  return std::nullopt;
}

bool singular_on_circle(const HarmonicMap& map) {
  if (!map.family) return false;
  switch (*map.family) {
    case Family::Identity:
    case Family::Hypocycloid:
      return false;
    default:
      return true;  // pole or log branch point at z = 1
  }
}

}  // namespace ctc
