#ifndef CTC_SERIES_HPP
#define CTC_SERIES_HPP

#include <complex>
#include <optional>
#include <vector>

namespace ctc {

using Complex = std::complex<double>;

/// Built-in closed-form map families.
enum class Family {
  Identity,        // h(z) = z, g = 0
  Parabola,        // a_n = (n+1)/2 with g' = z h'; image bounded by u = -v^2 - 1/4
  Hypocycloid,     // z + (1/5) conj(z)^5
  Log,             // h = -log(1-z), g = -m z - log(1-z), 0 < m <= 1
  Dilog,           // a_n = 1/n^2, b_n = 1/(n(n-1))
  NullDirect,      // a_n = 2/n^2, g = b h  (built from the 2/(n+1) null sequence)
  NullCumulative,  // a_n = (3 - 2^{2-n})/n, g = b h  (built from the 2^{1-n} sequence)
};

const char* family_id(Family f);
std::optional<Family> family_from_id(const std::string& id);
std::vector<std::string> known_family_ids();

/// Shape of the true coefficients beyond the stored truncation order.
/// Checkers use these to evaluate infinite-sum remainders in closed form.
enum class TailShape {
  Reciprocal,      // 1/n
  InvSquare,       // 1/n^2
  InvSquareX2,     // 2/n^2
  PairProduct,     // 1/(n(n-1))
  GeomMix,         // (3 - 2^{2-n})/n
  HalfLinearUp,    // (n+1)/2
  HalfLinearDown,  // (n-1)/2
  HalvingOverN,    // 2^{2-n}/n
  HarmonicOverN,   // (2 H_n - 1)/n
};

struct TailDescriptor {
  TailShape shape;
  Complex scale{1.0, 0.0};  // multiplies the shape (g = b*h families carry b here)
};

/// Truncated coefficient sequence. coeffs[n] multiplies z^n; slot 0 exists and
/// is zero for normalized map parts. Absent tail means the sequence is an
/// exact finite polynomial.
struct CoeffSeq {
  std::vector<Complex> coeffs;
  std::optional<TailDescriptor> tail;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  Complex at(int n) const {
    return (n >= 0 && n < static_cast<int>(coeffs.size())) ? coeffs[n] : Complex{0.0, 0.0};
  }
};

/// f(z) = h(z) + conj(g(z)), h and g stored to a shared truncation order.
struct HarmonicMap {
  CoeffSeq h;
  CoeffSeq g;
  int order = 0;
  std::optional<Family> family;
  double m = 1.0;            // Log parameter
  Complex b{0.25, 0.0};      // co-analytic scale for Null* families

  Complex a(int n) const { return h.at(n); }
  Complex bcoef(int n) const { return g.at(n); }
};

/// Horner evaluation of sum coeffs[n] z^n over all stored slots.
/// Throws std::domain_error for |z| >= 1.
Complex eval_analytic(const CoeffSeq& seq, Complex z);

/// eval_analytic(h, z) + conj(eval_analytic(g, z)).
Complex eval_harmonic(const HarmonicMap& map, Complex z);

/// Term-wise derivative: slot k of the result is (k+1)*coeffs[k+1].
/// The tail descriptor is dropped.
CoeffSeq derivative(const CoeffSeq& seq);

/// Coefficient sequence g with g'(z) = z^{p-1} h'(z), i.e.
/// (m+p-1) b_{m+p-1} = m a_m for all m >= 1. Output order is h.order()+p-1.
CoeffSeq couple_g_from_h(const CoeffSeq& h, int p);

/// HarmonicMap from parts; validates normalization (c_0 = 0, a_1 = 1) and
/// pads both parts to a common order.
HarmonicMap harmonic_map_from_parts(CoeffSeq h, CoeffSeq g);

/// Map (h, couple_g_from_h(h, p)) with h zero-padded to the coupled order.
HarmonicMap coupled_map(const CoeffSeq& h, int p);

}  // namespace ctc

#endif
