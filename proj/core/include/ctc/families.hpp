#ifndef CTC_FAMILIES_HPP
#define CTC_FAMILIES_HPP

#include <optional>

#include "ctc/series.hpp"

namespace ctc {

struct FamilyParams {
  double m = 1.0;          // Log: 0 < m <= 1
  Complex b{0.25, 0.0};    // NullDirect / NullCumulative: |b| < 1
};

/// Builds a truncated map of the requested family with exact coefficient
/// formulas and tail descriptors attached. N >= 2 (N >= 5 for Hypocycloid).
/// Throws std::invalid_argument on bad parameters.
HarmonicMap from_family(Family family, const FamilyParams& params, int N);

inline HarmonicMap from_family(Family family, int N) {
  return from_family(family, FamilyParams{}, N);
}

/// z-derivatives of the exact (non-truncated) family map.
struct DerivativeBundle {
  Complex hp;   // h'(z)
  Complex hpp;  // h''(z)
  Complex gp;   // g'(z)
  Complex gpp;  // g''(z)
};

/// Closed-form derivatives for family-tagged maps; nullopt for user maps.
std::optional<DerivativeBundle> closed_form_derivatives(const HarmonicMap& map, Complex z);

/// True when the family's closed form has a singularity on |z| = 1
/// (boundary sampling nudges the radius inward for these).
bool singular_on_circle(const HarmonicMap& map);

}  // namespace ctc

#endif
