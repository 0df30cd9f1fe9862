#pragma once

#include "qdev/grid.hpp"

namespace qdev {

/// Absolute mismatch between the two sides of the discrete summation-by-parts
/// identity
///
///   -dx sum_{i=0}^{N} (d2 u_i) v_i
///     = dx sum_{i=0}^{N+1} (d u_{i-1/2})(d v_{i-1/2}) + (D+ u_{-1}) v_{-1} - (D- u_{N+1}) v_{N+1}
///
/// with centred differences d, d2 and one-sided D+, D-. Both functions need
/// values on -1..N+1. Exists to check the identity numerically.
double sbp_identity_residual(const ComplexGridFunction& u, const ComplexGridFunction& v);

/// Sum of the magnitudes of all terms entering the identity; the natural
/// round-off scale for sbp_identity_residual.
double sbp_identity_scale(const ComplexGridFunction& u, const ComplexGridFunction& v);

}  // namespace qdev
