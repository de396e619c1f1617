#ifndef GEOCORR_CORR_HPP
#define GEOCORR_CORR_HPP

#include "geocorr/field.hpp"
#include "geocorr/ga3.hpp"

// Geometric cross-correlation of two vector fields evaluated at the
// origin: the Riemann sum of reverse(u(x)) v(x) over the shared grid.
// For grade-1 fields the value is scalar plus bivector and encodes the
// approximate alignment rotor between the fields.

namespace geocorr {

struct CorrelationResult {
    Multivector3 raw;         // sum of reverse(u) v times the cell measure
    Multivector3 normalized;  // raw / (||u|| ||v||); zero when a field vanishes
    double angle = 0.0;       // atan2(|<raw>_2|, <raw>_0) in [0, pi]
    Bivector3 plane;          // unit bivector of raw; e12 fallback when degenerate
    bool degenerate = false;  // bivector part below 1e-12 of the scalar part
};

/// Correlation (u * v)(0). Fields must share grid geometry; two vanishing
/// fields produce a degenerate result with angle 0.
CorrelationResult correlate_origin(const VectorField& u, const VectorField& v);

/// Correlation of the components of both fields parallel to the unit
/// plane q; behaves like the planar 2D correlation.
CorrelationResult correlate_projected(const VectorField& u, const VectorField& v,
                                      const Bivector3& q);

}  // namespace geocorr

#endif  // GEOCORR_CORR_HPP
