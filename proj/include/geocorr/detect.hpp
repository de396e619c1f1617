#ifndef GEOCORR_DETECT_HPP
#define GEOCORR_DETECT_HPP

#include <functional>
#include <vector>

#include "geocorr/corr.hpp"
#include "geocorr/field.hpp"
#include "geocorr/ga3.hpp"

// Iterative detection of the outer rotational misalignment between a
// reference field v and its rotated pattern u. Each iteration extracts
// the rotor encoded in the geometric cross-correlation, applies it to u,
// and folds it into the running total until the per-step correction
// angle drops below the requested accuracy.

namespace geocorr {

struct DetectorConfig {
    double epsilon = 1e-10;        // stop once the correction angle is <= epsilon
    int max_iterations = 5000;     // safety cap; hitting it reports converged=false
    double disturbance_angle = kPi / 4.0;
    Bivector3 disturbance_plane = kPlaneE12;

    void validate() const;
};

struct IterationRecord {
    double phi_raw = 0.0;       // correction angle straight from the correlation
    double phi = 0.0;           // angle actually applied (after the disturbance branch)
    Bivector3 plane;            // plane actually applied
    bool disturbed = false;     // disturbance branch fired this iteration
    double phi_refine = 0.0;    // second, plane-projected correction (algorithm 2)
    Bivector3 plane_refine;
    double alpha = 0.0;         // running correction composite after this iteration
    Bivector3 total_plane;
    double residual_abs = 0.0;  // sum over samples of |u - v| after this iteration
    double residual_per_sample = 0.0;
};

struct DetectionResult {
    // Rotation taking the reference onto the pattern: u = R_{plane,angle}(v).
    double angle = 0.0;
    Bivector3 plane;
    VectorField corrected;
    int iterations = 0;
    std::vector<IterationRecord> trace;
    bool converged = false;
};

/// Called after every iteration with the current corrected pattern.
using IterationObserver = std::function<void(int iter, const VectorField& u,
                                             const IterationRecord& rec)>;

/// Plain iterative detector: one correlation and one correction per step.
DetectionResult algorithm1(const VectorField& v, const VectorField& u,
                           const DetectorConfig& cfg = {},
                           const IterationObserver& observer = {});

/// Accelerated detector: after the full correction, a second correlation
/// picks the plane of the remaining misalignment and a correlation of the
/// in-plane components supplies an almost exact angle for it.
DetectionResult algorithm2(const VectorField& v, const VectorField& u,
                           const DetectorConfig& cfg = {},
                           const IterationObserver& observer = {});

/// Unweighted sum (and mean) over samples of the Euclidean distance
/// between corrected and original values.
struct ResidualError {
    double absolute = 0.0;
    double per_sample = 0.0;
};
ResidualError residual_error(const VectorField& corrected, const VectorField& original);

}  // namespace geocorr

#endif  // GEOCORR_DETECT_HPP
