#include "geocorr/detect.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace geocorr {

namespace {

// A degenerate first correlation with full normalized magnitude means the
// fields already agree; anything below this marks the ambiguous real-valued
// case (an angle-pi misalignment looks real too) and fires the disturbance.
constexpr double kAlignedTol = 1e-9;

void rotate_in_place(VectorField& f, const Bivector3& plane, double half_angle) {
    const Rotor3 r = exp_bivector(plane, half_angle);
    for (Vec3& v : f.values()) v = rotate_vector(r, v);
}

void check_inputs(const VectorField& v, const VectorField& u, const DetectorConfig& cfg,
                  const char* who) {
    cfg.validate();
    if (!v.same_geometry(u))
        throw std::invalid_argument(std::string(who) + ": fields must share grid geometry");
    if (l2_norm_sq(v) == 0.0)
        throw std::invalid_argument(std::string(who) + ": reference field is identically zero");
}

struct RunningTotal {
    double alpha = 0.0;
    Bivector3 plane = kPlaneE12;

    void fold(double phi, const Bivector3& q) {
        const ComposedRotation c = compose_rotation(alpha, plane, phi, q);
        alpha = c.angle;
        plane = c.plane;
    }
};

// The accumulated composite undoes the misalignment, so the rotation that
// produced the pattern is its reverse: same angle, negated plane.
void report_reversed(DetectionResult& res, const RunningTotal& total) {
    res.angle = total.alpha;
    res.plane = -total.plane;
}

}  // namespace

void DetectorConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("DetectorConfig: epsilon must be > 0");
    if (max_iterations < 1) throw std::invalid_argument("DetectorConfig: max_iterations must be >= 1");
    if (!disturbance_plane.is_unit())
        throw std::invalid_argument("DetectorConfig: disturbance plane must be unit");
}

ResidualError residual_error(const VectorField& corrected, const VectorField& original) {
    if (!corrected.same_geometry(original))
        throw std::invalid_argument("residual_error: fields must share grid geometry");
    double sum = 0.0;
    const std::size_t n = corrected.size();
    for (std::size_t i = 0; i < n; ++i)
        sum += (corrected.values()[i] - original.values()[i]).norm();
    return {sum, sum / static_cast<double>(n)};
}

DetectionResult algorithm1(const VectorField& v, const VectorField& u,
                           const DetectorConfig& cfg, const IterationObserver& observer) {
    check_inputs(v, u, cfg, "algorithm1");
    DetectionResult res{0.0, kPlaneE12, u, 0, {}, false};
    VectorField& work = res.corrected;
    RunningTotal total;

    while (res.iterations < cfg.max_iterations) {
        const CorrelationResult cor = correlate_origin(work, v);

        IterationRecord rec;
        rec.phi_raw = cor.angle;
        rec.phi = cor.angle;
        rec.plane = cor.plane;
        if (res.iterations == 0 && cor.degenerate && cor.normalized.s < 1.0 - kAlignedTol) {
            rec.phi = cfg.disturbance_angle;
            rec.plane = cfg.disturbance_plane;
            rec.disturbed = true;
        }
        ++res.iterations;

        rotate_in_place(work, rec.plane, rec.phi / 2.0);
        total.fold(rec.phi, rec.plane);
        rec.alpha = total.alpha;
        rec.total_plane = total.plane;

        const ResidualError err = residual_error(work, v);
        rec.residual_abs = err.absolute;
        rec.residual_per_sample = err.per_sample;
        res.trace.push_back(rec);
        if (observer) observer(res.iterations, work, rec);

        if (rec.phi <= cfg.epsilon) {
            res.converged = true;
            break;
        }
    }
    report_reversed(res, total);
    return res;
}

DetectionResult algorithm2(const VectorField& v, const VectorField& u,
                           const DetectorConfig& cfg, const IterationObserver& observer) {
    check_inputs(v, u, cfg, "algorithm2");
    DetectionResult res{0.0, kPlaneE12, u, 0, {}, false};
    VectorField& work = res.corrected;
    RunningTotal total;

    while (res.iterations < cfg.max_iterations) {
        // full correction, as in algorithm1
        const CorrelationResult cor = correlate_origin(work, v);

        IterationRecord rec;
        rec.phi_raw = cor.angle;
        rec.phi = cor.angle;
        rec.plane = cor.plane;
        if (res.iterations == 0 && cor.degenerate && cor.normalized.s < 1.0 - kAlignedTol) {
            rec.phi = cfg.disturbance_angle;
            rec.plane = cfg.disturbance_plane;
            rec.disturbed = true;
        }
        ++res.iterations;

        rotate_in_place(work, rec.plane, rec.phi / 2.0);
        total.fold(rec.phi, rec.plane);

        // the plane of the remaining misalignment, then an in-plane
        // correlation for its angle
        const CorrelationResult cor_plane = correlate_origin(work, v);
        const Bivector3 refine_plane = cor_plane.plane;
        const CorrelationResult cor_proj = correlate_projected(work, v, refine_plane);

        double phi2;
        Bivector3 q2;
        if (!cor_proj.degenerate) {
            phi2 = cor_proj.angle;
            q2 = cor_proj.plane;
        } else if (cor_proj.normalized.s < 0.0) {
            // in-plane half-turn: the projected correlation is negative real
            phi2 = kPi;
            q2 = refine_plane;
        } else {
            phi2 = 0.0;
            q2 = refine_plane;
        }
        rec.phi_refine = phi2;
        rec.plane_refine = q2;

        rotate_in_place(work, q2, phi2 / 2.0);
        total.fold(phi2, q2);
        rec.alpha = total.alpha;
        rec.total_plane = total.plane;

        const ResidualError err = residual_error(work, v);
        rec.residual_abs = err.absolute;
        rec.residual_per_sample = err.per_sample;
        res.trace.push_back(rec);
        if (observer) observer(res.iterations, work, rec);

        if (rec.phi <= cfg.epsilon) {
            res.converged = true;
            break;
        }
    }
    report_reversed(res, total);
    return res;
}

}  // namespace geocorr
