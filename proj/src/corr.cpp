#include "geocorr/corr.hpp"

#include <cmath>
#include <stdexcept>

namespace geocorr {

namespace {

CorrelationResult finish(double s, double b12, double b13, double b23, double cell,
                         double norm_u_sq, double norm_v_sq) {
    CorrelationResult res;
    res.raw.s = s * cell;
    res.raw.b12 = b12 * cell;
    res.raw.b13 = b13 * cell;
    res.raw.b23 = b23 * cell;

    const double denom = std::sqrt(norm_u_sq * cell) * std::sqrt(norm_v_sq * cell);
    if (denom > 0.0) res.normalized = res.raw * (1.0 / denom);

    if (res.raw.norm_sq() == 0.0) {
        // vanishing fields carry no rotation information
        res.angle = 0.0;
        res.plane = kPlaneE12;
        res.degenerate = true;
        return res;
    }
    const RotorLog lg = rotor_log(res.raw);
    res.angle = lg.angle;
    res.plane = lg.plane;
    res.degenerate = lg.degenerate;
    return res;
}

}  // namespace

CorrelationResult correlate_origin(const VectorField& u, const VectorField& v) {
    if (!u.same_geometry(v))
        throw std::invalid_argument("correlate_origin: fields must share grid geometry");
    // reverse(u) v per sample is u.v + u^v for vectors; fixed row-major
    // accumulation keeps results reproducible
    double s = 0.0, b12 = 0.0, b13 = 0.0, b23 = 0.0;
    double nu = 0.0, nv = 0.0;
    const std::size_t n = u.size();
    const Vec3* pu = u.values().data();
    const Vec3* pv = v.values().data();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& a = pu[i];
        const Vec3& b = pv[i];
        s += a.x * b.x + a.y * b.y + a.z * b.z;
        b12 += a.x * b.y - a.y * b.x;
        b13 += a.x * b.z - a.z * b.x;
        b23 += a.y * b.z - a.z * b.y;
        nu += a.norm_sq();
        nv += b.norm_sq();
    }
    return finish(s, b12, b13, b23, u.cell_measure(), nu, nv);
}

CorrelationResult correlate_projected(const VectorField& u, const VectorField& v,
                                      const Bivector3& q) {
    if (!u.same_geometry(v))
        throw std::invalid_argument("correlate_projected: fields must share grid geometry");
    if (!q.is_unit())
        throw std::invalid_argument("correlate_projected: plane must be a unit bivector");
    double s = 0.0, b12 = 0.0, b13 = 0.0, b23 = 0.0;
    double nu = 0.0, nv = 0.0;
    const std::size_t n = u.size();
    const Vec3* pu = u.values().data();
    const Vec3* pv = v.values().data();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 a = project_parallel_vec(pu[i], q);
        const Vec3 b = project_parallel_vec(pv[i], q);
        s += a.x * b.x + a.y * b.y + a.z * b.z;
        b12 += a.x * b.y - a.y * b.x;
        b13 += a.x * b.z - a.z * b.x;
        b23 += a.y * b.z - a.z * b.y;
        nu += a.norm_sq();
        nv += b.norm_sq();
    }
    return finish(s, b12, b13, b23, u.cell_measure(), nu, nv);
}

}  // namespace geocorr
