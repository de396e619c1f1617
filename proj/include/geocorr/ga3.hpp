#ifndef GEOCORR_GA3_HPP
#define GEOCORR_GA3_HPP

#include <cmath>
#include <stdexcept>
#include <string>

// Arithmetic kernel for the geometric algebra Cl(3,0) with the Euclidean
// signature e_i^2 = +1. Multivectors are stored dense over the basis
// {1, e1, e2, e3, e12, e13, e23, e123}; all operations are pure functions
// over immutable values and safe to call concurrently.

namespace geocorr {

inline constexpr double kPi = 3.14159265358979323846;

// Relative threshold below which the bivector part of a rotor is treated
// as vanishing when extracting its polar form.
inline constexpr double kDegenerateRel = 1e-12;

// Tolerance for unit-magnitude preconditions on planes and rotors.
inline constexpr double kUnitTol = 1e-9;

struct Bivector3 {
    double b12 = 0.0;
    double b13 = 0.0;
    double b23 = 0.0;

    double norm_sq() const { return b12 * b12 + b13 * b13 + b23 * b23; }
    double norm() const { return std::sqrt(norm_sq()); }

    Bivector3 operator-() const { return {-b12, -b13, -b23}; }
    Bivector3 operator*(double c) const { return {b12 * c, b13 * c, b23 * c}; }
    Bivector3 operator+(const Bivector3& o) const { return {b12 + o.b12, b13 + o.b13, b23 + o.b23}; }

    bool is_unit(double tol = kUnitTol) const { return std::abs(norm() - 1.0) <= tol; }

    Bivector3 normalized() const {
        const double n = norm();
        if (n == 0.0) throw std::invalid_argument("Bivector3::normalized: zero bivector");
        return {b12 / n, b13 / n, b23 / n};
    }

    static double dot(const Bivector3& a, const Bivector3& b) {
        return a.b12 * b.b12 + a.b13 * b.b13 + a.b23 * b.b23;
    }
};

inline const Bivector3 kPlaneE12{1.0, 0.0, 0.0};
inline const Bivector3 kPlaneE13{0.0, 1.0, 0.0};
inline const Bivector3 kPlaneE23{0.0, 0.0, 1.0};

/// Plain 3-vector. Used for field samples; convertible to a grade-1
/// multivector where the full algebra is needed.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm_sq() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_sq()); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double c) const { return {x * c, y * c, z * c}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    static double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    static Vec3 cross(const Vec3& a, const Vec3& b) {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }
};

/// Dense element of Cl(3,0): scalar s, vector (v1,v2,v3), bivector
/// (b12,b13,b23), pseudoscalar p.
struct Multivector3 {
    double s = 0.0;
    double v1 = 0.0, v2 = 0.0, v3 = 0.0;
    double b12 = 0.0, b13 = 0.0, b23 = 0.0;
    double p = 0.0;

    static Multivector3 scalar(double c) {
        Multivector3 m;
        m.s = c;
        return m;
    }
    static Multivector3 vector(double x, double y, double z) {
        Multivector3 m;
        m.v1 = x;
        m.v2 = y;
        m.v3 = z;
        return m;
    }
    static Multivector3 vector(const Vec3& v) { return vector(v.x, v.y, v.z); }
    static Multivector3 bivector(const Bivector3& b) {
        Multivector3 m;
        m.b12 = b.b12;
        m.b13 = b.b13;
        m.b23 = b.b23;
        return m;
    }

    Vec3 vector_part() const { return {v1, v2, v3}; }
    Bivector3 bivector_part() const { return {b12, b13, b23}; }

    double norm_sq() const {
        return s * s + v1 * v1 + v2 * v2 + v3 * v3 + b12 * b12 + b13 * b13 + b23 * b23 + p * p;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    Multivector3 operator+(const Multivector3& o) const {
        return {s + o.s, v1 + o.v1, v2 + o.v2, v3 + o.v3,
                b12 + o.b12, b13 + o.b13, b23 + o.b23, p + o.p};
    }
    Multivector3 operator-(const Multivector3& o) const {
        return {s - o.s, v1 - o.v1, v2 - o.v2, v3 - o.v3,
                b12 - o.b12, b13 - o.b13, b23 - o.b23, p - o.p};
    }
    Multivector3 operator*(double c) const {
        return {s * c, v1 * c, v2 * c, v3 * c, b12 * c, b13 * c, b23 * c, p * c};
    }
    Multivector3 operator-() const { return *this * -1.0; }
};

/// Even-grade element s + b; a unit rotor (s^2 + |b|^2 = 1) encodes a
/// rotation applied through the sandwich product.
struct Rotor3 {
    double s = 1.0;
    Bivector3 b;

    double norm_sq() const { return s * s + b.norm_sq(); }
    double norm() const { return std::sqrt(norm_sq()); }
    bool is_unit(double tol = kUnitTol) const { return std::abs(norm() - 1.0) <= tol; }

    Rotor3 reversed() const { return {s, -b}; }
    Rotor3 operator-() const { return {-s, -b}; }

    Multivector3 as_multivector() const {
        Multivector3 m;
        m.s = s;
        m.b12 = b.b12;
        m.b13 = b.b13;
        m.b23 = b.b23;
        return m;
    }
};

/// Full geometric product over the fixed Cl(3,0) sign table.
inline Multivector3 geometric_product(const Multivector3& a, const Multivector3& b) {
    Multivector3 c;
    c.s = a.s * b.s + a.v1 * b.v1 + a.v2 * b.v2 + a.v3 * b.v3
        - a.b12 * b.b12 - a.b13 * b.b13 - a.b23 * b.b23 - a.p * b.p;
    c.v1 = a.s * b.v1 + a.v1 * b.s - a.v2 * b.b12 + a.b12 * b.v2
         - a.v3 * b.b13 + a.b13 * b.v3 - a.b23 * b.p - a.p * b.b23;
    c.v2 = a.s * b.v2 + a.v2 * b.s + a.v1 * b.b12 - a.b12 * b.v1
         - a.v3 * b.b23 + a.b23 * b.v3 + a.b13 * b.p + a.p * b.b13;
    c.v3 = a.s * b.v3 + a.v3 * b.s + a.v1 * b.b13 - a.b13 * b.v1
         + a.v2 * b.b23 - a.b23 * b.v2 - a.b12 * b.p - a.p * b.b12;
    c.b12 = a.s * b.b12 + a.b12 * b.s + a.v1 * b.v2 - a.v2 * b.v1
          - a.b13 * b.b23 + a.b23 * b.b13 + a.v3 * b.p + a.p * b.v3;
    c.b13 = a.s * b.b13 + a.b13 * b.s + a.v1 * b.v3 - a.v3 * b.v1
          + a.b12 * b.b23 - a.b23 * b.b12 - a.v2 * b.p - a.p * b.v2;
    c.b23 = a.s * b.b23 + a.b23 * b.s + a.v2 * b.v3 - a.v3 * b.v2
          - a.b12 * b.b13 + a.b13 * b.b12 + a.v1 * b.p + a.p * b.v1;
    c.p = a.s * b.p + a.p * b.s + a.v1 * b.b23 + a.b23 * b.v1
        - a.v2 * b.b13 - a.b13 * b.v2 + a.v3 * b.b12 + a.b12 * b.v3;
    return c;
}

/// Reversion: grade k picks up the sign (-1)^{k(k-1)/2}, so grades 0 and 1
/// are fixed and grades 2 and 3 are negated.
inline Multivector3 reverse(const Multivector3& a) {
    return {a.s, a.v1, a.v2, a.v3, -a.b12, -a.b13, -a.b23, -a.p};
}

/// Projection onto grade k (0..3); other coefficients become exactly zero.
inline Multivector3 grade(const Multivector3& a, int k) {
    Multivector3 m;
    switch (k) {
        case 0: m.s = a.s; break;
        case 1: m.v1 = a.v1; m.v2 = a.v2; m.v3 = a.v3; break;
        case 2: m.b12 = a.b12; m.b13 = a.b13; m.b23 = a.b23; break;
        case 3: m.p = a.p; break;
        default:
            throw std::invalid_argument("grade: k must be in 0..3, got " + std::to_string(k));
    }
    return m;
}

/// e^{angle * plane} = cos(angle) + sin(angle) * plane for a unit plane.
/// Callers supply half angles when building sandwich factors.
inline Rotor3 exp_bivector(const Bivector3& plane, double angle) {
    if (!plane.is_unit()) throw std::invalid_argument("exp_bivector: plane must be a unit bivector");
    return {std::cos(angle), plane * std::sin(angle)};
}

/// Polar decomposition of a rotor-shaped value.
struct RotorLog {
    double angle = 0.0;    // atan2(|<r>_2|, <r>_0), in [0, pi]
    Bivector3 plane;       // unit; e12 fallback when degenerate
    bool degenerate = false;
};

/// arg and plane of a (not necessarily unit) rotor; scale invariant.
/// A vanishing bivector part yields angle 0 or pi by the sign of the
/// scalar part, plane e12, and the degenerate flag.
inline RotorLog rotor_log(const Rotor3& r) {
    const double m = r.b.norm();
    const double as = std::abs(r.s);
    if (m == 0.0 && as == 0.0) throw std::invalid_argument("rotor_log: zero rotor");
    if (m <= kDegenerateRel * as) {
        return {r.s >= 0.0 ? 0.0 : kPi, kPlaneE12, true};
    }
    return {std::atan2(m, r.s), r.b * (1.0 / m), false};
}

inline RotorLog rotor_log(const Multivector3& a) {
    return rotor_log(Rotor3{a.s, a.bivector_part()});
}

/// Sandwich rotation: for r = e^{phi/2 Q} computes reverse(r) * v * r,
/// i.e. e^{-phi/2 Q} v e^{phi/2 Q}. Requires a unit rotor.
inline Multivector3 sandwich(const Rotor3& r, const Multivector3& v) {
    if (!r.is_unit()) throw std::invalid_argument("sandwich: rotor must be unit");
    const Multivector3 rm = r.as_multivector();
    const Multivector3 rrev = r.reversed().as_multivector();
    return geometric_product(geometric_product(rrev, v), rm);
}

/// Fast path of sandwich() for plain vectors; assumes r is unit.
/// Agrees with the multivector route to machine precision.
inline Vec3 rotate_vector(const Rotor3& r, const Vec3& v) {
    // Axis form: r = cos(t) + sin(t) * B with B dual to the unit axis n,
    // n = (b23, -b13, b12); Rodrigues via two cross products.
    const Vec3 n{r.b.b23, -r.b.b13, r.b.b12};
    const Vec3 c1 = Vec3::cross(n, v);
    const Vec3 c2 = Vec3::cross(n, c1);
    return v + c1 * (2.0 * r.s) + c2 * 2.0;
}

/// Rotor product restricted to the even subalgebra.
inline Rotor3 rotor_product(const Rotor3& a, const Rotor3& b) {
    Rotor3 c;
    c.s = a.s * b.s - a.b.b12 * b.b.b12 - a.b.b13 * b.b.b13 - a.b.b23 * b.b.b23;
    c.b.b12 = a.s * b.b.b12 + a.b.b12 * b.s - a.b.b13 * b.b.b23 + a.b.b23 * b.b.b13;
    c.b.b13 = a.s * b.b.b13 + a.b.b13 * b.s + a.b.b12 * b.b.b23 - a.b.b23 * b.b.b12;
    c.b.b23 = a.s * b.b.b23 + a.b.b23 * b.s - a.b.b12 * b.b.b13 + a.b.b13 * b.b.b12;
    return c;
}

/// Canonical polar form of the composition e^{alpha/2 P} e^{phi/2 Q}:
/// the product rotor with its scalar part flipped nonnegative, so the
/// resulting angle beta = 2 arg lies in [0, pi].
struct ComposedRotation {
    double angle = 0.0;    // beta in [0, pi]
    Bivector3 plane;       // unit R; e12 fallback when degenerate
    bool degenerate = false;
};

inline ComposedRotation compose_rotation(double alpha, const Bivector3& plane_p,
                                         double phi, const Bivector3& plane_q) {
    Rotor3 g = rotor_product(exp_bivector(plane_p, alpha / 2.0), exp_bivector(plane_q, phi / 2.0));
    if (g.s < 0.0) g = -g;
    const RotorLog lg = rotor_log(g);
    return {2.0 * lg.angle, lg.plane, lg.degenerate};
}

/// Component of a grade-1 multivector lying in the unit plane Q, via the
/// contraction -(v . Q) Q with v . Q = <(vQ - Qv)/2>_1.
inline Multivector3 project_parallel(const Multivector3& v, const Bivector3& q) {
    const double off = std::abs(v.s) + std::abs(v.b12) + std::abs(v.b13) + std::abs(v.b23) + std::abs(v.p);
    if (off > kDegenerateRel * (1.0 + v.norm()))
        throw std::invalid_argument("project_parallel: input must be a pure vector");
    if (!q.is_unit()) throw std::invalid_argument("project_parallel: plane must be a unit bivector");
    const Multivector3 qm = Multivector3::bivector(q);
    const Multivector3 contraction =
        grade((geometric_product(v, qm) - geometric_product(qm, v)) * 0.5, 1);
    return grade(-geometric_product(contraction, qm), 1);
}

/// Same projection on plain vectors: v - n (n . v) with n the unit normal
/// dual to Q. Assumes Q is unit.
inline Vec3 project_parallel_vec(const Vec3& v, const Bivector3& q) {
    const Vec3 n{q.b23, -q.b13, q.b12};
    const double d = Vec3::dot(n, v);
    return {v.x - n.x * d, v.y - n.y * d, v.z - n.z * d};
}

}  // namespace geocorr

#endif  // GEOCORR_GA3_HPP
