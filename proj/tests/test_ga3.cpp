#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geocorr/ga3.hpp"
#include "oracles.hpp"

using namespace geocorr;

namespace {

Multivector3 e(int i) {
    Multivector3 m;
    if (i == 1) m.v1 = 1.0;
    if (i == 2) m.v2 = 1.0;
    if (i == 3) m.v3 = 1.0;
    return m;
}

}  // namespace

TEST_CASE("geometric product basis cases") {
    // e1 e1 = 1
    auto r = geometric_product(e(1), e(1));
    CHECK(r.s == 1.0);
    CHECK(oracles::max_abs_diff(r, Multivector3::scalar(1.0)) == 0.0);

    // e3 e1 = -e13
    r = geometric_product(e(3), e(1));
    CHECK(r.b13 == -1.0);
    CHECK(r.s == 0.0);
    CHECK(r.b12 == 0.0);
    CHECK(r.b23 == 0.0);

    // (e1 + e2) e2 = 1 + e12
    r = geometric_product(e(1) + e(2), e(2));
    Multivector3 expect;
    expect.s = 1.0;
    expect.b12 = 1.0;
    CHECK(oracles::max_abs_diff(r, expect) == 0.0);
    CHECK(oracles::max_abs_diff(r, oracles::product_brute(e(1) + e(2), e(2))) == 0.0);
}

TEST_CASE("geometric product matches blade-table oracle on random pairs") {
    oracles::Rng rng(0x9a3aULL);
    for (int i = 0; i < 1000; ++i) {
        const auto a = rng.multivector();
        const auto b = rng.multivector();
        CHECK(oracles::max_abs_diff(geometric_product(a, b), oracles::product_brute(a, b)) <= 1e-12);
    }
}

TEST_CASE("geometric product is associative and bilinear") {
    oracles::Rng rng(0x77fULL);
    for (int i = 0; i < 200; ++i) {
        const auto a = rng.multivector(1.0);
        const auto b = rng.multivector(1.0);
        const auto c = rng.multivector(1.0);
        const auto ab_c = geometric_product(geometric_product(a, b), c);
        const auto a_bc = geometric_product(a, geometric_product(b, c));
        CHECK(oracles::max_abs_diff(ab_c, a_bc) <= 1e-12);
        const auto lin = geometric_product(a + b, c);
        const auto sum = geometric_product(a, c) + geometric_product(b, c);
        CHECK(oracles::max_abs_diff(lin, sum) <= 1e-12);
    }
}

TEST_CASE("vector product splits into dot and wedge") {
    oracles::Rng rng(0x1c4ULL);
    for (int i = 0; i < 200; ++i) {
        const Vec3 u = rng.vector();
        const Vec3 v = rng.vector();
        const auto prod = geometric_product(Multivector3::vector(u), Multivector3::vector(v));
        CHECK(grade(prod, 0).s == doctest::Approx(Vec3::dot(u, v)).epsilon(1e-12));
        CHECK(prod.b12 == doctest::Approx(u.x * v.y - u.y * v.x).epsilon(1e-12));
        CHECK(prod.b13 == doctest::Approx(u.x * v.z - u.z * v.x).epsilon(1e-12));
        CHECK(prod.b23 == doctest::Approx(u.y * v.z - u.z * v.y).epsilon(1e-12));
        CHECK(prod.v1 == 0.0);
        CHECK(prod.p == 0.0);
    }
}

TEST_CASE("reversion") {
    Multivector3 e12 = Multivector3::bivector(kPlaneE12);
    CHECK(reverse(e12).b12 == -1.0);
    CHECK(reverse(e(1)).v1 == 1.0);

    Multivector3 m;
    m.s = 1.0;
    m.v1 = 1.0;
    m.b12 = 1.0;
    m.p = 1.0;
    const auto r = reverse(m);
    CHECK(r.s == 1.0);
    CHECK(r.v1 == 1.0);
    CHECK(r.b12 == -1.0);
    CHECK(r.p == -1.0);

    oracles::Rng rng(0xd00dULL);
    for (int i = 0; i < 100; ++i) {
        const auto a = rng.multivector();
        CHECK(oracles::max_abs_diff(reverse(reverse(a)), a) == 0.0);
    }
}

TEST_CASE("grade projection") {
    Multivector3 m;
    m.s = 1.0;
    m.b12 = 2.0;
    CHECK(grade(m, 0).s == 1.0);
    CHECK(grade(m, 0).b12 == 0.0);
    CHECK(grade(m, 2).b12 == 2.0);
    CHECK(grade(m, 2).s == 0.0);

    Multivector3 ps;
    ps.p = 1.0;
    CHECK(grade(ps, 2).norm_sq() == 0.0);

    CHECK_THROWS_AS(grade(m, 4), std::invalid_argument);
    CHECK_THROWS_AS(grade(m, -1), std::invalid_argument);

    oracles::Rng rng(0x5e5eULL);
    for (int i = 0; i < 100; ++i) {
        const auto a = rng.multivector();
        auto sum = grade(a, 0);
        for (int k = 1; k < 4; ++k) sum = sum + grade(a, k);
        CHECK(oracles::max_abs_diff(sum, a) == 0.0);
    }
}

TEST_CASE("exp_bivector") {
    const auto id = exp_bivector(kPlaneE12, 0.0);
    CHECK(id.s == 1.0);
    CHECK(id.b.norm() == 0.0);

    const auto r = exp_bivector(kPlaneE13, kPi / 4.0);
    CHECK(r.s == doctest::Approx(std::cos(kPi / 4.0)));
    CHECK(r.b.b13 == doctest::Approx(std::sin(kPi / 4.0)));
    CHECK(r.is_unit());

    // composition: exp(e12, pi/2)^2 = exp(e12, pi)
    const auto q = exp_bivector(kPlaneE12, kPi / 2.0);
    const auto sq = rotor_product(q, q);
    const auto full = exp_bivector(kPlaneE12, kPi);
    CHECK(sq.s == doctest::Approx(full.s).epsilon(1e-15));
    CHECK(sq.b.b12 == doctest::Approx(full.b.b12).epsilon(1e-15));

    CHECK_THROWS_AS(exp_bivector(Bivector3{2.0, 0.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("rotor_log closed-form correlation value") {
    // sqrt(32) e^{-pi/4 e13} = 4 - 4 e13: angle pi/4, plane -e13
    Rotor3 r{4.0, {0.0, -4.0, 0.0}};
    const auto lg = rotor_log(r);
    CHECK(lg.angle == doctest::Approx(kPi / 4.0).epsilon(1e-15));
    CHECK(lg.plane.b13 == doctest::Approx(-1.0));
    CHECK(lg.plane.b12 == 0.0);
    CHECK_FALSE(lg.degenerate);
}

TEST_CASE("rotor_log degenerate cases") {
    const auto zero = rotor_log(Rotor3{1.0, {}});
    CHECK(zero.angle == 0.0);
    CHECK(zero.degenerate);
    CHECK(zero.plane.b12 == 1.0);

    const auto pi_case = rotor_log(Rotor3{-1.0, {}});
    CHECK(pi_case.angle == kPi);
    CHECK(pi_case.degenerate);

    CHECK_THROWS_AS(rotor_log(Rotor3{0.0, {}}), std::invalid_argument);
}

TEST_CASE("rotor_log inverts exp_bivector") {
    oracles::Rng rng(0xabcdULL);
    for (int i = 0; i < 300; ++i) {
        const auto plane = rng.unit_plane();
        const double angle = rng.uniform(1e-3, kPi - 1e-3);
        const auto lg = rotor_log(exp_bivector(plane, angle));
        CHECK(std::abs(lg.angle - angle) <= 1e-10);
        CHECK(std::abs(Bivector3::dot(lg.plane, plane) - 1.0) <= 1e-10);
    }
}

TEST_CASE("rotor_log is scale invariant") {
    oracles::Rng rng(0x1234ULL);
    for (int i = 0; i < 100; ++i) {
        const auto r = rng.unit_rotor();
        const Rotor3 scaled{r.s * 37.5, r.b * 37.5};
        const auto a = rotor_log(r);
        const auto b = rotor_log(scaled);
        CHECK(std::abs(a.angle - b.angle) <= 1e-12);
        CHECK(std::abs(Bivector3::dot(a.plane, b.plane) - 1.0) <= 1e-12);
    }
}

TEST_CASE("sandwich rotates vectors") {
    // rotate e1 by pi/2 in the e12 plane
    const auto r = exp_bivector(kPlaneE12, kPi / 4.0);
    const auto out = sandwich(r, e(1));
    CHECK(out.v1 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(out.v2 == doctest::Approx(1.0));
    CHECK(out.v3 == 0.0);
    CHECK(out.s == 0.0);
    CHECK(out.p == doctest::Approx(0.0).epsilon(1e-15));

    // identity rotor fixes everything
    oracles::Rng rng(0xfeedULL);
    const auto v = rng.multivector();
    CHECK(oracles::max_abs_diff(sandwich(Rotor3{}, v), v) == 0.0);

    // e3 is fixed by rotations in the e12 plane
    for (double theta : {0.1, 1.0, 2.5}) {
        const auto fixed = sandwich(exp_bivector(kPlaneE12, theta / 2.0), e(3));
        CHECK(fixed.v3 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(fixed.v1) <= 1e-14);
        CHECK(std::abs(fixed.v2) <= 1e-14);
    }

    CHECK_THROWS_AS(sandwich(Rotor3{2.0, {}}, e(1)), std::invalid_argument);
}

TEST_CASE("sandwich preserves vector norm and matches matrix oracle") {
    oracles::Rng rng(0xc0ffeeULL);
    for (int i = 0; i < 500; ++i) {
        const auto plane = rng.unit_plane();
        const double angle = rng.uniform(0.0, kPi);
        const auto r = exp_bivector(plane, angle / 2.0);
        const Vec3 v = rng.vector();

        const auto sv = sandwich(r, Multivector3::vector(v));
        CHECK(std::abs(sv.vector_part().norm() - v.norm()) <= 1e-10);
        CHECK(std::abs(sv.s) <= 1e-12);
        CHECK(std::abs(sv.p) <= 1e-12);

        const auto mat = oracles::rotation_matrix(plane, angle);
        const auto mv = oracles::apply_matrix(mat, v);
        CHECK(std::abs(sv.v1 - mv.x) <= 1e-10);
        CHECK(std::abs(sv.v2 - mv.y) <= 1e-10);
        CHECK(std::abs(sv.v3 - mv.z) <= 1e-10);

        // fast path agrees with the multivector route
        const auto fast = rotate_vector(r, v);
        CHECK(std::abs(fast.x - sv.v1) <= 1e-13);
        CHECK(std::abs(fast.y - sv.v2) <= 1e-13);
        CHECK(std::abs(fast.z - sv.v3) <= 1e-13);
    }
}

TEST_CASE("compose_rotation simple cases") {
    const auto same = compose_rotation(1.1, kPlaneE13, 0.0, kPlaneE23);
    CHECK(same.angle == doctest::Approx(1.1).epsilon(1e-14));
    CHECK(std::abs(Bivector3::dot(same.plane, kPlaneE13) - 1.0) <= 1e-14);

    const auto coplanar = compose_rotation(kPi / 2.0, kPlaneE12, kPi / 2.0, kPlaneE12);
    CHECK(coplanar.angle == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(std::abs(Bivector3::dot(coplanar.plane, kPlaneE12) - 1.0) <= 1e-14);
}

TEST_CASE("compose_rotation mixed planes against quaternion oracle") {
    // e^{pi/4 e12} e^{pi/4 e13} = 1/2 + (e12 + e13 - e23)/2
    const auto c = compose_rotation(kPi / 2.0, kPlaneE12, kPi / 2.0, kPlaneE13);
    CHECK(c.angle == doctest::Approx(2.0 * std::acos(0.5)).epsilon(1e-14));
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    CHECK(c.plane.b12 == doctest::Approx(inv_sqrt3));
    CHECK(c.plane.b13 == doctest::Approx(inv_sqrt3));
    CHECK(c.plane.b23 == doctest::Approx(-inv_sqrt3));

    oracles::Rng rng(0xacedULL);
    for (int i = 0; i < 300; ++i) {
        const auto p = rng.unit_plane();
        const auto q = rng.unit_plane();
        const double alpha = rng.uniform(0.0, kPi);
        const double phi = rng.uniform(0.0, kPi);
        const auto got = compose_rotation(alpha, p, phi, q);

        // second factor acts after the first
        auto qc = oracles::quat_mul(oracles::quat_from_plane_angle(q, phi),
                                    oracles::quat_from_plane_angle(p, alpha));
        if (qc.w < 0.0) qc = {-qc.w, -qc.x, -qc.y, -qc.z};
        const double vn = std::sqrt(qc.x * qc.x + qc.y * qc.y + qc.z * qc.z);
        const double want_angle = 2.0 * std::atan2(vn, qc.w);
        CHECK(std::abs(got.angle - want_angle) <= 1e-10);
        if (vn > 1e-9) {
            const auto axis = oracles::axis_of_plane(got.plane);
            CHECK(std::abs(axis.x - qc.x / vn) <= 1e-9);
            CHECK(std::abs(axis.y - qc.y / vn) <= 1e-9);
            CHECK(std::abs(axis.z - qc.z / vn) <= 1e-9);
        }
    }
}

TEST_CASE("compose_rotation equals successive sandwiches") {
    oracles::Rng rng(0xbeadULL);
    for (int i = 0; i < 100; ++i) {
        const auto p = rng.unit_plane();
        const auto q = rng.unit_plane();
        const double alpha = rng.uniform(0.0, kPi);
        const double phi = rng.uniform(0.0, kPi);
        const auto comp = compose_rotation(alpha, p, phi, q);

        const Vec3 v = rng.vector();
        const auto step1 = rotate_vector(exp_bivector(p, alpha / 2.0), v);
        const auto step2 = rotate_vector(exp_bivector(q, phi / 2.0), step1);
        const auto direct = rotate_vector(exp_bivector(comp.plane, comp.angle / 2.0), v);
        CHECK(std::abs(step2.x - direct.x) <= 1e-10);
        CHECK(std::abs(step2.y - direct.y) <= 1e-10);
        CHECK(std::abs(step2.z - direct.z) <= 1e-10);
    }
}

TEST_CASE("project_parallel") {
    const auto in_plane = project_parallel(e(1), kPlaneE12);
    CHECK(in_plane.v1 == doctest::Approx(1.0));
    CHECK(std::abs(in_plane.v2) <= 1e-15);
    CHECK(std::abs(in_plane.v3) <= 1e-15);

    const auto normal = project_parallel(e(3), kPlaneE12);
    CHECK(normal.norm() <= 1e-15);

    const auto mixed = project_parallel(e(1) + e(3), kPlaneE12);
    CHECK(mixed.v1 == doctest::Approx(1.0));
    CHECK(std::abs(mixed.v3) <= 1e-15);

    Multivector3 not_a_vector;
    not_a_vector.s = 1.0;
    not_a_vector.v1 = 1.0;
    CHECK_THROWS_AS(project_parallel(not_a_vector, kPlaneE12), std::invalid_argument);
}

TEST_CASE("project_parallel is idempotent and splits the norm") {
    oracles::Rng rng(0xfaceULL);
    for (int i = 0; i < 300; ++i) {
        const auto q = rng.unit_plane();
        const Vec3 v = rng.vector();
        const auto vm = Multivector3::vector(v);

        const auto par = project_parallel(vm, q);
        const auto par2 = project_parallel(par, q);
        CHECK(oracles::max_abs_diff(par, par2) <= 1e-12);

        const auto perp = vm - par;
        CHECK(std::abs(v.norm_sq() - (par.norm_sq() + perp.norm_sq())) <= 1e-12);

        // matrix oracle: subtract the normal component
        const auto n = oracles::axis_of_plane(q);
        const double d = Vec3::dot(n, v);
        CHECK(std::abs(par.v1 - (v.x - n.x * d)) <= 1e-12);
        CHECK(std::abs(par.v2 - (v.y - n.y * d)) <= 1e-12);
        CHECK(std::abs(par.v3 - (v.z - n.z * d)) <= 1e-12);

        // fast path matches
        const auto fast = project_parallel_vec(v, q);
        CHECK(std::abs(fast.x - par.v1) <= 1e-13);
        CHECK(std::abs(fast.y - par.v2) <= 1e-13);
        CHECK(std::abs(fast.z - par.v3) <= 1e-13);

        // perpendicular rest is orthogonal to every vector of the plane
        const auto w = project_parallel_vec(rng.vector(), q);
        CHECK(std::abs(Vec3::dot(perp.vector_part(), w)) <= 1e-12);
    }
}

TEST_CASE("squared norm is positive definite") {
    oracles::Rng rng(0xbeefULL);
    CHECK(Multivector3{}.norm_sq() == 0.0);
    for (int i = 0; i < 100; ++i) {
        const auto a = rng.multivector();
        if (a.norm_sq() == 0.0) continue;
        CHECK(a.norm_sq() > 0.0);
    }
}
