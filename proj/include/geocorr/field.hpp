#ifndef GEOCORR_FIELD_HPP
#define GEOCORR_FIELD_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "geocorr/ga3.hpp"

// Discrete vector fields v: R^m -> R^3 (m = 2 or 3) sampled on regular
// grids, plus the linear fields supported on the open cube (-1,1)^3 used
// by the synthetic experiments. Fields are immutable after construction.

namespace geocorr {

class VectorField {
public:
    VectorField(int m, std::array<int, 3> dims, std::array<double, 3> spacing,
                std::array<double, 3> origin, std::vector<Vec3> values);

    int rank() const { return m_; }
    const std::array<int, 3>& dims() const { return dims_; }
    const std::array<double, 3>& spacing() const { return spacing_; }
    const std::array<double, 3>& origin() const { return origin_; }

    std::size_t size() const { return values_.size(); }
    const std::vector<Vec3>& values() const { return values_; }
    std::vector<Vec3>& values() { return values_; }

    /// Product of the cell edge lengths over the m grid axes.
    double cell_measure() const;

    /// Position of the sample at the row-major flat index (last axis fastest).
    std::array<double, 3> position(std::size_t flat) const;

    bool same_geometry(const VectorField& other) const;

private:
    int m_;
    std::array<int, 3> dims_;      // trailing axes fixed to 1 when m == 2
    std::array<double, 3> spacing_;
    std::array<double, 3> origin_;
    std::vector<Vec3> values_;
};

/// Linear map v(x) = A x, supported on the open cube (-1,1)^3.
struct LinearField {
    std::array<std::array<double, 3>, 3> coeffs{};

    Vec3 eval(const Vec3& x) const {
        return {coeffs[0][0] * x.x + coeffs[0][1] * x.y + coeffs[0][2] * x.z,
                coeffs[1][0] * x.x + coeffs[1][1] * x.y + coeffs[1][2] * x.z,
                coeffs[2][0] * x.x + coeffs[2][1] * x.y + coeffs[2][2] * x.z};
    }
};

/// Outer rotation parameters: positive angle in [0, pi], orientation
/// encoded in the unit plane.
struct RotationSpec {
    Bivector3 plane = kPlaneE12;
    double angle = 0.0;

    void validate() const;
};

/// Rotates every sample value by the rotation in rot; grid geometry is
/// untouched.
VectorField apply_outer_rotation(const VectorField& f, const RotationSpec& rot);

/// Samples a linear field at the resolution^3 cell midpoints of (-1,1)^3.
VectorField sample_linear(const LinearField& f, int resolution);

/// Riemann sum of |v(x)|^2 times the cell measure.
double l2_norm_sq(const VectorField& f);

/// Nine i.i.d. coefficients uniform on [-1,1].
LinearField random_linear_field(std::uint64_t seed);

/// Plane dual to a uniform point on the unit sphere, angle uniform on
/// [0, pi].
RotationSpec random_rotation(std::uint64_t seed);

/// Least-squares refit of the coefficient matrix from a sampled 3D field.
LinearField refit_linear(const VectorField& f);

/// Sum of squared coefficient differences.
double coefficient_error(const LinearField& detected, const LinearField& truth);

/// Same, after refitting the coefficients of a corrected grid.
double coefficient_error(const VectorField& detected, const LinearField& truth);

/// Text format: header "vfield m d1 [d2 [d3]] s1 [s2 [s3]]", then one
/// "x y z" line per sample in row-major order.
void write_field_text(std::ostream& out, const VectorField& f);
void write_field_file(const std::string& path, const VectorField& f);
VectorField read_field_text(std::istream& in, const std::string& name = "<stream>");
VectorField read_field_file(const std::string& path);

}  // namespace geocorr

#endif  // GEOCORR_FIELD_HPP
