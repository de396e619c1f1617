#include "geocorr/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace geocorr {

namespace {

// Standard-pinned draw so results are identical on every platform.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

VectorField::VectorField(int m, std::array<int, 3> dims, std::array<double, 3> spacing,
                         std::array<double, 3> origin, std::vector<Vec3> values)
    : m_(m), dims_(dims), spacing_(spacing), origin_(origin), values_(std::move(values)) {
    if (m_ != 2 && m_ != 3) throw std::invalid_argument("VectorField: rank must be 2 or 3");
    std::size_t n = 1;
    for (int a = 0; a < 3; ++a) {
        if (a >= m_) {
            dims_[a] = 1;
            spacing_[a] = 1.0;
            origin_[a] = 0.0;
            continue;
        }
        if (dims_[a] < 1) throw std::invalid_argument("VectorField: dims must be positive");
        if (!(spacing_[a] > 0.0)) throw std::invalid_argument("VectorField: spacing must be positive");
        n *= static_cast<std::size_t>(dims_[a]);
    }
    if (values_.size() != n)
        throw std::invalid_argument("VectorField: values size does not match grid extents");
}

double VectorField::cell_measure() const {
    double v = 1.0;
    for (int a = 0; a < m_; ++a) v *= spacing_[a];
    return v;
}

std::array<double, 3> VectorField::position(std::size_t flat) const {
    std::array<double, 3> pos{0.0, 0.0, 0.0};
    std::size_t rest = flat;
    for (int a = m_ - 1; a >= 0; --a) {
        const std::size_t d = static_cast<std::size_t>(dims_[a]);
        const std::size_t idx = rest % d;
        rest /= d;
        pos[a] = origin_[a] + static_cast<double>(idx) * spacing_[a];
    }
    return pos;
}

bool VectorField::same_geometry(const VectorField& other) const {
    if (m_ != other.m_) return false;
    for (int a = 0; a < m_; ++a) {
        if (dims_[a] != other.dims_[a]) return false;
        if (std::abs(spacing_[a] - other.spacing_[a]) > 1e-12 * spacing_[a]) return false;
    }
    return true;
}

void RotationSpec::validate() const {
    if (!plane.is_unit()) throw std::invalid_argument("RotationSpec: plane must be a unit bivector");
    if (!(angle >= 0.0 && angle <= kPi))
        throw std::invalid_argument("RotationSpec: angle must lie in [0, pi]");
}

VectorField apply_outer_rotation(const VectorField& f, const RotationSpec& rot) {
    rot.validate();
    const Rotor3 r = exp_bivector(rot.plane, rot.angle / 2.0);
    std::vector<Vec3> out;
    out.reserve(f.size());
    for (const Vec3& v : f.values()) out.push_back(rotate_vector(r, v));
    return {f.rank(), f.dims(), f.spacing(), f.origin(), std::move(out)};
}

VectorField sample_linear(const LinearField& f, int resolution) {
    if (resolution < 2) throw std::invalid_argument("sample_linear: resolution must be >= 2");
    const double h = 2.0 / resolution;
    const double first = -1.0 + h / 2.0;
    std::vector<Vec3> values;
    values.reserve(static_cast<std::size_t>(resolution) * resolution * resolution);
    for (int i = 0; i < resolution; ++i) {
        const double x = first + i * h;
        for (int j = 0; j < resolution; ++j) {
            const double y = first + j * h;
            for (int k = 0; k < resolution; ++k) {
                values.push_back(f.eval({x, y, first + k * h}));
            }
        }
    }
    return {3, {resolution, resolution, resolution}, {h, h, h}, {first, first, first},
            std::move(values)};
}

double l2_norm_sq(const VectorField& f) {
    double sum = 0.0;
    for (const Vec3& v : f.values()) sum += v.norm_sq();
    return sum * f.cell_measure();
}

LinearField random_linear_field(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    LinearField f;
    for (auto& row : f.coeffs)
        for (double& c : row) c = 2.0 * uniform01(rng) - 1.0;
    return f;
}

RotationSpec random_rotation(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double z = 2.0 * uniform01(rng) - 1.0;
    const double t = 2.0 * kPi * uniform01(rng);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Vec3 n{r * std::cos(t), r * std::sin(t), z};
    RotationSpec spec;
    spec.plane = {n.z, -n.y, n.x};  // dual of the axis n
    spec.angle = kPi * uniform01(rng);
    return spec;
}

LinearField refit_linear(const VectorField& f) {
    if (f.rank() != 3) throw std::invalid_argument("refit_linear: need a 3D field");
    // normal equations A (sum x x^T) = sum u x^T
    std::array<std::array<double, 3>, 3> xxt{};
    std::array<std::array<double, 3>, 3> uxt{};
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto p = f.position(i);
        const Vec3 u = f.values()[i];
        const std::array<double, 3> ua{u.x, u.y, u.z};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                xxt[r][c] += p[r] * p[c];
                uxt[r][c] += ua[r] * p[c];
            }
        }
    }
    // invert the symmetric 3x3 by cofactors
    const auto& m = xxt;
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                     - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                     + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (std::abs(det) < 1e-30)
        throw std::invalid_argument("refit_linear: grid does not span 3D space");
    std::array<std::array<double, 3>, 3> inv;
    inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
    inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;

    LinearField out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            out.coeffs[r][c] = uxt[r][0] * inv[0][c] + uxt[r][1] * inv[1][c] + uxt[r][2] * inv[2][c];
    return out;
}

double coefficient_error(const LinearField& detected, const LinearField& truth) {
    double sum = 0.0;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            const double d = detected.coeffs[r][c] - truth.coeffs[r][c];
            sum += d * d;
        }
    }
    return sum;
}

double coefficient_error(const VectorField& detected, const LinearField& truth) {
    return coefficient_error(refit_linear(detected), truth);
}

namespace {

void write_double(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

[[noreturn]] void parse_fail(const std::string& name, int line, int column, const std::string& what) {
    std::ostringstream msg;
    msg << name << ":" << line << ":" << column << ": " << what;
    throw std::runtime_error(msg.str());
}

struct LineScanner {
    const std::string& name;
    std::istream& in;
    std::string line;
    int line_no = 0;
    std::size_t pos = 0;

    bool next_line() {
        while (std::getline(in, line)) {
            ++line_no;
            pos = 0;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    }

    // next whitespace-separated token on the current line, or fail
    std::string token(const char* expected) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
        if (pos >= line.size())
            parse_fail(name, line_no, static_cast<int>(pos) + 1,
                       std::string("expected ") + expected);
        const std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
        return line.substr(start, pos - start);
    }

    bool at_end_of_line() {
        std::size_t p = pos;
        while (p < line.size() && (line[p] == ' ' || line[p] == '\t' || line[p] == '\r')) ++p;
        return p >= line.size();
    }

    double number(const char* what) {
        const std::size_t col = pos + 1;
        const std::string tok = token(what);
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            parse_fail(name, line_no, static_cast<int>(col),
                       std::string("invalid ") + what + " '" + tok + "'");
        }
    }

    long integer(const char* what) {
        const std::size_t col = pos + 1;
        const std::string tok = token(what);
        try {
            std::size_t used = 0;
            const long v = std::stol(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            parse_fail(name, line_no, static_cast<int>(col),
                       std::string("invalid ") + what + " '" + tok + "'");
        }
    }
};

}  // namespace

void write_field_text(std::ostream& out, const VectorField& f) {
    out << "vfield " << f.rank();
    for (int a = 0; a < f.rank(); ++a) out << ' ' << f.dims()[a];
    for (int a = 0; a < f.rank(); ++a) {
        out << ' ';
        write_double(out, f.spacing()[a]);
    }
    out << '\n';
    for (const Vec3& v : f.values()) {
        write_double(out, v.x);
        out << ' ';
        write_double(out, v.y);
        out << ' ';
        write_double(out, v.z);
        out << '\n';
    }
}

void write_field_file(const std::string& path, const VectorField& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_field_text(out, f);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

VectorField read_field_text(std::istream& in, const std::string& name) {
    LineScanner sc{name, in};
    if (!sc.next_line()) parse_fail(name, 1, 1, "empty input, expected 'vfield' header");
    if (sc.token("'vfield' magic") != "vfield")
        parse_fail(name, sc.line_no, 1, "expected 'vfield' header");
    const long m = sc.integer("rank");
    if (m != 2 && m != 3) parse_fail(name, sc.line_no, 1, "rank must be 2 or 3");
    std::array<int, 3> dims{1, 1, 1};
    std::size_t total = 1;
    for (int a = 0; a < m; ++a) {
        const long d = sc.integer("grid extent");
        if (d < 1 || d > 1 << 20) parse_fail(name, sc.line_no, 1, "grid extent out of range");
        dims[a] = static_cast<int>(d);
        total *= static_cast<std::size_t>(d);
    }
    std::array<double, 3> spacing{1.0, 1.0, 1.0};
    for (int a = 0; a < m; ++a) {
        spacing[a] = sc.number("spacing");
        if (!(spacing[a] > 0.0)) parse_fail(name, sc.line_no, 1, "spacing must be positive");
    }
    if (!sc.at_end_of_line())
        parse_fail(name, sc.line_no, static_cast<int>(sc.pos) + 1, "unexpected trailing header tokens");

    std::vector<Vec3> values;
    values.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        if (!sc.next_line())
            parse_fail(name, sc.line_no + 1, 1,
                       "unexpected end of input, expected " + std::to_string(total) +
                           " samples, got " + std::to_string(i));
        Vec3 v;
        v.x = sc.number("component");
        v.y = sc.number("component");
        v.z = sc.number("component");
        if (!sc.at_end_of_line())
            parse_fail(name, sc.line_no, static_cast<int>(sc.pos) + 1, "unexpected trailing tokens");
        values.push_back(v);
    }
    return {static_cast<int>(m), dims, spacing, {0.0, 0.0, 0.0}, std::move(values)};
}

VectorField read_field_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_field_text(in, path);
}

}  // namespace geocorr
