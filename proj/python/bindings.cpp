#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geocorr/corr.hpp"
#include "geocorr/detect.hpp"
#include "geocorr/experiments.hpp"
#include "geocorr/field.hpp"
#include "geocorr/ga3.hpp"
#include "geocorr/imageio.hpp"

namespace py = pybind11;
using namespace geocorr;

namespace {

VectorField field_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> arr,
                             std::vector<double> spacing, std::vector<double> origin) {
    const auto info = arr.request();
    if (info.ndim < 3 || info.ndim > 4 || info.shape[info.ndim - 1] != 3)
        throw std::invalid_argument("expected an array of shape (d1,d2,3) or (d1,d2,d3,3)");
    const int m = static_cast<int>(info.ndim - 1);
    std::array<int, 3> dims{1, 1, 1};
    std::size_t total = 1;
    for (int a = 0; a < m; ++a) {
        dims[a] = static_cast<int>(info.shape[a]);
        total *= info.shape[a];
    }
    if (spacing.empty()) spacing.assign(m, 1.0);
    if (origin.empty()) origin.assign(m, 0.0);
    if (static_cast<int>(spacing.size()) != m || static_cast<int>(origin.size()) != m)
        throw std::invalid_argument("spacing and origin must have one entry per grid axis");
    std::array<double, 3> sp{1.0, 1.0, 1.0};
    std::array<double, 3> og{0.0, 0.0, 0.0};
    for (int a = 0; a < m; ++a) {
        sp[a] = spacing[a];
        og[a] = origin[a];
    }
    const double* data = static_cast<const double*>(info.ptr);
    std::vector<Vec3> values(total);
    for (std::size_t i = 0; i < total; ++i)
        values[i] = {data[3 * i], data[3 * i + 1], data[3 * i + 2]};
    return {m, dims, sp, og, std::move(values)};
}

py::array_t<double> field_to_array(const VectorField& f) {
    std::vector<py::ssize_t> shape;
    for (int a = 0; a < f.rank(); ++a) shape.push_back(f.dims()[a]);
    shape.push_back(3);
    py::array_t<double> arr(shape);
    double* out = arr.mutable_data();
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[3 * i] = f.values()[i].x;
        out[3 * i + 1] = f.values()[i].y;
        out[3 * i + 2] = f.values()[i].z;
    }
    return arr;
}

RgbImage image_from_array(py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast> arr) {
    const auto info = arr.request();
    if (info.ndim != 3 || info.shape[2] != 3)
        throw std::invalid_argument("expected an array of shape (height, width, 3)");
    RgbImage img;
    img.height = static_cast<int>(info.shape[0]);
    img.width = static_cast<int>(info.shape[1]);
    const auto* data = static_cast<const std::uint8_t*>(info.ptr);
    img.pixels.assign(data, data + 3 * img.pixel_count());
    return img;
}

py::array_t<std::uint8_t> image_to_array(const RgbImage& img) {
    py::array_t<std::uint8_t> arr({py::ssize_t(img.height), py::ssize_t(img.width), py::ssize_t(3)});
    std::copy(img.pixels.begin(), img.pixels.end(), arr.mutable_data());
    return arr;
}

LinearField linear_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
    const auto info = arr.request();
    if (info.ndim != 2 || info.shape[0] != 3 || info.shape[1] != 3)
        throw std::invalid_argument("expected a 3x3 coefficient matrix");
    LinearField f;
    const double* data = static_cast<const double*>(info.ptr);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) f.coeffs[r][c] = data[3 * r + c];
    return f;
}

DetectorConfig make_config(double epsilon, int max_iterations) {
    DetectorConfig cfg;
    cfg.epsilon = epsilon;
    cfg.max_iterations = max_iterations;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_geocorr, m) {
    m.doc() = "Cl(3,0) geometric correlation and outer-rotation detection";

    py::class_<Bivector3>(m, "Bivector3")
        .def(py::init<double, double, double>(), py::arg("b12"), py::arg("b13"), py::arg("b23"))
        .def_readwrite("b12", &Bivector3::b12)
        .def_readwrite("b13", &Bivector3::b13)
        .def_readwrite("b23", &Bivector3::b23)
        .def("norm", &Bivector3::norm)
        .def("normalized", &Bivector3::normalized)
        .def("__neg__", [](const Bivector3& b) { return -b; })
        .def("__repr__", [](const Bivector3& b) {
            return "Bivector3(" + std::to_string(b.b12) + ", " + std::to_string(b.b13) + ", " +
                   std::to_string(b.b23) + ")";
        });
    m.attr("PLANE_E12") = kPlaneE12;
    m.attr("PLANE_E13") = kPlaneE13;
    m.attr("PLANE_E23") = kPlaneE23;
    m.attr("PI") = kPi;

    py::class_<Multivector3>(m, "Multivector3")
        .def(py::init([](double s, double v1, double v2, double v3, double b12, double b13,
                         double b23, double p) {
                 return Multivector3{s, v1, v2, v3, b12, b13, b23, p};
             }),
             py::arg("s") = 0.0, py::arg("v1") = 0.0, py::arg("v2") = 0.0, py::arg("v3") = 0.0,
             py::arg("b12") = 0.0, py::arg("b13") = 0.0, py::arg("b23") = 0.0, py::arg("p") = 0.0)
        .def_readwrite("s", &Multivector3::s)
        .def_readwrite("v1", &Multivector3::v1)
        .def_readwrite("v2", &Multivector3::v2)
        .def_readwrite("v3", &Multivector3::v3)
        .def_readwrite("b12", &Multivector3::b12)
        .def_readwrite("b13", &Multivector3::b13)
        .def_readwrite("b23", &Multivector3::b23)
        .def_readwrite("p", &Multivector3::p)
        .def_static("vector", py::overload_cast<double, double, double>(&Multivector3::vector))
        .def_static("scalar", &Multivector3::scalar)
        .def("norm", &Multivector3::norm)
        .def("__add__", [](const Multivector3& a, const Multivector3& b) { return a + b; })
        .def("__sub__", [](const Multivector3& a, const Multivector3& b) { return a - b; })
        .def("__mul__", &geometric_product)
        .def("__repr__", [](const Multivector3& a) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "Multivector3(s=%g, v=(%g, %g, %g), b=(%g, %g, %g), p=%g)", a.s, a.v1,
                          a.v2, a.v3, a.b12, a.b13, a.b23, a.p);
            return std::string(buf);
        });

    py::class_<Rotor3>(m, "Rotor3")
        .def_readonly("s", &Rotor3::s)
        .def_readonly("b", &Rotor3::b)
        .def("norm", &Rotor3::norm);

    m.def("geometric_product", &geometric_product);
    m.def("reverse", &reverse);
    m.def("grade", &grade, py::arg("a"), py::arg("k"));
    m.def("exp_bivector", &exp_bivector, py::arg("plane"), py::arg("angle"));
    m.def("rotor_log", [](const Rotor3& r) {
        const RotorLog lg = rotor_log(r);
        return py::make_tuple(lg.angle, lg.plane, lg.degenerate);
    });
    m.def("rotor_log_mv", [](const Multivector3& a) {
        const RotorLog lg = rotor_log(a);
        return py::make_tuple(lg.angle, lg.plane, lg.degenerate);
    });
    m.def("sandwich", &sandwich, py::arg("rotor"), py::arg("value"));
    m.def("compose_rotation", [](double alpha, const Bivector3& p, double phi, const Bivector3& q) {
        const ComposedRotation c = compose_rotation(alpha, p, phi, q);
        return py::make_tuple(c.angle, c.plane, c.degenerate);
    });
    m.def("project_parallel", &project_parallel, py::arg("vector"), py::arg("plane"));

    py::class_<VectorField>(m, "VectorField")
        .def(py::init(&field_from_array), py::arg("values"),
             py::arg("spacing") = std::vector<double>{}, py::arg("origin") = std::vector<double>{})
        .def_property_readonly("rank", &VectorField::rank)
        .def_property_readonly("dims",
                               [](const VectorField& f) {
                                   std::vector<int> d(f.dims().begin(),
                                                      f.dims().begin() + f.rank());
                                   return d;
                               })
        .def_property_readonly("cell_measure", &VectorField::cell_measure)
        .def("to_numpy", &field_to_array)
        .def("__len__", &VectorField::size);

    m.def("sample_linear",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> coeffs, int resolution) {
              return sample_linear(linear_from_array(coeffs), resolution);
          },
          py::arg("coeffs"), py::arg("resolution"));
    m.def("apply_outer_rotation",
          [](const VectorField& f, const Bivector3& plane, double angle) {
              return apply_outer_rotation(f, RotationSpec{plane, angle});
          },
          py::arg("field"), py::arg("plane"), py::arg("angle"));
    m.def("l2_norm_sq", &l2_norm_sq);
    m.def("random_linear_field", [](std::uint64_t seed) {
        const LinearField f = random_linear_field(seed);
        py::array_t<double> arr({3, 3});
        double* out = arr.mutable_data();
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) out[3 * r + c] = f.coeffs[r][c];
        return arr;
    });
    m.def("random_rotation", [](std::uint64_t seed) {
        const RotationSpec rot = random_rotation(seed);
        return py::make_tuple(rot.plane, rot.angle);
    });
    m.def("coefficient_error",
          [](const VectorField& detected,
             py::array_t<double, py::array::c_style | py::array::forcecast> truth) {
              return coefficient_error(detected, linear_from_array(truth));
          });
    m.def("read_field", &read_field_file, py::arg("path"));
    m.def("write_field", &write_field_file, py::arg("path"), py::arg("field"));

    py::class_<CorrelationResult>(m, "CorrelationResult")
        .def_readonly("raw", &CorrelationResult::raw)
        .def_readonly("normalized", &CorrelationResult::normalized)
        .def_readonly("angle", &CorrelationResult::angle)
        .def_readonly("plane", &CorrelationResult::plane)
        .def_readonly("degenerate", &CorrelationResult::degenerate);
    m.def("correlate_origin", &correlate_origin, py::arg("u"), py::arg("v"));
    m.def("correlate_projected", &correlate_projected, py::arg("u"), py::arg("v"), py::arg("plane"));

    py::class_<IterationRecord>(m, "IterationRecord")
        .def_readonly("phi_raw", &IterationRecord::phi_raw)
        .def_readonly("phi", &IterationRecord::phi)
        .def_readonly("plane", &IterationRecord::plane)
        .def_readonly("disturbed", &IterationRecord::disturbed)
        .def_readonly("phi_refine", &IterationRecord::phi_refine)
        .def_readonly("alpha", &IterationRecord::alpha)
        .def_readonly("residual_abs", &IterationRecord::residual_abs)
        .def_readonly("residual_per_sample", &IterationRecord::residual_per_sample);

    py::class_<DetectionResult>(m, "DetectionResult")
        .def_readonly("angle", &DetectionResult::angle)
        .def_readonly("plane", &DetectionResult::plane)
        .def_readonly("corrected", &DetectionResult::corrected)
        .def_readonly("iterations", &DetectionResult::iterations)
        .def_readonly("trace", &DetectionResult::trace)
        .def_readonly("converged", &DetectionResult::converged);

    m.def("algorithm1",
          [](const VectorField& v, const VectorField& u, double epsilon, int max_iterations) {
              return algorithm1(v, u, make_config(epsilon, max_iterations));
          },
          py::arg("v"), py::arg("u"), py::arg("epsilon") = 1e-10, py::arg("max_iterations") = 5000);
    m.def("algorithm2",
          [](const VectorField& v, const VectorField& u, double epsilon, int max_iterations) {
              return algorithm2(v, u, make_config(epsilon, max_iterations));
          },
          py::arg("v"), py::arg("u"), py::arg("epsilon") = 1e-10, py::arg("max_iterations") = 5000);
    m.def("residual_error", [](const VectorField& corrected, const VectorField& original) {
        const ResidualError err = residual_error(corrected, original);
        return py::make_tuple(err.absolute, err.per_sample);
    });

    m.def("read_ppm", [](const std::string& path) { return image_to_array(read_ppm(path)); });
    m.def("write_ppm",
          [](const std::string& path,
             py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast> img) {
              write_ppm(path, image_from_array(img));
          });
    m.def("synthetic_image", [](int width, int height, std::uint64_t seed) {
        return image_to_array(synthetic_image(width, height, seed));
    }, py::arg("width"), py::arg("height"), py::arg("seed") = 1);
    m.def("image_to_field",
          [](py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast> img) {
              return image_to_field(image_from_array(img));
          });
    m.def("field_to_image", [](const VectorField& f) { return image_to_array(field_to_image(f)); });
    m.def("distort_color_space",
          [](const VectorField& f, const Bivector3& plane, double angle) {
              return distort_color_space(f, RotationSpec{plane, angle});
          },
          py::arg("field"), py::arg("plane"), py::arg("angle"));
}
