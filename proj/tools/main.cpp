// Command-line driver: synthetic linear-field experiments, color-space
// distortion/restoration of PPM images, and direct misalignment detection
// on vector-field files.
//
// Exit codes: 0 success/converged, 1 non-convergence, 2 usage error,
// 3 I/O or parse error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "geocorr/detect.hpp"
#include "geocorr/experiments.hpp"
#include "geocorr/field.hpp"
#include "geocorr/imageio.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

geocorr::Bivector3 parse_plane(const std::string& spec) {
    using geocorr::Bivector3;
    if (spec == "red") return geocorr::kPlaneE23;    // rotation about the red axis
    if (spec == "green") return geocorr::kPlaneE13;
    if (spec == "blue") return geocorr::kPlaneE12;
    Bivector3 b;
    char extra = 0;
    const int got = std::sscanf(spec.c_str(), "%lf,%lf,%lf%c", &b.b12, &b.b13, &b.b23, &extra);
    if (got != 3)
        throw CLI::ValidationError("--plane",
                                   "expected red|green|blue or three comma-separated components");
    if (b.norm() == 0.0) throw CLI::ValidationError("--plane", "plane must be nonzero");
    return b.normalized();
}

void print_report(std::ostream& out, const geocorr::ExperimentReport& report,
                  const std::string& per_unit_label) {
    geocorr::write_report_csv(out, report, per_unit_label);
}

void emit_report(const std::string& out_path, const geocorr::ExperimentReport& report,
                 const std::string& per_unit_label) {
    if (out_path.empty()) {
        print_report(std::cout, report, per_unit_label);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    print_report(out, report, per_unit_label);
    if (!out) throw std::runtime_error("write failed for '" + out_path + "'");
}

int run(int argc, char** argv) {
    CLI::App app{"Outer-rotation misalignment detection for 3D vector fields"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "random linear-field detection statistics");
    int trials = 1000;
    int resolution = 32;
    std::vector<int> checkpoints = {0, 1, 10, 100, 1000};
    std::uint64_t seed = 1;
    int algorithm = 1;
    double epsilon = 1e-300;
    int threads = 0;
    std::string plane_spec;
    double forced_angle = -1.0;
    bool have_angle = false;
    std::string out_path;
    synth->add_option("--trials", trials, "number of random trials")->check(CLI::PositiveNumber);
    synth->add_option("--resolution", resolution, "samples per axis")->check(CLI::Range(2, 512));
    synth->add_option("--checkpoints", checkpoints, "iteration counts to report")->delimiter(',');
    synth->add_option("--seed", seed, "base seed");
    synth->add_option("--algorithm", algorithm, "detector variant")->check(CLI::Range(1, 2));
    synth->add_option("--epsilon", epsilon, "stop once the correction angle drops below this");
    synth->add_option("--threads", threads, "worker threads (0 = all cores)");
    synth->add_option("--plane", plane_spec, "force the rotation plane (red|green|blue or b12,b13,b23)");
    synth->add_option("--angle", forced_angle, "force the rotation angle in radians")
        ->check(CLI::Range(0.0, geocorr::kPi));
    synth->add_option("--out", out_path, "CSV output path (default: stdout)");

    // image
    auto* image = app.add_subcommand("image", "distort a PPM in color space and restore it");
    std::string input_path;
    std::string outdir = ".";
    std::string img_plane_spec = "red";
    double img_angle = 1.7;
    std::vector<int> img_checkpoints = {0, 1, 2, 3, 4};
    int img_algorithm = 2;
    double img_epsilon = 1e-300;
    bool img_epsilon_set = false;
    image->add_option("input", input_path, "input PPM (P6) image")->required();
    image->add_option("--plane", img_plane_spec, "color rotation plane (red|green|blue or b12,b13,b23)");
    image->add_option("--angle", img_angle, "color rotation angle in radians")
        ->check(CLI::Range(0.0, geocorr::kPi));
    image->add_option("--checkpoints", img_checkpoints, "iteration counts to report")->delimiter(',');
    image->add_option("--algorithm", img_algorithm, "detector variant")->check(CLI::Range(1, 2));
    image->add_option("--epsilon", img_epsilon, "stop once the correction angle drops below this");
    image->add_option("--outdir", outdir, "directory for distorted/restored images and report.csv");

    // detect
    auto* detect = app.add_subcommand("detect", "detect the rotation between two field files");
    std::string field_a_path;
    std::string field_b_path;
    double det_epsilon = 1e-10;
    int det_algorithm = 1;
    int det_max_iter = 5000;
    detect->add_option("fieldA", field_a_path, "rotated pattern (text field format)")->required();
    detect->add_option("fieldB", field_b_path, "reference field (text field format)")->required();
    detect->add_option("--epsilon", det_epsilon, "desired accuracy")->check(CLI::PositiveNumber);
    detect->add_option("--algorithm", det_algorithm, "detector variant")->check(CLI::Range(1, 2));
    detect->add_option("--max-iter", det_max_iter, "iteration cap")->check(CLI::PositiveNumber);

    // genimage
    auto* genimage = app.add_subcommand("genimage", "write a deterministic synthetic test image");
    int gen_width = 256;
    int gen_height = 256;
    std::uint64_t gen_seed = 1;
    std::string gen_out = "synthetic.ppm";
    genimage->add_option("--width", gen_width, "image width")->check(CLI::PositiveNumber);
    genimage->add_option("--height", gen_height, "image height")->check(CLI::PositiveNumber);
    genimage->add_option("--seed", gen_seed, "generator seed");
    genimage->add_option("--out", gen_out, "output PPM path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    img_epsilon_set = image->count("--epsilon") > 0;

    if (synth->parsed()) {
        geocorr::SynthOptions opts;
        opts.trials = trials;
        opts.resolution = resolution;
        opts.checkpoints = checkpoints;
        opts.seed = seed;
        opts.algorithm = algorithm;
        opts.epsilon = epsilon;
        opts.threads = threads;
        if (synth->count("--angle") > 0) opts.forced_angle = forced_angle;
        if (!plane_spec.empty()) opts.forced_plane = parse_plane(plane_spec);
        const geocorr::ExperimentReport report = geocorr::run_synth_experiment(opts);
        emit_report(out_path, report, "error_per_coeff");
        return kExitOk;
    }

    if (image->parsed()) {
        const geocorr::RgbImage img = geocorr::read_ppm(input_path);
        geocorr::ImageOptions opts;
        opts.rot.plane = parse_plane(img_plane_spec);
        opts.rot.angle = img_angle;
        opts.checkpoints = img_checkpoints;
        opts.algorithm = img_algorithm;
        opts.epsilon = img_epsilon;
        opts.outdir = outdir;
        const geocorr::ImageRunResult result = geocorr::run_image_experiment(img, opts);

        const auto csv_path = (std::filesystem::path(outdir) / "report.csv").string();
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error("cannot open '" + csv_path + "' for writing");
        print_report(csv, result.report, "error_per_pixel");

        std::printf("angle: %.12g\n", result.detection.angle);
        std::printf("plane: %.12g %.12g %.12g\n", result.detection.plane.b12,
                    result.detection.plane.b13, result.detection.plane.b23);
        std::printf("iterations: %d\n", result.detection.iterations);
        std::printf("converged: %s\n", result.detection.converged ? "true" : "false");
        if (img_epsilon_set && !result.detection.converged) return kExitNotConverged;
        return kExitOk;
    }

    if (detect->parsed()) {
        const geocorr::VectorField field_a = geocorr::read_field_file(field_a_path);
        const geocorr::VectorField field_b = geocorr::read_field_file(field_b_path);
        geocorr::DetectorConfig cfg;
        cfg.epsilon = det_epsilon;
        cfg.max_iterations = det_max_iter;
        const geocorr::DetectionResult result =
            det_algorithm == 2 ? geocorr::algorithm2(field_b, field_a, cfg)
                               : geocorr::algorithm1(field_b, field_a, cfg);
        std::printf("angle: %.12g\n", result.angle);
        std::printf("plane: %.12g %.12g %.12g\n", result.plane.b12, result.plane.b13,
                    result.plane.b23);
        std::printf("iterations: %d\n", result.iterations);
        std::printf("converged: %s\n", result.converged ? "true" : "false");
        return result.converged ? kExitOk : kExitNotConverged;
    }

    if (genimage->parsed()) {
        geocorr::write_ppm(gen_out, geocorr::synthetic_image(gen_width, gen_height, gen_seed));
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError&) {
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
}
