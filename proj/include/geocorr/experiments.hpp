#ifndef GEOCORR_EXPERIMENTS_HPP
#define GEOCORR_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "geocorr/detect.hpp"
#include "geocorr/field.hpp"
#include "geocorr/imageio.hpp"

// Seeded experiment drivers shared by the CLI and the acceptance suite:
// batches of random linear-field detections with checkpointed errors, and
// single-image color-space distortion/restoration runs.

namespace geocorr {

struct ReportRow {
    int iterations = 0;
    double abs_error = 0.0;
    double per_unit_error = 0.0;  // per coefficient or per pixel
    double seconds = 0.0;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
};

/// CSV with header "iterations,abs_error,<per_unit_label>,seconds".
/// Error columns are formatted so equal runs produce equal bytes.
void write_report_csv(std::ostream& out, const ExperimentReport& report,
                      const std::string& per_unit_label);

/// Stable derived seed for independent random streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

struct SynthOptions {
    int trials = 1000;
    int resolution = 32;
    std::vector<int> checkpoints = {0, 1, 10, 100, 1000};
    std::uint64_t seed = 1;
    int algorithm = 1;
    // effectively disabled by default so runs reach the last checkpoint
    double epsilon = 1e-300;
    int threads = 0;  // 0 = hardware concurrency
    std::optional<double> forced_angle;
    std::optional<Bivector3> forced_plane;
};

/// Mean coefficient error over seeded random (field, rotation) trials at
/// each checkpoint iteration count. Trials run in parallel; aggregation
/// order is fixed, so results do not depend on scheduling.
ExperimentReport run_synth_experiment(const SynthOptions& opts);

struct ImageOptions {
    RotationSpec rot{kPlaneE23, 1.7};
    std::vector<int> checkpoints = {0, 1, 2, 3, 4};
    int algorithm = 2;
    double epsilon = 1e-300;
    std::string outdir;  // when set, distorted/restored PPMs land here
};

struct ImageRunResult {
    ExperimentReport report;
    DetectionResult detection;
};

/// Distorts the color space of the image, runs the detector against the
/// original, and reports residual errors (and optionally restored images)
/// at each checkpoint.
ImageRunResult run_image_experiment(const RgbImage& img, const ImageOptions& opts);

}  // namespace geocorr

#endif  // GEOCORR_EXPERIMENTS_HPP
