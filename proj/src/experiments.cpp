#include "geocorr/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace geocorr {

namespace {

void validate_checkpoints(const std::vector<int>& cps) {
    if (cps.empty()) throw std::invalid_argument("checkpoint list must not be empty");
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (cps[i] < 0) throw std::invalid_argument("checkpoints must be nonnegative");
        if (i > 0 && cps[i] <= cps[i - 1])
            throw std::invalid_argument("checkpoints must be strictly increasing");
    }
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(base ^ splitmix64(stream ^ splitmix64(index)));
}

void write_report_csv(std::ostream& out, const ExperimentReport& report,
                      const std::string& per_unit_label) {
    out << "iterations,abs_error," << per_unit_label << ",seconds\n";
    char buf[96];
    for (const ReportRow& row : report.rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.6f\n", row.iterations, row.abs_error,
                      row.per_unit_error, row.seconds);
        out << buf;
    }
}

namespace {

struct TrialResult {
    std::vector<double> abs_error;  // one per checkpoint
    std::vector<double> seconds;
};

TrialResult run_synth_trial(const SynthOptions& opts, int trial) {
    LinearField truth = random_linear_field(derive_seed(opts.seed, 0, trial));
    RotationSpec rot = random_rotation(derive_seed(opts.seed, 1, trial));
    if (opts.forced_angle) rot.angle = *opts.forced_angle;
    if (opts.forced_plane) rot.plane = *opts.forced_plane;

    const VectorField v = sample_linear(truth, opts.resolution);
    const VectorField u = apply_outer_rotation(v, rot);

    const std::size_t ncp = opts.checkpoints.size();
    TrialResult res;
    res.abs_error.assign(ncp, -1.0);
    res.seconds.assign(ncp, 0.0);

    std::size_t next = 0;
    if (opts.checkpoints[0] == 0) {
        res.abs_error[0] = coefficient_error(u, truth);
        next = 1;
    }
    const int last_checkpoint = opts.checkpoints.back();
    if (last_checkpoint == 0) return res;

    DetectorConfig cfg;
    cfg.epsilon = opts.epsilon;
    cfg.max_iterations = last_checkpoint;

    const auto start = std::chrono::steady_clock::now();
    const auto observer = [&](int iter, const VectorField& current, const IterationRecord&) {
        if (next < ncp && iter == opts.checkpoints[next]) {
            res.abs_error[next] = coefficient_error(current, truth);
            res.seconds[next] = elapsed_seconds(start);
            ++next;
        }
    };
    const DetectionResult det = opts.algorithm == 2 ? algorithm2(v, u, cfg, observer)
                                                    : algorithm1(v, u, cfg, observer);
    // early convergence freezes the state for the remaining checkpoints
    if (next < ncp) {
        const double final_error = coefficient_error(det.corrected, truth);
        const double final_seconds = elapsed_seconds(start);
        for (; next < ncp; ++next) {
            res.abs_error[next] = final_error;
            res.seconds[next] = final_seconds;
        }
    }
    return res;
}

}  // namespace

ExperimentReport run_synth_experiment(const SynthOptions& opts) {
    if (opts.trials < 1) throw std::invalid_argument("run_synth_experiment: trials must be >= 1");
    if (opts.algorithm != 1 && opts.algorithm != 2)
        throw std::invalid_argument("run_synth_experiment: algorithm must be 1 or 2");
    validate_checkpoints(opts.checkpoints);
    if (opts.forced_plane && !opts.forced_plane->is_unit())
        throw std::invalid_argument("run_synth_experiment: forced plane must be unit");

    std::vector<TrialResult> results(opts.trials);
    unsigned threads = opts.threads > 0 ? static_cast<unsigned>(opts.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(opts.trials));

    std::atomic<int> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&]() {
        for (;;) {
            const int t = cursor.fetch_add(1);
            if (t >= opts.trials) return;
            try {
                results[t] = run_synth_trial(opts, t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    ExperimentReport report;
    for (std::size_t c = 0; c < opts.checkpoints.size(); ++c) {
        double err = 0.0;
        double secs = 0.0;
        for (const TrialResult& r : results) {
            err += r.abs_error[c];
            secs += r.seconds[c];
        }
        err /= opts.trials;
        secs /= opts.trials;
        report.rows.push_back({opts.checkpoints[c], err, err / 9.0, secs});
    }
    return report;
}

ImageRunResult run_image_experiment(const RgbImage& img, const ImageOptions& opts) {
    if (opts.algorithm != 1 && opts.algorithm != 2)
        throw std::invalid_argument("run_image_experiment: algorithm must be 1 or 2");
    validate_checkpoints(opts.checkpoints);
    opts.rot.validate();

    const bool writing = !opts.outdir.empty();
    if (writing) std::filesystem::create_directories(opts.outdir);
    const auto out_path = [&](const std::string& name) {
        return (std::filesystem::path(opts.outdir) / name).string();
    };

    const VectorField original = image_to_field(img);
    const VectorField distorted = distort_color_space(original, opts.rot);

    ExperimentReport report;
    std::size_t next = 0;
    const std::size_t ncp = opts.checkpoints.size();
    if (opts.checkpoints[0] == 0) {
        const ResidualError err = residual_error(distorted, original);
        report.rows.push_back({0, err.absolute, err.per_sample, 0.0});
        if (writing) write_ppm(out_path("distorted.ppm"), field_to_image(distorted));
        next = 1;
    }

    DetectorConfig cfg;
    cfg.epsilon = opts.epsilon;
    cfg.max_iterations = std::max(1, opts.checkpoints.back());

    const auto start = std::chrono::steady_clock::now();
    const auto observer = [&](int iter, const VectorField& current, const IterationRecord& rec) {
        if (next < ncp && iter == opts.checkpoints[next]) {
            report.rows.push_back({iter, rec.residual_abs, rec.residual_per_sample,
                                   elapsed_seconds(start)});
            if (writing) {
                char name[48];
                std::snprintf(name, sizeof(name), "restored_iter%04d.ppm", iter);
                write_ppm(out_path(name), field_to_image(current));
            }
            ++next;
        }
    };
    DetectionResult det = opts.algorithm == 2 ? algorithm2(original, distorted, cfg, observer)
                                              : algorithm1(original, distorted, cfg, observer);
    if (next < ncp) {
        const ResidualError err = residual_error(det.corrected, original);
        const double secs = elapsed_seconds(start);
        for (; next < ncp; ++next) {
            report.rows.push_back({opts.checkpoints[next], err.absolute, err.per_sample, secs});
            if (writing) {
                char name[48];
                std::snprintf(name, sizeof(name), "restored_iter%04d.ppm", opts.checkpoints[next]);
                write_ppm(out_path(name), field_to_image(det.corrected));
            }
        }
    }
    return {std::move(report), std::move(det)};
}

}  // namespace geocorr
