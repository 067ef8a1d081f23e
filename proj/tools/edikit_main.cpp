// edikit: reconstruct high-frame-rate sharp video from an event stream fused
// with one or several motion-blurred frames, with the contrast threshold c
// found by one-dimensional search when not given.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "edikit/edi.hpp"
#include "edikit/medi.hpp"
#include "edikit/search.hpp"
#include "edikit/simulator.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace edikit;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kIoFailure = 1, kUsage = 2, kOptimizationFailure = 3 };

// Shortest decimal that parses back to the same double.
std::string format_time(double t) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), t);
    return std::string(buf, p);
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

void write_manifest_json(const fs::path& out_dir, json manifest) {
    write_text(out_dir / "run_manifest.json", manifest.dump(2) + "\n");
}

std::string frame_name(const char* prefix, int i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%05d.pgm", prefix, i);
    return buf;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string scene = "translating-bar";
    int size = 64;
    int frames = 110;
    int blur_span = 11;
    double c = 0.23;
    double rate = 100.0;
    double speed = 1.0;
    std::uint32_t seed = 1;
    std::string out;
};

int run_simulate(const SimulateArgs& args) {
    const auto t_start = std::chrono::steady_clock::now();

    SceneKind kind;
    if (args.scene == "translating-bar")
        kind = SceneKind::translating_bar;
    else if (args.scene == "drifting-sinusoid")
        kind = SceneKind::drifting_sinusoid;
    else if (args.scene == "two-level-checker")
        kind = SceneKind::two_level_checker;
    else
        throw ValidationError("unknown scene '" + args.scene + "'");

    SimConfig config;
    config.c_true = args.c;
    config.frame_rate = args.rate;
    config.blur_span = args.blur_span;

    const Resolution res{args.size, args.size};
    const SharpSequence sharp = make_test_scene(kind, res, args.frames, args.speed, args.seed);
    SimStats stats;
    const std::vector<Event> events = simulate_events(sharp, config, &stats);
    const BlurredSet set = simulate_blur(sharp, config);
    if (stats.clamped_pixels > 0)
        std::cerr << "warning: " << stats.clamped_pixels
                  << " samples below the log floor were clamped\n";

    const fs::path out_dir(args.out);
    ensure_dir(out_dir);
    ensure_dir(out_dir / "blurred");
    ensure_dir(out_dir / "gt");

    {
        std::ofstream ev(out_dir / "events.txt", std::ios::binary);
        if (!ev) throw IoError("cannot open " + (out_dir / "events.txt").string());
        ev << "# t x y p (p: 1 positive, 0 negative); resolution " << res.width << "x"
           << res.height << "\n";
        write_event_stream(ev, events);
        if (!ev) throw IoError("write failed: " + (out_dir / "events.txt").string());
    }

    std::string blurred_manifest, gt_manifest;
    for (std::size_t i = 0; i < set.blurred.size(); ++i) {
        const std::string name = frame_name("frame", static_cast<int>(i));
        write_pgm(out_dir / "blurred" / name, set.blurred[i].image);
        write_pgm(out_dir / "gt" / name, set.ground_truth[i]);
        blurred_manifest += format_time(set.blurred[i].f) + " " + name + "\n";
        gt_manifest += format_time(set.blurred[i].f) + " " + name + "\n";
    }
    write_text(out_dir / "blurred" / "frames.txt", blurred_manifest);
    write_text(out_dir / "gt" / "frames.txt", gt_manifest);

    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t_start)
                          .count();
    json manifest = {
        {"command", "simulate"},
        {"version", kVersion},
        {"config",
         {{"scene", args.scene},
          {"size", args.size},
          {"frames", args.frames},
          {"blur_span", args.blur_span},
          {"c", args.c},
          {"rate", args.rate},
          {"speed", args.speed},
          {"seed", args.seed}}},
        {"exposure", args.blur_span / args.rate},
        {"outputs",
         {{"events", "events.txt"},
          {"blurred_manifest", "blurred/frames.txt"},
          {"gt_manifest", "gt/frames.txt"}}},
        {"event_count", events.size()},
        {"blurred_count", set.blurred.size()},
        {"timing_ms", ms},
    };
    write_manifest_json(out_dir, std::move(manifest));
    return kOk;
}

// ------------------------------------------------------------- reconstruct

struct ReconstructArgs {
    std::string events;
    std::string frames;
    double exposure = 0.0;
    std::string mode = "edi";
    std::string c = "auto";
    int events_per_frame = 75;
    int window = 5;
    double bracket_lo = 0.01;
    double bracket_hi = 1.0;
    double tolerance = 1e-3;
    int max_evals = 64;
    double lambda = -1.0;
    double decay = 0.0;
    std::string energy_domain = "log";
    std::string timestamp_origin = "midpoint";
    bool prescan = false;
    bool no_video = false;
    int threads = 0;
    std::string out;
};

struct LoadedScene {
    std::vector<FrameRecord> frames;
    std::optional<EventIndex> index;
};

LoadedScene load_scene(const std::string& frames_path, const std::string& events_path,
                       double exposure, const std::string& origin) {
    if (!(exposure > 0.0)) throw ValidationError("--exposure must be > 0");
    const TimestampOrigin ts_origin = origin == "start" ? TimestampOrigin::start
                                                        : TimestampOrigin::midpoint;
    LoadedScene scene;
    scene.frames = load_frame_manifest(frames_path, exposure, ts_origin);
    if (scene.frames.empty()) throw ValidationError("frame manifest is empty");

    std::ifstream ev(events_path);
    if (!ev) throw IoError("cannot open " + events_path);
    scene.index.emplace(parse_event_stream(ev, scene.frames.front().image.resolution()));

    for (const std::string& warning : check_exposure_coverage(scene.frames, *scene.index))
        std::cerr << "warning: " << warning << "\n";
    return scene;
}

std::string trace_text(const EnergyTrace& trace) {
    std::string text;
    char buf[96];
    for (const auto& s : trace.samples) {
        std::snprintf(buf, sizeof(buf), "%.10g %.10g\n", s.c, s.energy);
        text += buf;
    }
    return text;
}

json trace_summary(const EnergyTrace& trace) {
    return {{"argmin", trace.c_star},
            {"energy", trace.best_energy},
            {"evals", trace.samples.size()},
            {"converged", trace.converged},
            {"final_width", trace.final_width},
            {"note", trace.note}};
}

// Optional 8-point pre-scan: narrows the bracket around the grid minimum
// before running the interval search.
SearchConfig prescan_bracket(const EnergyFn& energy, SearchConfig config) {
    constexpr int kPoints = 8;
    std::vector<double> grid(kPoints);
    for (int i = 0; i < kPoints; ++i)
        grid[i] = config.c_lo + (config.c_hi - config.c_lo) * i / (kPoints - 1.0);
    const EnergyTrace scan = sweep_c(energy, grid);
    int best = 0;
    for (int i = 1; i < kPoints; ++i)
        if (scan.samples[i].energy < scan.samples[best].energy) best = i;
    config.c_lo = grid[std::max(0, best - 1)];
    config.c_hi = grid[std::min(kPoints - 1, best + 1)];
    return config;
}

// Expansion window of latent i: midpoints to the neighbouring latents,
// extended by half the adjacent gap at the ends (exposure window when alone).
std::pair<double, double> expansion_window(const std::vector<LatentFrame>& latents,
                                           std::size_t i, double exposure) {
    if (latents.size() == 1)
        return {latents[0].timestamp - exposure / 2.0, latents[0].timestamp + exposure / 2.0};
    const double t = latents[i].timestamp;
    const double lo = i == 0 ? t - (latents[1].timestamp - t) / 2.0
                             : (latents[i - 1].timestamp + t) / 2.0;
    const double hi = i + 1 == latents.size()
                          ? t + (t - latents[i - 1].timestamp) / 2.0
                          : (t + latents[i + 1].timestamp) / 2.0;
    return {lo, hi};
}

int run_reconstruct(const ReconstructArgs& args) {
    const auto t_start = std::chrono::steady_clock::now();
    if (args.mode != "edi" && args.mode != "medi")
        throw ValidationError("--mode must be edi or medi");
    if (args.events_per_frame < 1) throw ValidationError("--events-per-frame must be >= 1");

    LoadedScene scene = load_scene(args.frames, args.events, args.exposure,
                                   args.timestamp_origin);
    const EventIndex& index = *scene.index;
    const std::vector<FrameRecord>& frames = scene.frames;
    const int n = static_cast<int>(frames.size());
    const EnergyDomain domain = args.energy_domain == "linear"
                                    ? EnergyDomain::linear_intensity
                                    : EnergyDomain::log_intensity;

    const fs::path out_dir(args.out);
    ensure_dir(out_dir);

    // Resolve c: fixed value or 1-D search on the mode's energy.
    double c_used = 0.0;
    std::optional<EnergyTrace> trace;
    SearchConfig config;
    config.c_lo = args.bracket_lo;
    config.c_hi = args.bracket_hi;
    config.tolerance = args.tolerance;
    config.max_evals = args.max_evals;

    if (args.c == "auto") {
        if (args.mode == "edi") {
            const FrameRecord& middle = frames[n / 2];
            EnergyFn energy = [&](double c) {
                return edi_energy(middle, index, c, args.lambda, args.decay, args.threads);
            };
            if (args.prescan) config = prescan_bracket(energy, config);
            trace = golden_section(energy, config);
        } else {
            // Estimate from a centered window capped at the exact-solve bound.
            const int span = std::min(n, kFibonacciSolveMaxN);
            const int first = (n - span) / 2;
            MediProblem problem(std::span<const FrameRecord>(frames).subspan(first, span),
                                index, args.threads);
            EnergyFn energy = [&](double c) { return problem.energy(c, domain); };
            if (args.prescan) config = prescan_bracket(energy, config);
            trace = fibonacci_search(energy, config);
        }
        write_text(out_dir / "trace.txt", trace_text(*trace));
        if (trace->aborted) {
            std::cerr << "error: optimization failed: " << trace->note << "\n";
            return kOptimizationFailure;
        }
        if (!trace->converged)
            std::cerr << "warning: c search did not converge (" << trace->note << ")\n";
        c_used = trace->c_star;
    } else {
        try {
            std::size_t pos = 0;
            c_used = std::stod(args.c, &pos);
            if (pos != args.c.size()) throw std::invalid_argument(args.c);
        } catch (const std::exception&) {
            throw ValidationError("--c must be 'auto' or a number");
        }
        if (c_used < 0.0) throw ValidationError("--c must be >= 0");
    }

    // Latent frames.
    std::vector<LatentFrame> latents;
    SolveStats stats;
    if (args.mode == "edi") {
        latents.reserve(n);
        for (const FrameRecord& frame : frames)
            latents.push_back(edi_deblur(frame, index, c_used, args.threads));
    } else {
        latents = medi_reconstruct_windowed(frames, index, c_used, args.window, args.threads,
                                            &stats);
    }

    ensure_dir(out_dir / "latent");
    std::string latent_manifest;
    for (std::size_t i = 0; i < latents.size(); ++i) {
        const std::string name = frame_name("frame", static_cast<int>(i));
        write_pgm(out_dir / "latent" / name, latents[i].image);
        latent_manifest += format_time(latents[i].timestamp) + " " + name + "\n";
    }
    write_text(out_dir / "latent" / "frames.txt", latent_manifest);

    // High-frame-rate expansion around each latent.
    std::size_t video_frames = 0;
    if (!args.no_video) {
        ensure_dir(out_dir / "video");
        std::string video_manifest;
        int seq = 0;
        for (std::size_t i = 0; i < latents.size(); ++i) {
            const auto [lo, hi] = expansion_window(latents, i, args.exposure);
            expand_video(latents[i], index, lo, hi, args.events_per_frame,
                         [&](LatentFrame&& frame) {
                             const std::string name = frame_name("frame", seq++);
                             write_pgm(out_dir / "video" / name, frame.image);
                             video_manifest += format_time(frame.timestamp) + " " + name + "\n";
                         },
                         args.threads);
        }
        write_text(out_dir / "video" / "frames.txt", video_manifest);
        video_frames = static_cast<std::size_t>(seq);
    }

    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t_start)
                          .count();
    json manifest = {
        {"command", "reconstruct"},
        {"version", kVersion},
        {"config",
         {{"events", args.events},
          {"frames", args.frames},
          {"exposure", args.exposure},
          {"mode", args.mode},
          {"c", args.c},
          {"events_per_frame", args.events_per_frame},
          {"window", args.window},
          {"bracket", {args.bracket_lo, args.bracket_hi}},
          {"tolerance", args.tolerance},
          {"max_evals", args.max_evals},
          {"lambda", args.lambda},
          {"decay", args.decay},
          {"energy_domain", args.energy_domain},
          {"timestamp_origin", args.timestamp_origin},
          {"prescan", args.prescan},
          {"threads", args.threads}}},
        {"c_used", c_used},
        {"frame_count", n},
        {"latent_count", latents.size()},
        {"video_frame_count", video_frames},
        {"event_count", index.size()},
        {"oracle_fallbacks", stats.oracle_fallbacks},
        {"timing_ms", ms},
    };
    if (trace) manifest["search"] = trace_summary(*trace);
    write_manifest_json(out_dir, std::move(manifest));
    return kOk;
}

// ------------------------------------------------------------------ sweep

struct SweepArgs {
    std::string events;
    std::string frames;
    double exposure = 0.0;
    std::string mode = "edi";
    std::vector<double> grid;
    double lambda = -1.0;
    double decay = 0.0;
    std::string energy_domain = "log";
    std::string timestamp_origin = "midpoint";
    int window = 5;
    int threads = 0;
    std::string out;
};

int run_sweep(const SweepArgs& args) {
    const auto t_start = std::chrono::steady_clock::now();
    if (args.mode != "edi" && args.mode != "medi")
        throw ValidationError("--mode must be edi or medi");
    if (args.grid.empty()) throw ValidationError("--grid must list at least one c value");

    LoadedScene scene = load_scene(args.frames, args.events, args.exposure,
                                   args.timestamp_origin);
    const EventIndex& index = *scene.index;
    const std::vector<FrameRecord>& frames = scene.frames;
    const int n = static_cast<int>(frames.size());
    const FrameRecord& middle = frames[n / 2];
    const EnergyDomain domain = args.energy_domain == "linear"
                                    ? EnergyDomain::linear_intensity
                                    : EnergyDomain::log_intensity;

    const fs::path out_dir(args.out);
    ensure_dir(out_dir);

    std::optional<MediProblem> problem;
    if (args.mode == "medi") {
        const int span = std::min(n, kFibonacciSolveMaxN);
        problem.emplace(std::span<const FrameRecord>(frames).subspan((n - span) / 2, span),
                        index, args.threads);
    }

    // One preview latent per grid point, named by its c value.
    EnergyFn energy = [&](double c) {
        LatentFrame preview;
        if (args.mode == "edi") {
            preview = edi_deblur(middle, index, c, args.threads);
        } else {
            auto latents = problem->reconstruct(c);
            preview = std::move(latents[latents.size() / 2]);
        }
        char name[64];
        std::snprintf(name, sizeof(name), "preview_c%.4f.pgm", c);
        write_pgm(out_dir / name, preview.image);
        return args.mode == "edi"
                   ? edi_energy(middle, index, c, args.lambda, args.decay, args.threads)
                   : problem->energy(c, domain);
    };

    const EnergyTrace trace = sweep_c(energy, args.grid);
    write_text(out_dir / "trace.txt", trace_text(trace));

    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t_start)
                          .count();
    json manifest = {
        {"command", "sweep"},
        {"version", kVersion},
        {"config",
         {{"events", args.events},
          {"frames", args.frames},
          {"exposure", args.exposure},
          {"mode", args.mode},
          {"grid", args.grid},
          {"lambda", args.lambda},
          {"decay", args.decay},
          {"energy_domain", args.energy_domain},
          {"window", args.window},
          {"threads", args.threads}}},
        {"search", trace_summary(trace)},
        {"timing_ms", ms},
    };
    write_manifest_json(out_dir, std::move(manifest));
    std::cout << "argmin c = " << trace.c_star << " (energy " << trace.best_energy << ")\n";
    return trace.aborted ? kOptimizationFailure : kOk;
}

// ---------------------------------------------------------------- metrics

struct MetricsArgs {
    std::string reference;
    std::string test;
    std::string out;
};

int run_metrics(const MetricsArgs& args) {
    auto list_frames = [](const fs::path& dir) {
        if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
        std::vector<std::string> names;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".pgm")
                names.push_back(entry.path().filename().string());
        std::sort(names.begin(), names.end());
        return names;
    };

    const fs::path ref_dir(args.reference), test_dir(args.test);
    const auto ref_names = list_frames(ref_dir);
    const auto test_names = list_frames(test_dir);
    if (ref_names.empty()) throw ValidationError("no .pgm frames in " + args.reference);
    if (ref_names != test_names)
        throw ValidationError("frame sets differ between " + args.reference + " and " +
                              args.test);

    json per_frame = json::array();
    double psnr_sum = 0.0, ssim_sum = 0.0;
    bool any_identical = false;
    std::printf("%-24s %12s %10s\n", "frame", "psnr_db", "ssim");
    for (const std::string& name : ref_names) {
        const ImageBuffer a = read_pgm(ref_dir / name);
        const ImageBuffer b = read_pgm(test_dir / name);
        const double p = psnr(a, b);
        const double s = ssim(a, b);
        if (std::isinf(p)) {
            any_identical = true;
            std::printf("%-24s %12s %10.4f\n", name.c_str(), "identical", s);
        } else {
            std::printf("%-24s %12.4f %10.4f\n", name.c_str(), p, s);
        }
        per_frame.push_back({{"frame", name},
                             {"psnr_db", std::isinf(p) ? json("identical") : json(p)},
                             {"ssim", s}});
        psnr_sum += p;
        ssim_sum += s;
    }
    const double n = static_cast<double>(ref_names.size());
    const double mean_psnr = psnr_sum / n;
    const double mean_ssim = ssim_sum / n;
    if (std::isinf(mean_psnr))
        std::printf("%-24s %12s %10.4f\n", "mean", "identical", mean_ssim);
    else
        std::printf("%-24s %12.4f %10.4f\n", "mean", mean_psnr, mean_ssim);

    json summary = {
        {"command", "metrics"},
        {"version", kVersion},
        {"reference", args.reference},
        {"test", args.test},
        {"frame_count", ref_names.size()},
        {"mean_psnr_db", std::isinf(mean_psnr) ? json("identical") : json(mean_psnr)},
        {"mean_ssim", mean_ssim},
        {"any_identical", any_identical},
        {"frames", per_frame},
    };
    if (!args.out.empty()) {
        ensure_dir(args.out);
        write_text(fs::path(args.out) / "metrics.json", summary.dump(2) + "\n");
    } else {
        std::cout << summary.dump(2) << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"event + blurred-frame video reconstruction toolkit"};
    app.set_version_flag("--version", std::string("edikit ") + kVersion);
    app.require_subcommand(1);

    auto envname = [](CLI::Option* opt, const char* name) { opt->envname(name); };

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "generate a synthetic event/blur scene");
    envname(simulate->add_option("--scene", sim.scene,
                                 "translating-bar | drifting-sinusoid | two-level-checker"),
            "EDIKIT_SCENE");
    envname(simulate->add_option("--size", sim.size, "square sensor size in pixels"),
            "EDIKIT_SIZE");
    envname(simulate->add_option("--frames", sim.frames, "sharp frame count"), "EDIKIT_FRAMES");
    envname(simulate->add_option("--blur-span", sim.blur_span,
                                 "sharp frames averaged per blurred frame (odd)"),
            "EDIKIT_BLUR_SPAN");
    envname(simulate->add_option("--c", sim.c, "contrast threshold generating events"),
            "EDIKIT_C");
    envname(simulate->add_option("--rate", sim.rate, "sharp frame rate, Hz"), "EDIKIT_RATE");
    envname(simulate->add_option("--speed", sim.speed, "scene motion, pixels per frame"),
            "EDIKIT_SPEED");
    envname(simulate->add_option("--seed", sim.seed, "scene randomization seed"), "EDIKIT_SEED");
    envname(simulate->add_option("--out", sim.out, "output directory")->required(),
            "EDIKIT_OUT");

    ReconstructArgs rec;
    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "deblur frames and expand a high-frame-rate video");
    envname(reconstruct->add_option("--events", rec.events, "events file")->required(),
            "EDIKIT_EVENTS");
    envname(reconstruct->add_option("--frames", rec.frames, "frame manifest")->required(),
            "EDIKIT_FRAMES_MANIFEST");
    envname(reconstruct->add_option("--exposure", rec.exposure, "exposure T, seconds")
                ->required(),
            "EDIKIT_EXPOSURE");
    envname(reconstruct->add_option("--mode", rec.mode, "edi | medi"), "EDIKIT_MODE");
    envname(reconstruct->add_option("--c", rec.c, "contrast threshold, or 'auto'"), "EDIKIT_C");
    envname(reconstruct->add_option("--events-per-frame", rec.events_per_frame,
                                    "events accumulated per emitted video frame"),
            "EDIKIT_EVENTS_PER_FRAME");
    envname(reconstruct->add_option("--window", rec.window, "mEDI sliding window length"),
            "EDIKIT_WINDOW");
    envname(reconstruct->add_option("--bracket-lo", rec.bracket_lo, "c search bracket low end"),
            "EDIKIT_BRACKET_LO");
    envname(reconstruct->add_option("--bracket-hi", rec.bracket_hi, "c search bracket high end"),
            "EDIKIT_BRACKET_HI");
    envname(reconstruct->add_option("--tolerance", rec.tolerance, "c search bracket tolerance"),
            "EDIKIT_TOLERANCE");
    envname(reconstruct->add_option("--max-evals", rec.max_evals, "c search evaluation budget"),
            "EDIKIT_MAX_EVALS");
    envname(reconstruct->add_option("--lambda", rec.lambda,
                                    "edge reward weight in the single-frame energy (< 0)"),
            "EDIKIT_LAMBDA");
    envname(reconstruct->add_option("--decay", rec.decay,
                                    "event edge-signal decay rate, 1/s (0 = 2/T)"),
            "EDIKIT_DECAY");
    envname(reconstruct->add_option("--energy-domain", rec.energy_domain,
                                    "multi-frame residual domain: log | linear"),
            "EDIKIT_ENERGY_DOMAIN");
    envname(reconstruct->add_option("--timestamp-origin", rec.timestamp_origin,
                                    "manifest timestamps mark: midpoint | start"),
            "EDIKIT_TIMESTAMP_ORIGIN");
    envname(reconstruct->add_flag("--prescan", rec.prescan,
                                  "8-point grid pre-scan to narrow the bracket"),
            "EDIKIT_PRESCAN");
    envname(reconstruct->add_flag("--no-video", rec.no_video, "skip the expansion step"),
            "EDIKIT_NO_VIDEO");
    envname(reconstruct->add_option("--threads", rec.threads, "worker threads (0 = auto)"),
            "EDIKIT_THREADS");
    envname(reconstruct->add_option("--out", rec.out, "output directory")->required(),
            "EDIKIT_OUT");

    SweepArgs sweep;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate a manual grid of c values");
    envname(sweep_cmd->add_option("--events", sweep.events, "events file")->required(),
            "EDIKIT_EVENTS");
    envname(sweep_cmd->add_option("--frames", sweep.frames, "frame manifest")->required(),
            "EDIKIT_FRAMES_MANIFEST");
    envname(sweep_cmd->add_option("--exposure", sweep.exposure, "exposure T, seconds")
                ->required(),
            "EDIKIT_EXPOSURE");
    envname(sweep_cmd->add_option("--mode", sweep.mode, "edi | medi"), "EDIKIT_MODE");
    envname(sweep_cmd->add_option("--grid", sweep.grid, "ascending c values")
                ->required()
                ->delimiter(','),
            "EDIKIT_GRID");
    envname(sweep_cmd->add_option("--lambda", sweep.lambda, "edge reward weight"),
            "EDIKIT_LAMBDA");
    envname(sweep_cmd->add_option("--decay", sweep.decay, "edge-signal decay rate (0 = 2/T)"),
            "EDIKIT_DECAY");
    envname(sweep_cmd->add_option("--energy-domain", sweep.energy_domain, "log | linear"),
            "EDIKIT_ENERGY_DOMAIN");
    envname(sweep_cmd->add_option("--timestamp-origin", sweep.timestamp_origin,
                                  "midpoint | start"),
            "EDIKIT_TIMESTAMP_ORIGIN");
    envname(sweep_cmd->add_option("--window", sweep.window, "mEDI window length"),
            "EDIKIT_WINDOW");
    envname(sweep_cmd->add_option("--threads", sweep.threads, "worker threads (0 = auto)"),
            "EDIKIT_THREADS");
    envname(sweep_cmd->add_option("--out", sweep.out, "output directory")->required(),
            "EDIKIT_OUT");

    MetricsArgs met;
    CLI::App* metrics = app.add_subcommand("metrics", "PSNR/SSIM between two frame directories");
    envname(metrics->add_option("--reference", met.reference, "reference frame directory")
                ->required(),
            "EDIKIT_REFERENCE");
    envname(metrics->add_option("--test", met.test, "test frame directory")->required(),
            "EDIKIT_TEST");
    envname(metrics->add_option("--out", met.out, "directory for metrics.json (else stdout)"),
            "EDIKIT_OUT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (reconstruct->parsed()) return run_reconstruct(rec);
        if (sweep_cmd->parsed()) return run_sweep(sweep);
        if (metrics->parsed()) return run_metrics(met);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::range_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOptimizationFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoFailure;
    }
    return kUsage;
}
