#include "edikit/medi.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "edikit/parallel.hpp"

namespace edikit {

namespace {

void check_frames(std::span<const FrameRecord> frames, const EventIndex& index) {
    if (frames.empty()) throw ValidationError("mEDI needs at least one frame");
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (!(frames[i].image.resolution() == index.resolution()))
            throw ValidationError("mEDI: frame and event index resolutions differ");
        if (i > 0 && !(frames[i].f > frames[i - 1].f))
            throw ValidationError("mEDI: frames must be strictly time-sorted");
    }
}

}  // namespace

MediCoefficients assemble_coefficients(std::span<const FrameRecord> frames,
                                       const EventIndex& index, int x, int y, double c) {
    check_frames(frames, index);
    const int n = static_cast<int>(frames.size());
    MediCoefficients coeffs;
    coeffs.a.resize(n);
    coeffs.b.resize(n - 1);
    coeffs.blog.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto profile = build_exposure_profile(index, x, y, frames[i].f, frames[i].T);
        coeffs.a[i] = std::log(double_integral_j(profile, c));
        coeffs.blog[i] = std::log(std::max(frames[i].image.at(x, y), kLogFloor));
        if (i + 1 < n)
            coeffs.b[i] = c * index.signed_count_between(x, y, frames[i].f, frames[i + 1].f);
    }
    return coeffs;
}

TridiagonalSystem build_normal_system(const MediCoefficients& coeffs) {
    const int n = static_cast<int>(coeffs.a.size());
    if (n < 1 || static_cast<int>(coeffs.blog.size()) != n ||
        static_cast<int>(coeffs.b.size()) != n - 1)
        throw ValidationError("build_normal_system: inconsistent coefficient lengths");

    TridiagonalSystem system;
    system.n = n;
    system.rhs.resize(n);
    for (int i = 0; i < n; ++i) {
        double r = coeffs.blog[i] - coeffs.a[i];
        if (i < n - 1) r -= coeffs.b[i];
        if (i > 0) r += coeffs.b[i - 1];
        system.rhs[i] = r;
    }
    return system;
}

MediProblem::MediProblem(std::span<const FrameRecord> frames, const EventIndex& index,
                         int threads)
    : n_(static_cast<int>(frames.size())), threads_(threads) {
    check_frames(frames, index);
    width_ = index.resolution().width;
    height_ = index.resolution().height;
    centers_.resize(n_);
    for (int i = 0; i < n_; ++i) centers_[i] = frames[i].f;

    const std::size_t pixels = static_cast<std::size_t>(width_) * height_;
    profiles_.resize(pixels * n_);
    between_.resize(n_ > 1 ? pixels * (n_ - 1) : 0);
    blog_.resize(pixels * n_);
    blin_.resize(pixels * n_);
    empty_timeline_.resize(pixels);

    parallel_for(0, static_cast<long long>(pixels), threads_, [&](long long lo, long long hi) {
        for (long long px = lo; px < hi; ++px) {
            const int x = static_cast<int>(px % width_);
            const int y = static_cast<int>(px / width_);
            empty_timeline_[px] = index.timeline(x, y).empty() ? 1 : 0;
            for (int i = 0; i < n_; ++i) {
                profiles_[px * n_ + i] =
                    build_exposure_profile(index, x, y, frames[i].f, frames[i].T);
                const double b = frames[i].image.at(x, y);
                blin_[px * n_ + i] = b;
                blog_[px * n_ + i] = std::log(std::max(b, kLogFloor));
                if (i + 1 < n_)
                    between_[px * (n_ - 1) + i] =
                        index.signed_count_between(x, y, frames[i].f, frames[i + 1].f);
            }
        }
    });
}

MediCoefficients MediProblem::coefficients(int x, int y, double c) const {
    const std::size_t px = static_cast<std::size_t>(y) * width_ + x;
    MediCoefficients coeffs;
    coeffs.a.resize(n_);
    coeffs.b.resize(n_ - 1);
    coeffs.blog.assign(blog_.begin() + px * n_, blog_.begin() + (px + 1) * n_);
    for (int i = 0; i < n_; ++i) {
        coeffs.a[i] = std::log(double_integral_j(profiles_[px * n_ + i], c));
        if (i + 1 < n_) coeffs.b[i] = c * between_[px * (n_ - 1) + i];
    }
    return coeffs;
}

void MediProblem::solve_pixel_range(int first, int count, std::size_t px, double c,
                                    std::vector<double>& x, SolveStats* stats) const {
    TridiagonalSystem system;
    system.n = count;
    system.rhs.resize(count);
    for (int i = 0; i < count; ++i) {
        const int frame = first + i;
        const double a = std::log(double_integral_j(profiles_[px * n_ + frame], c));
        double r = blog_[px * n_ + frame] - a;
        if (i < count - 1) r -= c * between_[px * (n_ - 1) + frame];
        if (i > 0) r += c * between_[px * (n_ - 1) + frame - 1];
        system.rhs[i] = r;
    }
    x = solve_fibonacci_lu(system, stats);
}

std::vector<LatentFrame> MediProblem::reconstruct_range(int first, int count, double c,
                                                        SolveStats* stats) const {
    if (first < 0 || count < 1 || first + count > n_)
        throw ValidationError("reconstruct_range: frame range out of bounds");
    if (c < 0.0) throw ValidationError("mEDI: c must be >= 0");

    std::vector<LatentFrame> latents(count);
    for (int i = 0; i < count; ++i) {
        latents[i].timestamp = centers_[first + i];
        latents[i].c_used = c;
        latents[i].image = ImageBuffer(width_, height_, Domain::linear);
        latents[i].log_image.resize(static_cast<std::size_t>(width_) * height_);
    }

    const std::size_t pixels = static_cast<std::size_t>(width_) * height_;
    std::vector<SolveStats> chunk_stats(stats ? 64 : 0);
    std::atomic<int> chunk_id{0};
    parallel_for(0, static_cast<long long>(pixels), threads_, [&](long long lo, long long hi) {
        SolveStats local;
        std::vector<double> x;
        for (long long px = lo; px < hi; ++px) {
            for (int i = 0; i < count; ++i) {
                const std::size_t slot = px * n_ + first + i;
                const double blin = blin_[slot];
                double log_latent, linear;
                if (c == 0.0 || empty_timeline_[px]) {
                    log_latent = blog_[slot];
                    linear = blin;
                } else {
                    if (x.empty()) solve_pixel_range(first, count, px, c, x, &local);
                    log_latent = x[i];
                    linear = std::clamp(blin * std::exp(x[i] - blog_[slot]), 0.0, 1.0);
                }
                latents[i].log_image[px] = log_latent;
                latents[i].image[px] = linear;
            }
            x.clear();
        }
        if (stats) {
            const int id = chunk_id.fetch_add(1);
            if (id < static_cast<int>(chunk_stats.size())) chunk_stats[id] = local;
        }
    });
    if (stats) {
        for (const SolveStats& s : chunk_stats) {
            stats->fibonacci_solves += s.fibonacci_solves;
            stats->oracle_fallbacks += s.oracle_fallbacks;
        }
    }
    return latents;
}

std::vector<LatentFrame> MediProblem::reconstruct(double c, SolveStats* stats) const {
    return reconstruct_range(0, n_, c, stats);
}

double MediProblem::energy(double c, EnergyDomain domain, SolveStats* stats) const {
    if (c < 0.0) throw ValidationError("mEDI: c must be >= 0");
    const std::size_t pixels = static_cast<std::size_t>(width_) * height_;
    std::vector<double> per_pixel(pixels, 0.0);
    std::vector<SolveStats> chunk_stats(stats ? 64 : 0);
    std::atomic<int> chunk_id{0};
    parallel_for(0, static_cast<long long>(pixels), threads_, [&](long long lo, long long hi) {
        SolveStats local;
        std::vector<double> x;
        for (long long px = lo; px < hi; ++px) {
            solve_pixel_range(0, n_, px, c, x, &local);
            double acc = 0.0;
            for (int i = 0; i < n_; ++i) {
                const double a = std::log(double_integral_j(profiles_[px * n_ + i], c));
                const double predicted = x[i] + a;
                const double observed = blog_[px * n_ + i];
                const double d = domain == EnergyDomain::log_intensity
                                     ? predicted - observed
                                     : std::exp(predicted) - std::exp(observed);
                acc += d * d;
            }
            per_pixel[px] = acc;
            x.clear();
        }
        if (stats) {
            const int id = chunk_id.fetch_add(1);
            if (id < static_cast<int>(chunk_stats.size())) chunk_stats[id] = local;
        }
    });
    if (stats) {
        for (const SolveStats& s : chunk_stats) {
            stats->fibonacci_solves += s.fibonacci_solves;
            stats->oracle_fallbacks += s.oracle_fallbacks;
        }
    }
    double energy = 0.0;  // serial reduction keeps the sum thread-count independent
    for (double e : per_pixel) energy += e;
    return energy;
}

std::vector<LatentFrame> medi_reconstruct(std::span<const FrameRecord> frames,
                                          const EventIndex& index, double c, int threads,
                                          SolveStats* stats) {
    return MediProblem(frames, index, threads).reconstruct(c, stats);
}

double medi_energy(std::span<const FrameRecord> frames, const EventIndex& index, double c,
                   EnergyDomain domain, int threads, SolveStats* stats) {
    return MediProblem(frames, index, threads).energy(c, domain, stats);
}

std::vector<LatentFrame> medi_reconstruct_windowed(std::span<const FrameRecord> frames,
                                                   const EventIndex& index, double c, int window,
                                                   int threads, SolveStats* stats) {
    if (window < 1) throw ValidationError("mEDI window must be >= 1");
    const int n = static_cast<int>(frames.size());
    MediProblem problem(frames, index, threads);
    if (n <= window) return problem.reconstruct(c, stats);

    // Slide by one frame; the first/last windows cover the edge frames, every
    // other window contributes its center only.
    const int center = window / 2;
    std::vector<LatentFrame> latents;
    latents.reserve(n);
    for (int start = 0; start + window <= n; ++start) {
        auto chunk = problem.reconstruct_range(start, window, c, stats);
        const int last_start = n - window;
        const int take_from = (start == 0) ? 0 : center;
        const int take_to = (start == last_start) ? window - 1 : center;
        for (int i = take_from; i <= take_to; ++i) latents.push_back(std::move(chunk[i]));
    }
    return latents;
}

}  // namespace edikit
