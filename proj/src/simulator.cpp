#include "edikit/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace edikit {

namespace {

double wrap(double v, double period) {
    v = std::fmod(v, period);
    return v < 0.0 ? v + period : v;
}

// Smooth-edged vertical bar profile over a wrapped x axis.
double bar_profile(double u, double width, double half_bar, double ramp) {
    const double d = std::abs(wrap(u + width / 2.0, width) - width / 2.0);
    if (d <= half_bar) return 1.0;
    if (d >= half_bar + ramp) return 0.0;
    return 1.0 - (d - half_bar) / ramp;
}

}  // namespace

SharpSequence make_test_scene(SceneKind kind, Resolution resolution, int frames, double speed,
                              std::uint32_t seed) {
    if (resolution.width <= 0 || resolution.height <= 0 || frames < 1)
        throw ValidationError("make_test_scene: bad resolution or frame count");

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double phase = unit(rng);

    SharpSequence seq;
    seq.frames.reserve(frames);
    const int w = resolution.width;
    const int h = resolution.height;

    for (int k = 0; k < frames; ++k) {
        ImageBuffer img(w, h, Domain::linear);
        switch (kind) {
            case SceneKind::translating_bar: {
                // A steep edge makes each pixel transit in about one frame
                // step, so the full contrast swing fires as one event burst
                // and threshold truncation stays small relative to the count.
                // The outermost rows carry a static high-contrast stripe
                // pattern, anchoring gradient statistics the way a fixed
                // background does in real footage.
                const double half_bar = 4.0, ramp = 0.5;
                const int border = h > 8 ? 2 : 0;
                const double offset = k * speed + phase * w;
                for (int y = 0; y < h; ++y) {
                    const bool static_row = y < border || y >= h - border;
                    for (int x = 0; x < w; ++x)
                        img.at(x, y) =
                            static_row
                                ? ((x / 2 + y) % 2 ? 0.8 : 0.2)
                                : 0.1 + 0.8 * bar_profile(x - offset, w, half_bar, ramp);
                }
                break;
            }
            case SceneKind::drifting_sinusoid: {
                const double wavelength = 16.0;
                for (int y = 0; y < h; ++y)
                    for (int x = 0; x < w; ++x) {
                        const double u = (x + 0.3 * y - k * speed) / wavelength + phase;
                        img.at(x, y) =
                            0.5 + 0.4 * std::sin(2.0 * std::numbers::pi * u);
                    }
                break;
            }
            case SceneKind::two_level_checker: {
                const double cell = 8.0;
                const double ox = k * speed + phase * cell;
                const double oy = k * speed * 0.5;
                for (int y = 0; y < h; ++y)
                    for (int x = 0; x < w; ++x) {
                        const long long cx = static_cast<long long>(std::floor((x - ox) / cell));
                        const long long cy = static_cast<long long>(std::floor((y - oy) / cell));
                        img.at(x, y) = ((cx + cy) % 2 + 2) % 2 == 0 ? 0.25 : 0.75;
                    }
                break;
            }
        }
        seq.frames.push_back(std::move(img));
    }
    return seq;
}

std::vector<Event> simulate_events(const SharpSequence& sharp, const SimConfig& config,
                                   SimStats* stats) {
    if (sharp.frames.empty()) throw ValidationError("simulate_events: empty sharp sequence");
    if (!(config.c_true > 0.0)) throw ValidationError("simulate_events: c_true must be > 0");
    if (!(sharp.frame_rate > 0.0)) throw ValidationError("simulate_events: bad frame rate");

    const int w = sharp.frames.front().width();
    const int h = sharp.frames.front().height();
    const std::size_t pixels = static_cast<std::size_t>(w) * h;

    auto log_clamped = [&](double v) {
        if (v < config.log_floor) {
            if (stats) ++stats->clamped_pixels;
            v = config.log_floor;
        }
        return std::log(v);
    };

    std::vector<double> ref(pixels);
    for (std::size_t i = 0; i < pixels; ++i) ref[i] = log_clamped(sharp.frames.front()[i]);

    std::vector<Event> events;
    std::vector<int> burst(pixels);  // signed event count of the current interval
    for (std::size_t k = 1; k < sharp.frames.size(); ++k) {
        const ImageBuffer& frame = sharp.frames[k];
        if (frame.width() != w || frame.height() != h)
            throw ValidationError("simulate_events: frame resolution changed mid-sequence");
        const double t_prev = sharp.time_of(static_cast<int>(k) - 1);
        const double dt = sharp.time_of(static_cast<int>(k)) - t_prev;

        long long total = 0;
        int max_count = 0;
        for (std::size_t i = 0; i < pixels; ++i) {
            const double d = log_clamped(frame[i]) - ref[i];
            int count = 0;
            if (std::abs(d) >= config.c_true) {
                count = static_cast<int>(std::floor(std::abs(d) / config.c_true));
                const int sigma = d > 0.0 ? +1 : -1;
                ref[i] += sigma * count * config.c_true;
                count *= sigma;
            }
            burst[i] = count;
            total += std::abs(count);
            max_count = std::max(max_count, std::abs(count));
        }
        if (total == 0) continue;

        // Emission order: quantum 1 of every pixel (row-major), then quantum 2,
        // and so on; timestamps spread linearly over the interval by that rank,
        // which keeps per-pixel order and avoids collisions across pixels.
        long long rank = 0;
        for (int j = 1; j <= max_count; ++j) {
            for (std::size_t i = 0; i < pixels; ++i) {
                if (std::abs(burst[i]) < j) continue;
                ++rank;
                events.push_back({t_prev + dt * rank / (total + 1.0),
                                  static_cast<int>(i % w), static_cast<int>(i / w),
                                  burst[i] > 0 ? +1 : -1});
            }
        }
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });
    return events;
}

BlurredSet simulate_blur(const SharpSequence& sharp, const SimConfig& config) {
    const int span = config.blur_span;
    if (span < 1 || span % 2 == 0)
        throw ValidationError("simulate_blur: blur span must be odd and >= 1");
    if (static_cast<int>(sharp.frames.size()) < span)
        throw ValidationError("simulate_blur: fewer sharp frames than the blur span");

    BlurredSet out;
    const int blocks = static_cast<int>(sharp.frames.size()) / span;
    for (int m = 0; m < blocks; ++m) {
        const int first = m * span;
        const int middle = first + span / 2;
        ImageBuffer acc(sharp.frames[first].width(), sharp.frames[first].height(),
                        Domain::linear);
        for (int k = first; k < first + span; ++k)
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += sharp.frames[k][i];
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] /= span;

        FrameRecord frame;
        frame.f = sharp.time_of(middle);
        frame.T = span / sharp.frame_rate;
        frame.image = std::move(acc);
        out.blurred.push_back(std::move(frame));
        out.ground_truth.push_back(sharp.frames[middle]);
    }
    return out;
}

}  // namespace edikit
