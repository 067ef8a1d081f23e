#include "edikit/edi.hpp"

#include <algorithm>
#include <cmath>

#include "edikit/parallel.hpp"

namespace edikit {

LatentFrame edi_deblur(const FrameRecord& frame, const EventIndex& index, double c, int threads) {
    if (!(frame.image.resolution() == index.resolution()))
        throw ValidationError("edi_deblur: frame and event index resolutions differ");
    if (c < 0.0) throw ValidationError("edi_deblur: c must be >= 0");

    const int w = frame.image.width();
    const int h = frame.image.height();
    LatentFrame latent;
    latent.timestamp = frame.f;
    latent.c_used = c;
    latent.image = ImageBuffer(w, h, Domain::linear);
    latent.log_image.resize(frame.image.size());

    parallel_for(0, h, threads, [&](long long y0, long long y1) {
        for (long long y = y0; y < y1; ++y) {
            for (int x = 0; x < w; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * w + x;
                const double b = frame.image[i];
                const auto profile = build_exposure_profile(index, x, static_cast<int>(y),
                                                            frame.f, frame.T);
                const double j = double_integral_j(profile, c);
                latent.log_image[i] = std::log(std::max(b, kLogFloor)) - std::log(j);
                latent.image[i] = std::clamp(b / j, 0.0, 1.0);
            }
        }
    });
    return latent;
}

namespace {

// Materializes the frame at time t from the anchor plus per-pixel counts.
LatentFrame make_expanded_frame(const LatentFrame& anchor, const std::vector<int>& counts,
                                double t, int threads) {
    LatentFrame out;
    out.timestamp = t;
    out.c_used = anchor.c_used;
    out.image = ImageBuffer(anchor.image.width(), anchor.image.height(), Domain::linear);
    out.log_image.resize(anchor.log_image.size());
    const double c = anchor.c_used;
    parallel_for(0, static_cast<long long>(counts.size()), threads,
                 [&](long long lo, long long hi) {
                     for (long long i = lo; i < hi; ++i) {
                         out.log_image[i] = log_latent_at(anchor.log_image[i], c, counts[i]);
                         out.image[i] = std::clamp(
                             anchor.image[i] * std::exp(c * counts[i]), 0.0, 1.0);
                     }
                 });
    return out;
}

}  // namespace

void expand_video(const LatentFrame& latent, const EventIndex& index, double t_lo, double t_hi,
                  int events_per_frame, const std::function<void(LatentFrame&&)>& sink,
                  int threads) {
    if (events_per_frame < 1) throw ValidationError("expand_video: events_per_frame must be >= 1");
    if (!(t_lo <= latent.timestamp && latent.timestamp <= t_hi))
        throw ValidationError("expand_video: anchor timestamp outside the window");
    if (static_cast<std::size_t>(index.resolution().pixel_count()) != latent.log_image.size())
        throw ValidationError("expand_video: latent and event index resolutions differ");

    const auto events = index.all_events();
    const double f = latent.timestamp;
    const int width = index.resolution().width;
    auto slot = [width](const Event& e) {
        return static_cast<std::size_t>(e.y) * width + e.x;
    };

    // Events in (t_lo, f] belong to the backward sweep, (f, t_hi] forward.
    const auto begin_it = std::upper_bound(events.begin(), events.end(), t_lo,
                                           [](double v, const Event& e) { return v < e.t; });
    const auto anchor_it = std::upper_bound(events.begin(), events.end(), f,
                                            [](double v, const Event& e) { return v < e.t; });
    const auto end_it = std::upper_bound(events.begin(), events.end(), t_hi,
                                         [](double v, const Event& e) { return v < e.t; });

    std::vector<int> counts(latent.log_image.size(), 0);

    // Backward: E(t) for t < f excludes events at t itself, so each timestamp
    // group emits before its polarities are removed from the counts.
    std::vector<LatentFrame> backward;
    int budget = 0;
    for (auto it = anchor_it; it != begin_it;) {
        auto group_end = it;  // one past the group in descending order
        const double t = std::prev(it)->t;
        auto group_begin = it;
        while (group_begin != begin_it && std::prev(group_begin)->t == t) --group_begin;
        budget += static_cast<int>(group_end - group_begin);
        if (budget >= events_per_frame) {
            if (t != f) backward.push_back(make_expanded_frame(latent, counts, t, threads));
            budget = 0;
        }
        for (auto e = group_begin; e != group_end; ++e) counts[slot(*e)] -= e->polarity;
        it = group_begin;
    }

    for (auto rit = backward.rbegin(); rit != backward.rend(); ++rit) sink(std::move(*rit));

    LatentFrame anchor_copy = latent;
    sink(std::move(anchor_copy));

    // Forward: E(t) includes events at t, so counts update before emitting.
    std::fill(counts.begin(), counts.end(), 0);
    budget = 0;
    for (auto it = anchor_it; it != end_it;) {
        const double t = it->t;
        auto group_end = it;
        while (group_end != end_it && group_end->t == t) {
            counts[slot(*group_end)] += group_end->polarity;
            ++group_end;
        }
        budget += static_cast<int>(group_end - it);
        if (budget >= events_per_frame) {
            sink(make_expanded_frame(latent, counts, t, threads));
            budget = 0;
        }
        it = group_end;
    }
}

LatentSequence expand_video(const LatentFrame& latent, const EventIndex& index, double t_lo,
                            double t_hi, int events_per_frame, int threads) {
    LatentSequence seq;
    expand_video(latent, index, t_lo, t_hi, events_per_frame,
                 [&seq](LatentFrame&& frame) { seq.frames.push_back(std::move(frame)); }, threads);
    return seq;
}

}  // namespace edikit
