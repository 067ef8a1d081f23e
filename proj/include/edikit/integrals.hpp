#pragma once

#include <vector>

#include "edikit/event_index.hpp"

namespace edikit {

/// One constant-level piece of the per-pixel event integral E(t).
struct ProfileSegment {
    double duration;  // seconds, > 0
    int level;        // E(t) on this piece, signed count relative to f
};

/// Piecewise-constant E(t) over one exposure window [f - T/2, f + T/2].
/// E jumps by the event polarity at each event time and is 0 on the segment
/// containing f, so exp-integrals over the window have an exact closed form.
struct ExposureProfile {
    double exposure = 0.0;  // T
    std::vector<ProfileSegment> segments;

    int max_abs_level() const;
};

/// Segments the exposure window of pixel (x, y) around center f. Levels use
/// the half-open (t0, t1] counting convention; zero-duration boundary
/// segments are dropped.
ExposureProfile build_exposure_profile(const EventIndex& index, int x, int y, double f, double T);

/// J(c) = (1/T) * sum_k duration_k * exp(c * level_k), the average intensity
/// gain over the exposure. J(0) = 1 exactly; J > 0. Throws std::range_error
/// when c * max|level| > 700 (double overflow guard).
double double_integral_j(const ExposureProfile& profile, double c);

/// Event edge signal at the frame center: sum over window events of
/// polarity * exp(-|f - t| * decay). Large |M| marks pixels whose intensity
/// moved near f.
double event_edge_signal(const EventIndex& index, int x, int y, double f, double T, double decay);

/// Log-domain latent update: log L(t) = log L(f) + c * E(t).
inline double log_latent_at(double lf_log, double c, int signed_count) {
    return lf_log + c * signed_count;
}

}  // namespace edikit
