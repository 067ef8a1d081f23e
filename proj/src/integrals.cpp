#include "edikit/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edikit {

int ExposureProfile::max_abs_level() const {
    int m = 0;
    for (const ProfileSegment& s : segments) m = std::max(m, std::abs(s.level));
    return m;
}

ExposureProfile build_exposure_profile(const EventIndex& index, int x, int y, double f, double T) {
    if (!(T > 0.0)) throw ValidationError("exposure T must be > 0");
    const double lo = f - T / 2.0;
    const double hi = f + T / 2.0;

    ExposureProfile profile;
    profile.exposure = T;

    const auto timeline = index.timeline(x, y);
    auto first = std::upper_bound(timeline.begin(), timeline.end(), lo,
                                  [](double v, const auto& e) { return v < e.t; });
    auto last = std::upper_bound(timeline.begin(), timeline.end(), hi,
                                 [](double v, const auto& e) { return v < e.t; });

    // E on [u, next) equals the signed count over (f, u] (negated below f);
    // maintained incrementally from the segment starting at the window edge.
    int level = index.signed_count_between(x, y, f, lo);
    double seg_start = lo;
    for (auto it = first; it != last; ++it) {
        if (it->t > seg_start)
            profile.segments.push_back({it->t - seg_start, level});
        seg_start = std::max(seg_start, it->t);
        level += it->polarity;
    }
    if (hi > seg_start || profile.segments.empty())
        profile.segments.push_back({hi - seg_start, level});
    return profile;
}

double double_integral_j(const ExposureProfile& profile, double c) {
    // All-zero levels integrate exp(0) over the window: exactly 1, free of
    // the rounding in the segment durations. Keeps J(0) = 1 and the no-event
    // fixed point bit-exact.
    const int max_level = profile.max_abs_level();
    if (c == 0.0 || max_level == 0) return 1.0;
    const double worst = std::abs(c) * max_level;
    if (worst > 700.0)
        throw std::range_error("double_integral_j: exponent " + std::to_string(worst) +
                               " exceeds the overflow guard (700)");
    double acc = 0.0;
    for (const ProfileSegment& s : profile.segments) acc += s.duration * std::exp(c * s.level);
    return acc / profile.exposure;
}

double event_edge_signal(const EventIndex& index, int x, int y, double f, double T, double decay) {
    if (!(decay > 0.0)) throw ValidationError("decay rate must be > 0");
    const double lo = f - T / 2.0;
    const double hi = f + T / 2.0;
    const auto timeline = index.timeline(x, y);
    auto first = std::lower_bound(timeline.begin(), timeline.end(), lo,
                                  [](const auto& e, double v) { return e.t < v; });
    double m = 0.0;
    for (auto it = first; it != timeline.end() && it->t <= hi; ++it)
        m += it->polarity * std::exp(-std::abs(f - it->t) * decay);
    return m;
}

}  // namespace edikit
