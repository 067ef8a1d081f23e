#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "edikit/types.hpp"

namespace edikit {

/// Per-pixel, time-sorted event timelines with O(log m) signed range counts.
///
/// Immutable after construction; all queries are read-only and safe to call
/// concurrently. Range counts use the half-open convention (t0, t1]: an event
/// exactly at a query's start is excluded, at its end included, so counts are
/// antisymmetric and exactly additive over adjacent intervals.
class EventIndex {
public:
    struct TimedPolarity {
        double t;
        int polarity;
        bool operator==(const TimedPolarity&) const = default;
    };

    explicit EventIndex(Resolution resolution);
    EventIndex(Resolution resolution, std::vector<Event> events);

    Resolution resolution() const { return res_; }
    std::size_t size() const { return by_time_.size(); }
    bool empty() const { return by_time_.empty(); }

    /// Signed polarity sum over (t0, t1] for t1 > t0, negated for t1 < t0.
    int signed_count_between(int x, int y, double t0, double t1) const;

    /// Time-ascending (t, polarity) timeline of one pixel.
    std::span<const TimedPolarity> timeline(int x, int y) const;

    /// All events sorted by time (ties keep ingestion order).
    std::span<const Event> all_events() const { return by_time_; }

    /// (first, last) event timestamp; (0, 0) when empty.
    std::pair<double, double> time_span() const;

private:
    std::size_t pixel_slot(int x, int y) const {
        return static_cast<std::size_t>(y) * res_.width + x;
    }
    // Number of timeline events of pixel slot p with time <= t.
    std::size_t rank_at(std::size_t slot, double t) const;

    Resolution res_;
    std::vector<std::vector<TimedPolarity>> per_pixel_;
    std::vector<std::vector<int>> prefix_;  // prefix_[p][k] = polarity sum of first k events
    std::vector<Event> by_time_;
};

/// Parses line-oriented `t x y p` text (p in {0,1,-1,+1}; 0 maps to -1).
/// '#' starts a comment; blank lines are skipped. Lines out of global time
/// order are accepted (sorting is per pixel, stable for equal timestamps).
/// Throws ParseError / ValidationError.
EventIndex parse_event_stream(std::istream& source, Resolution resolution);

/// Writes events one per line as `t x y p` with p in {0,1}; inverse of parsing.
void write_event_stream(std::ostream& out, std::span<const Event> events);

}  // namespace edikit
