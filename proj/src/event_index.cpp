#include "edikit/event_index.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace edikit {

EventIndex::EventIndex(Resolution resolution) : EventIndex(resolution, {}) {}

EventIndex::EventIndex(Resolution resolution, std::vector<Event> events)
    : res_(resolution), by_time_(std::move(events)) {
    if (res_.width <= 0 || res_.height <= 0)
        throw ValidationError("event index needs a positive resolution");
    for (const Event& e : by_time_) {
        if (!res_.contains(e.x, e.y))
            throw ValidationError("event at (" + std::to_string(e.x) + "," + std::to_string(e.y) +
                                  ") outside " + std::to_string(res_.width) + "x" +
                                  std::to_string(res_.height) + " resolution");
        if (e.polarity != 1 && e.polarity != -1)
            throw ValidationError("event polarity must be +1 or -1 after ingestion");
    }
    std::stable_sort(by_time_.begin(), by_time_.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });

    per_pixel_.resize(static_cast<std::size_t>(res_.pixel_count()));
    prefix_.resize(per_pixel_.size());
    for (const Event& e : by_time_)
        per_pixel_[pixel_slot(e.x, e.y)].push_back({e.t, e.polarity});
    for (std::size_t p = 0; p < per_pixel_.size(); ++p) {
        prefix_[p].resize(per_pixel_[p].size() + 1, 0);
        for (std::size_t k = 0; k < per_pixel_[p].size(); ++k)
            prefix_[p][k + 1] = prefix_[p][k] + per_pixel_[p][k].polarity;
    }
}

std::size_t EventIndex::rank_at(std::size_t slot, double t) const {
    const auto& tl = per_pixel_[slot];
    auto it = std::upper_bound(tl.begin(), tl.end(), t,
                               [](double v, const TimedPolarity& e) { return v < e.t; });
    return static_cast<std::size_t>(it - tl.begin());
}

int EventIndex::signed_count_between(int x, int y, double t0, double t1) const {
    if (!res_.contains(x, y))
        throw ValidationError("signed_count_between: pixel outside resolution");
    const std::size_t slot = pixel_slot(x, y);
    return prefix_[slot][rank_at(slot, t1)] - prefix_[slot][rank_at(slot, t0)];
}

std::span<const EventIndex::TimedPolarity> EventIndex::timeline(int x, int y) const {
    if (!res_.contains(x, y)) throw ValidationError("timeline: pixel outside resolution");
    return per_pixel_[pixel_slot(x, y)];
}

std::pair<double, double> EventIndex::time_span() const {
    if (by_time_.empty()) return {0.0, 0.0};
    return {by_time_.front().t, by_time_.back().t};
}

namespace {

bool parse_double(std::string_view tok, double& out) {
    const char* end = tok.data() + tok.size();
    auto [p, ec] = std::from_chars(tok.data(), end, out);
    return ec == std::errc() && p == end;
}

bool parse_int(std::string_view tok, int& out) {
    std::string_view body = tok;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
    return ec == std::errc() && p == body.data() + body.size();
}

}  // namespace

EventIndex parse_event_stream(std::istream& source, Resolution resolution) {
    std::vector<Event> events;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);

        std::istringstream ls(line);
        std::string tok[4];
        if (!(ls >> tok[0])) continue;  // blank / comment-only line
        if (!(ls >> tok[1] >> tok[2] >> tok[3]))
            throw ParseError(line_no, "expected `t x y p`");
        std::string extra;
        if (ls >> extra) throw ParseError(line_no, "trailing token '" + extra + "'");

        Event e;
        int p = 0;
        if (!parse_double(tok[0], e.t) || !parse_int(tok[1], e.x) || !parse_int(tok[2], e.y) ||
            !parse_int(tok[3], p))
            throw ParseError(line_no, "malformed field in `" + line + "`");
        if (p != 0 && p != 1 && p != -1)
            throw ParseError(line_no, "polarity must be one of 0, 1, -1, +1");
        e.polarity = (p == 1) ? +1 : -1;
        if (!resolution.contains(e.x, e.y))
            throw ValidationError("line " + std::to_string(line_no) + ": event at (" +
                                  std::to_string(e.x) + "," + std::to_string(e.y) +
                                  ") outside declared resolution");
        events.push_back(e);
    }
    return EventIndex(resolution, std::move(events));
}

void write_event_stream(std::ostream& out, std::span<const Event> events) {
    // Shortest decimal that parses back to the same double, so that
    // ingest -> dump -> ingest reproduces timelines exactly.
    char buf[64];
    for (const Event& e : events) {
        auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), e.t);
        out.write(buf, p - buf);
        out << ' ' << e.x << ' ' << e.y << ' ' << (e.polarity > 0 ? 1 : 0) << '\n';
    }
}

}  // namespace edikit
