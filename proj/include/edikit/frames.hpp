#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "edikit/event_index.hpp"
#include "edikit/image.hpp"

namespace edikit {

/// One intensity frame: center-of-exposure timestamp f, exposure T, and the
/// (possibly blurred) linear image.
struct FrameRecord {
    double f = 0.0;  // exposure midpoint, seconds
    double T = 0.0;  // exposure duration, seconds (> 0)
    ImageBuffer image;
    std::string name;  // manifest file name, if any
};

enum class TimestampOrigin {
    midpoint,  // manifest t is the exposure midpoint f (default)
    start,     // manifest t is the exposure start; f = t + T/2
};

/// Parses a `t filename` manifest and loads the referenced PGM images
/// (paths relative to `base_dir`). Timestamps must be strictly increasing and
/// all images must share one resolution. Throws ParseError / ValidationError.
std::vector<FrameRecord> parse_frame_manifest(
    std::istream& source, const std::filesystem::path& base_dir, double exposure,
    TimestampOrigin origin = TimestampOrigin::midpoint);

std::vector<FrameRecord> load_frame_manifest(
    const std::filesystem::path& manifest_path, double exposure,
    TimestampOrigin origin = TimestampOrigin::midpoint);

/// Exposure windows overhanging the event stream's time span are legal but
/// usually a config mistake; returns one warning string per offending frame.
std::vector<std::string> check_exposure_coverage(std::span<const FrameRecord> frames,
                                                 const EventIndex& index);

}  // namespace edikit
