#include "edikit/frames.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace edikit {

std::vector<FrameRecord> parse_frame_manifest(std::istream& source,
                                              const std::filesystem::path& base_dir,
                                              double exposure, TimestampOrigin origin) {
    if (!(exposure > 0.0)) throw ValidationError("exposure must be > 0");

    std::vector<FrameRecord> frames;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);

        std::istringstream ls(line);
        std::string t_tok, filename;
        if (!(ls >> t_tok)) continue;
        if (!(ls >> filename)) throw ParseError(line_no, "expected `t filename`");

        double t = 0.0;
        auto [p, ec] = std::from_chars(t_tok.data(), t_tok.data() + t_tok.size(), t);
        if (ec != std::errc() || p != t_tok.data() + t_tok.size())
            throw ParseError(line_no, "bad timestamp '" + t_tok + "'");

        FrameRecord frame;
        frame.T = exposure;
        frame.f = (origin == TimestampOrigin::midpoint) ? t : t + exposure / 2.0;
        frame.name = filename;
        frame.image = read_pgm(base_dir / filename);

        if (!frames.empty()) {
            if (!(frame.f > frames.back().f))
                throw ValidationError("line " + std::to_string(line_no) +
                                      ": non-monotonic timestamps");
            if (!frame.image.same_shape(frames.back().image))
                throw ValidationError("line " + std::to_string(line_no) + ": frame '" + filename +
                                      "' resolution differs from previous frames");
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

std::vector<FrameRecord> load_frame_manifest(const std::filesystem::path& manifest_path,
                                             double exposure, TimestampOrigin origin) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot open " + manifest_path.string());
    return parse_frame_manifest(in, manifest_path.parent_path(), exposure, origin);
}

std::vector<std::string> check_exposure_coverage(std::span<const FrameRecord> frames,
                                                 const EventIndex& index) {
    std::vector<std::string> warnings;
    if (index.empty()) return warnings;
    const auto [t_first, t_last] = index.time_span();
    for (const FrameRecord& fr : frames) {
        const double lo = fr.f - fr.T / 2.0;
        const double hi = fr.f + fr.T / 2.0;
        if (lo < t_first || hi > t_last) {
            std::ostringstream msg;
            msg << "frame '" << fr.name << "' exposure [" << lo << ", " << hi
                << "] overhangs the event stream span [" << t_first << ", " << t_last << "]";
            warnings.push_back(msg.str());
        }
    }
    return warnings;
}

}  // namespace edikit
