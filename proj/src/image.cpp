#include "edikit/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace edikit {

ImageBuffer::ImageBuffer(int width, int height, Domain domain, double fill)
    : width_(width), height_(height), domain_(domain),
      data_(static_cast<std::size_t>(width) * height, fill) {
    if (width <= 0 || height <= 0)
        throw ValidationError("image dimensions must be positive");
}

ImageBuffer to_log(const ImageBuffer& img) {
    if (img.domain() != Domain::linear)
        throw ValidationError("to_log expects a linear-domain image");
    ImageBuffer out = img;
    out.domain_ = Domain::log;
    for (double& v : out.data_) v = std::log(std::max(v, kLogFloor));
    return out;
}

ImageBuffer to_linear(const ImageBuffer& img) {
    if (img.domain() != Domain::log)
        throw ValidationError("to_linear expects a log-domain image");
    ImageBuffer out = img;
    out.domain_ = Domain::linear;
    for (double& v : out.data_) v = std::clamp(std::exp(v), 0.0, 1.0);
    return out;
}

namespace {

// Reads one whitespace-delimited PGM header token, skipping '#' comments.
int next_header_token(std::istream& in, const std::string& name) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF) throw ValidationError(name + ": truncated PGM header");
    int value = 0;
    bool any = false;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        any = true;
        c = in.get();
    }
    if (!any) throw ValidationError(name + ": malformed PGM header");
    return value;
}

}  // namespace

ImageBuffer read_pgm(std::istream& in, const std::string& name) {
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5')
        throw ValidationError(name + ": not a binary PGM (P5) file");
    const int width = next_header_token(in, name);
    const int height = next_header_token(in, name);
    const int maxval = next_header_token(in, name);
    if (maxval != 255)
        throw ValidationError(name + ": unsupported PGM maxval " + std::to_string(maxval) +
                              " (need 255)");
    if (width <= 0 || height <= 0)
        throw ValidationError(name + ": bad PGM dimensions");

    ImageBuffer img(width, height, Domain::linear);
    std::vector<std::uint8_t> raw(img.size());
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        throw ValidationError(name + ": truncated PGM pixel data");
    for (std::size_t i = 0; i < raw.size(); ++i) img[i] = raw[i] / 255.0;
    return img;
}

ImageBuffer read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return read_pgm(in, path.string());
}

void write_pgm(std::ostream& out, const ImageBuffer& img) {
    if (img.domain() != Domain::linear)
        throw ValidationError("write_pgm expects a linear-domain image");
    out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
    std::vector<std::uint8_t> raw(img.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double q = std::floor(std::clamp(img[i], 0.0, 1.0) * 255.0 + 0.5);
        raw[i] = static_cast<std::uint8_t>(q);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

void write_pgm(const std::filesystem::path& path, const ImageBuffer& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_pgm(out, img);
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace edikit
