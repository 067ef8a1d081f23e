#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "edikit/types.hpp"

namespace edikit {

/// Smallest representable linear intensity; log-domain values are floored at
/// log(kLogFloor). One 8-bit quantum.
inline constexpr double kLogFloor = 1.0 / 255.0;

enum class Domain { linear, log };

/// Row-major grayscale buffer. Linear-domain values live in [0,1], log-domain
/// values in [log(1/255), 0]; the tag only changes through to_log/to_linear.
class ImageBuffer {
public:
    ImageBuffer() = default;
    ImageBuffer(int width, int height, Domain domain = Domain::linear, double fill = 0.0);

    int width() const { return width_; }
    int height() const { return height_; }
    Resolution resolution() const { return {width_, height_}; }
    Domain domain() const { return domain_; }
    std::size_t size() const { return data_.size(); }

    double& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    double at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    bool same_shape(const ImageBuffer& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

private:
    friend ImageBuffer to_log(const ImageBuffer&);
    friend ImageBuffer to_linear(const ImageBuffer&);

    int width_ = 0;
    int height_ = 0;
    Domain domain_ = Domain::linear;
    std::vector<double> data_;
};

/// v -> log(max(v, 1/255)). Throws ValidationError if the input is not linear.
ImageBuffer to_log(const ImageBuffer& img);

/// v -> clamp(exp(v), 0, 1). Throws ValidationError if the input is not log.
ImageBuffer to_linear(const ImageBuffer& img);

/// Binary 8-bit PGM (P5, maxval 255). Values are scaled to [0,1] on read and
/// quantized round-half-up on write.
ImageBuffer read_pgm(const std::filesystem::path& path);
ImageBuffer read_pgm(std::istream& in, const std::string& name = "<stream>");
void write_pgm(const std::filesystem::path& path, const ImageBuffer& img);
void write_pgm(std::ostream& out, const ImageBuffer& img);

}  // namespace edikit
