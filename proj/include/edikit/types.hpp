#pragma once

#include <stdexcept>
#include <string>

namespace edikit {

/// One asynchronous intensity-change impulse: pixel, time, polarity (+1/-1).
struct Event {
    double t = 0.0;
    int x = 0;
    int y = 0;
    int polarity = +1;
};

struct Resolution {
    int width = 0;
    int height = 0;

    bool contains(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }
    long long pixel_count() const {
        return static_cast<long long>(width) * height;
    }
    bool operator==(const Resolution&) const = default;
};

/// Malformed input text (carries the 1-based line number).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input that violates a declared constraint (resolution, domain, ...).
class ValidationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem-level failure (missing file, failed write).
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace edikit
