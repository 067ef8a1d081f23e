#pragma once

#include <cstdint>
#include <vector>

#include "edikit/frames.hpp"

namespace edikit {

struct SimConfig {
    double c_true = 0.23;      // contrast threshold generating the events
    double frame_rate = 100.0; // sharp input rate, Hz
    int blur_span = 11;        // odd; sharp frames averaged per blurred frame
    double log_floor = kLogFloor;
};

/// Sharp frames at t = t0 + k / rate.
struct SharpSequence {
    double t0 = 0.0;
    double frame_rate = 100.0;
    std::vector<ImageBuffer> frames;

    double time_of(int k) const { return t0 + k / frame_rate; }
};

enum class SceneKind { translating_bar, drifting_sinusoid, two_level_checker };

/// Deterministic synthetic scenes with intensities in [0.1, 0.9] and nonzero
/// spatial gradients (so motion fires events). `speed` is pixels per frame;
/// the seed randomizes phases/offsets only.
SharpSequence make_test_scene(SceneKind kind, Resolution resolution, int frames, double speed,
                              std::uint32_t seed = 1);

struct SimStats {
    long long clamped_pixels = 0;  // samples lifted to the log floor
};

/// Ideal event camera over the sharp sequence: per pixel a log-intensity
/// reference is kept; each time the current frame moves the log intensity a
/// full threshold away from it, one event fires and the reference steps by
/// +-c_true. Emitted events of one inter-frame interval sit at even fractions
/// of it, in emission order. Output is time-sorted and deterministic.
std::vector<Event> simulate_events(const SharpSequence& sharp, const SimConfig& config,
                                   SimStats* stats = nullptr);

/// Blurred frames plus their ground truth: consecutive non-overlapping blocks
/// of blur_span sharp frames are averaged in linear intensity; the block's
/// middle frame is the ground truth and provides the timestamp f.
struct BlurredSet {
    std::vector<FrameRecord> blurred;
    std::vector<ImageBuffer> ground_truth;
};

BlurredSet simulate_blur(const SharpSequence& sharp, const SimConfig& config);

}  // namespace edikit
