#pragma once

#include <functional>
#include <vector>

#include "edikit/frames.hpp"
#include "edikit/integrals.hpp"

namespace edikit {

/// One reconstructed sharp frame. `image` is linear and clamped to [0,1];
/// `log_image` keeps the unclamped log-domain values so the event-update
/// identity stays exact for downstream math and tests.
struct LatentFrame {
    double timestamp = 0.0;
    ImageBuffer image;
    std::vector<double> log_image;
    double c_used = 0.0;
};

struct LatentSequence {
    std::vector<LatentFrame> frames;  // strictly increasing timestamps
};

/// Single-frame deblur: per pixel, log L(f) = log B - log J(c). The linear
/// output is computed as B / J(c) so pixels with no events (J = 1) and the
/// degenerate c = 0 return the blurred value bit-exactly; it matches
/// exp(log L) everywhere the log floor is inactive.
LatentFrame edi_deblur(const FrameRecord& frame, const EventIndex& index, double c,
                       int threads = 1);

/// Expands one latent frame into a sequence over (t_lo, t_hi): sweeping away
/// from the anchor, a frame is emitted whenever `events_per_frame` events
/// (counted over the whole sensor) have accumulated since the last one, at
/// the timestamp of the event completing the budget. Events sharing that
/// timestamp are folded into the emitted frame. Per pixel,
/// log L(t) = log L(anchor) + c * E(t) exactly. The anchor frame itself is
/// always part of the output.
LatentSequence expand_video(const LatentFrame& latent, const EventIndex& index, double t_lo,
                            double t_hi, int events_per_frame, int threads = 1);

/// Streaming variant: frames are handed to `sink` in timestamp order instead
/// of being collected.
void expand_video(const LatentFrame& latent, const EventIndex& index, double t_lo, double t_hi,
                  int events_per_frame, const std::function<void(LatentFrame&&)>& sink,
                  int threads = 1);

}  // namespace edikit
