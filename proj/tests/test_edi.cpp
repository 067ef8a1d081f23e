#include <doctest.h>

#include <cmath>
#include <random>

#include "edikit/edi.hpp"

using namespace edikit;

namespace {

FrameRecord make_frame(int w, int h, double f, double T, double fill) {
    FrameRecord frame;
    frame.f = f;
    frame.T = T;
    frame.image = ImageBuffer(w, h, Domain::linear, fill);
    return frame;
}

EventIndex random_index(Resolution res, int count, double t_lo, double t_hi, std::mt19937& rng) {
    std::uniform_real_distribution<double> time(t_lo, t_hi);
    std::uniform_int_distribution<int> px(0, res.width - 1), py(0, res.height - 1);
    std::bernoulli_distribution sign;
    std::vector<Event> events;
    for (int i = 0; i < count; ++i)
        events.push_back({time(rng), px(rng), py(rng), sign(rng) ? +1 : -1});
    return EventIndex(res, std::move(events));
}

}  // namespace

TEST_CASE("c = 0 returns the blurred frame bit-exactly") {
    std::mt19937 rng(71);
    FrameRecord frame = make_frame(8, 8, 0.5, 0.2, 0.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& v : frame.image.data()) v = unit(rng);
    frame.image[3] = 0.0;  // below the log floor on purpose
    const EventIndex index = random_index({8, 8}, 200, 0.3, 0.7, rng);

    const LatentFrame latent = edi_deblur(frame, index, 0.0);
    for (std::size_t i = 0; i < frame.image.size(); ++i) CHECK(latent.image[i] == frame.image[i]);
}

TEST_CASE("pixels with no events keep their blurred value bit-exactly") {
    FrameRecord frame = make_frame(4, 1, 0.0, 1.0, 0.0);
    frame.image[0] = 0.37;
    frame.image[1] = 0.0;
    frame.image[2] = 1.0;
    frame.image[3] = 0.62;
    const EventIndex index({4, 1}, {{0.1, 3, 0, +1}, {0.2, 3, 0, +1}});
    const LatentFrame latent = edi_deblur(frame, index, 0.3);
    CHECK(latent.image[0] == 0.37);
    CHECK(latent.image[1] == 0.0);
    CHECK(latent.image[2] == 1.0);
    CHECK(latent.image[3] != 0.62);  // the event pixel does move
}

TEST_CASE("deblur divides by J per pixel and matches the log-domain form") {
    FrameRecord frame = make_frame(1, 1, 0.0, 1.0, 0.5);
    const EventIndex index({1, 1}, {{0.25, 0, 0, +1}});
    const double c = std::log(2.0);
    // Profile [(0.75, 0), (0.25, 1)] at c = ln 2 gives J = 1.25.
    const LatentFrame latent = edi_deblur(frame, index, c);
    CHECK(latent.image[0] == doctest::Approx(0.5 / 1.25).epsilon(1e-14));
    CHECK(latent.log_image[0] ==
          doctest::Approx(std::log(0.5) - std::log(1.25)).epsilon(1e-12));
}

TEST_CASE("re-blurring the reconstruction reproduces B above the log floor") {
    std::mt19937 rng(73);
    std::uniform_real_distribution<double> unit(0.1, 1.0);
    FrameRecord frame = make_frame(6, 6, 0.0, 1.0, 0.0);
    for (auto& v : frame.image.data()) v = unit(rng);
    const EventIndex index = random_index({6, 6}, 150, -0.5, 0.5, rng);
    const double c = 0.3;
    const LatentFrame latent = edi_deblur(frame, index, c);

    for (int y = 0; y < 6; ++y) {
        for (int x = 0; x < 6; ++x) {
            const auto profile = build_exposure_profile(index, x, y, 0.0, 1.0);
            double acc = 0.0;
            for (const auto& s : profile.segments)
                acc += s.duration * std::exp(latent.log_image[y * 6 + x] + c * s.level);
            CHECK(acc / 1.0 == doctest::Approx(frame.image.at(x, y)).epsilon(1e-10));
        }
    }
}

TEST_CASE("expand_video with no events yields only the anchor") {
    FrameRecord frame = make_frame(4, 4, 0.0, 0.5, 0.5);
    const EventIndex index({4, 4});
    const LatentFrame latent = edi_deblur(frame, index, 0.2);
    const LatentSequence seq = expand_video(latent, index, -1.0, 1.0, 50);
    REQUIRE(seq.frames.size() == 1);
    CHECK(seq.frames[0].timestamp == 0.0);
}

TEST_CASE("expand_video emits one frame per full event budget plus the anchor") {
    // 500 events strictly after the anchor, distinct timestamps.
    std::vector<Event> events;
    for (int i = 0; i < 500; ++i) events.push_back({0.001 * (i + 1), 0, 0, +1});
    const EventIndex index({1, 1}, events);
    FrameRecord frame = make_frame(1, 1, 0.0, 0.1, 0.5);
    const LatentFrame latent = edi_deblur(frame, index, 0.001);
    const LatentSequence seq = expand_video(latent, index, 0.0, 1.0, 50);
    CHECK(seq.frames.size() == 11);  // 10 emitted + anchor

    // Timestamps strictly increase and the anchor is present.
    for (std::size_t i = 1; i < seq.frames.size(); ++i)
        CHECK(seq.frames[i].timestamp > seq.frames[i - 1].timestamp);
    CHECK(seq.frames.front().timestamp == 0.0);
}

TEST_CASE("expand_video emits on both sides of the anchor") {
    std::vector<Event> events;
    for (int i = 0; i < 250; ++i) events.push_back({-0.001 * (i + 1), 0, 0, +1});
    for (int i = 0; i < 250; ++i) events.push_back({0.001 * (i + 1), 0, 0, +1});
    const EventIndex index({1, 1}, events);
    FrameRecord frame = make_frame(1, 1, 0.0, 0.1, 0.5);
    const LatentFrame latent = edi_deblur(frame, index, 0.001);
    const LatentSequence seq = expand_video(latent, index, -1.0, 1.0, 50);
    CHECK(seq.frames.size() == 11);
    int before = 0, after = 0;
    for (const auto& f : seq.frames) {
        before += f.timestamp < 0.0;
        after += f.timestamp > 0.0;
    }
    CHECK(before == 5);
    CHECK(after == 5);
}

TEST_CASE("log-update identity holds between any two expanded frames") {
    std::mt19937 rng(79);
    const Resolution res{5, 5};
    const EventIndex index = random_index(res, 400, -1.0, 1.0, rng);
    FrameRecord frame = make_frame(5, 5, 0.0, 0.4, 0.0);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    for (auto& v : frame.image.data()) v = unit(rng);
    const double c = 0.21;
    const LatentFrame latent = edi_deblur(frame, index, c);
    const LatentSequence seq = expand_video(latent, index, -1.0, 1.0, 25);
    REQUIRE(seq.frames.size() > 3);

    std::uniform_int_distribution<std::size_t> pick(0, seq.frames.size() - 1);
    for (int trial = 0; trial < 50; ++trial) {
        const auto& f1 = seq.frames[pick(rng)];
        const auto& f2 = seq.frames[pick(rng)];
        for (int y = 0; y < res.height; ++y) {
            for (int x = 0; x < res.width; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * res.width + x;
                const double lhs = f2.log_image[i] - f1.log_image[i];
                const double rhs =
                    c * index.signed_count_between(x, y, f1.timestamp, f2.timestamp);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("expand_video folds same-timestamp events into one emission") {
    std::vector<Event> events;
    for (int i = 0; i < 10; ++i) {
        events.push_back({0.5, 0, 0, +1});  // burst at one instant
        events.push_back({0.5, 1, 0, +1});
    }
    const EventIndex index({2, 1}, events);
    FrameRecord frame = make_frame(2, 1, 0.0, 0.1, 0.5);
    const LatentFrame latent = edi_deblur(frame, index, 0.1);
    const LatentSequence seq = expand_video(latent, index, 0.0, 1.0, 5);
    REQUIRE(seq.frames.size() == 2);  // anchor + one burst frame
    const auto& burst = seq.frames.back();
    CHECK(burst.timestamp == 0.5);
    // The burst frame reflects all 20 events, 10 per pixel.
    CHECK(burst.log_image[0] - latent.log_image[0] == doctest::Approx(0.1 * 10).epsilon(1e-12));
    CHECK(burst.log_image[1] - latent.log_image[1] == doctest::Approx(0.1 * 10).epsilon(1e-12));
}
