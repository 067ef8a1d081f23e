#include <doctest.h>

#include <cmath>
#include <random>

#include "edikit/integrals.hpp"

using namespace edikit;

namespace {

// Independent brute-force evaluation of (1/T) * integral of exp(c * E(t))
// over [f - T/2, f + T/2] by midpoint Riemann sum.
double riemann_j(const EventIndex& index, int x, int y, double f, double T, double c,
                 long steps) {
    const double lo = f - T / 2.0;
    const double dt = T / static_cast<double>(steps);
    double acc = 0.0;
    for (long k = 0; k < steps; ++k) {
        const double t = lo + (k + 0.5) * dt;
        const int level = index.signed_count_between(x, y, f, t);
        acc += std::exp(c * level);
    }
    return acc / static_cast<double>(steps);
}

// Closed-form derivative of J with respect to c.
double j_derivative(const ExposureProfile& profile, double c) {
    double acc = 0.0;
    for (const auto& s : profile.segments) acc += s.duration * s.level * std::exp(c * s.level);
    return acc / profile.exposure;
}

EventIndex single_pixel(std::vector<EventIndex::TimedPolarity> timeline) {
    std::vector<Event> events;
    for (const auto& e : timeline) events.push_back({e.t, 0, 0, e.polarity});
    return EventIndex({1, 1}, std::move(events));
}

}  // namespace

TEST_CASE("profile of an empty window is one zero-level segment") {
    const EventIndex index({1, 1});
    const auto profile = build_exposure_profile(index, 0, 0, 0.0, 1.0);
    REQUIRE(profile.segments.size() == 1);
    CHECK(profile.segments[0].duration == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(profile.segments[0].level == 0);
}

TEST_CASE("profile splits at an event after the frame center") {
    const EventIndex index = single_pixel({{0.25, +1}});
    const auto profile = build_exposure_profile(index, 0, 0, 0.0, 1.0);
    REQUIRE(profile.segments.size() == 2);
    CHECK(profile.segments[0].duration == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(profile.segments[0].level == 0);
    CHECK(profile.segments[1].duration == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(profile.segments[1].level == 1);
}

TEST_CASE("profile sign bookkeeping before the frame center") {
    const EventIndex index = single_pixel({{-0.25, -1}});
    const auto profile = build_exposure_profile(index, 0, 0, 0.0, 1.0);
    REQUIRE(profile.segments.size() == 2);
    CHECK(profile.segments[0].duration == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(profile.segments[0].level == 1);
    CHECK(profile.segments[1].duration == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(profile.segments[1].level == 0);
}

TEST_CASE("profile durations sum to T and the center segment has level 0") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> time(-0.5, 0.5);
    std::bernoulli_distribution sign;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Event> events;
        for (int i = 0; i < 20; ++i) events.push_back({time(rng), 0, 0, sign(rng) ? 1 : -1});
        const EventIndex index({1, 1}, events);
        const auto profile = build_exposure_profile(index, 0, 0, 0.0, 1.0);
        double total = 0.0;
        for (const auto& s : profile.segments) {
            CHECK(s.duration > 0.0);
            total += s.duration;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        // Adjacent levels step by one event polarity (timestamps distinct a.s.).
        for (std::size_t k = 1; k < profile.segments.size(); ++k)
            CHECK(std::abs(profile.segments[k].level - profile.segments[k - 1].level) == 1);
        // Locate the segment containing t = 0.
        double t = -0.5;
        for (const auto& s : profile.segments) {
            if (t <= 0.0 && 0.0 < t + s.duration) CHECK(s.level == 0);
            t += s.duration;
        }
    }
}

TEST_CASE("J(0) is exactly one; no-event pixels give J = 1 for every c") {
    const EventIndex index = single_pixel({{0.3, +1}, {0.4, -1}});
    const auto profile = build_exposure_profile(index, 0, 0, 0.0, 1.0);
    CHECK(double_integral_j(profile, 0.0) == 1.0);

    const EventIndex empty({1, 1});
    const auto flat = build_exposure_profile(empty, 0, 0, 0.0, 0.37);
    for (double c : {0.0, 0.1, 0.5, 5.0}) CHECK(double_integral_j(flat, c) == 1.0);
}

TEST_CASE("J closed form matches the hand-computed piecewise sum") {
    const EventIndex index = single_pixel({{0.25, +1}});
    const auto profile = build_exposure_profile(index, 0, 0, 0.0, 1.0);
    CHECK(double_integral_j(profile, std::log(2.0)) == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("J overflow guard reports a range error") {
    const EventIndex index = single_pixel({{0.25, +1}});
    auto profile = build_exposure_profile(index, 0, 0, 0.0, 1.0);
    CHECK_THROWS_AS(double_integral_j(profile, 800.0), std::range_error);
}

TEST_CASE("J matches brute-force Riemann integration on random event placements") {
    // Event times are drawn on the Riemann grid so the midpoint sum carries
    // no discretization error of its own; the comparison then isolates the
    // closed form.
    constexpr long kSteps = 100'000;
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> slot(1, kSteps - 1);
    std::uniform_real_distribution<double> cdist(0.05, 1.0);
    std::bernoulli_distribution sign;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Event> events;
        const int count = 1 + trial % 12;
        for (int i = 0; i < count; ++i)
            events.push_back({-0.5 + slot(rng) * (1.0 / kSteps), 0, 0, sign(rng) ? 1 : -1});
        const EventIndex index({1, 1}, events);
        const auto profile = build_exposure_profile(index, 0, 0, 0.0, 1.0);
        const double c = cdist(rng);
        const double exact = double_integral_j(profile, c);
        const double brute = riemann_j(index, 0, 0, 0.0, 1.0, c, kSteps);
        CHECK(std::abs(exact - brute) / exact < 1e-6);
    }
}

TEST_CASE("adding a positive event after the center strictly increases J for c > 0") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> time(-0.5, 0.5);
    std::uniform_real_distribution<double> later(0.001, 0.499);
    std::bernoulli_distribution sign;
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Event> events;
        for (int i = 0; i < 8; ++i) events.push_back({time(rng), 0, 0, sign(rng) ? 1 : -1});
        const EventIndex before({1, 1}, events);
        events.push_back({later(rng), 0, 0, +1});  // raises every level from here on
        const EventIndex after({1, 1}, events);
        const auto pa = build_exposure_profile(before, 0, 0, 0.0, 1.0);
        const auto pb = build_exposure_profile(after, 0, 0, 0.0, 1.0);
        CHECK(double_integral_j(pb, 0.4) > double_integral_j(pa, 0.4));
    }
}

TEST_CASE("finite-difference derivative of J matches the closed form") {
    const EventIndex index =
        single_pixel({{-0.4, +1}, {-0.1, -1}, {0.2, +1}, {0.3, +1}, {0.45, -1}});
    const auto profile = build_exposure_profile(index, 0, 0, 0.0, 1.0);
    for (double c : {0.1, 0.3, 0.7}) {
        const double h = 1e-7;
        const double fd =
            (double_integral_j(profile, c + h) - double_integral_j(profile, c - h)) / (2 * h);
        CHECK(fd == doctest::Approx(j_derivative(profile, c)).epsilon(1e-6));
    }
}

TEST_CASE("splitting a segment at the same level leaves J unchanged") {
    ExposureProfile a{1.0, {{0.6, 0}, {0.4, 2}}};
    ExposureProfile b{1.0, {{0.3, 0}, {0.3, 0}, {0.25, 2}, {0.15, 2}}};
    for (double c : {0.0, 0.2, 0.9})
        CHECK(double_integral_j(a, c) == doctest::Approx(double_integral_j(b, c)).epsilon(1e-15));
}

TEST_CASE("event edge signal: empty, centered, and cancelling cases") {
    const EventIndex empty({1, 1});
    CHECK(event_edge_signal(empty, 0, 0, 0.0, 1.0, 10.0) == 0.0);

    const EventIndex centered = single_pixel({{0.0, +1}});
    CHECK(event_edge_signal(centered, 0, 0, 0.0, 1.0, 10.0) == 1.0);

    const EventIndex pair = single_pixel({{-0.1, -1}, {0.1, +1}});
    CHECK(std::abs(event_edge_signal(pair, 0, 0, 0.0, 1.0, 10.0)) < 1e-15);
}

TEST_CASE("log_latent_at is the affine log update") {
    CHECK(log_latent_at(0.0, 0.2, 0) == 0.0);
    CHECK(log_latent_at(-1.0, 0.2, 3) == doctest::Approx(-0.4).epsilon(1e-15));
    CHECK(log_latent_at(-1.0, 0.2, -3) == doctest::Approx(-1.6).epsilon(1e-15));
}
