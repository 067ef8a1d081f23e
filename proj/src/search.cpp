#include "edikit/search.hpp"

#include <algorithm>
#include <cmath>

#include "edikit/parallel.hpp"
#include "edikit/tridiagonal.hpp"

namespace edikit {

namespace {

void check_config(const SearchConfig& config) {
    if (!(0.0 < config.c_lo && config.c_lo < config.c_hi))
        throw ValidationError("search bracket needs 0 < c_lo < c_hi");
    if (!(config.tolerance > 0.0)) throw ValidationError("search tolerance must be > 0");
    if (config.max_evals < 3) throw ValidationError("search needs max_evals >= 3");
}

// Evaluates and records; flips `aborted` on a non-finite value.
double probe(const EnergyFn& energy, double c, EnergyTrace& trace) {
    const double e = energy(c);
    trace.samples.push_back({c, e});
    if (!std::isfinite(e)) {
        trace.aborted = true;
        trace.note = "non-finite energy at c = " + std::to_string(c);
    }
    return e;
}

// Best evaluated sample; ties break toward smaller c. Flat traces return the
// bracket midpoint instead, flagged unconverged.
void finalize(EnergyTrace& trace, const SearchConfig& config) {
    double lo_e = trace.samples.front().energy, hi_e = lo_e;
    trace.c_star = trace.samples.front().c;
    trace.best_energy = lo_e;
    for (const auto& s : trace.samples) {
        lo_e = std::min(lo_e, s.energy);
        hi_e = std::max(hi_e, s.energy);
        if (s.energy < trace.best_energy ||
            (s.energy == trace.best_energy && s.c < trace.c_star)) {
            trace.best_energy = s.energy;
            trace.c_star = s.c;
        }
    }
    if (!trace.aborted && trace.samples.size() >= 2 && hi_e - lo_e == 0.0) {
        trace.c_star = (config.c_lo + config.c_hi) / 2.0;
        trace.converged = false;
        trace.note = "flat energy";
    }
}

}  // namespace

EnergyTrace golden_section(const EnergyFn& energy, const SearchConfig& config) {
    check_config(config);
    static const double rho = (std::sqrt(5.0) - 1.0) / 2.0;  // 0.618...

    EnergyTrace trace;
    double lo = config.c_lo, hi = config.c_hi;
    double x1 = hi - rho * (hi - lo);
    double x2 = lo + rho * (hi - lo);
    double f1 = probe(energy, x1, trace);
    if (!trace.aborted) {
        double f2 = probe(energy, x2, trace);
        while (!trace.aborted && hi - lo > config.tolerance &&
               static_cast<int>(trace.samples.size()) < config.max_evals) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - rho * (hi - lo);
                f1 = probe(energy, x1, trace);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + rho * (hi - lo);
                f2 = probe(energy, x2, trace);
            }
            trace.interval_widths.push_back(hi - lo);
        }
    }
    trace.final_width = hi - lo;
    trace.converged = !trace.aborted && trace.final_width <= config.tolerance;
    if (trace.aborted) {
        trace.c_star = trace.samples.back().c;
        trace.best_energy = trace.samples.back().energy;
        return trace;
    }
    finalize(trace, config);
    return trace;
}

EnergyTrace fibonacci_search(const EnergyFn& energy, const SearchConfig& config) {
    check_config(config);
    const double w0 = config.c_hi - config.c_lo;

    // Smallest depth with F_N >= w0 / tolerance, bounded by the evaluation
    // budget (N - 1 evaluations) and the int64 Fibonacci table.
    int depth = 4;
    while (depth < 90 && static_cast<double>(fibonacci_number(depth)) < w0 / config.tolerance)
        ++depth;
    depth = std::min(depth, std::max(4, config.max_evals + 1));

    // Kiefer's distinguishability offset for the final coincident probes;
    // sized so the final width never exceeds the tolerance when depth is
    // tolerance-driven.
    const double ideal = w0 / static_cast<double>(fibonacci_number(depth));
    const double delta = std::max(0.0, std::min(0.01 * config.tolerance,
                                                0.5 * (config.tolerance - ideal)));

    auto ratio = [](int k, int m) {
        return static_cast<double>(fibonacci_number(k)) /
               static_cast<double>(fibonacci_number(m));
    };

    EnergyTrace trace;
    double lo = config.c_lo, hi = config.c_hi;
    int m = depth;
    double x1 = lo + ratio(m - 2, m) * (hi - lo);
    double x2 = lo + ratio(m - 1, m) * (hi - lo);
    double f1 = probe(energy, x1, trace);
    double f2 = trace.aborted ? f1 : probe(energy, x2, trace);

    while (!trace.aborted && m > 3 && static_cast<int>(trace.samples.size()) < config.max_evals) {
        --m;
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + ratio(m - 2, m) * (hi - lo);
            if (m == 3) x1 = x2 - delta;
            f1 = probe(energy, x1, trace);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio(m - 1, m) * (hi - lo);
            if (m == 3) x2 = x1 + delta;
            f2 = probe(energy, x2, trace);
        }
        trace.interval_widths.push_back(hi - lo);
    }
    if (!trace.aborted && m == 3) {
        // Final comparison needs no new evaluation.
        if (f1 <= f2)
            hi = x2;
        else
            lo = x1;
        trace.interval_widths.push_back(hi - lo);
    }
    trace.final_width = hi - lo;
    trace.converged = !trace.aborted && trace.final_width <= config.tolerance;
    if (trace.aborted) {
        trace.c_star = trace.samples.back().c;
        trace.best_energy = trace.samples.back().energy;
        return trace;
    }
    finalize(trace, config);
    return trace;
}

EnergyTrace sweep_c(const EnergyFn& energy, std::span<const double> grid) {
    if (grid.empty()) throw ValidationError("sweep_c: grid must be non-empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ValidationError("sweep_c: grid must be ascending");

    EnergyTrace trace;
    for (double c : grid) {
        probe(energy, c, trace);
        if (trace.aborted) break;
    }
    trace.final_width = grid.back() - grid.front();
    if (trace.aborted) {
        trace.c_star = trace.samples.back().c;
        trace.best_energy = trace.samples.back().energy;
        return trace;
    }
    trace.c_star = trace.samples.front().c;
    trace.best_energy = trace.samples.front().energy;
    for (const auto& s : trace.samples) {
        if (s.energy < trace.best_energy) {
            trace.best_energy = s.energy;
            trace.c_star = s.c;
        }
    }
    trace.converged = true;
    return trace;
}

EdgeMap event_edge_map(const FrameRecord& frame, const EventIndex& index, double decay,
                       int threads) {
    if (decay <= 0.0) decay = 2.0 / frame.T;
    const int w = frame.image.width();
    const int h = frame.image.height();
    ImageBuffer magnitude(w, h, Domain::linear);
    parallel_for(0, h, threads, [&](long long y0, long long y1) {
        for (long long y = y0; y < y1; ++y)
            for (int x = 0; x < w; ++x)
                magnitude.at(x, static_cast<int>(y)) = std::abs(
                    event_edge_signal(index, x, static_cast<int>(y), frame.f, frame.T, decay));
    });
    return binarize_magnitude(magnitude);
}

double edi_energy(const FrameRecord& frame, const EventIndex& index, double c, double lambda,
                  double decay, int threads) {
    const LatentFrame latent = edi_deblur(frame, index, c, threads);
    const double pixels = static_cast<double>(latent.image.size());
    const double tv = total_variation(latent.image) / pixels;
    const EdgeMap event_edges = event_edge_map(frame, index, decay, threads);
    const EdgeMap latent_edges = sobel_edges(latent.image);
    const double edge =
        static_cast<double>(cross_correlation_score(latent_edges, event_edges)) / pixels;
    return tv + lambda * edge;
}

}  // namespace edikit
