#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "edikit/edi.hpp"
#include "edikit/image_ops.hpp"

namespace edikit {

enum class SearchMethod { golden, fibonacci, grid };

struct SearchConfig {
    double c_lo = 0.01;
    double c_hi = 1.0;
    double tolerance = 1e-3;  // absolute bracket width in c
    int max_evals = 64;
    SearchMethod method = SearchMethod::golden;
};

/// Record of one univariate minimization: every (c, energy) evaluation, the
/// best point, and how the search ended. `aborted` marks a non-finite energy.
struct EnergyTrace {
    struct Sample {
        double c;
        double energy;
    };
    std::vector<Sample> samples;
    std::vector<double> interval_widths;  // bracket width after each iteration
    double c_star = 0.0;
    double best_energy = 0.0;
    double final_width = 0.0;
    bool converged = false;
    bool aborted = false;
    std::string note;
};

using EnergyFn = std::function<double(double)>;

/// Golden-ratio interval reduction; each iteration shrinks the bracket by
/// 0.618... reusing one interior evaluation. A constant ("flat") energy
/// returns the bracket midpoint with converged = false.
EnergyTrace golden_section(const EnergyFn& energy, const SearchConfig& config);

/// Kiefer's Fibonacci scheme: depth N is the smallest index with
/// F_N >= width / tolerance (capped by max_evals + 1); probes sit at
/// consecutive Fibonacci ratios and exactly N - 1 evaluations shrink the
/// bracket to width/F_N (plus the final distinguishability offset).
EnergyTrace fibonacci_search(const EnergyFn& energy, const SearchConfig& config);

/// Evaluates every grid point (ascending); ties break toward smaller c.
EnergyTrace sweep_c(const EnergyFn& energy, std::span<const double> grid);

/// Regularized single-frame energy: TV(L(c))/P + lambda * edge_score/P, where
/// the edge score cross-correlates Sobel edges of the reconstruction with the
/// binarized event edge signal |M|. lambda < 0 rewards edge agreement.
/// A decay rate <= 0 selects the default 2/T.
double edi_energy(const FrameRecord& frame, const EventIndex& index, double c, double lambda,
                  double decay = 0.0, int threads = 1);

/// Binarized |M(f)| map: the event-driven edge mask used by edi_energy.
EdgeMap event_edge_map(const FrameRecord& frame, const EventIndex& index, double decay = 0.0,
                       int threads = 1);

}  // namespace edikit
