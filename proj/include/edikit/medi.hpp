#pragma once

#include <span>

#include "edikit/edi.hpp"
#include "edikit/tridiagonal.hpp"

namespace edikit {

/// Per-pixel inputs of the stacked multi-frame system for one value of c:
/// a_i = log J_i(c) over frame i's exposure, b_i = c * signed event count
/// between frame centers f_i and f_{i+1}, blog_i = log blurred intensity.
struct MediCoefficients {
    std::vector<double> a;     // n
    std::vector<double> b;     // n - 1
    std::vector<double> blog;  // n
};

MediCoefficients assemble_coefficients(std::span<const FrameRecord> frames,
                                       const EventIndex& index, int x, int y, double c);

/// Normal equations of the stack: main diagonal [2, 3, ..., 3, 2] and rhs
/// (blog_1 - a_1 - b_1, blog_i - a_i - b_i + b_{i-1}, ..., blog_n - a_n + b_{n-1}).
TridiagonalSystem build_normal_system(const MediCoefficients& coeffs);

enum class EnergyDomain { log_intensity, linear_intensity };

/// Multi-frame reconstruction state with the c-independent work (exposure
/// profiles, inter-frame counts, log frames) hoisted out of the c loop, so
/// energy evaluations during the c search stay cheap.
class MediProblem {
public:
    MediProblem(std::span<const FrameRecord> frames, const EventIndex& index, int threads = 1);

    int frame_count() const { return n_; }

    /// Coefficients for one pixel (mirrors assemble_coefficients).
    MediCoefficients coefficients(int x, int y, double c) const;

    /// Reconstructs latents for frames [first, first + count). Pixels with an
    /// empty event timeline keep their blurred value bit-exactly; c = 0
    /// returns the input frames bit-exactly (the degenerate model carries no
    /// information and must not mix frames).
    std::vector<LatentFrame> reconstruct(double c, SolveStats* stats = nullptr) const;
    std::vector<LatentFrame> reconstruct_range(int first, int count, double c,
                                               SolveStats* stats = nullptr) const;

    /// Residual energy sum over pixels and frames of (x_i + a_i - blog_i)^2
    /// (model-predicted vs observed blurred frame), linear domain compares
    /// exponentials instead. Always goes through the solver so the residual
    /// is meaningful for the c search; energy(0) uses J = 1.
    double energy(double c, EnergyDomain domain = EnergyDomain::log_intensity,
                  SolveStats* stats = nullptr) const;

private:
    void solve_pixel_range(int first, int count, std::size_t px, double c,
                           std::vector<double>& x, SolveStats* stats) const;

    int n_ = 0;
    int width_ = 0;
    int height_ = 0;
    int threads_ = 1;
    std::vector<double> centers_;            // f_i
    std::vector<ExposureProfile> profiles_;  // [px * n + i]
    std::vector<int> between_;               // [px * (n-1) + i]
    std::vector<double> blog_;               // [px * n + i]
    std::vector<double> blin_;               // [px * n + i]
    std::vector<std::uint8_t> empty_timeline_;
};

/// One-window mEDI: assemble, solve the normal equations, exponentiate.
std::vector<LatentFrame> medi_reconstruct(std::span<const FrameRecord> frames,
                                          const EventIndex& index, double c, int threads = 1,
                                          SolveStats* stats = nullptr);

double medi_energy(std::span<const FrameRecord> frames, const EventIndex& index, double c,
                   EnergyDomain domain = EnergyDomain::log_intensity, int threads = 1,
                   SolveStats* stats = nullptr);

/// Long sequences: a window of `window` frames slides by 1 and contributes
/// its center latent (edge frames come from the outermost windows).
std::vector<LatentFrame> medi_reconstruct_windowed(std::span<const FrameRecord> frames,
                                                   const EventIndex& index, double c,
                                                   int window = 5, int threads = 1,
                                                   SolveStats* stats = nullptr);

}  // namespace edikit
