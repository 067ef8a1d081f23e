#pragma once

#include <cstdint>
#include <vector>

#include "edikit/image.hpp"

namespace edikit {

/// Binary mask; values are exactly 0 or 1.
struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;

    std::uint8_t at(int x, int y) const { return mask[static_cast<std::size_t>(y) * width + x]; }
    std::size_t count() const;
};

/// 3x3 Sobel gradient magnitude (replicate-padded borders), binarized by
/// Otsu's threshold over a 256-bin magnitude histogram. Needs >= 3x3 input.
EdgeMap sobel_edges(const ImageBuffer& img);

/// Otsu binarization of a non-negative magnitude image (256 bins over
/// [0, max]); an all-zero image yields an empty mask. Shared by sobel_edges
/// and the event edge-signal path.
EdgeMap binarize_magnitude(const ImageBuffer& magnitude);

/// Anisotropic total variation: sum of |forward difference| in x and y, with
/// zero difference past the last row/column.
double total_variation(const ImageBuffer& img);

/// Number of pixels set in both masks; symmetric. Throws on size mismatch.
long long cross_correlation_score(const EdgeMap& a, const EdgeMap& b);

/// 10*log10(1/MSE) for unit dynamic range. Identical images report +infinity
/// as the distinguished "identical" value.
double psnr(const ImageBuffer& a, const ImageBuffer& b);

/// Mean SSIM over all 8x8 sliding windows, stabilizing constants
/// C1 = 0.01^2, C2 = 0.03^2 for unit dynamic range. ssim(a, a) == 1.
double ssim(const ImageBuffer& a, const ImageBuffer& b);

}  // namespace edikit
