#include "edikit/image_ops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace edikit {

std::size_t EdgeMap::count() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

namespace {

void require_same_shape(int wa, int ha, int wb, int hb, const char* op) {
    if (wa != wb || ha != hb)
        throw ValidationError(std::string(op) + ": dimension mismatch");
}

// Otsu's threshold over a 256-bin histogram: maximize the between-class
// variance; the first maximizing bin wins so results are deterministic.
int otsu_threshold(const std::array<std::size_t, 256>& hist, std::size_t total) {
    double weighted_sum = 0.0;
    for (int i = 0; i < 256; ++i) weighted_sum += static_cast<double>(i) * hist[i];

    double best = -1.0;
    int best_bin = 0;
    double w0 = 0.0, sum0 = 0.0;
    for (int t = 0; t < 256; ++t) {
        w0 += static_cast<double>(hist[t]);
        if (w0 == 0.0) continue;
        const double w1 = static_cast<double>(total) - w0;
        if (w1 == 0.0) break;
        sum0 += static_cast<double>(t) * hist[t];
        const double mu0 = sum0 / w0;
        const double mu1 = (weighted_sum - sum0) / w1;
        const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (between > best) {
            best = between;
            best_bin = t;
        }
    }
    return best_bin;
}

}  // namespace

EdgeMap binarize_magnitude(const ImageBuffer& magnitude) {
    EdgeMap edges{magnitude.width(), magnitude.height(), {}};
    edges.mask.assign(magnitude.size(), 0);

    double maxval = 0.0;
    for (double v : magnitude.data()) maxval = std::max(maxval, v);
    if (maxval <= 0.0) return edges;  // flat magnitude, nothing to mark

    std::vector<int> bins(magnitude.size());
    std::array<std::size_t, 256> hist{};
    for (std::size_t i = 0; i < magnitude.size(); ++i) {
        bins[i] = std::min(255, static_cast<int>(magnitude[i] * 256.0 / maxval));
        ++hist[bins[i]];
    }
    const int threshold = otsu_threshold(hist, magnitude.size());
    for (std::size_t i = 0; i < magnitude.size(); ++i)
        edges.mask[i] = bins[i] > threshold ? 1 : 0;
    return edges;
}

EdgeMap sobel_edges(const ImageBuffer& img) {
    const int w = img.width();
    const int h = img.height();
    if (w < 3 || h < 3) throw ValidationError("sobel_edges: image smaller than the 3x3 kernel");

    ImageBuffer magnitude(w, h, img.domain());
    auto clampx = [w](int x) { return std::clamp(x, 0, w - 1); };
    auto clampy = [h](int y) { return std::clamp(y, 0, h - 1); };
    // Separable difference form: each term is a plain difference, so flat
    // regions yield an exact zero gradient.
    static constexpr double kWeight[3] = {1.0, 2.0, 1.0};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double gx = 0.0, gy = 0.0;
            for (int k = -1; k <= 1; ++k) {
                gx += kWeight[k + 1] *
                      (img.at(clampx(x + 1), clampy(y + k)) -
                       img.at(clampx(x - 1), clampy(y + k)));
                gy += kWeight[k + 1] *
                      (img.at(clampx(x + k), clampy(y + 1)) -
                       img.at(clampx(x + k), clampy(y - 1)));
            }
            magnitude.at(x, y) = std::hypot(gx, gy);
        }
    }
    return binarize_magnitude(magnitude);
}

double total_variation(const ImageBuffer& img) {
    const int w = img.width();
    const int h = img.height();
    double tv = 0.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double v = img.at(x, y);
            if (x + 1 < w) tv += std::abs(img.at(x + 1, y) - v);
            if (y + 1 < h) tv += std::abs(img.at(x, y + 1) - v);
        }
    }
    return tv;
}

long long cross_correlation_score(const EdgeMap& a, const EdgeMap& b) {
    require_same_shape(a.width, a.height, b.width, b.height, "cross_correlation_score");
    long long score = 0;
    for (std::size_t i = 0; i < a.mask.size(); ++i) score += a.mask[i] & b.mask[i];
    return score;
}

double psnr(const ImageBuffer& a, const ImageBuffer& b) {
    require_same_shape(a.width(), a.height(), b.width(), b.height(), "psnr");
    double sse = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sse += d * d;
    }
    if (sse == 0.0) return std::numeric_limits<double>::infinity();
    const double mse = sse / static_cast<double>(a.size());
    return 10.0 * std::log10(1.0 / mse);
}

double ssim(const ImageBuffer& a, const ImageBuffer& b) {
    require_same_shape(a.width(), a.height(), b.width(), b.height(), "ssim");
    constexpr int kWindow = 8;
    constexpr double kC1 = 0.01 * 0.01;
    constexpr double kC2 = 0.03 * 0.03;
    const int w = a.width();
    const int h = a.height();
    if (w < kWindow || h < kWindow)
        throw ValidationError("ssim: image smaller than the 8x8 window");

    double acc = 0.0;
    std::size_t windows = 0;
    for (int y0 = 0; y0 + kWindow <= h; ++y0) {
        for (int x0 = 0; x0 + kWindow <= w; ++x0) {
            double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
            for (int y = y0; y < y0 + kWindow; ++y) {
                for (int x = x0; x < x0 + kWindow; ++x) {
                    const double va = a.at(x, y);
                    const double vb = b.at(x, y);
                    sa += va;
                    sb += vb;
                    saa += va * va;
                    sbb += vb * vb;
                    sab += va * vb;
                }
            }
            constexpr double n = kWindow * kWindow;
            const double mu_a = sa / n;
            const double mu_b = sb / n;
            const double var_a = saa / n - mu_a * mu_a;
            const double var_b = sbb / n - mu_b * mu_b;
            const double cov = sab / n - mu_a * mu_b;
            acc += ((2.0 * mu_a * mu_b + kC1) * (2.0 * cov + kC2)) /
                   ((mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2));
            ++windows;
        }
    }
    return acc / static_cast<double>(windows);
}

}  // namespace edikit
