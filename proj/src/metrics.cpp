#include "adawm/metrics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace adawm {

namespace {

void require_same_shape(const GrayImage& a, const GrayImage& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw std::invalid_argument("images differ in size: " + std::to_string(a.width()) + "x" +
                                    std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                                    std::to_string(b.height()));
    if (a.empty()) throw std::invalid_argument("empty image");
}

}  // namespace

double psnr(const GrayImage& a, const GrayImage& b) {
    require_same_shape(a, b);
    const auto pa = a.pixels();
    const auto pb = b.pixels();
    double sse = 0.0;
    for (std::size_t i = 0; i < pa.size(); ++i) {
        const double d = static_cast<double>(pa[i]) - pb[i];
        sse += d * d;
    }
    if (sse == 0.0) return kPsnrCap;
    const double mse = sse / static_cast<double>(pa.size());
    return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

double ssim(const GrayImage& a, const GrayImage& b) {
    require_same_shape(a, b);
    constexpr int kWin = 11;
    constexpr double kSigma = 1.5;
    if (a.width() < kWin || a.height() < kWin) throw std::invalid_argument("SSIM needs images of at least 11x11");

    std::array<double, kWin> g{};
    double total = 0.0;
    for (int i = 0; i < kWin; ++i) {
        const double d = i - kWin / 2;
        g[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
        total += g[i];
    }
    for (double& v : g) v /= total;

    const int w = a.width();
    const int h = a.height();
    const int ow = w - kWin + 1;
    // Separable filtering of x, y, x^2, y^2, xy; horizontal pass first.
    std::array<Plane, 5> horiz{Plane(h, ow), Plane(h, ow), Plane(h, ow), Plane(h, ow), Plane(h, ow)};
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < ow; ++x) {
            double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
            for (int k = 0; k < kWin; ++k) {
                const double vx = a.at(x + k, y);
                const double vy = b.at(x + k, y);
                sx += g[k] * vx;
                sy += g[k] * vy;
                sxx += g[k] * vx * vx;
                syy += g[k] * vy * vy;
                sxy += g[k] * vx * vy;
            }
            horiz[0](y, x) = sx;
            horiz[1](y, x) = sy;
            horiz[2](y, x) = sxx;
            horiz[3](y, x) = syy;
            horiz[4](y, x) = sxy;
        }

    const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
    const double c2 = (0.03 * 255.0) * (0.03 * 255.0);
    const int oh = h - kWin + 1;
    double sum = 0.0;
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) {
            std::array<double, 5> m{};
            for (int k = 0; k < kWin; ++k)
                for (int c = 0; c < 5; ++c) m[c] += g[k] * horiz[c](y + k, x);
            const double mx = m[0], my = m[1];
            const double vx = m[2] - mx * mx;
            const double vy = m[3] - my * my;
            const double cov = m[4] - mx * my;
            sum += ((2 * mx * my + c1) * (2 * cov + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
        }
    return sum / (static_cast<double>(ow) * oh);
}

double nc(const Payload& w, const Payload& w_prime) {
    double cross = 0.0, ew = 0.0, ewp = 0.0;
    for (int i = 0; i < kPayloadBits; ++i) {
        cross += w.bit(i) * w_prime.bit(i);
        ew += w.bit(i);
        ewp += w_prime.bit(i);
    }
    if (ew == 0.0 && ewp == 0.0) return 1.0;
    if (ew == 0.0 || ewp == 0.0) return 0.0;
    return cross / std::sqrt(ew * ewp);
}

double ber(const Payload& w, const Payload& w_prime) {
    int mismatched = 0;
    for (int i = 0; i < kPayloadBits; ++i) mismatched += w.bit(i) != w_prime.bit(i);
    return static_cast<double>(mismatched) / kPayloadBits;
}

}  // namespace adawm
