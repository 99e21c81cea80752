#include "adawm/psychovisual.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace adawm {

void PsychovisualParams::validate() const {
    if (!(alpha >= 0.0) || !(beta >= 0.0)) throw std::invalid_argument("alpha and beta must be nonnegative");
    if (!(sf_min > 0.0) || !(sf_min <= sf_max)) throw std::invalid_argument("need 0 < sf_min <= sf_max");
    if (!(canny_sigma >= 0.0)) throw std::invalid_argument("canny_sigma must be nonnegative");
    if (!(canny_low >= 0.0) || !(canny_low < canny_high) || !(canny_high <= 1.0))
        throw std::invalid_argument("need 0 <= canny_low < canny_high <= 1");
}

std::size_t EdgeMap::count() const {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

namespace {

int mirror(int i, int n) {
    // Symmetric extension: ... 2 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - i - 1;
    }
    return i;
}

Plane gaussian_smooth(const Plane& src, double sigma) {
    if (sigma <= 0.0) return src;
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(2 * radius + 1);
    double total = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        total += kernel[i + radius];
    }
    for (double& k : kernel) k /= total;

    const int h = src.rows();
    const int w = src.cols();
    Plane tmp(h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double s = 0.0;
            for (int i = -radius; i <= radius; ++i) s += kernel[i + radius] * src(y, mirror(x + i, w));
            tmp(y, x) = s;
        }
    Plane out(h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double s = 0.0;
            for (int i = -radius; i <= radius; ++i) s += kernel[i + radius] * tmp(mirror(y + i, h), x);
            out(y, x) = s;
        }
    return out;
}

}  // namespace

EdgeMap canny_edges(const GrayImage& img, const PsychovisualParams& params) {
    params.validate();
    if (img.empty()) throw std::invalid_argument("canny_edges: empty image");
    const int w = img.width();
    const int h = img.height();
    EdgeMap edges{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, 0)};
    if (w < 3 || h < 3) return edges;

    const Plane smooth = gaussian_smooth(to_plane(img), params.canny_sigma);
    auto px = [&](int x, int y) { return smooth(std::clamp(y, 0, h - 1), std::clamp(x, 0, w - 1)); };

    Plane gx(h, w), gy(h, w), mag(h, w);
    double max_mag = 0.0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double dx = (px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2 * px(x - 1, y) + px(x - 1, y + 1));
            const double dy = (px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)) -
                              (px(x - 1, y - 1) + 2 * px(x, y - 1) + px(x + 1, y - 1));
            gx(y, x) = dx;
            gy(y, x) = dy;
            mag(y, x) = std::hypot(dx, dy);
            max_mag = std::max(max_mag, mag(y, x));
        }
    // Smoothed 8-bit input: anything this small is float noise on a flat image.
    if (max_mag < 1e-9) return edges;

    // Non-maximum suppression along the quantized gradient direction. Ties
    // resolve toward the lower-index neighbour so a symmetric ridge stays one pixel wide.
    Plane thin(h, w);
    for (int y = 1; y < h - 1; ++y)
        for (int x = 1; x < w - 1; ++x) {
            const double m = mag(y, x);
            if (m <= 0.0) continue;
            double angle = std::atan2(gy(y, x), gx(y, x)) * 180.0 / std::numbers::pi;
            if (angle < 0) angle += 180.0;
            int ox, oy;
            if (angle < 22.5 || angle >= 157.5) {
                ox = 1, oy = 0;
            } else if (angle < 67.5) {
                ox = 1, oy = 1;
            } else if (angle < 112.5) {
                ox = 0, oy = 1;
            } else {
                ox = -1, oy = 1;
            }
            const double behind = mag(y - oy, x - ox);
            const double ahead = mag(y + oy, x + ox);
            if (m > behind && m >= ahead) thin(y, x) = m;
        }

    const double high = params.canny_high * max_mag;
    const double low = params.canny_low * max_mag;
    std::vector<int> stack;
    for (int y = 1; y < h - 1; ++y)
        for (int x = 1; x < w - 1; ++x)
            if (thin(y, x) >= high && thin(y, x) > 0.0) {
                edges.bits[static_cast<std::size_t>(y) * w + x] = 1;
                stack.push_back(y * w + x);
            }
    while (!stack.empty()) {
        const int idx = stack.back();
        stack.pop_back();
        const int cx = idx % w;
        const int cy = idx / w;
        for (int ny = cy - 1; ny <= cy + 1; ++ny)
            for (int nx = cx - 1; nx <= cx + 1; ++nx) {
                if (nx <= 0 || ny <= 0 || nx >= w - 1 || ny >= h - 1) continue;
                auto& bit = edges.bits[static_cast<std::size_t>(ny) * w + nx];
                if (bit == 0 && thin(ny, nx) >= low && thin(ny, nx) > 0.0) {
                    bit = 1;
                    stack.push_back(ny * w + nx);
                }
            }
    }
    return edges;
}

std::vector<BlockStats> block_stats(const GrayImage& img, const EdgeMap& edges, const MacroBlockGrid& grid,
                                    const PsychovisualParams& params) {
    if (edges.width != img.width() || edges.height != img.height())
        throw std::invalid_argument("edge map dimensions do not match image");
    if (grid.blocks_x * kMacroBlockSize != img.width() || grid.blocks_y * kMacroBlockSize != img.height())
        throw std::invalid_argument("macro-block grid does not match image");
    constexpr double kArea = static_cast<double>(kMacroBlockSize) * kMacroBlockSize;

    std::vector<BlockStats> out;
    out.reserve(grid.count());
    for (int by = 0; by < grid.blocks_y; ++by)
        for (int bx = 0; bx < grid.blocks_x; ++bx) {
            std::size_t edge_pixels = 0;
            std::uint64_t brightness = 0;
            for (int y = by * kMacroBlockSize; y < (by + 1) * kMacroBlockSize; ++y)
                for (int x = bx * kMacroBlockSize; x < (bx + 1) * kMacroBlockSize; ++x) {
                    edge_pixels += edges.at(x, y);
                    brightness += img.at(x, y);
                }
            BlockStats s;
            s.edge_count = static_cast<double>(edge_pixels) / kArea;
            s.brightness_level = static_cast<double>(brightness) / (255.0 * kArea);
            s.sf = strength_factor(s, params);
            out.push_back(s);
        }
    return out;
}

double strength_factor(const BlockStats& stats, const PsychovisualParams& params) {
    const double raw = std::abs(params.alpha * stats.edge_count - params.beta * stats.brightness_level);
    return std::clamp(raw, params.sf_min, params.sf_max);
}

std::vector<double> adaptive_strength(const GrayImage& cover, const PsychovisualParams& params) {
    const MacroBlockGrid grid = grid_for(cover.width(), cover.height());
    const EdgeMap edges = canny_edges(cover, params);
    std::vector<double> sf;
    for (const BlockStats& s : block_stats(cover, edges, grid, params)) sf.push_back(s.sf);
    return sf;
}

}  // namespace adawm
