#pragma once

#include <cstdint>
#include <vector>

#include "adawm/image.hpp"

namespace adawm {

struct PsychovisualParams {
    double alpha = 0.5;
    double beta = 0.25;
    double sf_min = 0.01;
    double sf_max = 0.12;
    double canny_sigma = 1.4;
    // Hysteresis thresholds as fractions of the maximum gradient magnitude.
    double canny_low = 0.1;
    double canny_high = 0.2;

    /// Throws std::invalid_argument when any field is out of range.
    void validate() const;
};

/// Binary map, 1 marks an edge pixel.
struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    std::uint8_t at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x]; }
    std::size_t count() const;
};

struct BlockStats {
    double edge_count = 0.0;        // edge pixels / block area
    double brightness_level = 0.0;  // pixel sum / (255 * block area)
    double sf = 0.0;
};

/// Gaussian smoothing, Sobel gradient, non-maximum suppression, hysteresis.
EdgeMap canny_edges(const GrayImage& img, const PsychovisualParams& params);

std::vector<BlockStats> block_stats(const GrayImage& img, const EdgeMap& edges, const MacroBlockGrid& grid,
                                    const PsychovisualParams& params);

/// clamp(|alpha * edge_count - beta * brightness_level|, sf_min, sf_max)
double strength_factor(const BlockStats& stats, const PsychovisualParams& params);

/// Per macro-block strength factors of a cover image, raster order.
std::vector<double> adaptive_strength(const GrayImage& cover, const PsychovisualParams& params);

}  // namespace adawm
