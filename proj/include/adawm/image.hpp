#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace adawm {

/// 8-bit single-channel raster, row-major.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, std::uint8_t fill = 0);
    GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return pixels_.empty(); }

    std::uint8_t at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
    std::uint8_t& at(int x, int y) { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }

    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
    std::span<std::uint8_t> pixels() noexcept { return pixels_; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

/// Dense real-valued matrix used for transform-domain work.
class Plane {
public:
    Plane() = default;
    Plane(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    friend bool operator==(const Plane&, const Plane&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

inline constexpr int kMacroBlockSize = 128;

/// Tiling of an image into 128x128 macro-blocks, raster order.
struct MacroBlockGrid {
    int blocks_x = 0;
    int blocks_y = 0;

    int count() const noexcept { return blocks_x * blocks_y; }
    friend bool operator==(const MacroBlockGrid&, const MacroBlockGrid&) = default;
};

/// Throws std::invalid_argument unless both dimensions are positive multiples of 128.
MacroBlockGrid grid_for(int width, int height);

struct Partition {
    std::vector<GrayImage> blocks;
    MacroBlockGrid grid;
};

Partition partition(const GrayImage& img);
GrayImage reassemble(std::span<const GrayImage> blocks, const MacroBlockGrid& grid);

/// Copies a rectangle of the image into a real plane.
Plane to_plane(const GrayImage& img, int x0, int y0, int width, int height);
Plane to_plane(const GrayImage& img);

/// Rounds to nearest and clamps to [0, 255].
GrayImage quantize(const Plane& plane);

// PGM (P2/P5) and PNG. Colour PNGs are reduced to BT.601 luma.
GrayImage load_image(const std::filesystem::path& path);
void save_image(const GrayImage& img, const std::filesystem::path& path);

}  // namespace adawm
