#include "adawm/image.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace adawm {

namespace fs = std::filesystem;

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("image dimensions must be positive");
    pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("image dimensions must be positive");
    if (pixels_.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("pixel count does not match width x height");
}

MacroBlockGrid grid_for(int width, int height) {
    if (width <= 0 || height <= 0 || width % kMacroBlockSize != 0 || height % kMacroBlockSize != 0) {
        throw std::invalid_argument("image is " + std::to_string(width) + "x" + std::to_string(height) +
                                    "; both dimensions must be multiples of 128");
    }
    return {width / kMacroBlockSize, height / kMacroBlockSize};
}

Partition partition(const GrayImage& img) {
    Partition out;
    out.grid = grid_for(img.width(), img.height());
    out.blocks.reserve(out.grid.count());
    for (int by = 0; by < out.grid.blocks_y; ++by) {
        for (int bx = 0; bx < out.grid.blocks_x; ++bx) {
            GrayImage block(kMacroBlockSize, kMacroBlockSize);
            for (int y = 0; y < kMacroBlockSize; ++y) {
                const auto* src = img.pixels().data() +
                                  static_cast<std::size_t>(by * kMacroBlockSize + y) * img.width() +
                                  bx * kMacroBlockSize;
                std::copy_n(src, kMacroBlockSize, block.pixels().data() + y * kMacroBlockSize);
            }
            out.blocks.push_back(std::move(block));
        }
    }
    return out;
}

GrayImage reassemble(std::span<const GrayImage> blocks, const MacroBlockGrid& grid) {
    if (grid.blocks_x <= 0 || grid.blocks_y <= 0)
        throw std::invalid_argument("empty macro-block grid");
    if (blocks.size() != static_cast<std::size_t>(grid.count()))
        throw std::invalid_argument("block count " + std::to_string(blocks.size()) +
                                    " does not match grid of " + std::to_string(grid.count()));
    GrayImage img(grid.blocks_x * kMacroBlockSize, grid.blocks_y * kMacroBlockSize);
    for (int i = 0; i < grid.count(); ++i) {
        const GrayImage& block = blocks[i];
        if (block.width() != kMacroBlockSize || block.height() != kMacroBlockSize)
            throw std::invalid_argument("macro-block must be 128x128");
        const int bx = i % grid.blocks_x;
        const int by = i / grid.blocks_x;
        for (int y = 0; y < kMacroBlockSize; ++y) {
            auto* dst = img.pixels().data() +
                        static_cast<std::size_t>(by * kMacroBlockSize + y) * img.width() +
                        bx * kMacroBlockSize;
            std::copy_n(block.pixels().data() + y * kMacroBlockSize, kMacroBlockSize, dst);
        }
    }
    return img;
}

Plane to_plane(const GrayImage& img, int x0, int y0, int width, int height) {
    if (x0 < 0 || y0 < 0 || x0 + width > img.width() || y0 + height > img.height())
        throw std::out_of_range("plane window outside image");
    Plane p(height, width);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) p(y, x) = img.at(x0 + x, y0 + y);
    return p;
}

Plane to_plane(const GrayImage& img) { return to_plane(img, 0, 0, img.width(), img.height()); }

GrayImage quantize(const Plane& plane) {
    GrayImage img(plane.cols(), plane.rows());
    auto dst = img.pixels();
    auto src = plane.data();
    for (std::size_t i = 0; i < src.size(); ++i)
        dst[i] = static_cast<std::uint8_t>(std::clamp(std::nearbyint(src[i]), 0.0, 255.0));
    return img;
}

namespace {

std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    return static_cast<std::uint8_t>(std::clamp(std::nearbyint(y), 0.0, 255.0));
}

// Reads the next whitespace-delimited token from a PNM header, skipping comments.
std::string pnm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            if (!tok.empty()) break;
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw std::runtime_error("truncated PGM header");
    return tok;
}

int pnm_int(std::istream& in) {
    const std::string tok = pnm_token(in);
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("malformed PGM header value '" + tok + "'");
    }
}

GrayImage load_pgm(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    const std::string magic = pnm_token(in);
    const bool binary = magic == "P5";
    if (!binary && magic != "P2") throw std::runtime_error("unsupported PNM variant " + magic);
    const int width = pnm_int(in);
    const int height = pnm_int(in);
    const int maxval = pnm_int(in);
    if (width <= 0 || height <= 0) throw std::runtime_error("zero-size image in " + path.string());
    if (maxval <= 0 || maxval > 65535) throw std::runtime_error("invalid PGM maxval");

    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> px(n);
    auto store = [&](std::size_t i, int v) {
        if (v < 0 || v > maxval) throw std::runtime_error("PGM sample out of range");
        px[i] = maxval == 255 ? static_cast<std::uint8_t>(v)
                              : static_cast<std::uint8_t>(std::nearbyint(255.0 * v / maxval));
    };
    if (binary) {
        const std::size_t bytes_per = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> raw(n * bytes_per);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (static_cast<std::size_t>(in.gcount()) != raw.size())
            throw std::runtime_error("truncated PGM pixel data in " + path.string());
        for (std::size_t i = 0; i < n; ++i)
            store(i, bytes_per == 2 ? (raw[2 * i] << 8) | raw[2 * i + 1] : raw[i]);
    } else {
        for (std::size_t i = 0; i < n; ++i) store(i, pnm_int(in));
    }
    return GrayImage(width, height, std::move(px));
}

GrayImage load_png(const fs::path& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.string().c_str()))
        throw std::runtime_error("cannot read PNG " + path.string() + ": " + image.message);

    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    const bool alpha = (image.format & PNG_FORMAT_FLAG_ALPHA) != 0;
    // Alpha is carried through and then dropped; no compositing.
    image.format = color ? (alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB) : (alpha ? PNG_FORMAT_GA : PNG_FORMAT_GRAY);
    const int width = static_cast<int>(image.width);
    const int height = static_cast<int>(image.height);
    if (width <= 0 || height <= 0) {
        png_image_free(&image);
        throw std::runtime_error("zero-size image in " + path.string());
    }
    std::vector<png_byte> buf(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw std::runtime_error("cannot decode PNG " + path.string() + ": " + msg);
    }

    const int channels = PNG_IMAGE_SAMPLE_CHANNELS(image.format);
    std::vector<std::uint8_t> px(static_cast<std::size_t>(width) * height);
    for (std::size_t i = 0; i < px.size(); ++i) {
        const png_byte* s = buf.data() + i * channels;
        px[i] = color ? luma601(s[0], s[1], s[2]) : s[0];
    }
    return GrayImage(width, height, std::move(px));
}

void write_pgm(const GrayImage& img, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels().data()), static_cast<std::streamsize>(img.pixels().size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_png(const GrayImage& img, const fs::path& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, img.pixels().data(), 0, nullptr))
        throw std::runtime_error("cannot write PNG " + path.string() + ": " + image.message);
}

std::string lower_ext(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

}  // namespace

GrayImage load_image(const fs::path& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw std::runtime_error("cannot open " + path.string());
    std::array<unsigned char, 8> magic{};
    probe.read(reinterpret_cast<char*>(magic.data()), magic.size());
    const auto got = probe.gcount();
    probe.close();
    if (got >= 8 && png_sig_cmp(magic.data(), 0, 8) == 0) return load_png(path);
    if (got >= 2 && magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) return load_pgm(path);
    if (got == 0) throw std::runtime_error("empty file " + path.string());
    throw std::runtime_error("unsupported image format: " + path.string());
}

void save_image(const GrayImage& img, const fs::path& path) {
    if (img.empty()) throw std::invalid_argument("cannot save an empty image");
    const std::string ext = lower_ext(path);
    const bool png = ext == ".png";
    if (!png && ext != ".pgm" && ext != ".pnm")
        throw std::invalid_argument("unsupported output format '" + ext + "' (use .png or .pgm)");

    // Write beside the target and rename so a failure never leaves a partial file.
    fs::path tmp = path;
    tmp += ".partial";
    try {
        if (png)
            write_png(img, tmp);
        else
            write_pgm(img, tmp);
        fs::rename(tmp, path);
    } catch (...) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw;
    }
}

}  // namespace adawm
