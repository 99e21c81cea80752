#include "adawm/attacks.hpp"

#include <cstdio>
#include <jpeglib.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <csetjmp>
#include <random>
#include <stdexcept>
#include <vector>

namespace adawm {

const char* to_string(AttackKind kind) noexcept {
    switch (kind) {
        case AttackKind::none: return "none";
        case AttackKind::median_filter: return "median_filter";
        case AttackKind::salt_pepper: return "salt_pepper";
        case AttackKind::gaussian_noise: return "gaussian_noise";
        case AttackKind::hist_equalize: return "hist_equalize";
        case AttackKind::jpeg: return "jpeg";
    }
    return "?";
}

AttackKind attack_kind_from_string(const std::string& name) {
    if (name == "none") return AttackKind::none;
    if (name == "median_filter" || name == "median" || name == "mf") return AttackKind::median_filter;
    if (name == "salt_pepper" || name == "saltpepper" || name == "sp") return AttackKind::salt_pepper;
    if (name == "gaussian_noise" || name == "gaussian" || name == "gn") return AttackKind::gaussian_noise;
    if (name == "hist_equalize" || name == "histeq" || name == "he") return AttackKind::hist_equalize;
    if (name == "jpeg") return AttackKind::jpeg;
    throw std::invalid_argument("unknown attack kind '" + name +
                                "' (expected none, median, salt_pepper, gaussian, histeq or jpeg)");
}

void AttackSpec::validate() const {
    switch (kind) {
        case AttackKind::median_filter:
            if (kernel < 3 || kernel % 2 == 0) throw std::invalid_argument("median kernel must be odd and >= 3");
            break;
        case AttackKind::salt_pepper:
            if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in [0, 1]");
            break;
        case AttackKind::gaussian_noise:
            if (!(variance >= 0.0) || !std::isfinite(variance))
                throw std::invalid_argument("variance must be finite and nonnegative");
            break;
        case AttackKind::jpeg:
            if (quality < 1 || quality > 100) throw std::invalid_argument("JPEG quality must lie in [1, 100]");
            break;
        case AttackKind::none:
        case AttackKind::hist_equalize: break;
    }
}

std::string AttackSpec::label() const {
    char buf[96];
    switch (kind) {
        case AttackKind::median_filter: std::snprintf(buf, sizeof buf, "median_filter(k=%d)", kernel); break;
        case AttackKind::salt_pepper: std::snprintf(buf, sizeof buf, "salt_pepper(d=%g)", density); break;
        case AttackKind::gaussian_noise: std::snprintf(buf, sizeof buf, "gaussian_noise(var=%g)", variance); break;
        case AttackKind::jpeg: std::snprintf(buf, sizeof buf, "jpeg(q=%d)", quality); break;
        default: return to_string(kind);
    }
    return buf;
}

GrayImage median_filter(const GrayImage& img, int kernel) {
    if (kernel < 3 || kernel % 2 == 0) throw std::invalid_argument("median kernel must be odd and >= 3");
    const int r = kernel / 2;
    const int w = img.width();
    const int h = img.height();
    GrayImage out(w, h);
    std::vector<std::uint8_t> window(static_cast<std::size_t>(kernel) * kernel);
    const auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::size_t n = 0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    window[n++] = img.at(std::clamp(x + dx, 0, w - 1), std::clamp(y + dy, 0, h - 1));
            std::nth_element(window.begin(), mid, window.end());
            out.at(x, y) = *mid;
        }
    return out;
}

GrayImage salt_pepper(const GrayImage& img, double density, std::uint64_t seed) {
    if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in [0, 1]");
    GrayImage out = img;
    if (density == 0.0) return out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> hit(0.0, 1.0);
    std::bernoulli_distribution salt(0.5);
    for (auto& p : out.pixels())
        if (hit(rng) < density) p = salt(rng) ? 255 : 0;
    return out;
}

GrayImage gaussian_noise(const GrayImage& img, double variance, std::uint64_t seed) {
    if (!(variance >= 0.0) || !std::isfinite(variance))
        throw std::invalid_argument("variance must be finite and nonnegative");
    GrayImage out = img;
    if (variance == 0.0) return out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, std::sqrt(variance));
    for (auto& p : out.pixels()) {
        const double v = (p / 255.0 + noise(rng)) * 255.0;
        p = static_cast<std::uint8_t>(std::clamp(std::nearbyint(v), 0.0, 255.0));
    }
    return out;
}

GrayImage hist_equalize(const GrayImage& img) {
    std::array<std::uint64_t, 256> hist{};
    for (auto p : img.pixels()) ++hist[p];
    std::array<std::uint8_t, 256> lut{};
    const double total = static_cast<double>(img.pixels().size());
    std::uint64_t running = 0;
    for (int level = 0; level < 256; ++level) {
        running += hist[level];
        lut[level] = static_cast<std::uint8_t>(std::nearbyint(255.0 * running / total));
    }
    GrayImage out = img;
    for (auto& p : out.pixels()) p = lut[p];
    return out;
}

namespace {

struct JpegError {
    jpeg_error_mgr mgr;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void on_jpeg_error(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegError*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

}  // namespace

GrayImage jpeg_attack(const GrayImage& img, int quality) {
    if (quality < 1 || quality > 100) throw std::invalid_argument("JPEG quality must lie in [1, 100]");
    if (img.empty()) throw std::invalid_argument("jpeg_attack: empty image");

    unsigned char* encoded = nullptr;
    unsigned long encoded_size = 0;
    {
        jpeg_compress_struct cinfo{};
        JpegError err{};
        cinfo.err = jpeg_std_error(&err.mgr);
        err.mgr.error_exit = on_jpeg_error;
        if (setjmp(err.jump)) {
            jpeg_destroy_compress(&cinfo);
            std::free(encoded);
            throw std::runtime_error(std::string("JPEG encode failed: ") + err.message);
        }
        jpeg_create_compress(&cinfo);
        jpeg_mem_dest(&cinfo, &encoded, &encoded_size);
        cinfo.image_width = static_cast<JDIMENSION>(img.width());
        cinfo.image_height = static_cast<JDIMENSION>(img.height());
        cinfo.input_components = 1;
        cinfo.in_color_space = JCS_GRAYSCALE;
        jpeg_set_defaults(&cinfo);
        jpeg_set_quality(&cinfo, quality, TRUE);
        jpeg_start_compress(&cinfo, TRUE);
        while (cinfo.next_scanline < cinfo.image_height) {
            auto* row = const_cast<JSAMPLE*>(img.pixels().data() +
                                             static_cast<std::size_t>(cinfo.next_scanline) * img.width());
            jpeg_write_scanlines(&cinfo, &row, 1);
        }
        jpeg_finish_compress(&cinfo);
        jpeg_destroy_compress(&cinfo);
    }

    GrayImage out(img.width(), img.height());
    {
        jpeg_decompress_struct dinfo{};
        JpegError err{};
        dinfo.err = jpeg_std_error(&err.mgr);
        err.mgr.error_exit = on_jpeg_error;
        if (setjmp(err.jump)) {
            jpeg_destroy_decompress(&dinfo);
            std::free(encoded);
            throw std::runtime_error(std::string("JPEG decode failed: ") + err.message);
        }
        jpeg_create_decompress(&dinfo);
        jpeg_mem_src(&dinfo, encoded, encoded_size);
        jpeg_read_header(&dinfo, TRUE);
        dinfo.out_color_space = JCS_GRAYSCALE;
        jpeg_start_decompress(&dinfo);
        if (static_cast<int>(dinfo.output_width) != img.width() ||
            static_cast<int>(dinfo.output_height) != img.height() || dinfo.output_components != 1) {
            jpeg_destroy_decompress(&dinfo);
            std::free(encoded);
            throw std::runtime_error("JPEG round trip changed image geometry");
        }
        while (dinfo.output_scanline < dinfo.output_height) {
            JSAMPLE* row = out.pixels().data() + static_cast<std::size_t>(dinfo.output_scanline) * img.width();
            jpeg_read_scanlines(&dinfo, &row, 1);
        }
        jpeg_finish_decompress(&dinfo);
        jpeg_destroy_decompress(&dinfo);
    }
    std::free(encoded);
    return out;
}

GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case AttackKind::none: return img;
        case AttackKind::median_filter: return median_filter(img, spec.kernel);
        case AttackKind::salt_pepper: return salt_pepper(img, spec.density, spec.seed);
        case AttackKind::gaussian_noise: return gaussian_noise(img, spec.variance, spec.seed);
        case AttackKind::hist_equalize: return hist_equalize(img);
        case AttackKind::jpeg: return jpeg_attack(img, spec.quality);
    }
    throw std::invalid_argument("unknown attack kind");
}

}  // namespace adawm
