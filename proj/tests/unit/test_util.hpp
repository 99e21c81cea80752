#pragma once

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <random>
#include <string>

#include "adawm/image.hpp"

namespace adawm::testing {

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("adawm-test-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline GrayImage random_image(int w, int h, std::uint32_t seed, int lo = 0, int hi = 255) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> level(lo, hi);
    GrayImage img(w, h);
    for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(level(rng));
    return img;
}

// Looks for <name>.png / .pgm under $ADAWM_CLASSIC_DIR.
inline std::optional<std::filesystem::path> classic_image(const std::string& name) {
    const char* dir = std::getenv("ADAWM_CLASSIC_DIR");
    if (!dir || !*dir) return std::nullopt;
    for (const char* ext : {".png", ".pgm"}) {
        const std::filesystem::path p = std::filesystem::path(dir) / (name + ext);
        if (std::filesystem::exists(p)) return p;
    }
    return std::nullopt;
}

}  // namespace adawm::testing
