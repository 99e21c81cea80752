#include "adawm/fixtures.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace adawm {

std::vector<NamedImage> synthetic_fixtures() {
    constexpr int kSide = 512;
    std::vector<NamedImage> out;

    GrayImage gradient(kSide, kSide);
    for (int y = 0; y < kSide; ++y)
        for (int x = 0; x < kSide; ++x) gradient.at(x, y) = static_cast<std::uint8_t>(16 + (x + y) * 223 / 1022);
    out.push_back({"gradient", std::move(gradient)});

    // 16-pixel squares kept away from 0/255 so embedding is not clipped.
    GrayImage checker(kSide, kSide);
    for (int y = 0; y < kSide; ++y)
        for (int x = 0; x < kSide; ++x) checker.at(x, y) = ((x / 16 + y / 16) % 2) ? 192 : 64;
    out.push_back({"checkerboard", std::move(checker)});

    GrayImage noise(kSide, kSide);
    std::mt19937 rng(20240521u);
    std::uniform_int_distribution<int> level(32, 223);
    for (auto& p : noise.pixels()) p = static_cast<std::uint8_t>(level(rng));
    out.push_back({"noise", std::move(noise)});

    GrayImage rings(kSide, kSide);
    for (int y = 0; y < kSide; ++y)
        for (int x = 0; x < kSide; ++x) {
            const double r = std::hypot(x - 255.5, y - 255.5);
            rings.at(x, y) = static_cast<std::uint8_t>(std::lround(128.0 + 80.0 * std::sin(r / 6.0)));
        }
    out.push_back({"rings", std::move(rings)});
    return out;
}

}  // namespace adawm
