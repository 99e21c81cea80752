#pragma once

#include <string>
#include <vector>

#include "adawm/image.hpp"

namespace adawm {

struct NamedImage {
    std::string name;
    GrayImage image;
};

/// Deterministic 512x512 test covers: gradient, checkerboard, seeded noise, rings.
std::vector<NamedImage> synthetic_fixtures();

}  // namespace adawm
