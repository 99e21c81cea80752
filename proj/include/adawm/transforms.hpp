#pragma once

#include <array>

#include "adawm/image.hpp"

namespace adawm {

enum class Subband { LL2, LH2, HL2, HH2, LH1, HL1, HH1 };

const char* to_string(Subband band) noexcept;

// Naming: first letter is the filter applied along rows (horizontal),
// second along columns. LH therefore responds to horizontal edges.
struct SubbandSet {
    Plane ll2, lh2, hl2, hh2;  // 32x32 for a 128x128 source
    Plane lh1, hl1, hh1;       // 64x64

    Plane& band(Subband b);
    const Plane& band(Subband b) const;
};

/// One level of the orthonormal 2-D Haar transform. Input sides must be even.
struct HaarLevel {
    Plane ll, lh, hl, hh;
};
HaarLevel haar2(const Plane& src);
Plane ihaar2(const HaarLevel& level);

/// Two-level orthonormal Haar DWT of a 128x128 macro-block.
SubbandSet dwt2_two_level(const Plane& block);
Plane idwt2_two_level(const SubbandSet& bands);

/// 8x8 coefficient block, indexed [row v][column u], zero-based.
using DctBlock = std::array<std::array<double, 8>, 8>;

/// Orthonormal 2-D DCT-II; DC of a constant block c is 8c.
DctBlock dct_8x8(const DctBlock& spatial);
DctBlock idct_8x8(const DctBlock& coeffs);

DctBlock read_block(const Plane& plane, int row0, int col0);
void write_block(Plane& plane, int row0, int col0, const DctBlock& block);

}  // namespace adawm
