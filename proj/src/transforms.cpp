#include "adawm/transforms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace adawm {

const char* to_string(Subband band) noexcept {
    switch (band) {
        case Subband::LL2: return "LL2";
        case Subband::LH2: return "LH2";
        case Subband::HL2: return "HL2";
        case Subband::HH2: return "HH2";
        case Subband::LH1: return "LH1";
        case Subband::HL1: return "HL1";
        case Subband::HH1: return "HH1";
    }
    return "?";
}

Plane& SubbandSet::band(Subband b) {
    return const_cast<Plane&>(static_cast<const SubbandSet&>(*this).band(b));
}

const Plane& SubbandSet::band(Subband b) const {
    switch (b) {
        case Subband::LL2: return ll2;
        case Subband::LH2: return lh2;
        case Subband::HL2: return hl2;
        case Subband::HH2: return hh2;
        case Subband::LH1: return lh1;
        case Subband::HL1: return hl1;
        case Subband::HH1: return hh1;
    }
    throw std::invalid_argument("unknown subband");
}

HaarLevel haar2(const Plane& src) {
    if (src.rows() < 2 || src.cols() < 2 || src.rows() % 2 != 0 || src.cols() % 2 != 0)
        throw std::invalid_argument("Haar level needs even, non-zero dimensions");
    const int h = src.rows() / 2;
    const int w = src.cols() / 2;
    HaarLevel out{Plane(h, w), Plane(h, w), Plane(h, w), Plane(h, w)};
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double a = src(2 * r, 2 * c);
            const double b = src(2 * r, 2 * c + 1);
            const double d = src(2 * r + 1, 2 * c);
            const double e = src(2 * r + 1, 2 * c + 1);
            // Separable (x0 +- x1)/sqrt2 along rows then columns gives a factor of 1/2.
            out.ll(r, c) = 0.5 * (a + b + d + e);
            out.lh(r, c) = 0.5 * (a + b - d - e);
            out.hl(r, c) = 0.5 * (a - b + d - e);
            out.hh(r, c) = 0.5 * (a - b - d + e);
        }
    }
    return out;
}

Plane ihaar2(const HaarLevel& level) {
    const int h = level.ll.rows();
    const int w = level.ll.cols();
    for (const Plane* p : {&level.lh, &level.hl, &level.hh})
        if (p->rows() != h || p->cols() != w) throw std::invalid_argument("Haar subband shape mismatch");
    Plane out(2 * h, 2 * w);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double ll = level.ll(r, c);
            const double lh = level.lh(r, c);
            const double hl = level.hl(r, c);
            const double hh = level.hh(r, c);
            out(2 * r, 2 * c) = 0.5 * (ll + lh + hl + hh);
            out(2 * r, 2 * c + 1) = 0.5 * (ll + lh - hl - hh);
            out(2 * r + 1, 2 * c) = 0.5 * (ll - lh + hl - hh);
            out(2 * r + 1, 2 * c + 1) = 0.5 * (ll - lh - hl + hh);
        }
    }
    return out;
}

SubbandSet dwt2_two_level(const Plane& block) {
    if (block.rows() != kMacroBlockSize || block.cols() != kMacroBlockSize)
        throw std::invalid_argument("two-level DWT expects a 128x128 block");
    HaarLevel first = haar2(block);
    HaarLevel second = haar2(first.ll);
    return SubbandSet{std::move(second.ll), std::move(second.lh), std::move(second.hl), std::move(second.hh),
                      std::move(first.lh),  std::move(first.hl),  std::move(first.hh)};
}

Plane idwt2_two_level(const SubbandSet& bands) {
    constexpr int kL2 = kMacroBlockSize / 4;
    constexpr int kL1 = kMacroBlockSize / 2;
    for (const Plane* p : {&bands.ll2, &bands.lh2, &bands.hl2, &bands.hh2})
        if (p->rows() != kL2 || p->cols() != kL2) throw std::invalid_argument("level-2 subbands must be 32x32");
    for (const Plane* p : {&bands.lh1, &bands.hl1, &bands.hh1})
        if (p->rows() != kL1 || p->cols() != kL1) throw std::invalid_argument("level-1 subbands must be 64x64");
    Plane ll1 = ihaar2({bands.ll2, bands.lh2, bands.hl2, bands.hh2});
    return ihaar2({std::move(ll1), bands.lh1, bands.hl1, bands.hh1});
}

namespace {

struct DctBasis {
    // basis[k][n] = a(k) cos((2n+1) k pi / 16)
    std::array<std::array<double, 8>, 8> m{};
    DctBasis() {
        for (int k = 0; k < 8; ++k) {
            const double scale = k == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            for (int n = 0; n < 8; ++n)
                m[k][n] = scale * std::cos((2 * n + 1) * k * std::numbers::pi / 16.0);
        }
    }
};

const DctBasis& basis() {
    static const DctBasis b;
    return b;
}

}  // namespace

DctBlock dct_8x8(const DctBlock& x) {
    const auto& c = basis().m;
    DctBlock tmp{};
    // tmp = C * X
    for (int k = 0; k < 8; ++k)
        for (int j = 0; j < 8; ++j) {
            double s = 0.0;
            for (int n = 0; n < 8; ++n) s += c[k][n] * x[n][j];
            tmp[k][j] = s;
        }
    DctBlock out{};
    // out = tmp * C^T
    for (int v = 0; v < 8; ++v)
        for (int u = 0; u < 8; ++u) {
            double s = 0.0;
            for (int n = 0; n < 8; ++n) s += tmp[v][n] * c[u][n];
            out[v][u] = s;
        }
    return out;
}

DctBlock idct_8x8(const DctBlock& y) {
    const auto& c = basis().m;
    DctBlock tmp{};
    // tmp = C^T * Y
    for (int n = 0; n < 8; ++n)
        for (int u = 0; u < 8; ++u) {
            double s = 0.0;
            for (int k = 0; k < 8; ++k) s += c[k][n] * y[k][u];
            tmp[n][u] = s;
        }
    DctBlock out{};
    // out = tmp * C
    for (int r = 0; r < 8; ++r)
        for (int m = 0; m < 8; ++m) {
            double s = 0.0;
            for (int u = 0; u < 8; ++u) s += tmp[r][u] * c[u][m];
            out[r][m] = s;
        }
    return out;
}

DctBlock read_block(const Plane& plane, int row0, int col0) {
    if (row0 < 0 || col0 < 0 || row0 + 8 > plane.rows() || col0 + 8 > plane.cols())
        throw std::out_of_range("8x8 block outside plane");
    DctBlock b{};
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) b[r][c] = plane(row0 + r, col0 + c);
    return b;
}

void write_block(Plane& plane, int row0, int col0, const DctBlock& block) {
    if (row0 < 0 || col0 < 0 || row0 + 8 > plane.rows() || col0 + 8 > plane.cols())
        throw std::out_of_range("8x8 block outside plane");
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) plane(row0 + r, col0 + c) = block[r][c];
}

}  // namespace adawm
