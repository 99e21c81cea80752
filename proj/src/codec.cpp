#include "adawm/codec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace adawm {

// ---------------------------------------------------------------------------
// Payload

Payload::Payload(std::span<const std::uint8_t> bits) {
    if (bits.size() != kPayloadBits)
        throw std::invalid_argument("payload must be 256 bits, got " + std::to_string(bits.size()));
    for (int i = 0; i < kPayloadBits; ++i) {
        if (bits[i] > 1) throw std::invalid_argument("payload bits must be 0 or 1");
        bits_[i] = bits[i] != 0;
    }
}

Payload Payload::from_hex(std::string_view hex) {
    if (hex.size() != kPayloadBits / 4)
        throw std::invalid_argument("payload must be 256 bits (64 hex digits), got " + std::to_string(hex.size()) +
                                    " digits");
    Payload p;
    for (int d = 0; d < kPayloadBits / 4; ++d) {
        const char ch = hex[d];
        int v;
        if (ch >= '0' && ch <= '9')
            v = ch - '0';
        else if (ch >= 'a' && ch <= 'f')
            v = ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F')
            v = ch - 'A' + 10;
        else
            throw std::invalid_argument(std::string("invalid hex digit '") + ch + "' in payload");
        for (int b = 0; b < 4; ++b) p.bits_[d * 4 + b] = (v >> (3 - b)) & 1;
    }
    return p;
}

Payload Payload::from_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kPayloadBits / 8)
        throw std::invalid_argument("payload must be 256 bits (32 bytes), got " + std::to_string(bytes.size()) +
                                    " bytes");
    Payload p;
    for (int i = 0; i < kPayloadBits; ++i) p.bits_[i] = (bytes[i / 8] >> (7 - i % 8)) & 1;
    return p;
}

Payload Payload::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open payload file " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_bytes(bytes);
}

std::string Payload::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(kPayloadBits / 4);
    for (int d = 0; d < kPayloadBits / 4; ++d) {
        int v = 0;
        for (int b = 0; b < 4; ++b) v = (v << 1) | (bits_[d * 4 + b] ? 1 : 0);
        out.push_back(kDigits[v]);
    }
    return out;
}

std::array<std::uint8_t, kPayloadBits / 8> Payload::to_bytes() const {
    std::array<std::uint8_t, kPayloadBits / 8> out{};
    for (int i = 0; i < kPayloadBits; ++i)
        if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
    return out;
}

std::vector<std::uint8_t> Payload::bits() const {
    std::vector<std::uint8_t> out(kPayloadBits);
    for (int i = 0; i < kPayloadBits; ++i) out[i] = bits_[i] ? 1 : 0;
    return out;
}

Payload Payload::complement() const {
    Payload p;
    p.bits_ = ~bits_;
    return p;
}

// ---------------------------------------------------------------------------
// Parameters and layout

void EmbedParams::validate() const {
    auto in_block = [](DctPos p) { return p.row >= 0 && p.row < 8 && p.col >= 0 && p.col < 8; };
    if (!in_block(pos_a) || !in_block(pos_b)) throw std::invalid_argument("DCT positions must lie in 0..7");
    if (pos_a == pos_b) throw std::invalid_argument("the two DCT positions must differ");
    if (redundancy < 1 || redundancy % 2 == 0) throw std::invalid_argument("redundancy must be a positive odd count");
    if (!(magnitude_floor >= 0.0) || !std::isfinite(magnitude_floor))
        throw std::invalid_argument("magnitude_floor must be a finite nonnegative value");
    if (!(fixed_sf >= 0.0) || !std::isfinite(fixed_sf))
        throw std::invalid_argument("fixed_sf must be a finite nonnegative value");
    if (repair_rounds < 0) throw std::invalid_argument("repair_rounds must be nonnegative");
    psychovisual.validate();
}

namespace {

constexpr int band_side(Subband b) {
    return (b == Subband::LH1 || b == Subband::HL1 || b == Subband::HH1) ? kMacroBlockSize / 2
                                                                         : kMacroBlockSize / 4;
}

}  // namespace

SlotMap build_slot_map(const MacroBlockGrid& grid) {
    SlotMap map;
    map.slots.reserve(static_cast<std::size_t>(grid.count()) * kSlotsPerMacroBlock);
    for (int m = 0; m < grid.count(); ++m)
        for (Subband band : kEmbedBands) {
            const int per_side = band_side(band) / 8;
            for (int b = 0; b < per_side * per_side; ++b) map.slots.push_back({m, band, b});
        }
    return map;
}

BitAssignment assign_bit(int slot_index, int redundancy, int payload_len) {
    if (payload_len <= 0 || redundancy <= 0) throw std::invalid_argument("assign_bit: non-positive sizes");
    if (slot_index < 0 || slot_index >= redundancy * payload_len)
        throw std::out_of_range("slot " + std::to_string(slot_index) + " outside " +
                                std::to_string(redundancy * payload_len) + " assignable slots");
    return {slot_index % payload_len, slot_index / payload_len};
}

// ---------------------------------------------------------------------------
// Coefficient-pair rules

double compute_threshold(const CoeffPair& pair, double sf) {
    return sf * (std::abs(pair.c_vu) + std::abs(pair.c_uv)) + 0.001;
}

namespace {

// Zero counts as nonnegative.
bool same_sign(double a, double b) { return (a >= 0.0) == (b >= 0.0); }

}  // namespace

CoeffPair embed_pair(const CoeffPair& pair, int bit, double threshold, double magnitude_floor) {
    // "favoured" must end up strictly above "other" for the bit to read back.
    double favoured = bit == 0 ? pair.c_vu : pair.c_uv;
    double other = bit == 0 ? pair.c_uv : pair.c_vu;

    if (favoured - other > threshold && same_sign(favoured, other)) {
        // already encodes the bit
    } else if (other - favoured > threshold && same_sign(favoured, other)) {
        favoured = std::abs(favoured) / 2.0;
        other = -std::abs(other) / 2.0;
    } else {
        favoured = std::abs(favoured);
        other = -std::abs(other);
    }

    // Margin floor. Signs are kept: a same-sign pair moves only its larger-magnitude
    // member, a split pair (favoured >= 0 >= other) pushes both away from zero.
    const double scale = std::abs(favoured) + std::abs(other);
    const double target =
        std::max(magnitude_floor, 8.0 * std::numeric_limits<double>::epsilon() * scale + 1e-12);
    const double margin = favoured - other;
    if (margin < target) {
        if (favoured >= 0.0 && other >= 0.0)
            favoured = other + target;
        else if (favoured < 0.0 && other < 0.0)
            other = favoured - target;
        else {
            const double push = (target - margin) / 2.0;
            favoured += push;
            other -= push;
        }
    }
    while (!(favoured > other)) {
        favoured = std::nextafter(favoured, std::numeric_limits<double>::infinity());
        other = std::nextafter(other, -std::numeric_limits<double>::infinity());
    }

    return bit == 0 ? CoeffPair{favoured, other} : CoeffPair{other, favoured};
}

int extract_pair(const CoeffPair& pair) {
    const double a = pair.c_vu;
    const double b = pair.c_uv;
    if (same_sign(a, b) && a > b) return 0;
    if (same_sign(a, b) && b > a) return 1;
    if (a < 0.0) return 1;
    return 0;
}

int majority_vote(std::span<const std::uint8_t> votes) {
    if (votes.empty() || votes.size() % 2 == 0)
        throw std::invalid_argument("majority vote needs an odd, non-zero number of votes");
    const auto ones = std::count_if(votes.begin(), votes.end(), [](std::uint8_t v) { return v != 0; });
    return 2 * static_cast<std::size_t>(ones) > votes.size() ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Image-level embedding and extraction

namespace {

// Visits every slot of one macro-block's subbands in slot order.
template <typename Fn>
void for_each_slot(SubbandSet& bands, Fn&& fn) {
    int offset = 0;
    for (Subband band : kEmbedBands) {
        Plane& plane = bands.band(band);
        const int per_side = plane.cols() / 8;
        for (int b = 0; b < per_side * per_side; ++b) fn(offset + b, plane, (b / per_side) * 8, (b % per_side) * 8);
        offset += per_side * per_side;
    }
}

CoeffPair read_pair(const DctBlock& c, const EmbedParams& p) {
    return {c[p.pos_a.row][p.pos_a.col], c[p.pos_b.row][p.pos_b.col]};
}

void check_capacity(const MacroBlockGrid& grid, const EmbedParams& params) {
    const long capacity = static_cast<long>(grid.count()) * kSlotsPerMacroBlock;
    const long needed = static_cast<long>(params.redundancy) * kPayloadBits;
    if (capacity != needed)
        throw std::invalid_argument("image capacity is " + std::to_string(capacity) + " slots but " +
                                    std::to_string(params.redundancy) + " copies of 256 bits need exactly " +
                                    std::to_string(needed));
}

}  // namespace

void embed_macroblock(SubbandSet& bands, const Payload& payload, int first_slot, double sf,
                      const EmbedParams& params, std::span<const double> slot_floors) {
    if (slot_floors.size() != kSlotsPerMacroBlock)
        throw std::invalid_argument("need one margin floor per macro-block slot");
    for_each_slot(bands, [&](int local, Plane& plane, int r0, int c0) {
        const int bit = payload.bit(assign_bit(first_slot + local, params.redundancy).bit_index);
        DctBlock coeffs = dct_8x8(read_block(plane, r0, c0));
        const CoeffPair pair = read_pair(coeffs, params);
        const CoeffPair marked = embed_pair(pair, bit, compute_threshold(pair, sf), slot_floors[local]);
        coeffs[params.pos_a.row][params.pos_a.col] = marked.c_vu;
        coeffs[params.pos_b.row][params.pos_b.col] = marked.c_uv;
        write_block(plane, r0, c0, idct_8x8(coeffs));
    });
}

void embed_macroblock(SubbandSet& bands, const Payload& payload, int first_slot, double sf,
                      const EmbedParams& params) {
    const std::vector<double> floors(kSlotsPerMacroBlock, params.magnitude_floor);
    embed_macroblock(bands, payload, first_slot, sf, params, floors);
}

std::vector<std::uint8_t> read_slots(const GrayImage& img, const EmbedParams& params) {
    params.validate();
    const MacroBlockGrid grid = grid_for(img.width(), img.height());
    std::vector<std::uint8_t> decisions(static_cast<std::size_t>(grid.count()) * kSlotsPerMacroBlock);
    for (int m = 0; m < grid.count(); ++m) {
        const int x0 = (m % grid.blocks_x) * kMacroBlockSize;
        const int y0 = (m / grid.blocks_x) * kMacroBlockSize;
        SubbandSet bands = dwt2_two_level(to_plane(img, x0, y0, kMacroBlockSize, kMacroBlockSize));
        for_each_slot(bands, [&](int local, Plane& plane, int r0, int c0) {
            const DctBlock coeffs = dct_8x8(read_block(plane, r0, c0));
            decisions[static_cast<std::size_t>(m) * kSlotsPerMacroBlock + local] =
                static_cast<std::uint8_t>(extract_pair(read_pair(coeffs, params)));
        });
    }
    return decisions;
}

GrayImage embed(const GrayImage& cover, const Payload& payload, const EmbedParams& params) {
    params.validate();
    const MacroBlockGrid grid = grid_for(cover.width(), cover.height());
    check_capacity(grid, params);
    const std::vector<double> sf = params.adaptive ? adaptive_strength(cover, params.psychovisual)
                                                   : std::vector<double>(grid.count(), params.fixed_sf);
    return embed_with_strength(cover, payload, params, sf);
}

GrayImage embed_with_strength(const GrayImage& cover, const Payload& payload, const EmbedParams& params,
                              std::span<const double> sf) {
    params.validate();
    const MacroBlockGrid grid = grid_for(cover.width(), cover.height());
    check_capacity(grid, params);
    if (sf.size() != static_cast<std::size_t>(grid.count()))
        throw std::invalid_argument("need one strength factor per macro-block");
    for (double v : sf)
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("strength factors must be finite and >= 0");
    std::vector<SubbandSet> cover_bands;
    cover_bands.reserve(grid.count());
    for (int m = 0; m < grid.count(); ++m) {
        const int x0 = (m % grid.blocks_x) * kMacroBlockSize;
        const int y0 = (m / grid.blocks_x) * kMacroBlockSize;
        cover_bands.push_back(dwt2_two_level(to_plane(cover, x0, y0, kMacroBlockSize, kMacroBlockSize)));
    }

    const std::size_t capacity = static_cast<std::size_t>(grid.count()) * kSlotsPerMacroBlock;
    std::vector<double> floors(capacity, params.magnitude_floor);
    GrayImage marked;
    for (int round = 0;; ++round) {
        Plane out(cover.height(), cover.width());
        for (int m = 0; m < grid.count(); ++m) {
            SubbandSet bands = cover_bands[m];
            const std::span<const double> mb_floors(floors.data() + static_cast<std::size_t>(m) * kSlotsPerMacroBlock,
                                                    kSlotsPerMacroBlock);
            embed_macroblock(bands, payload, m * kSlotsPerMacroBlock, sf[m], params, mb_floors);
            const Plane block = idwt2_two_level(bands);
            const int x0 = (m % grid.blocks_x) * kMacroBlockSize;
            const int y0 = (m / grid.blocks_x) * kMacroBlockSize;
            for (int y = 0; y < kMacroBlockSize; ++y)
                for (int x = 0; x < kMacroBlockSize; ++x) out(y0 + y, x0 + x) = block(y, x);
        }
        marked = quantize(out);
        if (round >= params.repair_rounds) break;

        // Rounding to 8 bits can undo a small margin outright (smooth content);
        // widen the floor only on slots that no longer read back.
        const std::vector<std::uint8_t> read = read_slots(marked, params);
        bool clean = true;
        for (std::size_t s = 0; s < capacity; ++s) {
            const int want = payload.bit(assign_bit(static_cast<int>(s), params.redundancy).bit_index);
            if (read[s] != want) {
                clean = false;
                floors[s] = std::max(2.0 * floors[s], 1.0);
            }
        }
        if (clean) break;
    }
    return marked;
}

Extraction extract_detailed(const GrayImage& img, const EmbedParams& params) {
    params.validate();
    check_capacity(grid_for(img.width(), img.height()), params);
    const std::vector<std::uint8_t> read = read_slots(img, params);

    const int copies = params.redundancy;
    Extraction result;
    result.votes.assign(static_cast<std::size_t>(kPayloadBits) * copies, 0);
    for (std::size_t s = 0; s < read.size(); ++s) {
        const BitAssignment a = assign_bit(static_cast<int>(s), copies);
        result.votes[static_cast<std::size_t>(a.bit_index) * copies + a.copy_index] = read[s];
    }

    result.confidence.resize(kPayloadBits);
    for (int i = 0; i < kPayloadBits; ++i) {
        const std::span<const std::uint8_t> bit_votes(result.votes.data() + static_cast<std::size_t>(i) * copies,
                                                      copies);
        const int voted = majority_vote(bit_votes);
        result.payload.set(i, voted);
        const auto agree = std::count(bit_votes.begin(), bit_votes.end(), static_cast<std::uint8_t>(voted));
        result.confidence[i] = static_cast<double>(agree) / copies;
    }
    return result;
}

Payload extract(const GrayImage& img, const EmbedParams& params) { return extract_detailed(img, params).payload; }

}  // namespace adawm
