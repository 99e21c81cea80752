#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adawm/image.hpp"
#include "adawm/psychovisual.hpp"
#include "adawm/transforms.hpp"

namespace adawm {

inline constexpr int kPayloadBits = 256;

/// The 256-bit watermark. Bit 0 is the most significant bit of the first hex digit.
class Payload {
public:
    Payload() = default;
    explicit Payload(std::span<const std::uint8_t> bits);

    static Payload from_hex(std::string_view hex);
    static Payload from_bytes(std::span<const std::uint8_t> bytes);
    static Payload from_file(const std::filesystem::path& path);

    std::string to_hex() const;
    std::array<std::uint8_t, kPayloadBits / 8> to_bytes() const;

    int bit(int i) const { return bits_[i] ? 1 : 0; }
    void set(int i, int value) { bits_[i] = value != 0; }
    std::vector<std::uint8_t> bits() const;
    Payload complement() const;

    friend bool operator==(const Payload&, const Payload&) = default;

private:
    std::bitset<kPayloadBits> bits_;
};

/// Zero-based (row, column) position in an 8x8 DCT block.
struct DctPos {
    int row = 0;
    int col = 0;
    friend bool operator==(const DctPos&, const DctPos&) = default;
};

struct EmbedParams {
    DctPos pos_a{6, 4};  // C[v,u]
    DctPos pos_b{4, 6};  // C[u,v]
    int redundancy = 11;
    double magnitude_floor = 1.0;
    bool adaptive = true;
    double fixed_sf = 0.04;
    // Verify-and-repair passes after 8-bit quantization; 0 disables.
    int repair_rounds = 8;
    PsychovisualParams psychovisual;

    void validate() const;
};

/// Subbands that carry payload, in slot-enumeration order.
inline constexpr std::array<Subband, 5> kEmbedBands{Subband::LH1, Subband::HL1, Subband::LH2, Subband::HL2,
                                                     Subband::HH2};
inline constexpr int kSlotsPerMacroBlock = 64 + 64 + 16 + 16 + 16;

struct CoeffPair {
    double c_vu = 0.0;
    double c_uv = 0.0;
    friend bool operator==(const CoeffPair&, const CoeffPair&) = default;
};

struct SlotAddress {
    int macro_block = 0;
    Subband band = Subband::LH1;
    int block = 0;  // 8x8 block index, raster within the subband
    friend bool operator==(const SlotAddress&, const SlotAddress&) = default;
};

struct SlotMap {
    std::vector<SlotAddress> slots;
    std::size_t capacity() const noexcept { return slots.size(); }
};

/// Macro-block major, then kEmbedBands order, then 8x8 blocks in raster order.
SlotMap build_slot_map(const MacroBlockGrid& grid);

struct BitAssignment {
    int bit_index = 0;
    int copy_index = 0;
    friend bool operator==(const BitAssignment&, const BitAssignment&) = default;
};

/// Copy-major: consecutive slots walk through the payload, then start the next copy.
BitAssignment assign_bit(int slot_index, int redundancy, int payload_len = kPayloadBits);

/// T = sf * (|c_vu| + |c_uv|) + 0.001
double compute_threshold(const CoeffPair& pair, double sf);

CoeffPair embed_pair(const CoeffPair& pair, int bit, double threshold, double magnitude_floor);
int extract_pair(const CoeffPair& pair);

/// Majority over an odd number of 0/1 votes.
int majority_vote(std::span<const std::uint8_t> votes);

/// Embeds every slot of one transformed macro-block. `first_slot` is the
/// global slot index of this macro-block's first slot.
void embed_macroblock(SubbandSet& bands, const Payload& payload, int first_slot, double sf,
                      const EmbedParams& params);

/// As above, with one margin floor per slot of this macro-block (176 entries).
void embed_macroblock(SubbandSet& bands, const Payload& payload, int first_slot, double sf,
                      const EmbedParams& params, std::span<const double> slot_floors);

/// Per-slot decisions read straight from an image, before voting. Indexed by slot.
std::vector<std::uint8_t> read_slots(const GrayImage& img, const EmbedParams& params);

GrayImage embed(const GrayImage& cover, const Payload& payload, const EmbedParams& params);

/// Embeds with caller-supplied strength factors, one per macro-block.
GrayImage embed_with_strength(const GrayImage& cover, const Payload& payload, const EmbedParams& params,
                              std::span<const double> strength);

struct Extraction {
    Payload payload;
    /// Per bit: fraction of copies that agree with the voted value.
    std::vector<double> confidence;
    /// votes[bit * redundancy + copy]
    std::vector<std::uint8_t> votes;
};

Extraction extract_detailed(const GrayImage& img, const EmbedParams& params);
Payload extract(const GrayImage& img, const EmbedParams& params);

}  // namespace adawm
