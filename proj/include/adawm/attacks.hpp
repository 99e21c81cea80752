#pragma once

#include <cstdint>
#include <string>

#include "adawm/image.hpp"

namespace adawm {

enum class AttackKind { none, median_filter, salt_pepper, gaussian_noise, hist_equalize, jpeg };

const char* to_string(AttackKind kind) noexcept;
AttackKind attack_kind_from_string(const std::string& name);

struct AttackSpec {
    AttackKind kind = AttackKind::none;
    int kernel = 3;          // median_filter
    double density = 0.01;   // salt_pepper
    double variance = 0.0;   // gaussian_noise, on the [0,1] intensity scale
    int quality = 75;        // jpeg
    std::uint64_t seed = 0;  // stochastic attacks

    void validate() const;
    /// Short human-readable label, e.g. "median_filter(k=3)".
    std::string label() const;
};

/// kernel x kernel median with edge replication.
GrayImage median_filter(const GrayImage& img, int kernel);

/// Each pixel independently replaced with probability `density`, then a fair draw picks 0 or 255.
GrayImage salt_pepper(const GrayImage& img, double density, std::uint64_t seed);

/// pixel/255 + N(0, variance), rescaled to 8 bits with rounding and clamping.
GrayImage gaussian_noise(const GrayImage& img, double variance, std::uint64_t seed);

/// Global equalization, s = round(255 * cdf(r)).
GrayImage hist_equalize(const GrayImage& img);

/// Baseline JPEG encode at `quality` then decode.
GrayImage jpeg_attack(const GrayImage& img, int quality);

GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec);

}  // namespace adawm
