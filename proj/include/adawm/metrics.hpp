#pragma once

#include "adawm/codec.hpp"
#include "adawm/image.hpp"

namespace adawm {

/// Reported for identical images instead of +inf.
inline constexpr double kPsnrCap = 99.0;

double psnr(const GrayImage& a, const GrayImage& b);

// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), K1 = 0.01, K2 = 0.03,
// L = 255, averaged over all fully-contained windows.
double ssim(const GrayImage& a, const GrayImage& b);

/// sum(w * w') / sqrt(sum(w^2) * sum(w'^2)) over 0/1 bits.
double nc(const Payload& w, const Payload& w_prime);
double ber(const Payload& w, const Payload& w_prime);

struct QualityReport {
    double psnr = 0.0;
    double ssim = 0.0;
    double nc = 0.0;
    double ber = 0.0;
};

}  // namespace adawm
