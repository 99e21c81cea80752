#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "adawm/attacks.hpp"
#include "adawm/metrics.hpp"
#include "test_util.hpp"

namespace adawm {
namespace {

// Brute-force window median with edge replication.
GrayImage reference_median(const GrayImage& img, int k) {
    const int r = k / 2;
    GrayImage out(img.width(), img.height());
    std::vector<std::uint8_t> win;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            win.clear();
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    win.push_back(img.at(std::clamp(x + dx, 0, img.width() - 1),
                                         std::clamp(y + dy, 0, img.height() - 1)));
            std::sort(win.begin(), win.end());
            out.at(x, y) = win[win.size() / 2];
        }
    return out;
}

GrayImage checkerboard(int n, int square) {
    GrayImage img(n, n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) img.at(x, y) = ((x / square + y / square) % 2) ? 255 : 0;
    return img;
}

TEST(MedianFilter, ConstantAndImpulse) {
    EXPECT_EQ(median_filter(GrayImage(20, 20, 77), 3), GrayImage(20, 20, 77));
    GrayImage dot(9, 9);
    dot.at(4, 4) = 255;
    EXPECT_EQ(median_filter(dot, 3), GrayImage(9, 9));
}

TEST(MedianFilter, MatchesBruteForce) {
    for (const GrayImage& img : {checkerboard(24, 1), checkerboard(24, 3), testing::random_image(31, 17, 4)})
        for (int k : {3, 5})
            EXPECT_EQ(median_filter(img, k), reference_median(img, k)) << k;
}

TEST(MedianFilter, PixelCheckerboardKeepsCentreMajority) {
    // Each interior 3x3 window holds five pixels of the centre colour.
    const GrayImage img = checkerboard(16, 1);
    const GrayImage out = median_filter(img, 3);
    for (int y = 1; y < 15; ++y)
        for (int x = 1; x < 15; ++x) EXPECT_EQ(out.at(x, y), img.at(x, y));
}

TEST(MedianFilter, RejectsEvenKernel) {
    EXPECT_THROW(median_filter(GrayImage(8, 8), 4), std::invalid_argument);
}

TEST(SaltPepper, DensityExtremes) {
    const GrayImage img = testing::random_image(64, 64, 1);
    EXPECT_EQ(salt_pepper(img, 0.0, 5), img);
    const GrayImage all = salt_pepper(img, 1.0, 5);
    EXPECT_TRUE(std::all_of(all.pixels().begin(), all.pixels().end(), [](std::uint8_t p) { return p == 0 || p == 255; }));
}

TEST(SaltPepper, CorruptedCountIsBinomial) {
    const GrayImage img(512, 512, 128);
    const GrayImage out = salt_pepper(img, 0.01, 42);
    const auto changed = std::count_if(out.pixels().begin(), out.pixels().end(), [](std::uint8_t p) { return p != 128; });
    const double n = 512.0 * 512.0, mean = n * 0.01, sd = std::sqrt(n * 0.01 * 0.99);
    EXPECT_NEAR(static_cast<double>(changed), mean, 3.0 * sd);
    EXPECT_NEAR(mean, 2621.44, 1e-9);
    const auto salt = std::count(out.pixels().begin(), out.pixels().end(), 255);
    EXPECT_GT(salt, changed / 4);
    EXPECT_LT(salt, 3 * changed / 4);
}

TEST(SaltPepper, SeededDeterminism) {
    const GrayImage img = testing::random_image(128, 128, 2);
    EXPECT_EQ(salt_pepper(img, 0.05, 9), salt_pepper(img, 0.05, 9));
    EXPECT_NE(salt_pepper(img, 0.05, 9), salt_pepper(img, 0.05, 10));
}

TEST(GaussianNoise, ZeroVarianceIdentity) {
    const GrayImage img = testing::random_image(64, 64, 3);
    EXPECT_EQ(gaussian_noise(img, 0.0, 1), img);
}

TEST(GaussianNoise, StdMatchesVariance) {
    const GrayImage img(512, 512, 128);
    const GrayImage out = gaussian_noise(img, 0.003, 7);
    double s = 0.0, s2 = 0.0;
    for (std::uint8_t p : out.pixels()) {
        const double d = static_cast<double>(p) - 128.0;
        s += d;
        s2 += d * d;
    }
    const double n = 512.0 * 512.0;
    const double sd = std::sqrt(s2 / n - (s / n) * (s / n));
    const double expected = std::sqrt(0.003) * 255.0;
    EXPECT_NEAR(expected, 13.97, 0.01);
    EXPECT_NEAR(sd, expected, 0.05 * expected);
}

TEST(GaussianNoise, ClampsAndReproduces) {
    const GrayImage white(128, 128, 255);
    const GrayImage out = gaussian_noise(white, 0.01, 3);
    EXPECT_TRUE(std::any_of(out.pixels().begin(), out.pixels().end(), [](std::uint8_t p) { return p < 255; }));
    EXPECT_EQ(out, gaussian_noise(white, 0.01, 3));
}

TEST(HistEqualize, ConstantGoesToWhite) {
    EXPECT_EQ(hist_equalize(GrayImage(32, 32, 40)), GrayImage(32, 32, 255));
}

TEST(HistEqualize, UniformImageNearIdentity) {
    GrayImage img(256, 64);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 256; ++x) img.at(x, y) = static_cast<std::uint8_t>(x);
    const GrayImage out = hist_equalize(img);
    for (int k = 0; k < 256; ++k)
        EXPECT_EQ(out.at(k, 0), static_cast<int>(std::nearbyint(255.0 * (k + 1) / 256.0))) << k;
}

TEST(HistEqualize, PreservesLevelOrder) {
    const GrayImage img = testing::random_image(100, 100, 6, 40, 160);
    const GrayImage out = hist_equalize(img);
    for (std::size_t i = 1; i < img.pixels().size(); ++i) {
        const auto a = img.pixels()[i - 1], b = img.pixels()[i];
        const auto oa = out.pixels()[i - 1], ob = out.pixels()[i];
        if (a < b) EXPECT_LE(oa, ob);
        if (a == b) EXPECT_EQ(oa, ob);
    }
}

GrayImage smooth_image() {
    GrayImage img(256, 256);
    for (int y = 0; y < 256; ++y)
        for (int x = 0; x < 256; ++x)
            img.at(x, y) = static_cast<std::uint8_t>(128 + 60 * std::sin(x / 20.0) * std::cos(y / 27.0));
    return img;
}

TEST(Jpeg, HighQualityOnSmoothImage) {
    const GrayImage img = smooth_image();
    const GrayImage out = jpeg_attack(img, 100);
    EXPECT_EQ(out.width(), img.width());
    EXPECT_EQ(out.height(), img.height());
    EXPECT_GT(psnr(img, out), 40.0);
}

TEST(Jpeg, LowerQualityDegradesMore) {
    GrayImage img = smooth_image();
    const GrayImage texture = testing::random_image(256, 256, 8, 0, 40);
    for (std::size_t i = 0; i < img.pixels().size(); ++i)
        img.pixels()[i] = static_cast<std::uint8_t>(std::min(255, img.pixels()[i] + texture.pixels()[i] / 2));
    double prev = 0.0;
    for (int q : {10, 30, 50, 70, 90}) {
        const double p = psnr(img, jpeg_attack(img, q));
        EXPECT_GT(p, prev) << q;
        prev = p;
    }
    EXPECT_THROW(jpeg_attack(img, 0), std::invalid_argument);
    EXPECT_THROW(jpeg_attack(img, 101), std::invalid_argument);
}

TEST(AttackSpecTest, NamesAndDispatch) {
    EXPECT_EQ(attack_kind_from_string("median"), AttackKind::median_filter);
    EXPECT_EQ(attack_kind_from_string("gaussian"), AttackKind::gaussian_noise);
    EXPECT_EQ(attack_kind_from_string("jpeg"), AttackKind::jpeg);
    EXPECT_THROW(attack_kind_from_string("rotate"), std::invalid_argument);

    const GrayImage img = testing::random_image(64, 64, 10);
    AttackSpec spec;
    EXPECT_EQ(apply_attack(img, spec), img);
    spec.kind = AttackKind::gaussian_noise;
    spec.variance = 0.003;
    spec.seed = 7;
    EXPECT_EQ(apply_attack(img, spec), gaussian_noise(img, 0.003, 7));
    spec.kind = AttackKind::median_filter;
    spec.kernel = 2;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(AttackSpecTest, EveryAttackKeepsGeometry) {
    const GrayImage img = testing::random_image(96, 64, 11);
    for (AttackKind k : {AttackKind::none, AttackKind::median_filter, AttackKind::salt_pepper,
                         AttackKind::gaussian_noise, AttackKind::hist_equalize, AttackKind::jpeg}) {
        AttackSpec spec;
        spec.kind = k;
        spec.variance = 0.005;
        const GrayImage out = apply_attack(img, spec);
        EXPECT_EQ(out.width(), 96) << to_string(k);
        EXPECT_EQ(out.height(), 64) << to_string(k);
    }
}

}  // namespace
}  // namespace adawm
