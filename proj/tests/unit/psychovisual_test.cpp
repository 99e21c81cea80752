#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "adawm/psychovisual.hpp"
#include "test_util.hpp"

namespace adawm {
namespace {

const PsychovisualParams kDefaults{};

TEST(Canny, ConstantImageHasNoEdges) {
    const EdgeMap e = canny_edges(GrayImage(128, 128, 90), kDefaults);
    EXPECT_EQ(e.width, 128);
    EXPECT_EQ(e.count(), 0u);
}

TEST(Canny, VerticalStepGivesOneColumn) {
    GrayImage img(64, 64);
    for (int y = 0; y < 64; ++y)
        for (int x = 32; x < 64; ++x) img.at(x, y) = 255;
    const EdgeMap e = canny_edges(img, kDefaults);

    std::set<int> columns;
    for (int y = 2; y < 62; ++y)
        for (int x = 2; x < 62; ++x)
            if (e.at(x, y)) columns.insert(x);
    ASSERT_EQ(columns.size(), 1u);
    const int col = *columns.begin();
    EXPECT_TRUE(col == 31 || col == 32) << col;
    for (int y = 2; y < 62; ++y) EXPECT_EQ(e.at(col, y), 1) << y;
}

TEST(Canny, OutputIsBinaryWithBorderClear) {
    const GrayImage img = testing::random_image(128, 128, 17);
    const EdgeMap e = canny_edges(img, kDefaults);
    ASSERT_EQ(e.bits.size(), 128u * 128u);
    EXPECT_TRUE(std::all_of(e.bits.begin(), e.bits.end(), [](std::uint8_t b) { return b <= 1; }));
    for (int i = 0; i < 128; ++i) {
        EXPECT_EQ(e.at(i, 0), 0);
        EXPECT_EQ(e.at(0, i), 0);
    }
    EXPECT_GT(e.count(), 0u);
}

TEST(Canny, LenaEdgeDensityInRange) {
    const auto path = testing::classic_image("lena");
    if (!path) GTEST_SKIP() << "ADAWM_CLASSIC_DIR has no lena image";
    const GrayImage lena = load_image(*path);
    const double density = static_cast<double>(canny_edges(lena, kDefaults).count()) /
                           (static_cast<double>(lena.width()) * lena.height());
    EXPECT_GE(density, 0.02);
    EXPECT_LE(density, 0.20);
}

TEST(BlockStats, BlackAndWhiteBlocks) {
    const MacroBlockGrid grid{1, 1};
    EdgeMap none{128, 128, std::vector<std::uint8_t>(128 * 128, 0)};
    const auto black = block_stats(GrayImage(128, 128, 0), none, grid, kDefaults);
    ASSERT_EQ(black.size(), 1u);
    EXPECT_EQ(black[0].edge_count, 0.0);
    EXPECT_EQ(black[0].brightness_level, 0.0);
    const auto white = block_stats(GrayImage(128, 128, 255), none, grid, kDefaults);
    EXPECT_DOUBLE_EQ(white[0].brightness_level, 1.0);
}

TEST(BlockStats, CountsAndMean) {
    EdgeMap edges{128, 128, std::vector<std::uint8_t>(128 * 128, 0)};
    std::fill_n(edges.bits.begin(), 1638, 1);
    const auto s = block_stats(GrayImage(128, 128, 128), edges, MacroBlockGrid{1, 1}, kDefaults);
    EXPECT_NEAR(s[0].edge_count, 1638.0 / 16384.0, 1e-12);
    EXPECT_NEAR(s[0].edge_count, 0.09998, 5e-6);
    EXPECT_NEAR(s[0].brightness_level, 128.0 / 255.0, 1e-12);
    EXPECT_NEAR(s[0].brightness_level, 0.50196, 5e-6);
}

TEST(BlockStats, ArrangementInvariant) {
    GrayImage img = testing::random_image(128, 128, 23);
    EdgeMap edges{128, 128, std::vector<std::uint8_t>(128 * 128, 0)};
    std::mt19937 rng(1);
    for (auto& b : edges.bits) b = rng() % 7 == 0;
    const auto before = block_stats(img, edges, MacroBlockGrid{1, 1}, kDefaults);
    std::shuffle(img.pixels().begin(), img.pixels().end(), rng);
    std::shuffle(edges.bits.begin(), edges.bits.end(), rng);
    const auto after = block_stats(img, edges, MacroBlockGrid{1, 1}, kDefaults);
    EXPECT_EQ(before[0].sf, after[0].sf);
    EXPECT_EQ(before[0].edge_count, after[0].edge_count);
    EXPECT_EQ(before[0].brightness_level, after[0].brightness_level);
}

TEST(BlockStats, RejectsMismatchedInputs) {
    EdgeMap edges{64, 64, std::vector<std::uint8_t>(64 * 64, 0)};
    EXPECT_THROW(block_stats(GrayImage(128, 128), edges, MacroBlockGrid{1, 1}, kDefaults), std::invalid_argument);
}

TEST(StrengthFactor, Examples) {
    EXPECT_NEAR(strength_factor({0.10, 0.40, 0.0}, kDefaults), 0.05, 1e-12);
    EXPECT_EQ(strength_factor({0.0, 0.0, 0.0}, kDefaults), kDefaults.sf_min);
    PsychovisualParams equal = kDefaults;
    equal.beta = equal.alpha;
    EXPECT_EQ(strength_factor({0.3, 0.3, 0.0}, equal), equal.sf_min);
    EXPECT_EQ(strength_factor({1.0, 0.0, 0.0}, kDefaults), kDefaults.sf_max);
}

TEST(StrengthFactor, MonotoneInEdgesAboveBrightnessTerm) {
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const BlockStats s{0.1 + i * 0.002, 0.2, 0.0};
        ASSERT_GE(kDefaults.alpha * s.edge_count, kDefaults.beta * s.brightness_level);
        const double sf = strength_factor(s, kDefaults);
        EXPECT_GE(sf, prev);
        EXPECT_GE(sf, kDefaults.sf_min);
        EXPECT_LE(sf, kDefaults.sf_max);
        prev = sf;
    }
}

TEST(AdaptiveStrength, OnePerMacroBlockWithinBounds) {
    const GrayImage img = testing::random_image(256, 384, 2);
    const auto sf = adaptive_strength(img, kDefaults);
    ASSERT_EQ(sf.size(), 6u);
    for (double v : sf) {
        EXPECT_GE(v, kDefaults.sf_min);
        EXPECT_LE(v, kDefaults.sf_max);
    }
}

TEST(PsychovisualParamsTest, Validation) {
    PsychovisualParams p;
    EXPECT_NO_THROW(p.validate());
    p.sf_min = 0.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.canny_low = 0.3;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.alpha = -1;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace adawm
