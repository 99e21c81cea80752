#include <png.h>

#include <algorithm>
#include <fstream>

#include <gtest/gtest.h>

#include "adawm/image.hpp"
#include "test_util.hpp"

namespace adawm {
namespace {

using testing::TempDir;

TEST(GrayImageTest, RejectsMismatchedPixelCount) {
    EXPECT_THROW(GrayImage(2, 2, std::vector<std::uint8_t>{1, 2, 3}), std::invalid_argument);
    EXPECT_THROW(GrayImage(0, 4), std::invalid_argument);
}

TEST(ImageIoTest, ReadsBinaryPgmRowMajor) {
    TempDir dir;
    const auto path = dir / "tiny.pgm";
    {
        std::ofstream out(path, std::ios::binary);
        out << "P5\n# comment line\n2 2\n255\n";
        const unsigned char px[] = {0, 255, 128, 64};
        out.write(reinterpret_cast<const char*>(px), 4);
    }
    const GrayImage img = load_image(path);
    ASSERT_EQ(img.width(), 2);
    ASSERT_EQ(img.height(), 2);
    EXPECT_EQ(img.at(0, 0), 0);
    EXPECT_EQ(img.at(1, 0), 255);
    EXPECT_EQ(img.at(0, 1), 128);
    EXPECT_EQ(img.at(1, 1), 64);
}

TEST(ImageIoTest, ReadsAsciiPgm) {
    TempDir dir;
    const auto path = dir / "tiny_ascii.pgm";
    std::ofstream(path) << "P2\n2 2\n255\n0 255\n128 64\n";
    const GrayImage img = load_image(path);
    EXPECT_EQ(img, GrayImage(2, 2, {0, 255, 128, 64}));
}

TEST(ImageIoTest, PgmAndPngRoundTripBitExact) {
    TempDir dir;
    const GrayImage img = testing::random_image(37, 19, 5);
    for (const char* name : {"rt.pgm", "rt.png"}) {
        save_image(img, dir / name);
        EXPECT_EQ(load_image(dir / name), img) << name;
    }
}

TEST(ImageIoTest, ColourPngReducedToBt601Luma) {
    TempDir dir;
    const auto path = dir / "red.png";
    std::vector<std::uint8_t> rgb(100 * 100 * 3, 0);
    for (std::size_t i = 0; i < rgb.size(); i += 3) rgb[i] = 255;
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = 100;
    image.height = 100;
    image.format = PNG_FORMAT_RGB;
    ASSERT_TRUE(png_image_write_to_file(&image, path.string().c_str(), 0, rgb.data(), 0, nullptr));

    const GrayImage img = load_image(path);
    ASSERT_EQ(img.width(), 100);
    // round(0.299 * 255) = 76
    EXPECT_TRUE(std::all_of(img.pixels().begin(), img.pixels().end(), [](std::uint8_t p) { return p == 76; }));
}

TEST(ImageIoTest, ErrorsOnUnreadableOrUnsupported) {
    TempDir dir;
    EXPECT_THROW(load_image(dir / "missing.png"), std::runtime_error);
    std::ofstream(dir / "junk.bin") << "not an image";
    EXPECT_THROW(load_image(dir / "junk.bin"), std::runtime_error);
    std::ofstream(dir / "empty.pgm");
    EXPECT_THROW(load_image(dir / "empty.pgm"), std::runtime_error);
    std::ofstream(dir / "zero.pgm") << "P2\n0 3\n255\n";
    EXPECT_THROW(load_image(dir / "zero.pgm"), std::runtime_error);
}

TEST(ImageIoTest, FailedSaveLeavesNoFile) {
    TempDir dir;
    const auto target = dir / "no_such_dir" / "out.png";
    EXPECT_THROW(save_image(GrayImage(4, 4), target), std::exception);
    EXPECT_FALSE(std::filesystem::exists(target));
    EXPECT_FALSE(std::filesystem::exists(dir / "no_such_dir"));
    EXPECT_THROW(save_image(GrayImage(4, 4), dir / "out.bmp"), std::invalid_argument);
}

TEST(PartitionTest, BlockCountsFollowDimensions) {
    EXPECT_EQ(partition(GrayImage(512, 512)).blocks.size(), 16u);
    EXPECT_EQ(partition(GrayImage(512, 512)).grid, (MacroBlockGrid{4, 4}));
    EXPECT_EQ(partition(GrayImage(128, 128)).blocks.size(), 1u);
    const Partition p = partition(GrayImage(512, 384));
    EXPECT_EQ(p.blocks.size(), 12u);
    EXPECT_EQ(p.grid, (MacroBlockGrid{4, 3}));
}

TEST(PartitionTest, RejectsNonMultipleOf128) {
    EXPECT_THROW(partition(GrayImage(300, 300)), std::invalid_argument);
    EXPECT_THROW(partition(GrayImage(512, 500)), std::invalid_argument);
}

TEST(PartitionTest, ReassembleIsExactInverse) {
    for (auto [w, h] : {std::pair{512, 512}, std::pair{128, 128}, std::pair{384, 256}}) {
        const GrayImage img = testing::random_image(w, h, static_cast<std::uint32_t>(w * 7 + h));
        const Partition p = partition(img);
        EXPECT_EQ(reassemble(p.blocks, p.grid), img);
    }
}

TEST(PartitionTest, BlocksInRasterOrder) {
    const GrayImage img = testing::random_image(384, 256, 9);
    const Partition p = partition(img);
    // block 4 is column 1 of row 1
    EXPECT_EQ(p.blocks[4].at(0, 0), img.at(128, 128));
    EXPECT_EQ(p.blocks[2].at(5, 7), img.at(256 + 5, 7));
}

TEST(PartitionTest, PermutedBlocksChangeTheImage) {
    const GrayImage img = testing::random_image(256, 256, 3);
    Partition p = partition(img);
    std::swap(p.blocks[0], p.blocks[3]);
    EXPECT_NE(reassemble(p.blocks, p.grid), img);
}

TEST(PartitionTest, ReassembleRejectsCountMismatch) {
    const Partition p = partition(GrayImage(256, 256));
    const std::vector<GrayImage> three(p.blocks.begin(), p.blocks.begin() + 3);
    EXPECT_THROW(reassemble(three, p.grid), std::invalid_argument);
}

TEST(QuantizeTest, RoundsAndClamps) {
    Plane p(1, 5);
    p(0, 0) = -3.2;
    p(0, 1) = 0.49;
    p(0, 2) = 127.5001;
    p(0, 3) = 254.6;
    p(0, 4) = 300.0;
    const GrayImage q = quantize(p);
    EXPECT_EQ(q, GrayImage(5, 1, {0, 0, 128, 255, 255}));
}

}  // namespace
}  // namespace adawm
