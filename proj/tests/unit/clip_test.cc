#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "vsrcost/clip.h"
#include "vsrcost/errors.h"

namespace vsrcost {
namespace {

RawFrames uniform_frames(std::uint8_t r, std::uint8_t g, std::uint8_t b,
                         std::int64_t frames = kClipFrames) {
  RawFrames raw;
  raw.frames = frames;
  raw.height = raw.width = kRawFrameSide;
  for (std::int64_t i = 0; i < frames * kRawFrameSide * kRawFrameSide; ++i) {
    raw.pixels.push_back(r);
    raw.pixels.push_back(g);
    raw.pixels.push_back(b);
  }
  return raw;
}

TEST(Preprocess, WhiteIsOneBlackIsZero) {
  Clip white = preprocess_clip(uniform_frames(255, 255, 255));
  EXPECT_EQ(white.frames.shape(), (Shape{29, 96, 96}));
  for (float v : white.frames.data()) EXPECT_EQ(v, 1.0f);
  Clip black = preprocess_clip(uniform_frames(0, 0, 0));
  for (float v : black.frames.data()) EXPECT_EQ(v, 0.0f);
}

TEST(Preprocess, CropOffsetMapsToOrigin) {
  RawFrames raw = uniform_frames(0, 0, 0);
  const auto at = static_cast<std::size_t>((80 * kRawFrameSide + 80) * 3);
  raw.pixels[at] = 255;
  Clip clip = preprocess_clip(raw);
  EXPECT_NEAR(clip.frames[0], 0.299f, 1e-6f);
  for (std::int64_t i = 1; i < clip.frames.size(); ++i) ASSERT_EQ(clip.frames[i], 0.0f) << i;
}

TEST(Preprocess, LumaWeightsAndRange) {
  Clip c = preprocess_clip(uniform_frames(10, 200, 30));
  const double expected = (0.299 * 10 + 0.587 * 200 + 0.114 * 30) / 255.0;
  EXPECT_NEAR(c.frames[123], expected, 1e-6);
  std::mt19937_64 rng(60);
  RawFrames noisy = uniform_frames(0, 0, 0);
  for (auto& p : noisy.pixels) p = static_cast<std::uint8_t>(rng());
  const Clip clip = preprocess_clip(noisy);
  for (float v : clip.frames.data()) {
    ASSERT_GE(v, 0.0f);
    ASSERT_LE(v, 1.0f);
  }
}

TEST(Preprocess, AsInputAddsChannelAxis) {
  EXPECT_EQ(preprocess_clip(uniform_frames(1, 2, 3)).as_input().shape(), (Shape{1, 29, 96, 96}));
}

TEST(Preprocess, WrongGeometryIsValidationError) {
  EXPECT_THROW(preprocess_clip(uniform_frames(0, 0, 0, 28)), ValidationError);
  RawFrames small = uniform_frames(0, 0, 0);
  small.height = 128;
  EXPECT_THROW(preprocess_clip(small), ValidationError);
  RawFrames gray = uniform_frames(0, 0, 0);
  gray.channels = 1;
  EXPECT_THROW(preprocess_clip(gray), ValidationError);
}

class FrameDirectory : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("vsrcost_frames_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  void write(const std::string& name, const std::vector<std::uint8_t>& bytes) {
    std::ofstream(dir_ / name, std::ios::binary)
        .write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }

  std::filesystem::path dir_;
};

TEST_F(FrameDirectory, ReadsPpmAndRawInLexicographicOrder) {
  const std::vector<std::uint8_t> frame(static_cast<std::size_t>(kRawFrameSide * kRawFrameSide * 3), 0);
  for (int i = 0; i < 29; ++i) {
    auto f = frame;
    f[0] = static_cast<std::uint8_t>(i);
    char name[16];
    std::snprintf(name, sizeof name, "f%03d.%s", i, i % 2 ? "ppm" : "raw");
    write(name, i % 2 ? encode_ppm(f, kRawFrameSide, kRawFrameSide) : f);
  }
  RawFrames raw = read_frame_directory(dir_);
  EXPECT_EQ(raw.frames, 29);
  for (int i = 0; i < 29; ++i) {
    EXPECT_EQ(raw.pixels[static_cast<std::size_t>(i * kRawFrameSide * kRawFrameSide * 3)], i);
  }
}

TEST_F(FrameDirectory, PpmWithCommentParses) {
  std::string header = "P6\n# made by hand\n256 256\n255\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  bytes.resize(bytes.size() + static_cast<std::size_t>(kRawFrameSide * kRawFrameSide * 3), 7);
  std::int64_t h = 0, w = 0;
  auto rgb = decode_frame(bytes, &h, &w);
  EXPECT_EQ(h, 256);
  EXPECT_EQ(rgb.back(), 7);
}

TEST_F(FrameDirectory, UnreadableFrameIsValidationError) {
  write("a.ppm", {'P', '6', '\n', 'x'});
  EXPECT_THROW(read_frame_directory(dir_), ValidationError);
}

TEST_F(FrameDirectory, MissingDirectoryIsIoError) {
  EXPECT_THROW(read_frame_directory(dir_ / "nope"), IoError);
}

TEST(ClipFile, RoundTripAndCorruption) {
  std::mt19937_64 rng(61);
  RawFrames raw = uniform_frames(0, 0, 0);
  for (auto& p : raw.pixels) p = static_cast<std::uint8_t>(rng());
  Clip clip = preprocess_clip(raw);
  auto bytes = serialize_clip(clip);
  EXPECT_EQ(parse_clip(bytes).frames, clip.frames);
  bytes.pop_back();
  EXPECT_THROW(parse_clip(bytes), SchemaError);
  bytes[0] = 'X';
  EXPECT_THROW(parse_clip(bytes), SchemaError);
}

}  // namespace
}  // namespace vsrcost
