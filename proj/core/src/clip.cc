#include "vsrcost/clip.h"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <string>

#include "file_util.h"
#include "vsrcost/errors.h"

namespace vsrcost {

namespace {

constexpr double kLumaR = 0.299;
constexpr double kLumaG = 0.587;
constexpr double kLumaB = 0.114;

// Skips whitespace and '#' comments, then reads one unsigned decimal field.
std::int64_t ppm_field(std::span<const std::uint8_t> b, std::size_t& pos) {
  while (pos < b.size()) {
    if (std::isspace(b[pos])) {
      ++pos;
    } else if (b[pos] == '#') {
      while (pos < b.size() && b[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  if (pos >= b.size() || !std::isdigit(b[pos])) {
    throw ValidationError("PPM header: expected a number at byte " + std::to_string(pos));
  }
  std::int64_t v = 0;
  while (pos < b.size() && std::isdigit(b[pos])) {
    v = v * 10 + (b[pos] - '0');
    if (v > (1 << 24)) throw ValidationError("PPM header: value too large");
    ++pos;
  }
  return v;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[pos + static_cast<std::size_t>(i)]) << (8 * i);
  return v;
}

}  // namespace

Tensor Clip::as_input() const {
  Shape shape = frames.shape();
  shape.insert(shape.begin(), 1);
  return frames.reshaped(std::move(shape));
}

Clip preprocess_clip(const RawFrames& raw) {
  if (raw.frames != kClipFrames) {
    throw ValidationError("clip must have " + std::to_string(kClipFrames) + " frames, got " +
                          std::to_string(raw.frames));
  }
  if (raw.height != kRawFrameSide || raw.width != kRawFrameSide) {
    throw ValidationError("frames must be " + std::to_string(kRawFrameSide) + "x" +
                          std::to_string(kRawFrameSide) + ", got " + std::to_string(raw.height) +
                          "x" + std::to_string(raw.width));
  }
  if (raw.channels != 3) {
    throw ValidationError("frames must have 3 channels, got " + std::to_string(raw.channels));
  }
  const auto expected = static_cast<std::size_t>(raw.frames * raw.height * raw.width * 3);
  if (raw.pixels.size() != expected) {
    throw ValidationError("pixel buffer holds " + std::to_string(raw.pixels.size()) +
                          " bytes, expected " + std::to_string(expected));
  }

  Tensor out({kClipFrames, kClipSide, kClipSide});
  auto y = out.data();
  std::size_t k = 0;
  for (std::int64_t f = 0; f < kClipFrames; ++f)
    for (std::int64_t r = 0; r < kClipSide; ++r)
      for (std::int64_t c = 0; c < kClipSide; ++c) {
        const auto src = static_cast<std::size_t>(
            ((f * raw.height + r + kCropOffset) * raw.width + c + kCropOffset) * 3);
        const double luma = kLumaR * raw.pixels[src] + kLumaG * raw.pixels[src + 1] +
                            kLumaB * raw.pixels[src + 2];
        y[k++] = static_cast<float>(std::clamp(luma / 255.0, 0.0, 1.0));
      }
  return Clip{std::move(out)};
}

std::vector<std::uint8_t> decode_frame(std::span<const std::uint8_t> bytes,
                                       std::int64_t* height, std::int64_t* width) {
  const auto raw_size = static_cast<std::size_t>(kRawFrameSide * kRawFrameSide * 3);
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') {
    std::size_t pos = 2;
    const auto w = ppm_field(bytes, pos);
    const auto h = ppm_field(bytes, pos);
    const auto maxval = ppm_field(bytes, pos);
    if (maxval != 255) throw ValidationError("PPM maxval must be 255, got " + std::to_string(maxval));
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
      throw ValidationError("PPM header: missing separator before pixel data");
    }
    ++pos;
    const auto n = static_cast<std::size_t>(w * h * 3);
    if (bytes.size() - pos != n) {
      throw ValidationError("PPM pixel data holds " + std::to_string(bytes.size() - pos) +
                            " bytes, header implies " + std::to_string(n));
    }
    *height = h;
    *width = w;
    return {bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end()};
  }
  if (bytes.size() == raw_size) {
    *height = kRawFrameSide;
    *width = kRawFrameSide;
    return {bytes.begin(), bytes.end()};
  }
  throw ValidationError("frame is neither a P6 PPM nor a raw 256x256x3 dump (" +
                        std::to_string(bytes.size()) + " bytes)");
}

std::vector<std::uint8_t> encode_ppm(std::span<const std::uint8_t> rgb, std::int64_t height,
                                     std::int64_t width) {
  const std::string header =
      "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), rgb.begin(), rgb.end());
  return out;
}

RawFrames read_frame_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw IoError("'" + dir.string() + "' is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list '" + dir.string() + "': " + ec.message());
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });

  RawFrames raw;
  raw.frames = static_cast<std::int64_t>(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::int64_t h = 0, w = 0;
    std::vector<std::uint8_t> rgb;
    try {
      rgb = decode_frame(detail::read_file(files[i]), &h, &w);
    } catch (const ValidationError& e) {
      throw ValidationError(files[i].filename().string() + ": " + e.what());
    }
    if (i == 0) {
      raw.height = h;
      raw.width = w;
    } else if (h != raw.height || w != raw.width) {
      throw ValidationError(files[i].filename().string() + ": frame size " + std::to_string(h) +
                            "x" + std::to_string(w) + " differs from the first frame");
    }
    raw.pixels.insert(raw.pixels.end(), rgb.begin(), rgb.end());
  }
  return raw;
}

std::vector<std::uint8_t> serialize_clip(const Clip& clip) {
  std::vector<std::uint8_t> out(kClipMagic.begin(), kClipMagic.end());
  for (std::size_t axis = 0; axis < 3; ++axis) put_u32(out, static_cast<std::uint32_t>(clip.frames.dim(axis)));
  for (float v : clip.frames.data()) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u32(out, bits);
  }
  return out;
}

Clip parse_clip(std::span<const std::uint8_t> bytes) {
  const std::size_t header = kClipMagic.size() + 12;
  if (bytes.size() < header || !std::equal(kClipMagic.begin(), kClipMagic.end(), bytes.begin())) {
    throw SchemaError("byte 0", "not a clip file");
  }
  Shape shape;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    shape.push_back(get_u32(bytes, kClipMagic.size() + 4 * axis));
  }
  if (shape != Shape{kClipFrames, kClipSide, kClipSide}) {
    throw SchemaError("byte " + std::to_string(kClipMagic.size()),
                      "clip shape " + to_string(shape) + " is not 29x96x96");
  }
  const auto n = static_cast<std::size_t>(volume(shape));
  if (bytes.size() != header + 4 * n) {
    throw SchemaError("byte " + std::to_string(header),
                      "clip payload holds " + std::to_string(bytes.size() - header) +
                          " bytes, expected " + std::to_string(4 * n));
  }
  std::vector<float> data(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t bits = get_u32(bytes, header + 4 * i);
    std::memcpy(&data[i], &bits, sizeof bits);
  }
  return Clip{Tensor(std::move(shape), std::move(data))};
}

void save_clip(const Clip& clip, const std::filesystem::path& path) {
  detail::write_file(path, serialize_clip(clip));
}

Clip load_clip(const std::filesystem::path& path) { return parse_clip(detail::read_file(path)); }

}  // namespace vsrcost
