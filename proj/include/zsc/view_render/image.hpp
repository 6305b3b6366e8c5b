#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace zsc {

inline constexpr std::int32_t kBackground = -1;

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, 3 bytes per pixel

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

  bool empty() const { return width == 0 || height == 0; }
  std::uint8_t* at(int x, int y) { return &pixels[(static_cast<std::size_t>(y) * width + x) * 3]; }
  const std::uint8_t* at(int x, int y) const {
    return &pixels[(static_cast<std::size_t>(y) * width + x) * 3];
  }
  bool operator==(const RgbImage&) const = default;
};

struct FaceIndexImage {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> ids;  // face id or kBackground

  FaceIndexImage() = default;
  FaceIndexImage(int w, int h) : width(w), height(h), ids(static_cast<std::size_t>(w) * h, kBackground) {}

  std::int32_t& at(int x, int y) { return ids[static_cast<std::size_t>(y) * width + x]; }
  std::int32_t at(int x, int y) const { return ids[static_cast<std::size_t>(y) * width + x]; }
  bool operator==(const FaceIndexImage&) const = default;
};

/// Single-channel raster; mask pixels are 0 or 1.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, 0) {}

  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  bool operator==(const GrayImage&) const = default;
};

std::vector<std::uint8_t> encode_png(const RgbImage& image);
std::vector<std::uint8_t> encode_png(const GrayImage& image);
/// Decodes any PNG to 8-bit RGB. Throws Error{Protocol} on bad data.
RgbImage decode_png_rgb(std::span<const std::uint8_t> bytes);
/// Decodes any PNG to 8-bit single channel.
GrayImage decode_png_gray(std::span<const std::uint8_t> bytes);

void save_png(const std::filesystem::path& path, const RgbImage& image);
RgbImage load_png(const std::filesystem::path& path);

/// Face ids as consecutive 32-bit little-endian integers, row-major, no header.
void save_face_index_raw(const std::filesystem::path& path, const FaceIndexImage& image);
FaceIndexImage load_face_index_raw(const std::filesystem::path& path, int width, int height);

}  // namespace zsc
