#include <png.h>

#include <cstring>
#include <fstream>

#include "zsc/common/error.hpp"
#include "zsc/common/text.hpp"
#include "zsc/view_render/image.hpp"

namespace zsc {
namespace {

std::vector<std::uint8_t> encode(const std::uint8_t* data, int w, int h, png_uint_32 format) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(w);
  image.height = static_cast<png_uint_32>(h);
  image.format = format;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, data, 0, nullptr))
    fail(ErrorKind::Invariant, std::string("PNG sizing failed: ") + image.message);
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, data, 0, nullptr))
    fail(ErrorKind::Invariant, std::string("PNG encoding failed: ") + image.message);
  out.resize(size);
  return out;
}

std::vector<std::uint8_t> decode(std::span<const std::uint8_t> bytes, png_uint_32 format,
                                 int* w, int* h) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
    fail(ErrorKind::Protocol, std::string("invalid PNG: ") + image.message);
  image.format = format;
  std::vector<std::uint8_t> out(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, out.data(), 0, nullptr)) {
    png_image_free(&image);
    fail(ErrorKind::Protocol, std::string("invalid PNG: ") + image.message);
  }
  *w = static_cast<int>(image.width);
  *h = static_cast<int>(image.height);
  return out;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const RgbImage& image) {
  return encode(image.pixels.data(), image.width, image.height, PNG_FORMAT_RGB);
}

std::vector<std::uint8_t> encode_png(const GrayImage& image) {
  return encode(image.pixels.data(), image.width, image.height, PNG_FORMAT_GRAY);
}

RgbImage decode_png_rgb(std::span<const std::uint8_t> bytes) {
  RgbImage img;
  img.pixels = decode(bytes, PNG_FORMAT_RGB, &img.width, &img.height);
  return img;
}

GrayImage decode_png_gray(std::span<const std::uint8_t> bytes) {
  GrayImage img;
  img.pixels = decode(bytes, PNG_FORMAT_GRAY, &img.width, &img.height);
  return img;
}

void save_png(const std::filesystem::path& path, const RgbImage& image) {
  const auto bytes = encode_png(image);
  write_text_file(path.string(),
                  std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

RgbImage load_png(const std::filesystem::path& path) {
  const std::string data = read_text_file(path.string());
  return decode_png_rgb(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

void save_face_index_raw(const std::filesystem::path& path, const FaceIndexImage& image) {
  std::string out(image.ids.size() * 4, '\0');
  for (std::size_t i = 0; i < image.ids.size(); ++i) {
    const auto v = static_cast<std::uint32_t>(image.ids[i]);
    for (int b = 0; b < 4; ++b) out[i * 4 + b] = static_cast<char>((v >> (8 * b)) & 0xFF);
  }
  write_text_file(path.string(), out);
}

FaceIndexImage load_face_index_raw(const std::filesystem::path& path, int width, int height) {
  const std::string data = read_text_file(path.string());
  FaceIndexImage img(width, height);
  if (data.size() != img.ids.size() * 4)
    fail(ErrorKind::Input, "face index raster size mismatch: " + path.string());
  for (std::size_t i = 0; i < img.ids.size(); ++i) {
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[i * 4 + b])) << (8 * b);
    img.ids[i] = static_cast<std::int32_t>(v);
  }
  return img;
}

}  // namespace zsc
