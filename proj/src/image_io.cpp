#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include <png.h>

#include "geoflow/io.hpp"

namespace geoflow {

namespace {

constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Image from_interleaved(const unsigned char* data, int height, int width, int channels) {
  Image img(height, width);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const unsigned char* px = data + (static_cast<std::size_t>(r) * width + c) * channels;
      for (int k = 0; k < 3; ++k) img.channels[k](r, c) = px[channels == 1 ? 0 : k] / 255.0;
    }
  }
  return img;
}

Image decode_png(const std::vector<unsigned char>& bytes, const std::string& name) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw CorruptImageError(name + ": " + image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw UnsupportedDepthError(name + ": 16-bit PNG is not supported (8-bit only)");
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    throw CorruptImageError(name + ": " + image.message);
  }
  return from_interleaved(buffer.data(), static_cast<int>(image.height),
                          static_cast<int>(image.width), 3);
}

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string netpbm_token(const std::vector<unsigned char>& bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(bytes[pos])) {
      ++pos;
    } else {
      break;
    }
  }
  std::string tok;
  while (pos < bytes.size() && !std::isspace(bytes[pos]) && bytes[pos] != '#') {
    tok.push_back(static_cast<char>(bytes[pos++]));
  }
  return tok;
}

Image decode_netpbm(const std::vector<unsigned char>& bytes, const std::string& name) {
  std::size_t pos = 2;
  const int channels = bytes[1] == '6' ? 3 : 1;
  int dims[3];
  for (int& d : dims) {
    const std::string tok = netpbm_token(bytes, pos);
    try {
      std::size_t used = 0;
      d = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw CorruptImageError(name + ": malformed PPM header");
    }
  }
  const int width = dims[0], height = dims[1], maxval = dims[2];
  if (width <= 0 || height <= 0) throw CorruptImageError(name + ": non-positive dimensions");
  if (maxval <= 0) throw CorruptImageError(name + ": bad maxval");
  if (maxval > 255) throw UnsupportedDepthError(name + ": 16-bit PPM is not supported");
  ++pos;  // single whitespace after maxval
  const std::size_t need = static_cast<std::size_t>(width) * height * channels;
  if (bytes.size() < pos + need) throw CorruptImageError(name + ": truncated pixel data");
  Image img = from_interleaved(bytes.data() + pos, height, width, channels);
  if (maxval != 255) {
    for (auto& ch : img.channels) ch *= 255.0 / maxval;
  }
  return img;
}

}  // namespace

Image read_image(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  const std::string name = path.string();
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0) {
    return decode_png(bytes, name);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '6' || bytes[1] == '5')) {
    return decode_netpbm(bytes, name);
  }
  throw UnsupportedFormatError(name + ": unsupported image format (expected PNG or binary PPM/PGM)");
}

BinaryPlane read_mask(const std::filesystem::path& path) {
  const Image img = read_image(path);
  return ((img.channels[0] > 0) || (img.channels[1] > 0) || (img.channels[2] > 0))
      .cast<std::uint8_t>();
}

void write_png(const std::filesystem::path& path, const Image& image) {
  const int h = image.height(), w = image.width();
  std::vector<unsigned char> buffer(static_cast<std::size_t>(h) * w * 3);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < 3; ++k) {
        const double v = std::clamp(image.channels[k](r, c), 0.0, 1.0);
        buffer[(static_cast<std::size_t>(r) * w + c) * 3 + k] =
            static_cast<unsigned char>(std::lround(v * 255.0));
      }
    }
  }
  png_image out;
  std::memset(&out, 0, sizeof(out));
  out.version = PNG_IMAGE_VERSION;
  out.width = static_cast<png_uint_32>(w);
  out.height = static_cast<png_uint_32>(h);
  out.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&out, path.c_str(), 0, buffer.data(), 0, nullptr)) {
    throw IoError("cannot write " + path.string() + ": " + out.message);
  }
}

void write_mask_png(const std::filesystem::path& path, const BinaryPlane& mask) {
  std::vector<unsigned char> buffer(static_cast<std::size_t>(mask.size()));
  for (Eigen::Index r = 0; r < mask.rows(); ++r) {
    for (Eigen::Index c = 0; c < mask.cols(); ++c) {
      buffer[r * mask.cols() + c] = mask(r, c) ? 255 : 0;
    }
  }
  png_image out;
  std::memset(&out, 0, sizeof(out));
  out.version = PNG_IMAGE_VERSION;
  out.width = static_cast<png_uint_32>(mask.cols());
  out.height = static_cast<png_uint_32>(mask.rows());
  out.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&out, path.c_str(), 0, buffer.data(), 0, nullptr)) {
    throw IoError("cannot write " + path.string() + ": " + out.message);
  }
}

}  // namespace geoflow
