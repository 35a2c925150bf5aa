#ifndef GEOFLOW_IO_HPP
#define GEOFLOW_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include "geoflow/raster.hpp"

namespace geoflow {

/// Any failure to read or decode an input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public ParseError {
 public:
  using ParseError::ParseError;
};

// .flo errors
class BadMagicError : public ParseError {
 public:
  using ParseError::ParseError;
};
class TruncatedError : public ParseError {
 public:
  using ParseError::ParseError;
};
class BadDimensionsError : public ParseError {
 public:
  using ParseError::ParseError;
};

// image errors
class UnsupportedFormatError : public ParseError {
 public:
  using ParseError::ParseError;
};
class UnsupportedDepthError : public ParseError {
 public:
  using ParseError::ParseError;
};
class CorruptImageError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Middlebury .flo: "PIEH", int32 width, int32 height, then row-major (u, v) float32,
/// all little-endian.
FlowField read_flo(const std::filesystem::path& path);
void write_flo(const std::filesystem::path& path, const FlowField& flow);

/// 8-bit PNG or binary PPM/PGM, scaled to [0, 1]; grayscale is replicated to 3 channels.
Image read_image(const std::filesystem::path& path);

/// Binary raster from an image file: 1 wherever any channel is non-zero.
BinaryPlane read_mask(const std::filesystem::path& path);

/// 8-bit RGB PNG; values are clamped to [0, 1] and rounded.
void write_png(const std::filesystem::path& path, const Image& image);

/// 8-bit grayscale PNG of a binary raster (0 or 255).
void write_mask_png(const std::filesystem::path& path, const BinaryPlane& mask);

}  // namespace geoflow

#endif  // GEOFLOW_IO_HPP
