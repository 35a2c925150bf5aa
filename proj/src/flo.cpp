#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "geoflow/io.hpp"

namespace geoflow {

static_assert(std::endian::native == std::endian::little,
              ".flo I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'P', 'I', 'E', 'H'};

std::vector<char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <class T>
T load(const char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

}  // namespace

FlowField read_flo(const std::filesystem::path& path) {
  const std::vector<char> bytes = slurp(path);
  const std::string name = path.string();
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw BadMagicError(name + ": bad magic (expected PIEH)");
  }
  if (bytes.size() < 12) throw TruncatedError(name + ": truncated header");
  const auto width = load<std::int32_t>(bytes.data() + 4);
  const auto height = load<std::int32_t>(bytes.data() + 8);
  if (width <= 0 || height <= 0) {
    throw BadDimensionsError(name + ": non-positive dimensions " + std::to_string(width) + "x" +
                             std::to_string(height));
  }
  const std::size_t count = 2ull * static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t need = 12 + count * sizeof(float);
  if (bytes.size() < need) {
    throw TruncatedError(name + ": truncated payload, expected " + std::to_string(count) +
                         " floats, found " + std::to_string((bytes.size() - 12) / sizeof(float)));
  }
  FlowField flow(height, width);
  const char* p = bytes.data() + 12;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      flow.u(r, c) = load<float>(p);
      flow.v(r, c) = load<float>(p + 4);
      p += 8;
    }
  }
  return flow;
}

void write_flo(const std::filesystem::path& path, const FlowField& flow) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const std::int32_t dims[2] = {flow.width(), flow.height()};
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  std::vector<float> row(2 * static_cast<std::size_t>(flow.width()));
  for (int r = 0; r < flow.height(); ++r) {
    for (int c = 0; c < flow.width(); ++c) {
      row[2 * c] = static_cast<float>(flow.u(r, c));
      row[2 * c + 1] = static_cast<float>(flow.v(r, c));
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace geoflow
