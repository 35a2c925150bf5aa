#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <random>

#include <png.h>

#include "geoflow/io.hpp"
#include "geoflow/metrics.hpp"
#include "test_util.hpp"

using namespace geoflow;

namespace {

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string flo_header(std::int32_t w, std::int32_t h) {
  std::string s = "PIEH";
  s.append(reinterpret_cast<const char*>(&w), 4);
  s.append(reinterpret_cast<const char*>(&h), 4);
  return s;
}

}  // namespace

TEST_CASE("flo round trip") {
  std::mt19937_64 rng(61);
  const FlowField f = test::random_flow(5, 7, -20, 20, rng);
  const auto path = test::tmp_path("round.flo");
  write_flo(path, f);
  CHECK(std::filesystem::file_size(path) == 12 + 8 * 35);
  const FlowField g = read_flo(path);
  REQUIRE(g.height() == 5);
  REQUIRE(g.width() == 7);
  CHECK((g.u == f.u.cast<float>().cast<double>()).all());
  CHECK((g.v == f.v.cast<float>().cast<double>()).all());
  // A second pass through float is exact.
  write_flo(path, g);
  const FlowField h = read_flo(path);
  CHECK((h.u == g.u).all());
  CHECK((h.v == g.v).all());
}

TEST_CASE("malformed flo files") {
  SUBCASE("bad magic") {
    const auto p = test::tmp_path("magic.flo");
    std::string bytes = flo_header(2, 2) + std::string(32, '\0');
    bytes.replace(0, 4, "XXXX");
    write_bytes(p, bytes);
    CHECK_THROWS_AS(read_flo(p), BadMagicError);
  }
  SUBCASE("truncated payload") {
    const auto p = test::tmp_path("short.flo");
    write_bytes(p, flo_header(10, 10) + std::string(50 * 4, '\0'));
    CHECK_THROWS_AS(read_flo(p), TruncatedError);
  }
  SUBCASE("non-positive dimensions") {
    const auto p = test::tmp_path("dims.flo");
    write_bytes(p, flo_header(0, 3));
    CHECK_THROWS_AS(read_flo(p), BadDimensionsError);
    write_bytes(p, flo_header(4, -1));
    CHECK_THROWS_AS(read_flo(p), BadDimensionsError);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(read_flo(test::tmp_path("nope.flo")), ParseError); }
}

TEST_CASE("read_image") {
  SUBCASE("white PPM") {
    const auto p = test::tmp_path("white.ppm");
    write_bytes(p, "P6\n2 2\n255\n" + std::string(12, '\xff'));
    const Image img = read_image(p);
    REQUIRE(img.height() == 2);
    REQUIRE(img.width() == 2);
    for (const auto& ch : img.channels) CHECK((ch == 1.0).all());
  }
  SUBCASE("grayscale PGM is replicated") {
    const auto p = test::tmp_path("gray.pgm");
    write_bytes(p, "P5\n# comment\n3 1\n255\n" + std::string("\x00\x80\xff", 3));
    const Image img = read_image(p);
    CHECK(img.channels[0](0, 1) == 128.0 / 255.0);
    CHECK((img.channels[0] == img.channels[1]).all());
    CHECK((img.channels[0] == img.channels[2]).all());
  }
  SUBCASE("PNG round trip") {
    std::mt19937_64 rng(62);
    Image img = test::random_image(6, 5, rng);
    for (auto& ch : img.channels) ch = (ch * 255).round() / 255;
    const auto p = test::tmp_path("rt.png");
    write_png(p, img);
    const Image back = read_image(p);
    for (int k = 0; k < 3; ++k) CHECK((back.channels[k] - img.channels[k]).abs().maxCoeff() < 1e-12);
  }
  SUBCASE("16-bit PNG is rejected") {
    png_image desc;
    std::memset(&desc, 0, sizeof desc);
    desc.version = PNG_IMAGE_VERSION;
    desc.width = 2;
    desc.height = 2;
    desc.format = PNG_FORMAT_LINEAR_RGB;
    std::vector<png_uint_16> pixels(12, 40000);
    const auto p = test::tmp_path("deep.png");
    REQUIRE(png_image_write_to_file(&desc, p.c_str(), 0, pixels.data(), 0, nullptr));
    CHECK_THROWS_AS(read_image(p), UnsupportedDepthError);
  }
  SUBCASE("16-bit PPM is rejected") {
    const auto p = test::tmp_path("deep.ppm");
    write_bytes(p, "P6\n1 1\n65535\n" + std::string(6, '\x10'));
    CHECK_THROWS_AS(read_image(p), UnsupportedDepthError);
  }
  SUBCASE("unknown format") {
    const auto p = test::tmp_path("junk.img");
    write_bytes(p, "GIF89a....");
    CHECK_THROWS_AS(read_image(p), UnsupportedFormatError);
  }
  SUBCASE("truncated PPM") {
    const auto p = test::tmp_path("cut.ppm");
    write_bytes(p, "P6\n4 4\n255\n" + std::string(10, '\x01'));
    CHECK_THROWS_AS(read_image(p), ParseError);
  }
}

TEST_CASE("epe") {
  const auto all = ValidityMask::all(4, 4);
  SUBCASE("3-4-5") {
    const auto r = epe(FlowField(4, 4, 3, 4), FlowField(4, 4), all);
    CHECK(r.epe_mean == 5.0);
    CHECK(r.epe_mean_noc == 5.0);
    CHECK(r.valid_count == 16);
    CHECK(r.error_rate == 100.0);
  }
  SUBCASE("outlier rule") {
    CHECK(epe(FlowField(4, 4), FlowField(4, 4, 100, 0), all).error_rate == 100.0);
    CHECK(!is_outlier(3.0, 0.0));
    CHECK(is_outlier(3.5, 10.0));
    CHECK(!is_outlier(4.0, 100.0));
  }
  SUBCASE("mean is symmetric, error rate is not") {
    const FlowField a(4, 4, 0, 0), b(4, 4, 80, 0);
    CHECK(epe(a, b, all).epe_mean == epe(b, a, all).epe_mean);
    // err 4 exceeds 5% of 76 but not 5% of 80.
    CHECK(epe(FlowField(4, 4, 80, 0), FlowField(4, 4, 76, 0), all).error_rate == 100.0);
    CHECK(epe(FlowField(4, 4, 76, 0), FlowField(4, 4, 80, 0), all).error_rate == 0.0);
  }
  SUBCASE("masks") {
    ValidityMask half = all;
    half.data.topRows(2).setZero();
    FlowField f(4, 4);
    f.u.bottomRows(2).setConstant(2.0);
    const auto r = epe(f, FlowField(4, 4), half);
    CHECK(r.valid_count == 8);
    CHECK(r.epe_mean == 2.0);
    OcclusionMask occ(4, 4, 0);
    occ.data.row(3).setOnes();
    f.u.row(3).setConstant(10.0);
    const auto s = epe(f, FlowField(4, 4), half, occ);
    CHECK(s.noc_count == 4);
    CHECK(s.epe_mean_noc == 2.0);
    CHECK(s.epe_mean == 6.0);
  }
  SUBCASE("no valid pixels") {
    ValidityMask none{BinaryPlane::Zero(4, 4)};
    CHECK_THROWS_AS(epe(FlowField(4, 4), FlowField(4, 4), none), MetricError);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(epe(FlowField(4, 4), FlowField(4, 5), all), DimensionError);
  }
}

TEST_CASE("flow_to_color") {
  SUBCASE("zero flow is white") {
    const Image c = flow_to_color(FlowField(3, 3));
    for (const auto& ch : c.channels) CHECK((ch == 1.0).all());
  }
  SUBCASE("constant flow gives one colour") {
    const Image c = flow_to_color(FlowField(3, 4, 1.0, 2.0), 5.0);
    for (const auto& ch : c.channels) CHECK((ch == ch(0, 0)).all());
  }
  SUBCASE("opposite directions differ") {
    const Image a = flow_to_color(FlowField(2, 2, 1.0, 0.0), 1.0);
    const Image b = flow_to_color(FlowField(2, 2, -1.0, 0.0), 1.0);
    CHECK((a.at(0, 0) - b.at(0, 0)).abs().maxCoeff() > 0.2);
  }
  SUBCASE("values stay in range") {
    std::mt19937_64 rng(63);
    const Image c = flow_to_color(test::random_flow(16, 16, -30, 30, rng));
    for (const auto& ch : c.channels) {
      CHECK(ch.minCoeff() >= 0.0);
      CHECK(ch.maxCoeff() <= 1.0);
    }
  }
}
