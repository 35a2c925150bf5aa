#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geoflow/occlusion.hpp"
#include "geoflow/synthetic.hpp"
#include "geoflow/warp.hpp"
#include "test_util.hpp"

using namespace geoflow;

TEST_CASE("displace adds the flow to the pixel grid") {
  SUBCASE("zero flow gives the integer grid") {
    const auto coords = displace(FlowField(4, 6));
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 6; ++c) {
        CHECK(coords.x(r, c) == c);
        CHECK(coords.y(r, c) == r);
      }
    }
  }
  SUBCASE("uniform translation") {
    const auto coords = displace(FlowField(5, 5, 3.0, 2.0));
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 5; ++c) {
        CHECK(coords.x(r, c) == c + 3.0);
        CHECK(coords.y(r, c) == r + 2.0);
      }
    }
  }
  SUBCASE("single pixel") {
    FlowField f(5, 5);
    f.set(1, 1, Vec2(-0.5, 2.25));
    const auto coords = displace(f);
    CHECK(coords.x(1, 1) == 0.5);
    CHECK(coords.y(1, 1) == 3.25);
  }
}

TEST_CASE("bilinear_sample") {
  std::mt19937_64 rng(3);
  SUBCASE("constant image stays constant") {
    const Image src(6, 7, 0.37);
    const auto coords = displace(test::random_flow(6, 7, -10, 10, rng));
    const Image out = bilinear_sample(src, coords);
    for (const auto& ch : out.channels) CHECK((ch - 0.37).abs().maxCoeff() < 1e-15);
  }
  SUBCASE("integer grid coordinates reproduce the source exactly") {
    const Image src = test::random_image(5, 8, rng);
    const Image out = bilinear_sample(src, displace(FlowField(5, 8)));
    for (int k = 0; k < 3; ++k) CHECK((out.channels[k] == src.channels[k]).all());
  }
  SUBCASE("half-pixel on a column ramp") {
    const int h = 6, w = 10;
    Image ramp(h, w);
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) ramp.set(r, c, Color::Constant(double(c) / w));
    }
    CoordField coords = displace(FlowField(h, w));
    coords.x(2, 4) += 0.5;
    const Image out = bilinear_sample(ramp, coords);
    CHECK(out.channels[0](2, 4) == doctest::Approx(4.5 / w).epsilon(1e-14));
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(bilinear_sample(Image(4, 4), displace(FlowField(4, 5))), DimensionError);
  }
}

TEST_CASE("bilinear weights are a convex combination") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-3.0, 12.0);
  for (int n = 0; n < 5000; ++n) {
    const auto w = bilinear_weights(d(rng), d(rng), 9, 9);
    const auto ws = w.weights();
    double sum = 0.0;
    for (double x : ws) {
      CHECK(x >= 0.0);
      sum += x;
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("sampling partials match central differences") {
  std::mt19937_64 rng(5);
  const Image src = test::random_image(8, 9, rng);
  std::uniform_real_distribution<double> d(0.0, 7.0);
  const double h = 1e-4;
  int checked = 0;
  while (checked < 500) {
    const double x = d(rng), y = d(rng);
    if (std::abs(x - std::round(x)) < 0.01 || std::abs(y - std::round(y)) < 0.01) continue;
    ++checked;
    for (const auto& ch : src.channels) {
      double dx = 0, dy = 0;
      sample_plane(ch, x, y, &dx, &dy);
      const double fx = (sample_plane(ch, x + h, y) - sample_plane(ch, x - h, y)) / (2 * h);
      const double fy = (sample_plane(ch, x, y + h) - sample_plane(ch, x, y - h)) / (2 * h);
      const auto rel = [](double a, double b) {
        return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-8});
      };
      CHECK(rel(dx, fx) < 1e-5);
      CHECK(rel(dy, fy) < 1e-5);
    }
  }
}

TEST_CASE("warp") {
  std::mt19937_64 rng(7);
  SUBCASE("zero flow is the identity") {
    const Image img = test::random_image(6, 6, rng);
    const Image out = warp(img, FlowField(6, 6));
    for (int k = 0; k < 3; ++k) CHECK((out.channels[k] == img.channels[k]).all());
  }
  SUBCASE("translation is undone in the interior") {
    const Image frame_t = synthetic::texture(12, 16, 4);
    const Image frame_t1 = synthetic::shift(frame_t, 3, 0);
    const Image out = warp(frame_t1, FlowField(12, 16, 3.0, 0.0));
    for (int r = 0; r < 12; ++r) {
      for (int c = 0; c + 3 < 16; ++c) CHECK((out.at(r, c) == frame_t.at(r, c)).all());
    }
  }
  SUBCASE("flow leaving the frame samples the clamped border") {
    const Image img = test::random_image(5, 5, rng);
    const Image out = warp(img, FlowField(5, 5, 100.0, -100.0));
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 5; ++c) {
        CHECK(out.at(r, c).allFinite());
        CHECK((out.at(r, c) == img.at(0, 4)).all());
      }
    }
  }
}

TEST_CASE("occlusion_mask") {
  const OcclusionParams params;
  SUBCASE("zero flows are fully consistent") {
    const auto m = occlusion_mask(FlowField(8, 8), FlowField(8, 8), params);
    CHECK(m.visible_count() == 64);
  }
  SUBCASE("opposite translations are consistent wherever the target is in frame") {
    const auto m = occlusion_mask(FlowField(8, 12, 5, 0), FlowField(8, 12, -5, 0), params);
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 12; ++c) CHECK(m.occluded(r, c) == (c + 5 > 11));
    }
  }
  SUBCASE("missing backward flow flags every in-frame pixel") {
    // |(5,0)|^2 = 25 > 0.01 * 25 + 0.5
    const auto m = occlusion_mask(FlowField(8, 12, 5, 0), FlowField(8, 12), params);
    CHECK(m.visible_count() == 0);
  }
  SUBCASE("exact inverse pair gives an empty in-frame mask") {
    std::mt19937_64 rng(9);
    // An affine flow and its exact inverse sampled on the grid.
    const int h = 10, w = 10;
    FlowField fwd(h, w), bwd(h, w);
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        fwd.set(r, c, Vec2(0.1 * r, 0.0));
        bwd.set(r, c, Vec2(-0.1 * r, 0.0));  // v = 0 keeps rows, so inverse is exact
      }
    }
    const auto m = occlusion_mask(fwd, bwd, params);
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) CHECK(m.occluded(r, c) == (c + 0.1 * r > w - 1));
    }
  }
  SUBCASE("binary and deterministic") {
    std::mt19937_64 rng(10);
    const auto f = test::random_flow(9, 9, -3, 3, rng);
    const auto b = test::random_flow(9, 9, -3, 3, rng);
    const auto m1 = occlusion_mask(f, b, params);
    const auto m2 = occlusion_mask(f, b, params);
    CHECK((m1.data == m2.data).all());
    CHECK(((m1.data == 0) || (m1.data == 1)).all());
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(occlusion_mask(FlowField(4, 4), FlowField(4, 5), params), DimensionError);
  }
}
