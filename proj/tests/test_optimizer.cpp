#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "geoflow/adam.hpp"
#include "geoflow/census.hpp"
#include "geoflow/config.hpp"
#include "geoflow/gradcheck.hpp"
#include "geoflow/non_intersection.hpp"
#include "geoflow/objective.hpp"
#include "geoflow/occlusion.hpp"
#include "geoflow/optimize.hpp"
#include "geoflow/pyramid.hpp"
#include "geoflow/synthetic.hpp"
#include "geoflow/warp.hpp"
#include "test_util.hpp"

using namespace geoflow;

TEST_CASE("total_loss") {
  const Image frame = synthetic::texture(12, 12, 41);
  SUBCASE("identical frames, zero flows") {
    const auto b = total_loss(frame, frame, FlowField(12, 12), FlowField(12, 12));
    CHECK(b.terms.census == doctest::Approx(2 * std::pow(0.01, 0.4)).epsilon(1e-12));
    CHECK(b.terms.smoothness == 0.0);
    CHECK(b.terms.non_intersection == 0.0);
    CHECK(b.terms.non_blocking == 0.0);
    CHECK(b.terms.total == doctest::Approx(1.0 * b.terms.census).epsilon(1e-15));
  }
  SUBCASE("total equals the weighted terms") {
    std::mt19937_64 rng(42);
    LossConfig cfg;
    cfg.alpha_census = 0.7;
    cfg.alpha_smooth = 2.5;
    cfg.alpha_inter = 0.3;
    cfg.alpha_block = 0.2;
    const auto b = total_loss(frame, synthetic::texture(12, 12, 43),
                              test::random_flow(12, 12, -2, 2, rng),
                              test::random_flow(12, 12, -2, 2, rng), cfg);
    const double sum = 0.7 * b.terms.census + 2.5 * b.terms.smoothness +
                       0.3 * b.terms.non_intersection + 0.2 * b.terms.non_blocking;
    CHECK(std::abs(b.terms.total - sum) < 1e-12);
  }
  SUBCASE("all weights zero") {
    std::mt19937_64 rng(44);
    LossConfig cfg;
    cfg.alpha_census = cfg.alpha_smooth = cfg.alpha_inter = cfg.alpha_block = 0.0;
    const auto b = total_loss(frame, synthetic::texture(12, 12, 45),
                              test::random_flow(12, 12, -2, 2, rng),
                              test::random_flow(12, 12, -2, 2, rng), cfg);
    CHECK(b.terms.total == 0.0);
    CHECK((b.grad_forward.u == 0).all());
    CHECK((b.grad_forward.v == 0).all());
    CHECK((b.grad_backward.u == 0).all());
    CHECK((b.grad_backward.v == 0).all());
  }
  SUBCASE("non-intersection term matches the standalone loss") {
    FlowField seam(8, 8);
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) seam.set(r, c, c < 4 ? Vec2(4, 1) : Vec2(-4, 1));
    }
    const Image img = synthetic::texture(8, 8, 46);
    const OcclusionMask none(8, 8, 0);
    LossConfig cfg;
    // Constant backward flow contributes nothing to the geometric terms.
    const auto b = evaluate_objective(img, img, seam, FlowField(8, 8), none, none, cfg);
    const double standalone = non_intersection_loss(img, seam, none, cfg.robust).value;
    CHECK(standalone > 0.0);
    CHECK(b.terms.non_intersection == doctest::Approx(standalone).epsilon(1e-14));
    const double others = cfg.alpha_census * b.terms.census + cfg.alpha_smooth * b.terms.smoothness +
                          cfg.alpha_block * b.terms.non_blocking;
    CHECK(b.terms.total - others == doctest::Approx(cfg.alpha_inter * standalone).epsilon(1e-9));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(total_loss(frame, frame, FlowField(12, 11), FlowField(12, 12)), DimensionError);
  }
}

TEST_CASE("adam_step") {
  const AdamParams p;
  SUBCASE("zero gradient leaves the flow in place") {
    std::mt19937_64 rng(47);
    FlowField f = test::random_flow(5, 5, -1, 1, rng), b = test::random_flow(5, 5, -1, 1, rng);
    const FlowField f0 = f, b0 = b;
    AdamState s(5, 5);
    s.m_forward.u.setConstant(1.0);
    for (int i = 0; i < 10; ++i) adam_step(f, b, FlowField(5, 5), FlowField(5, 5), s, p);
    CHECK(s.m_forward.u(0, 0) == doctest::Approx(std::pow(0.9, 10)));
    CHECK(s.step == 10);
    CHECK((b.u == b0.u).all());
    // The primed first moment moves the forward flow; nothing else does.
    CHECK((f.v == f0.v).all());
  }
  SUBCASE("constant gradient approaches lr per step") {
    FlowField f(3, 3), b(3, 3);
    const FlowField g(3, 3, 0.3, -2.0);
    AdamState s(3, 3);
    FlowField prev = f;
    for (int i = 0; i < 200; ++i) {
      prev = f;
      adam_step(f, b, g, g, s, p);
    }
    CHECK((prev.u - f.u).maxCoeff() == doctest::Approx(p.learning_rate).epsilon(1e-6));
    CHECK((f.v - prev.v).maxCoeff() == doctest::Approx(p.learning_rate).epsilon(1e-6));
  }
  SUBCASE("deterministic") {
    std::mt19937_64 rng(48);
    const FlowField g = test::random_flow(4, 6, -1, 1, rng);
    FlowField f1(4, 6), b1(4, 6), f2(4, 6), b2(4, 6);
    AdamState s1(4, 6), s2(4, 6);
    for (int i = 0; i < 20; ++i) {
      adam_step(f1, b1, g, g, s1, p);
      adam_step(f2, b2, g, g, s2, p);
    }
    CHECK((f1.u == f2.u).all());
    CHECK((b1.v == b2.v).all());
  }
  SUBCASE("invalid parameters") {
    AdamParams bad;
    bad.beta1 = 1.0;
    CHECK_THROWS(bad.validate());
  }
}

TEST_CASE("pyramid") {
  SUBCASE("box average") {
    Plane p(2, 2);
    p << 0, 0, 1, 1;
    const Plane d = downsample_plane(p);
    CHECK(d.rows() == 1);
    CHECK(d.cols() == 1);
    CHECK(d(0, 0) == 0.5);
  }
  SUBCASE("constant image stays constant") {
    const Image d = downsample_image(Image(7, 9, 0.25));
    CHECK(d.height() == 4);
    CHECK(d.width() == 5);
    for (const auto& ch : d.channels) CHECK((ch == 0.25).all());
  }
  SUBCASE("flow scaling") {
    const FlowField up = upsample_flow(FlowField(5, 6, 1.0, 1.0));
    CHECK(up.height() == 10);
    CHECK(up.width() == 12);
    CHECK((up.u == 2.0).all());
    CHECK((up.v == 2.0).all());
    const FlowField down = downsample_flow(FlowField(6, 6, 3.0, -1.0));
    CHECK((down.u == 1.5).all());
    CHECK((down.v == -0.5).all());
  }
}

TEST_CASE("gradcheck thresholds") {
  CHECK(gradcheck_threshold(LossSelector::Smooth) == 1e-6);
  CHECK(gradcheck_threshold(LossSelector::Census) == 1e-3);
  CHECK(gradcheck_threshold(LossSelector::Inter) == 1e-4);
  CHECK(gradcheck_threshold(LossSelector::Block) == 1e-4);
  CHECK(parse_loss_selector("inter") == LossSelector::Inter);
  CHECK(!parse_loss_selector("bogus").has_value());
}

TEST_CASE("optimize_flow_pair") {
  SUBCASE("identical frames stay near zero") {
    const Image frame = synthetic::texture(24, 24, 51);
    OptimizeConfig opt;
    opt.iterations = 60;
    opt.levels = 2;
    const auto r = optimize_flow_pair(frame, frame, LossConfig{}, opt);
    const double mean_mag = (r.forward.u.square() + r.forward.v.square()).sqrt().mean();
    CHECK(mean_mag < 0.1);
    CHECK(!r.trace.empty());
  }
  SUBCASE("swirl initialisation loses crossings") {
    const int n = 16;
    const Image frame = synthetic::texture(n, n, 52);
    const FlowField fwd = synthetic::swirl(n, n, 3.0);
    // Backward flow as the fixed-point inverse of the forward swirl.
    FlowField bwd(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        Vec2 q(c, r);
        for (int k = 0; k < 30; ++k) {
          q = Vec2(c, r) - Vec2(sample_plane(fwd.u, q.x(), q.y()), sample_plane(fwd.v, q.x(), q.y()));
        }
        bwd.set(r, c, q - Vec2(c, r));
      }
    }
    const OcclusionMask occ0 = occlusion_mask(fwd, bwd);
    const long before = crossing_count(fwd, occ0);
    REQUIRE(before > 0);
    LossConfig cfg;
    cfg.alpha_inter = cfg.alpha_block = 1.0;
    OptimizeConfig opt;
    opt.iterations = 100;
    opt.levels = 1;
    const auto r = optimize_flow_pair(frame, frame, cfg, opt, FlowInit{fwd, bwd});
    CHECK(crossing_count(r.forward, r.occ_forward) < before);
  }
  SUBCASE("deterministic") {
    const Image a = synthetic::texture(16, 16, 53);
    const Image b = synthetic::shift(a, 1, 1);
    OptimizeConfig opt;
    opt.iterations = 20;
    opt.levels = 2;
    const auto r1 = optimize_flow_pair(a, b, LossConfig{}, opt);
    const auto r2 = optimize_flow_pair(a, b, LossConfig{}, opt);
    CHECK((r1.forward.u == r2.forward.u).all());
    CHECK((r1.backward.v == r2.backward.v).all());
  }
  SUBCASE("invalid configuration") {
    OptimizeConfig opt;
    opt.levels = 0;
    CHECK_THROWS(optimize_flow_pair(Image(8, 8), Image(8, 8), LossConfig{}, opt));
  }
}

TEST_CASE("parse_config") {
  std::istringstream in("# tuned\nalpha3 = 0.5\n k=2\nlr = 0.01  # smaller\niters = 10\n\n");
  const RunConfig cfg = parse_config(in);
  CHECK(cfg.loss.alpha_inter == 0.5);
  CHECK(cfg.loss.smooth.order == 2);
  CHECK(cfg.optimize.adam.learning_rate == 0.01);
  CHECK(cfg.optimize.iterations == 10);
  CHECK(cfg.loss.alpha_census == 1.0);
  std::istringstream unknown("gamma = 1\n");
  CHECK_THROWS_AS(parse_config(unknown), ConfigError);
  std::istringstream malformed("alpha1 = one\n");
  CHECK_THROWS_AS(parse_config(malformed), ConfigError);
  std::istringstream invalid("k = 3\n");
  CHECK_THROWS(parse_config(invalid));
}
