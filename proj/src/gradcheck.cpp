#include "geoflow/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "geoflow/census.hpp"
#include "geoflow/geometry.hpp"
#include "geoflow/non_blocking.hpp"
#include "geoflow/non_intersection.hpp"
#include "geoflow/smoothness.hpp"
#include "geoflow/synthetic.hpp"
#include "geoflow/warp.hpp"

namespace geoflow {

std::optional<LossSelector> parse_loss_selector(const std::string& name) {
  if (name == "census") return LossSelector::Census;
  if (name == "smooth") return LossSelector::Smooth;
  if (name == "inter") return LossSelector::Inter;
  if (name == "block") return LossSelector::Block;
  return std::nullopt;
}

const char* to_string(LossSelector s) {
  switch (s) {
    case LossSelector::Census: return "census";
    case LossSelector::Smooth: return "smooth";
    case LossSelector::Inter: return "inter";
    case LossSelector::Block: return "block";
  }
  return "?";
}

double gradcheck_threshold(LossSelector s) {
  switch (s) {
    case LossSelector::Census: return 1e-3;
    case LossSelector::Smooth: return 1e-6;
    case LossSelector::Inter: return 1e-4;
    case LossSelector::Block: return 1e-4;
  }
  return 0.0;
}

double gradcheck_step(LossSelector s) { return s == LossSelector::Census ? 1e-3 : 1e-4; }

namespace {

OcclusionMask random_mask(int h, int w, double occluded_fraction, std::mt19937_64& rng) {
  std::bernoulli_distribution occluded(occluded_fraction);
  OcclusionMask m(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) m.data(r, c) = occluded(rng) ? 1 : 0;
  }
  return m;
}

FlowField random_flow(int h, int w, double amplitude, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-amplitude, amplitude);
  FlowField f(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) f.set(r, c, Vec2(d(rng), d(rng)));
  }
  return f;
}

using Signature = std::vector<int>;

void census_signature(const FlowField& flow, Signature& sig) {
  const CoordField coords = displace(flow);
  for (int r = 0; r < flow.height(); ++r) {
    for (int c = 0; c < flow.width(); ++c) {
      const auto w = bilinear_weights(coords.x(r, c), coords.y(r, c), flow.height(), flow.width());
      sig.insert(sig.end(), {w.row0, w.col0, w.clamped_x ? 1 : 0, w.clamped_y ? 1 : 0});
    }
  }
}

void smooth_signature(const FlowField& flow, int k, Signature& sig) {
  const int h = flow.height(), w = flow.width();
  for (int axis = 0; axis < 2; ++axis) {
    const int dr = axis == 1, dc = axis == 0;
    for (int r = 0; r < h - k * dr; ++r) {
      for (int c = 0; c < w - k * dc; ++c) {
        for (const Plane* p : {&flow.u, &flow.v}) {
          const double diff = k == 1 ? (*p)(r + dr, c + dc) - (*p)(r, c)
                                     : (*p)(r + 2 * dr, c + 2 * dc) - 2 * (*p)(r + dr, c + dc) +
                                           (*p)(r, c);
          sig.push_back(diff > 0 ? 1 : (diff < 0 ? -1 : 0));
        }
      }
    }
  }
}

void inter_signature(const FlowField& flow, Signature& sig) {
  for (int r = 1; r <= flow.height() - 2; ++r) {
    for (int c = 1; c <= flow.width() - 2; ++c) {
      for (int i = 0; i < 8; ++i) sig.push_back(unit_pair_coeffs({r, c}, i, flow).intersects());
    }
  }
}

void block_signature(const FlowField& flow, Signature& sig) {
  const auto mapped = [&](int r, int c) { return Vec2(c + flow.u(r, c), r + flow.v(r, c)); };
  for (int r = 0; r <= flow.height() - 4; ++r) {
    for (int c = 0; c <= flow.width() - 4; ++c) {
      std::array<Vec2, 4> q;
      for (int k = 0; k < 4; ++k) {
        q[k] = mapped(r + BlockUnit::kQuad[k].dr, c + BlockUnit::kQuad[k].dc);
      }
      for (const auto& o : BlockUnit::kRing) {
        const Vec2 p = mapped(r + o.dr, c + o.dc);
        const bool inside = in_quadrilateral<double>(p, q[0], q[1], q[2], q[3]).in_quad;
        int side = -1;
        if (inside) {
          double best = 0.0;
          for (int s = 0; s < 4; ++s) {
            const auto d = point_segment_distance<double>(p, q[s], q[(s + 1) % 4]);
            if (side < 0 || d.distance < best) {
              best = d.distance;
              side = s;
            }
            // Closest point moving between a side's interior and an endpoint is a kink.
            sig.push_back(d.t <= 0.0 ? 0 : (d.t >= 1.0 ? 2 : 1));
          }
        }
        sig.push_back(side);
      }
    }
  }
}

Signature signature(LossSelector s, const GradCheckScene& scene, const LossConfig& cfg) {
  Signature sig;
  for (const FlowField* f : {&scene.forward, &scene.backward}) {
    switch (s) {
      case LossSelector::Census: census_signature(*f, sig); break;
      case LossSelector::Smooth: smooth_signature(*f, cfg.smooth.order, sig); break;
      case LossSelector::Inter: inter_signature(*f, sig); break;
      case LossSelector::Block: block_signature(*f, sig); break;
    }
  }
  return sig;
}

double& component_ref(GradCheckScene& scene, int field, int comp, int r, int c) {
  FlowField& f = field == 0 ? scene.forward : scene.backward;
  return comp == 0 ? f.u(r, c) : f.v(r, c);
}

double component_of(const SelectedLoss& l, int field, int comp, int r, int c) {
  const FlowField& g = field == 0 ? l.grad_forward : l.grad_backward;
  return comp == 0 ? g.u(r, c) : g.v(r, c);
}

}  // namespace

GradCheckScene make_gradcheck_scene(LossSelector s, std::uint64_t seed, int size) {
  std::mt19937_64 rng(seed);
  GradCheckScene scene;
  scene.frame_t = synthetic::texture(size, size, seed);
  scene.frame_t1 = synthetic::shift(scene.frame_t, 1, 1);
  double amplitude = 2.0;
  switch (s) {
    case LossSelector::Census: amplitude = 2.0; break;
    case LossSelector::Smooth: amplitude = 3.0; break;
    case LossSelector::Inter: amplitude = 1.5; break;
    case LossSelector::Block: amplitude = 1.2; break;
  }
  scene.forward = random_flow(size, size, amplitude, rng);
  scene.backward = random_flow(size, size, amplitude, rng);
  scene.occ_t = random_mask(size, size, 0.1, rng);
  scene.occ_t1 = random_mask(size, size, 0.1, rng);
  return scene;
}

SelectedLoss evaluate_selected(LossSelector s, const GradCheckScene& sc, const LossConfig& cfg) {
  SelectedLoss out;
  switch (s) {
    case LossSelector::Census: {
      auto l = census_loss(sc.frame_t, sc.frame_t1, sc.forward, sc.backward, sc.occ_t, sc.occ_t1,
                           cfg.robust, cfg.census_radius);
      return {l.value, std::move(l.grad_forward), std::move(l.grad_backward)};
    }
    case LossSelector::Smooth: {
      auto f = smoothness_loss(sc.forward, sc.frame_t, cfg.smooth);
      auto b = smoothness_loss(sc.backward, sc.frame_t1, cfg.smooth);
      return {f.value + b.value, std::move(f.grad), std::move(b.grad)};
    }
    case LossSelector::Inter: {
      auto f = non_intersection_loss(sc.frame_t, sc.forward, sc.occ_t, cfg.robust);
      auto b = non_intersection_loss(sc.frame_t1, sc.backward, sc.occ_t1, cfg.robust);
      return {f.value + b.value, std::move(f.grad), std::move(b.grad)};
    }
    case LossSelector::Block: {
      auto f = non_blocking_loss(sc.forward, sc.occ_t);
      auto b = non_blocking_loss(sc.backward, sc.occ_t1);
      return {f.value + b.value, std::move(f.grad), std::move(b.grad)};
    }
  }
  return out;
}

GradCheckResult finite_diff_check(LossSelector s, const GradCheckScene& scene,
                                  const LossConfig& cfg, int probe_count, double step,
                                  std::uint64_t seed) {
  if (!(step > 0)) throw std::invalid_argument("finite_diff_check: step must be > 0");
  const int h = scene.forward.height(), w = scene.forward.width();
  const SelectedLoss base = evaluate_selected(s, scene, cfg);
  const Signature base_sig = signature(s, scene, cfg);

  struct Probe {
    int field, comp, row, col;
  };
  std::vector<Probe> all, active;
  double grad_max = 0.0;
  for (int f = 0; f < 2; ++f) {
    for (int k = 0; k < 2; ++k) {
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
          const double g = component_of(base, f, k, r, c);
          all.push_back({f, k, r, c});
          if (g != 0.0) active.push_back({f, k, r, c});
          grad_max = std::max(grad_max, std::abs(g));
        }
      }
    }
  }
  const double floor = std::max(1e-3 * grad_max, 1e-300);

  std::mt19937_64 rng(seed);
  GradCheckResult result;
  GradCheckScene probe_scene = scene;
  const long max_attempts = 50L * std::max(1, probe_count);
  for (long attempt = 0; result.probes < probe_count && attempt < max_attempts; ++attempt) {
    // Alternate between components with a non-zero gradient and arbitrary ones.
    const auto& pool = (result.probes % 2 == 0 && !active.empty()) ? active : all;
    const Probe p = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];

    double& x = component_ref(probe_scene, p.field, p.comp, p.row, p.col);
    const double x0 = x;
    x = x0 + step;
    const double f_plus = evaluate_selected(s, probe_scene, cfg).value;
    const bool same_plus = signature(s, probe_scene, cfg) == base_sig;
    x = x0 - step;
    const double f_minus = evaluate_selected(s, probe_scene, cfg).value;
    const bool same_minus = signature(s, probe_scene, cfg) == base_sig;
    x = x0;
    if (!same_plus || !same_minus) {
      ++result.resampled;
      continue;
    }

    const double analytic = component_of(base, p.field, p.comp, p.row, p.col);
    const double numeric = (f_plus - f_minus) / (2.0 * step);
    const double rel =
        std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), floor});
    ++result.probes;
    if (rel >= result.max_rel_error) {
      result.max_rel_error = rel;
      result.field = p.field;
      result.component = p.comp;
      result.row = p.row;
      result.col = p.col;
      result.analytic = analytic;
      result.numeric = numeric;
    }
  }
  return result;
}

}  // namespace geoflow
