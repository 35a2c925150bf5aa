#include "geoflow/census.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geoflow/warp.hpp"

namespace geoflow {

namespace {

double soft_sign(double d) { return d / std::sqrt(kCensusSoftness + d * d); }

double soft_sign_derivative(double d) {
  const double s = kCensusSoftness + d * d;
  return kCensusSoftness / (s * std::sqrt(s));
}

double soft_hamming_term(double d) { return d * d / (kSoftHammingOffset + d * d); }

double soft_hamming_derivative(double d) {
  const double s = kSoftHammingOffset + d * d;
  return 2.0 * kSoftHammingOffset * d / (s * s);
}

}  // namespace

CensusField census_transform(const Plane& gray, int radius) {
  if (radius < 1) throw std::invalid_argument("census_transform: radius must be >= 1");
  const int h = static_cast<int>(gray.rows()), w = static_cast<int>(gray.cols());
  CensusField out;
  out.radius = radius;
  for (int dr = -radius; dr <= radius; ++dr) {
    for (int dc = -radius; dc <= radius; ++dc) {
      Plane e(h, w);
      for (int r = 0; r < h; ++r) {
        const int rr = std::clamp(r + dr, 0, h - 1);
        for (int c = 0; c < w; ++c) {
          const int cc = std::clamp(c + dc, 0, w - 1);
          e(r, c) = soft_sign(gray(rr, cc) - gray(r, c));
        }
      }
      out.entries.push_back(std::move(e));
    }
  }
  return out;
}

CensusField census_transform(const Image& image, int radius) {
  return census_transform(image.gray(), radius);
}

Plane soft_hamming(const CensusField& a, const CensusField& b) {
  if (a.entries.size() != b.entries.size() || a.entries.empty()) {
    throw DimensionError("soft_hamming: census fields differ in patch size");
  }
  Plane out = Plane::Zero(a.entries[0].rows(), a.entries[0].cols());
  for (std::size_t k = 0; k < a.entries.size(); ++k) {
    out += (a.entries[k] - b.entries[k]).unaryExpr(&soft_hamming_term);
  }
  return out;
}

double census_term(const Image& frame, const Image& other, const FlowField& flow,
                   const OcclusionMask& occ, const RobustLossParams& params, int radius,
                   FlowField* grad) {
  require_same_size(frame, other, "census_loss");
  require_same_size(frame, flow, "census_loss");
  require_same_size(frame, occ, "census_loss");
  const int h = frame.height(), w = frame.width();

  const SampledImage warped = bilinear_sample_with_grad(other, displace(flow));
  const Plane warped_gray = warped.values.gray();
  const CensusField sig_frame = census_transform(frame, radius);
  const CensusField sig_warped = census_transform(warped_gray, radius);
  const Plane rho = soft_hamming(sig_warped, sig_frame);

  const double norm = 1.0 / std::max(1, occ.visible_count());
  double value = 0.0;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (occ.visible(r, c)) value += robust_sigma(rho(r, c), params);
    }
  }
  value *= norm;
  if (!grad) return value;

  // Backprop: rho -> warped census entries -> warped gray -> sample coordinates.
  Plane d_gray = Plane::Zero(h, w);
  int k = 0;
  for (int dr = -radius; dr <= radius; ++dr) {
    for (int dc = -radius; dc <= radius; ++dc, ++k) {
      const Plane& sw = sig_warped.entries[k];
      const Plane& sf = sig_frame.entries[k];
      for (int r = 0; r < h; ++r) {
        const int rr = std::clamp(r + dr, 0, h - 1);
        for (int c = 0; c < w; ++c) {
          if (!occ.visible(r, c)) continue;
          const int cc = std::clamp(c + dc, 0, w - 1);
          if (rr == r && cc == c) continue;
          const double d_rho = norm * robust_sigma_derivative(rho(r, c), params);
          const double d_entry = d_rho * soft_hamming_derivative(sw(r, c) - sf(r, c));
          const double d_diff =
              d_entry * soft_sign_derivative(warped_gray(rr, cc) - warped_gray(r, c));
          d_gray(rr, cc) += d_diff;
          d_gray(r, c) -= d_diff;
        }
      }
    }
  }
  *grad = FlowField(h, w);
  for (int ch = 0; ch < 3; ++ch) {
    grad->u += d_gray * warped.d_dx[ch] / 3.0;
    grad->v += d_gray * warped.d_dy[ch] / 3.0;
  }
  return value;
}

CensusLoss census_loss(const Image& frame_t, const Image& frame_t1, const FlowField& forward,
                       const FlowField& backward, const OcclusionMask& occ_t,
                       const OcclusionMask& occ_t1, const RobustLossParams& params, int radius) {
  if (!params.valid()) throw std::invalid_argument("census_loss: invalid robust parameters");
  require_same_size(frame_t, frame_t1, "census_loss");
  CensusLoss out;
  out.value = census_term(frame_t, frame_t1, forward, occ_t, params, radius, &out.grad_forward) +
              census_term(frame_t1, frame_t, backward, occ_t1, params, radius,
                          &out.grad_backward);
  return out;
}

}  // namespace geoflow
