#ifndef GEOFLOW_CENSUS_HPP
#define GEOFLOW_CENSUS_HPP

#include <vector>

#include "geoflow/raster.hpp"
#include "geoflow/robust.hpp"

namespace geoflow {

/// Soft census signature. entries[k] holds, for every pixel, the soft-binarized
/// difference to the k-th pixel of the (2r+1)^2 patch (row-major offsets, centre included).
struct CensusField {
  int radius = 1;
  std::vector<Plane> entries;
};

inline constexpr double kCensusSoftness = 0.0081;
inline constexpr double kSoftHammingOffset = 0.1;

CensusField census_transform(const Image& image, int radius = 1);
CensusField census_transform(const Plane& gray, int radius = 1);

/// Per-pixel soft Hamming distance sum_k d^2 / (0.1 + d^2), d = a.entries[k] - b.entries[k].
Plane soft_hamming(const CensusField& a, const CensusField& b);

struct CensusLoss {
  double value = 0.0;
  FlowField grad_forward;
  FlowField grad_backward;
};

/// Bidirectional census loss. Each direction is sum of visible sigma(rho) divided by
/// max(1, visible count); masks are constants.
CensusLoss census_loss(const Image& frame_t, const Image& frame_t1, const FlowField& forward,
                       const FlowField& backward, const OcclusionMask& occ_t,
                       const OcclusionMask& occ_t1, const RobustLossParams& params = {},
                       int radius = 1);

/// One direction of the above: compares `frame` with `other` warped by `flow`.
double census_term(const Image& frame, const Image& other, const FlowField& flow,
                   const OcclusionMask& occ, const RobustLossParams& params, int radius,
                   FlowField* grad);

}  // namespace geoflow

#endif  // GEOFLOW_CENSUS_HPP
