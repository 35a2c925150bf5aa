#ifndef GEOFLOW_ADAM_HPP
#define GEOFLOW_ADAM_HPP

#include "geoflow/raster.hpp"

namespace geoflow {

struct AdamParams {
  double learning_rate = 0.05;  // pixels per step
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const;
};

/// Moments for the forward/backward flow pair.
struct AdamState {
  FlowField m_forward, v_forward;
  FlowField m_backward, v_backward;
  long step = 0;

  AdamState() = default;
  AdamState(int height, int width)
      : m_forward(height, width), v_forward(height, width), m_backward(height, width),
        v_backward(height, width) {}
};

/// One bias-corrected Adam update of both flows in place.
void adam_step(FlowField& forward, FlowField& backward, const FlowField& grad_forward,
               const FlowField& grad_backward, AdamState& state, const AdamParams& params);

}  // namespace geoflow

#endif  // GEOFLOW_ADAM_HPP
