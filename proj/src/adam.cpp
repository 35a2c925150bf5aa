#include "geoflow/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace geoflow {

void AdamParams::validate() const {
  if (!(learning_rate > 0)) throw std::invalid_argument("adam: learning rate must be > 0");
  if (beta1 < 0 || beta1 >= 1 || beta2 < 0 || beta2 >= 1) {
    throw std::invalid_argument("adam: beta1 and beta2 must lie in [0, 1)");
  }
  if (!(epsilon > 0)) throw std::invalid_argument("adam: epsilon must be > 0");
}

namespace {

void update(Plane& param, const Plane& grad, Plane& m, Plane& v, double lr_t,
            const AdamParams& p, double bias2) {
  m = p.beta1 * m + (1.0 - p.beta1) * grad;
  v = p.beta2 * v + (1.0 - p.beta2) * grad.square();
  param -= lr_t * m / ((v / bias2).sqrt() + p.epsilon);
}

}  // namespace

void adam_step(FlowField& forward, FlowField& backward, const FlowField& grad_forward,
               const FlowField& grad_backward, AdamState& state, const AdamParams& params) {
  params.validate();
  require_same_size(forward, grad_forward, "adam_step");
  require_same_size(backward, grad_backward, "adam_step");
  require_same_size(forward, state.m_forward, "adam_step");
  require_same_size(backward, state.m_backward, "adam_step");

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double bias1 = 1.0 - std::pow(params.beta1, t);
  const double bias2 = 1.0 - std::pow(params.beta2, t);
  const double lr_t = params.learning_rate / bias1;

  update(forward.u, grad_forward.u, state.m_forward.u, state.v_forward.u, lr_t, params, bias2);
  update(forward.v, grad_forward.v, state.m_forward.v, state.v_forward.v, lr_t, params, bias2);
  update(backward.u, grad_backward.u, state.m_backward.u, state.v_backward.u, lr_t, params, bias2);
  update(backward.v, grad_backward.v, state.m_backward.v, state.v_backward.v, lr_t, params, bias2);
}

}  // namespace geoflow
