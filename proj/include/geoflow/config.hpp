#ifndef GEOFLOW_CONFIG_HPP
#define GEOFLOW_CONFIG_HPP

#include <filesystem>
#include <istream>
#include <string>

#include "geoflow/io.hpp"
#include "geoflow/objective.hpp"
#include "geoflow/optimize.hpp"

namespace geoflow {

struct RunConfig {
  LossConfig loss;
  OptimizeConfig optimize;
};

class ConfigError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Plain-text `key = value` lines; `#` starts a comment. Recognised keys:
///   alpha1 alpha2 alpha3 alpha4 k mu epsilon q occ_alpha occ_beta census_radius
///   lr beta1 beta2 iters levels refresh
/// Unspecified keys keep their defaults. Unknown keys and malformed values are errors.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace geoflow

#endif  // GEOFLOW_CONFIG_HPP
