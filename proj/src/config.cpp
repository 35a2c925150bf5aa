#include "geoflow/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

namespace geoflow {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& text, const std::string& where) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ConfigError(where + ": bad value '" + text + "'");
  return value;
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  auto& l = cfg.loss;
  auto& o = cfg.optimize;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const auto real = [](double& field) -> Setter {
    return [&field](const std::string& v, const std::string& w) { field = parse_number<double>(v, w); };
  };
  const auto integer = [](int& field) -> Setter {
    return [&field](const std::string& v, const std::string& w) { field = parse_number<int>(v, w); };
  };
  const std::map<std::string, Setter> setters = {
      {"alpha1", real(l.alpha_census)},
      {"alpha2", real(l.alpha_smooth)},
      {"alpha3", real(l.alpha_inter)},
      {"alpha4", real(l.alpha_block)},
      {"k", integer(l.smooth.order)},
      {"mu", real(l.smooth.mu)},
      {"epsilon", real(l.robust.epsilon)},
      {"q", real(l.robust.q)},
      {"occ_alpha", real(l.occlusion.alpha_consistency)},
      {"occ_beta", real(l.occlusion.beta_offset)},
      {"census_radius", integer(l.census_radius)},
      {"lr", real(o.adam.learning_rate)},
      {"beta1", real(o.adam.beta1)},
      {"beta2", real(o.adam.beta2)},
      {"iters", integer(o.iterations)},
      {"levels", integer(o.levels)},
      {"refresh", integer(o.refresh)},
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(where + ": unknown key '" + key + "'");
    it->second(value, where);
  }

  try {
    l.validate();
    o.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_config(in, path.string());
}

}  // namespace geoflow
