#pragma once

#include <string>

#include "bluesky/config_io.hpp"

#ifndef BLUESKY_CONFIG_DIR
#error "BLUESKY_CONFIG_DIR must point at the configs/ directory"
#endif

namespace bluesky::testing {

inline std::string demo_path(const std::string& name) {
  return std::string(BLUESKY_CONFIG_DIR) + "/" + name + ".json";
}

inline ModelConfig demo_config(const std::string& name, const std::vector<ConfigOverride>& overrides = {}) {
  return load_config(demo_path(name), overrides);
}

inline Model demo_model(const std::string& name, const std::vector<ConfigOverride>& overrides = {}) {
  return validate_config(demo_config(name, overrides));
}

}  // namespace bluesky::testing
