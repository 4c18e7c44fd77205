#pragma once

#include <string>

#include "bluesky/config_io.hpp"

inline bluesky::Model bench_model(const std::string& name) {
  return bluesky::validate_config(bluesky::load_config(std::string(BLUESKY_CONFIG_DIR) + "/" + name + ".json"));
}
