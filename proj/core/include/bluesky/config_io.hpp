#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bluesky/model.hpp"

namespace bluesky {

/// A `key=value` override. Keys are dotted paths into the config document
/// ("gamma", "alpha.cos.0", "coupling_fy.1.constant"); values are parsed as
/// JSON and fall back to a bare string.
using ConfigOverride = std::pair<std::string, std::string>;

ConfigOverride parse_override(const std::string& text);

/// Parses a config document. Throws Error{ConfigParse} on malformed input or
/// missing keys; semantic checks are left to validate_config().
ModelConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ModelConfig& cfg);

FourierSeries series_from_json(const nlohmann::json& doc);
nlohmann::json series_to_json(const FourierSeries& s);

void apply_overrides(nlohmann::json& doc, const std::vector<ConfigOverride>& overrides);

ModelConfig load_config(const std::filesystem::path& path,
                        const std::vector<ConfigOverride>& overrides = {});

}  // namespace bluesky
