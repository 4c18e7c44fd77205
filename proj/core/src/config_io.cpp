#include "bluesky/config_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace bluesky {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::ConfigParse, what);
}

double number(const json& doc, const char* key) {
  if (!doc.contains(key)) parse_error(std::string("missing key '") + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_number()) parse_error(std::string("key '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> number_list(const json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  const auto& v = doc.at(key);
  if (!v.is_array()) parse_error(std::string("series field '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) parse_error(std::string("series field '") + key + "' holds a non-number");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<FourierSeries> series_list(const json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  const auto& v = doc.at(key);
  if (!v.is_array()) parse_error(std::string("key '") + key + "' must be an array of series");
  std::vector<FourierSeries> out;
  for (const auto& e : v) out.push_back(series_from_json(e));
  return out;
}

FourierSeries optional_series(const json& doc, const char* key) {
  return doc.contains(key) ? series_from_json(doc.at(key)) : FourierSeries{};
}

bool is_index(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

FourierSeries series_from_json(const json& doc) {
  if (!doc.is_object()) parse_error("a series must be an object {constant, cos, sin}");
  for (const auto& item : doc.items()) {
    if (item.key() != "constant" && item.key() != "cos" && item.key() != "sin")
      parse_error("unknown series field '" + item.key() + "'");
  }
  const double c = doc.contains("constant") ? number(doc, "constant") : 0.0;
  return FourierSeries(c, number_list(doc, "cos"), number_list(doc, "sin"));
}

json series_to_json(const FourierSeries& s) {
  return json{{"constant", s.constant_term()}, {"cos", s.cosine_coeffs()}, {"sin", s.sine_coeffs()}};
}

ModelConfig config_from_json(const json& doc) {
  if (!doc.is_object()) parse_error("config must be a JSON object");
  ModelConfig cfg;
  cfg.m = number(doc, "m");
  cfg.gamma = number(doc, "gamma");
  cfg.lambda = number(doc, "lambda");
  cfg.beta = number(doc, "beta");
  cfg.d = number(doc, "d");
  const double n = number(doc, "n");
  if (n != static_cast<int>(n)) parse_error("key 'n' must be an integer");
  cfg.n = static_cast<int>(n);
  if (!doc.contains("alpha")) parse_error("missing key 'alpha'");
  cfg.alpha = series_from_json(doc.at("alpha"));
  cfg.h = optional_series(doc, "h");
  cfg.coupling_fx = optional_series(doc, "coupling_fx");
  cfg.coupling_hx = optional_series(doc, "coupling_hx");
  cfg.coupling_fy = series_list(doc, "coupling_fy");
  cfg.coupling_hy = series_list(doc, "coupling_hy");
  cfg.g0 = series_list(doc, "g0");
  return cfg;
}

json config_to_json(const ModelConfig& cfg) {
  auto list = [](const std::vector<FourierSeries>& v) {
    json arr = json::array();
    for (const auto& s : v) arr.push_back(series_to_json(s));
    return arr;
  };
  return json{{"m", cfg.m},
              {"gamma", cfg.gamma},
              {"lambda", cfg.lambda},
              {"beta", cfg.beta},
              {"d", cfg.d},
              {"n", cfg.n},
              {"alpha", series_to_json(cfg.alpha)},
              {"h", series_to_json(cfg.h)},
              {"coupling_fx", series_to_json(cfg.coupling_fx)},
              {"coupling_hx", series_to_json(cfg.coupling_hx)},
              {"coupling_fy", list(cfg.coupling_fy)},
              {"coupling_hy", list(cfg.coupling_hy)},
              {"g0", list(cfg.g0)}};
}

ConfigOverride parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw Error(ErrorCode::InvalidArgument, "override must look like key=value: '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

void apply_overrides(json& doc, const std::vector<ConfigOverride>& overrides) {
  for (const auto& [key, raw] : overrides) {
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;

    json* node = &doc;
    std::stringstream path(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(path, part, '.')) parts.push_back(part);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto& p = parts[i];
      if (node->is_array() && is_index(p)) {
        const auto idx = std::stoul(p);
        while (node->size() <= idx) node->push_back(json{});
        node = &(*node)[idx];
      } else {
        if (node->is_null()) *node = json::object();
        if (!node->is_object()) throw Error(ErrorCode::InvalidArgument, "cannot apply override '" + key + "'");
        // Arrays inside series are created on demand.
        if (!node->contains(p) && i + 1 < parts.size() && is_index(parts[i + 1])) (*node)[p] = json::array();
        node = &(*node)[p];
      }
    }
    *node = std::move(value);
  }
}

ModelConfig load_config(const std::filesystem::path& path,
                        const std::vector<ConfigOverride>& overrides) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open config file '" + path.string() + "'");
  json doc = json::parse(in, nullptr, false, true);
  if (doc.is_discarded()) parse_error("config file '" + path.string() + "' is not valid JSON");
  apply_overrides(doc, overrides);
  return config_from_json(doc);
}

}  // namespace bluesky
