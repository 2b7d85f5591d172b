#pragma once

#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cssim/engine.hpp"

namespace cssim {

/// Configuration problem; the message is anchored as "path:line: ..." where a
/// line applies.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Applies one `key = value` setting. Throws std::invalid_argument for an
/// unknown key or a malformed/out-of-range value.
void apply_setting(SimConfig& config, std::string_view key, std::string_view value);

/// Parses scenario text: one `key = value` per line, `#` starts a comment.
/// Keys under `meta.` and `result.` are output-only and skipped, so a run
/// summary can be fed back as a scenario. Unknown or repeated keys are
/// errors. Node positions default to ring_layout(n_wn) when not listed.
SimConfig parse_config_text(std::string_view text, std::string_view origin = "<config>");
SimConfig parse_config(const std::filesystem::path& path);

/// Every setting, one `key = value` line each, in a form parse_config_text
/// reads back to an equal SimConfig.
std::string to_config_text(const SimConfig& config);

/// Documented keys in echo order.
std::vector<std::string> config_keys();

struct PresetVariant {
  std::string name;
  std::function<void(SimConfig&)> apply;
};

struct ExperimentPreset {
  std::string name;
  std::string description;
  std::vector<PresetVariant> variants;
};

const std::vector<ExperimentPreset>& presets();
/// Throws ConfigError for an unknown name.
const ExperimentPreset& find_preset(std::string_view name);

}  // namespace cssim
