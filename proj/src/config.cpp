#include "cssim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace cssim {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_double(std::string_view text) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value)) {
    throw std::invalid_argument(fmt::format("'{}' is not a finite number", text));
  }
  return value;
}

std::uint64_t to_u64(std::string_view text) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw std::invalid_argument(fmt::format("'{}' is not a non-negative integer", text));
  }
  return value;
}

std::size_t to_count(std::string_view text, std::size_t minimum) {
  const auto value = to_u64(text);
  if (value < minimum) throw std::invalid_argument(fmt::format("must be >= {}", minimum));
  return static_cast<std::size_t>(value);
}

double to_probability(std::string_view text) {
  const double p = to_double(text);
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(fmt::format("{} is not a probability in [0, 1]", text));
  return p;
}

double to_positive(std::string_view text) {
  const double v = to_double(text);
  if (!(v > 0.0)) throw std::invalid_argument(fmt::format("{} must be positive", text));
  return v;
}

bool to_flag(std::string_view text) {
  if (text == "on" || text == "true") return true;
  if (text == "off" || text == "false") return false;
  throw std::invalid_argument(fmt::format("'{}' is not on/off", text));
}

std::vector<double> to_probability_list(std::string_view text) {
  std::vector<double> values;
  for (auto part : split(text, ',')) values.push_back(to_probability(part));
  if (values.empty()) throw std::invalid_argument("empty list");
  return values;
}

Point to_point(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string x;
  std::string y;
  std::string extra;
  if (!(in >> x >> y) || (in >> extra)) throw std::invalid_argument(fmt::format("'{}' is not an 'x y' pair", text));
  return {to_double(x), to_double(y)};
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (double v : values) out += (out.empty() ? "" : ", ") + fmt::format("{}", v);
  return out;
}

std::string point_text(const Point& p) { return fmt::format("{} {}", p.x, p.y); }

struct KeySpec {
  std::string_view name;
  std::function<void(SimConfig&, std::string_view)> apply;
  std::function<std::string(const SimConfig&)> echo;
};

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      {"seed", [](SimConfig& c, std::string_view v) { c.seed = to_u64(v); },
       [](const SimConfig& c) { return fmt::format("{}", c.seed); }},
      {"replications", [](SimConfig& c, std::string_view v) { c.replications = to_count(v, 1); },
       [](const SimConfig& c) { return fmt::format("{}", c.replications); }},
      {"n_wn", [](SimConfig& c, std::string_view v) { c.n_wn = to_count(v, 1); },
       [](const SimConfig& c) { return fmt::format("{}", c.n_wn); }},
      {"n_fb", [](SimConfig& c, std::string_view v) { c.n_fb = to_count(v, 1); },
       [](const SimConfig& c) { return fmt::format("{}", c.n_fb); }},
      {"horizon", [](SimConfig& c, std::string_view v) { c.horizon = to_count(v, 1); },
       [](const SimConfig& c) { return fmt::format("{}", c.horizon); }},
      {"fading", [](SimConfig& c, std::string_view v) { c.fading = parse_fading(v); },
       [](const SimConfig& c) { return std::string(to_string(c.fading)); }},
      {"policy", [](SimConfig& c, std::string_view v) { c.policy.kind = parse_policy_kind(v); },
       [](const SimConfig& c) { return std::string(to_string(c.policy.kind)); }},
      {"epsilon_n", [](SimConfig& c, std::string_view v) { c.policy.pseudo_random.epsilon_n = to_probability(v); },
       [](const SimConfig& c) { return fmt::format("{}", c.policy.pseudo_random.epsilon_n); }},
      {"prefer_occupied_neighbors",
       [](SimConfig& c, std::string_view v) { c.policy.pseudo_random.prefer_occupied_neighbors = to_flag(v); },
       [](const SimConfig& c) { return std::string(c.policy.pseudo_random.prefer_occupied_neighbors ? "on" : "off"); }},
      {"q_learning_rate",
       [](SimConfig& c, std::string_view v) {
         const double rate = to_double(v);
         if (!(rate > 0.0 && rate <= 1.0)) throw std::invalid_argument("must lie in (0, 1]");
         c.policy.qlearning.learning_rate = rate;
       },
       [](const SimConfig& c) { return fmt::format("{}", c.policy.qlearning.learning_rate); }},
      {"q_discount",
       [](SimConfig& c, std::string_view v) {
         const double discount = to_double(v);
         if (!(discount >= 0.0 && discount < 1.0)) throw std::invalid_argument("must lie in [0, 1)");
         c.policy.qlearning.discount = discount;
       },
       [](const SimConfig& c) { return fmt::format("{}", c.policy.qlearning.discount); }},
      {"q_exploration", [](SimConfig& c, std::string_view v) { c.policy.qlearning.exploration = to_probability(v); },
       [](const SimConfig& c) { return fmt::format("{}", c.policy.qlearning.exploration); }},
      {"sigma2", [](SimConfig& c, std::string_view v) { c.detection.sigma2 = to_positive(v); },
       [](const SimConfig& c) { return fmt::format("{}", c.detection.sigma2); }},
      {"noncentrality", [](SimConfig& c, std::string_view v) { c.detection.noncentrality = to_positive(v); },
       [](const SimConfig& c) { return fmt::format("{}", c.detection.noncentrality); }},
      {"threshold",
       [](SimConfig& c, std::string_view v) {
         const double lambda = to_double(v);
         if (lambda < 0.0) throw std::invalid_argument("must be >= 0");
         c.detection.threshold = lambda;
       },
       [](const SimConfig& c) { return fmt::format("{}", c.detection.threshold); }},
      {"n_samples",
       [](SimConfig& c, std::string_view v) {
         const auto n = to_count(v, 4);
         if (n % 2 != 0) throw std::invalid_argument("must be even");
         c.detection.n_samples = static_cast<int>(n);
       },
       [](const SimConfig& c) { return fmt::format("{}", c.detection.n_samples); }},
      {"pfa_awgn",
       [](SimConfig& c, std::string_view v) {
         c.false_alarms = FalseAlarmTable(to_probability_list(v), c.false_alarms.entries(Fading::rayleigh));
       },
       [](const SimConfig& c) { return join(c.false_alarms.entries(Fading::awgn)); }},
      {"pfa_rayleigh",
       [](SimConfig& c, std::string_view v) {
         c.false_alarms = FalseAlarmTable(c.false_alarms.entries(Fading::awgn), to_probability_list(v));
       },
       [](const SimConfig& c) { return join(c.false_alarms.entries(Fading::rayleigh)); }},
      {"jammer_p_min", [](SimConfig& c, std::string_view v) { c.jammer_bounds.lo = to_probability(v); },
       [](const SimConfig& c) { return fmt::format("{}", c.jammer_bounds.lo); }},
      {"jammer_p_max", [](SimConfig& c, std::string_view v) { c.jammer_bounds.hi = to_probability(v); },
       [](const SimConfig& c) { return fmt::format("{}", c.jammer_bounds.hi); }},
      {"jammer_initial", [](SimConfig& c, std::string_view v) { c.jammer_initial = parse_initial_jammer_state(v); },
       [](const SimConfig& c) { return std::string(to_string(c.jammer_initial)); }},
      {"jammer_power_db", [](SimConfig& c, std::string_view v) { c.placement.jammer_power_db = to_double(v); },
       [](const SimConfig& c) { return fmt::format("{}", c.placement.jammer_power_db); }},
      {"jammer_position", [](SimConfig& c, std::string_view v) { c.placement.jammer = to_point(v); },
       [](const SimConfig& c) { return point_text(c.placement.jammer); }},
      {"node_positions",
       [](SimConfig& c, std::string_view v) {
         std::vector<Point> nodes;
         for (auto part : split(v, ';')) {
           if (!part.empty()) nodes.push_back(to_point(part));
         }
         if (nodes.empty()) throw std::invalid_argument("no positions listed");
         c.placement.nodes = std::move(nodes);
       },
       [](const SimConfig& c) {
         std::string out;
         for (const auto& p : c.placement.nodes) out += (out.empty() ? "" : "; ") + point_text(p);
         return out;
       }},
      {"transmission_range_km",
       [](SimConfig& c, std::string_view v) { c.placement.transmission_range_km = to_positive(v); },
       [](const SimConfig& c) { return fmt::format("{}", c.placement.transmission_range_km); }},
      {"reference_distance_km",
       [](SimConfig& c, std::string_view v) { c.placement.reference_distance_km = to_positive(v); },
       [](const SimConfig& c) { return fmt::format("{}", c.placement.reference_distance_km); }},
      {"path_loss_exponent", [](SimConfig& c, std::string_view v) { c.placement.path_loss_exponent = to_double(v); },
       [](const SimConfig& c) { return fmt::format("{}", c.placement.path_loss_exponent); }},
      {"noise_var", [](SimConfig& c, std::string_view v) { c.noise_var = to_positive(v); },
       [](const SimConfig& c) { return fmt::format("{}", c.noise_var); }},
      {"super_decision", [](SimConfig& c, std::string_view v) { c.super_decision = to_flag(v); },
       [](const SimConfig& c) { return std::string(c.super_decision ? "on" : "off"); }},
      {"detection_mode", [](SimConfig& c, std::string_view v) { c.detection_mode = parse_detection_mode(v); },
       [](const SimConfig& c) { return std::string(to_string(c.detection_mode)); }},
      {"cohort", [](SimConfig& c, std::string_view v) { c.cohort = parse_cohort_scope(v); },
       [](const SimConfig& c) { return std::string(to_string(c.cohort)); }},
      {"verdict_draw", [](SimConfig& c, std::string_view v) { c.verdict_draw = parse_verdict_draw(v); },
       [](const SimConfig& c) { return std::string(to_string(c.verdict_draw)); }},
      {"transmit_choice", [](SimConfig& c, std::string_view v) { c.transmit_choice = parse_transmit_choice(v); },
       [](const SimConfig& c) { return std::string(to_string(c.transmit_choice)); }},
      {"decision_memory", [](SimConfig& c, std::string_view v) { c.decision_memory = to_count(v, 0); },
       [](const SimConfig& c) { return fmt::format("{}", c.decision_memory); }},
  };
  return table;
}

const KeySpec* find_key(std::string_view key) {
  const auto& table = key_table();
  const auto it = std::find_if(table.begin(), table.end(), [&](const KeySpec& spec) { return spec.name == key; });
  return it == table.end() ? nullptr : &*it;
}

bool output_only(std::string_view key) { return key.starts_with("meta.") || key.starts_with("result."); }

}  // namespace

void apply_setting(SimConfig& config, std::string_view key, std::string_view value) {
  const KeySpec* spec = find_key(key);
  if (spec == nullptr) throw std::invalid_argument(fmt::format("unknown key '{}'", key));
  try {
    spec->apply(config, trim(value));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(fmt::format("{}: {}", key, e.what()));
  }
}

SimConfig parse_config_text(std::string_view text, std::string_view origin) {
  SimConfig config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_number;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("{}:{}: expected 'key = value'", origin, line_number));
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (output_only(key)) continue;
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(fmt::format("{}:{}: key '{}' given twice", origin, line_number, key));
    }
    try {
      apply_setting(config, key, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(fmt::format("{}:{}: {}", origin, line_number, e.what()));
    }
  }
  if (!seen.contains("node_positions")) config.placement.nodes = ring_layout(config.n_wn);
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("{}: {}", origin, e.what()));
  }
  return config;
}

SimConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("{}: cannot open scenario file", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.string());
}

std::string to_config_text(const SimConfig& config) {
  std::string out;
  for (const auto& spec : key_table()) out += fmt::format("{} = {}\n", spec.name, spec.echo(config));
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& spec : key_table()) keys.emplace_back(spec.name);
  return keys;
}

const std::vector<ExperimentPreset>& presets() {
  auto policy_variants = [](std::function<void(SimConfig&)> base) {
    std::vector<PresetVariant> variants;
    for (auto kind : {PolicyKind::pseudo_random, PolicyKind::uniform, PolicyKind::qlearning}) {
      variants.push_back({std::string(to_string(kind)), [base, kind](SimConfig& c) {
                            base(c);
                            c.policy.kind = kind;
                          }});
    }
    return variants;
  };
  static const std::vector<ExperimentPreset> table = {
      {"paper", "default scenario, pseudo-random policy",
       {{"pseudo_random", [](SimConfig& c) { c.policy.kind = PolicyKind::pseudo_random; }}}},
      {"fig3-awgn", "jammer detection ratio, AWGN, three policies",
       policy_variants([](SimConfig& c) { c.fading = Fading::awgn; })},
      {"fig3-rayleigh", "jammer detection ratio, Rayleigh fading, three policies",
       policy_variants([](SimConfig& c) { c.fading = Fading::rayleigh; })},
      {"fig4-local", "transmission success rate with local decision vectors, AWGN",
       policy_variants([](SimConfig& c) {
         c.fading = Fading::awgn;
         c.super_decision = false;
       })},
      {"fig4-super", "transmission success rate with super-decision vectors, AWGN",
       policy_variants([](SimConfig& c) {
         c.fading = Fading::awgn;
         c.super_decision = true;
       })},
  };
  return table;
}

const ExperimentPreset& find_preset(std::string_view name) {
  for (const auto& preset : presets()) {
    if (preset.name == name) return preset;
  }
  std::string known;
  for (const auto& preset : presets()) known += (known.empty() ? "" : ", ") + preset.name;
  throw ConfigError(fmt::format("unknown preset '{}' (known: {})", name, known));
}

}  // namespace cssim
