#include "hallmhd/io/config_file.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hallmhd/errors.hpp"
#include "json.hpp"

namespace hallmhd::io {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"", {"dim", "n", "alpha", "s", "t_end", "dt", "dt_max", "cfl_safety", "snapshot_stride", "snapshot_precision"}},
      {"initial", {"recipe", "seed", "amplitude_u", "amplitude_b", "mode", "kband", "decay", "envelope"}},
      {"perturbation", {"seed", "kband", "decay", "envelope"}},
      {"experiment", {"eps", "j", "shells", "headroom", "diff_eps"}},
  };
  return keys;
}

std::string trim(std::string_view v) {
  const auto b = v.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = v.find_last_not_of(" \t\r\n");
  return std::string(v.substr(b, e - b + 1));
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
  throw ConfigError(fmt::format("invalid value for {}: '{}' ({} expected)", key, value, expected));
}

double to_double(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || p != v.data() + v.size()) bad_value(key, raw, "number");
  return out;
}

template <class Int>
Int to_int(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  Int out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || p != v.data() + v.size()) bad_value(key, raw, "integer");
  return out;
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> items;
  std::string cur;
  std::istringstream in(raw);
  while (std::getline(in, cur, ',')) items.push_back(trim(cur));
  return items;
}

std::vector<double> to_double_list(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  for (const auto& item : split_list(raw)) out.push_back(to_double(key, item));
  if (out.empty()) bad_value(key, raw, "comma-separated numbers");
  return out;
}

std::vector<int> to_int_list(const std::string& key, const std::string& raw) {
  std::vector<int> out;
  for (const auto& item : split_list(raw)) out.push_back(to_int<int>(key, item));
  if (out.empty()) bad_value(key, raw, "comma-separated integers");
  return out;
}

spectral::Envelope to_envelope(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "power") return spectral::Envelope::power;
  if (v == "exponential") return spectral::Envelope::exponential;
  bad_value(key, raw, "'power' or 'exponential'");
}

const char* envelope_name(spectral::Envelope e) { return e == spectral::Envelope::power ? "power" : "exponential"; }

void check_keys(const pt::ptree& tree) {
  const auto& keys = schema();
  for (const auto& [name, child] : tree) {
    if (child.empty()) {
      if (keys.count(name) && child.data().empty()) continue;  // empty section
      if (!keys.at("").count(name)) throw ConfigError(fmt::format("unknown key '{}'", name));
      continue;
    }
    const auto sec = keys.find(name);
    if (sec == keys.end() || name.empty()) throw ConfigError(fmt::format("unknown section [{}]", name));
    for (const auto& [key, leaf] : child) {
      if (!sec->second.count(key)) throw ConfigError(fmt::format("unknown key '{}' in section [{}]", key, name));
      if (!leaf.empty()) throw ConfigError(fmt::format("nested keys are not allowed under [{}]", name));
    }
  }
}

// Applies each present key; absent keys keep their defaults.
ExperimentConfig from_tree(const pt::ptree& tree) {
  ExperimentConfig c;
  auto& sim = c.sim;
  auto get = [&](const char* path) -> std::optional<std::string> {
    const auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'));
    if (v) return *v;
    return std::nullopt;
  };

  if (auto v = get("dim")) sim.dim = to_int<int>("dim", *v);
  if (auto v = get("n")) sim.n = to_int<int>("n", *v);
  if (auto v = get("alpha")) sim.alpha = to_double("alpha", *v);
  if (auto v = get("s")) sim.s = to_double("s", *v);
  if (auto v = get("t_end")) sim.t_end = to_double("t_end", *v);
  if (auto v = get("dt")) {
    if (trim(*v) == "auto") {
      sim.dt.reset();
    } else {
      sim.dt = to_double("dt", *v);
    }
  }
  if (auto v = get("dt_max")) sim.dt_max = to_double("dt_max", *v);
  if (auto v = get("cfl_safety")) sim.cfl_safety = to_double("cfl_safety", *v);
  if (auto v = get("snapshot_stride")) sim.snapshot_stride = to_int<int>("snapshot_stride", *v);
  if (auto v = get("snapshot_precision")) {
    const std::string p = trim(*v);
    if (p != "single" && p != "double") bad_value("snapshot_precision", *v, "'single' or 'double'");
    c.snapshot_double = p == "double";
  }

  auto& init = sim.initial;
  if (auto v = get("initial.recipe")) init.recipe = solver::recipe_from_string(trim(*v));
  if (auto v = get("initial.seed")) init.seed = to_int<std::uint64_t>("initial.seed", *v);
  if (auto v = get("initial.amplitude_u")) init.amplitude_u = to_double("initial.amplitude_u", *v);
  if (auto v = get("initial.amplitude_b")) init.amplitude_b = to_double("initial.amplitude_b", *v);
  if (auto v = get("initial.mode")) {
    const auto k = to_int_list("initial.mode", *v);
    if (k.size() != 2 && k.size() != 3) bad_value("initial.mode", *v, "two or three integers");
    init.mode = {k[0], k[1], k.size() == 3 ? k[2] : 0};
  }
  if (auto v = get("initial.kband")) init.spectrum.kband = to_double("initial.kband", *v);
  if (auto v = get("initial.decay")) init.spectrum.decay = to_double("initial.decay", *v);
  if (auto v = get("initial.envelope")) init.spectrum.envelope = to_envelope("initial.envelope", *v);

  auto& pert = c.perturbation;
  if (auto v = get("perturbation.seed")) pert.seed = to_int<std::uint64_t>("perturbation.seed", *v);
  if (auto v = get("perturbation.kband")) pert.spectrum.kband = to_double("perturbation.kband", *v);
  if (auto v = get("perturbation.decay")) pert.spectrum.decay = to_double("perturbation.decay", *v);
  if (auto v = get("perturbation.envelope")) pert.spectrum.envelope = to_envelope("perturbation.envelope", *v);

  if (auto v = get("experiment.eps")) c.eps = to_double_list("experiment.eps", *v);
  if (auto v = get("experiment.j")) c.j_list = to_int_list("experiment.j", *v);
  if (auto v = get("experiment.shells")) c.shells = to_int_list("experiment.shells", *v);
  if (auto v = get("experiment.headroom")) c.headroom = to_double("experiment.headroom", *v);
  if (auto v = get("experiment.diff_eps")) c.diff_eps = to_double("experiment.diff_eps", *v);
  return c;
}

void validate(const ExperimentConfig& c) {
  c.sim.validate();
  if (c.sim.dim == 2 && c.sim.initial.mode[2] != 0) throw ConfigError("initial.mode must have a zero third entry in 2D");
  if (c.perturbation.spectrum.decay < 0.0) throw ConfigError("perturbation.decay must be non-negative");
  for (std::size_t i = 0; i < c.eps.size(); ++i) {
    if (!(c.eps[i] >= 0.0)) throw ConfigError("experiment.eps values must be >= 0");
    if (i > 0 && !(c.eps[i] < c.eps[i - 1])) throw ConfigError("experiment.eps must be strictly decreasing");
  }
  for (int j : c.j_list) {
    if (j < 0) throw ConfigError("experiment.j values must be >= 0");
  }
  for (int j : c.shells) {
    if (j < -1) throw ConfigError("experiment.shells values must be >= -1");
  }
  if (!(c.headroom >= 1.0)) throw ConfigError("experiment.headroom must be >= 1");
  if (!(c.diff_eps > 0.0)) throw ConfigError("experiment.diff_eps must be positive");
}

template <class T>
std::string join(const std::vector<T>& v) {
  return fmt::format("{}", fmt::join(v, ","));
}

}  // namespace

Override parse_override(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ConfigError(fmt::format("override '{}' must look like key=value", text));
  std::string key = trim(text.substr(0, eq));
  if (key.empty()) throw ConfigError(fmt::format("override '{}' has an empty key", text));
  return {key, trim(text.substr(eq + 1))};
}

ExperimentConfig parse_config(std::string_view text, const std::vector<Override>& overrides, std::string_view source) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("{}:{}: {}", source, e.line(), e.message()));
  }
  for (const auto& [key, value] : overrides) tree.put(pt::ptree::path_type(key, '.'), value);
  check_keys(tree);
  ExperimentConfig c = from_tree(tree);
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<Override>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open config file {}", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      const auto manifest = nlohmann::json::parse(text);
      text = manifest.at("config").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(fmt::format("{}: not a run manifest: {}", path.string(), e.what()));
    }
  }
  return parse_config(text, overrides, path.string());
}

std::string canonical_config(const ExperimentConfig& c) {
  const auto& sim = c.sim;
  const auto& init = sim.initial;
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) { out += fmt::format("{} = {}\n", key, value); };
  line("dim", fmt::format("{}", sim.dim));
  line("n", fmt::format("{}", sim.n));
  line("alpha", fmt::format("{}", sim.alpha));
  line("s", fmt::format("{}", sim.s));
  line("t_end", fmt::format("{}", sim.t_end));
  line("dt", sim.dt ? fmt::format("{}", *sim.dt) : std::string("auto"));
  line("dt_max", fmt::format("{}", sim.dt_max));
  line("cfl_safety", fmt::format("{}", sim.cfl_safety));
  line("snapshot_stride", fmt::format("{}", sim.snapshot_stride));
  line("snapshot_precision", c.snapshot_double ? "double" : "single");
  out += "\n[initial]\n";
  line("recipe", std::string(solver::to_string(init.recipe)));
  line("seed", fmt::format("{}", init.seed));
  line("amplitude_u", fmt::format("{}", init.amplitude_u));
  line("amplitude_b", fmt::format("{}", init.amplitude_b));
  line("mode", fmt::format("{},{},{}", init.mode[0], init.mode[1], init.mode[2]));
  line("kband", fmt::format("{}", init.spectrum.kband));
  line("decay", fmt::format("{}", init.spectrum.decay));
  line("envelope", envelope_name(init.spectrum.envelope));
  out += "\n[perturbation]\n";
  line("seed", fmt::format("{}", c.perturbation.seed));
  line("kband", fmt::format("{}", c.perturbation.spectrum.kband));
  line("decay", fmt::format("{}", c.perturbation.spectrum.decay));
  line("envelope", envelope_name(c.perturbation.spectrum.envelope));
  out += "\n[experiment]\n";
  line("eps", join(c.eps));
  line("j", join(c.j_list));
  line("shells", join(c.shells));
  line("headroom", fmt::format("{}", c.headroom));
  line("diff_eps", fmt::format("{}", c.diff_eps));
  return out;
}

}  // namespace hallmhd::io
