#include "prwmax/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace prwmax {

namespace {

struct ExperimentName {
  Experiment id;
  std::string_view name;
};

constexpr ExperimentName kExperimentNames[] = {
    {Experiment::kConvergence, "convergence"},
    {Experiment::kDisprove, "disprove"},
    {Experiment::kFrechetCheck, "frechet-check"},
    {Experiment::kDonskerCheck, "donsker-check"},
    {Experiment::kPrmCheck, "prm-check"},
    {Experiment::kTheorem2Demo, "theorem2-demo"},
    {Experiment::kCouplingIdentity, "coupling-identity"},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw std::invalid_argument("config: bad value for '" + std::string(key) + "': '" +
                              std::string(value) + "'");
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  value = trim(value);
  T out{};
  auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) bad_value(key, value);
  return out;
}

// Integers also accept scientific notation such as 1e4.
std::int64_t parse_count(std::string_view key, std::string_view value) {
  const double x = parse_number<double>(key, value);
  if (x != std::floor(x) || std::abs(x) > 9.0e15) bad_value(key, value);
  return static_cast<std::int64_t>(x);
}

template <class T, class Parse>
std::vector<T> parse_list(std::string_view value, Parse parse) {
  std::vector<T> out;
  value = trim(value);
  while (!value.empty()) {
    const auto comma = value.find(',');
    out.push_back(parse(trim(value.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

std::string normalize_key(std::string_view key) {
  std::string k(trim(key));
  for (char& ch : k) {
    if (ch == '-') ch = '_';
  }
  if (k == "n") return "n_grid";
  if (k == "out") return "output_dir";
  if (k == "horizon") return "T";
  return k;
}

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& entry : kExperimentNames) {
    if (entry.id == e) return std::string(entry.name);
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view name) {
  for (const auto& entry : kExperimentNames) {
    if (entry.name == name) return entry.id;
  }
  throw std::invalid_argument("unknown experiment: " + std::string(name));
}

ExperimentConfig ExperimentConfig::resolved() const {
  ExperimentConfig out = *this;
  if (out.n_grid.empty()) {
    switch (experiment) {
      case Experiment::kConvergence: out.n_grid = {100, 1000, 10000}; break;
      case Experiment::kTheorem2Demo:
      case Experiment::kCouplingIdentity: out.n_grid = {10, 100, 1000, 10000}; break;
      default: out.n_grid = {100000}; break;
    }
  }
  if (out.replicas == 0) {
    out.replicas = (experiment == Experiment::kCouplingIdentity) ? 1000 : 10000;
  }
  if (out.delta_grid.empty()) out.delta_grid = {1e-1, 1e-2};
  if (out.probe_times.empty()) {
    out.probe_times = {0.25 * horizon, 0.5 * horizon, horizon};
  }
  return out;
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const char* key) {
    if (!ok) throw std::invalid_argument(std::string("config: invalid ") + key);
  };
  require(c > 0.0 && std::isfinite(c), "c");
  require(a > 0.0 && std::isfinite(a), "a");
  require(xi == XiKind::kZero ? v >= 0.0 : (v > 0.0 && std::isfinite(v)), "v");
  require(replicas >= 1, "replicas");
  require(delta > 0.0 && std::isfinite(delta), "delta");
  require(horizon > 0.0 && std::isfinite(horizon), "T");
  require(mc_draws >= 1, "mc_draws");
  require(demo_levels >= 1 && demo_levels <= 20, "demo_levels");
  require(!n_grid.empty(), "n_grid");
  for (auto n : n_grid) require(n >= 1, "n_grid");
  for (double d : delta_grid) require(d > 0.0 && std::isfinite(d), "delta_grid");
  for (double t : probe_times) require(t >= 0.0 && t <= horizon, "probe_times");
}

XiLaw ExperimentConfig::xi_law() const {
  return xi == XiKind::kZero ? XiLaw::zero() : XiLaw(xi, v);
}

TailLaw ExperimentConfig::tail() const { return TailLaw(c, a); }

void apply_setting(ExperimentConfig& cfg, std::string_view raw_key, std::string_view value) {
  const std::string key = normalize_key(raw_key);
  value = trim(value);
  auto real = [&](std::string_view s) { return parse_number<double>(key, s); };
  auto count = [&](std::string_view s) { return parse_count(key, s); };
  if (key == "experiment") {
    cfg.experiment = parse_experiment(value);
  } else if (key == "c") {
    cfg.c = real(value);
  } else if (key == "a") {
    cfg.a = real(value);
  } else if (key == "v") {
    cfg.v = real(value);
  } else if (key == "xi") {
    cfg.xi = parse_xi_kind(value);
    if (cfg.xi == XiKind::kZero) cfg.v = 0.0;
  } else if (key == "n_grid") {
    cfg.n_grid = parse_list<std::int64_t>(value, count);
  } else if (key == "replicas") {
    cfg.replicas = count(value);
  } else if (key == "delta") {
    cfg.delta = real(value);
  } else if (key == "delta_grid") {
    cfg.delta_grid = parse_list<double>(value, real);
  } else if (key == "T") {
    cfg.horizon = real(value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "probe_times") {
    cfg.probe_times = parse_list<double>(value, real);
  } else if (key == "mc_draws") {
    cfg.mc_draws = count(value);
  } else if (key == "demo_levels") {
    cfg.demo_levels = static_cast<int>(count(value));
  } else if (key == "output_dir") {
    cfg.output_dir = std::string(value);
  } else if (key == "workers") {
    cfg.workers = static_cast<unsigned>(count(value));
  } else {
    throw std::invalid_argument("config: unknown key '" + std::string(raw_key) + "'");
  }
}

void apply_config_text(ExperimentConfig& cfg, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    view = trim(view.substr(0, view.find('#')));
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(cfg, view.substr(0, eq), view.substr(eq + 1));
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(cfg, buffer.str());
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["experiment"] = to_string(cfg.experiment);
  j["c"] = cfg.c;
  j["a"] = cfg.a;
  j["v"] = cfg.v;
  j["xi"] = to_string(cfg.xi);
  j["n_grid"] = cfg.n_grid;
  j["replicas"] = cfg.replicas;
  j["delta"] = cfg.delta;
  j["delta_grid"] = cfg.delta_grid;
  j["T"] = cfg.horizon;
  j["seed"] = cfg.seed;
  j["probe_times"] = cfg.probe_times;
  j["mc_draws"] = cfg.mc_draws;
  j["demo_levels"] = cfg.demo_levels;
  return j;
}

}  // namespace prwmax
