#include "dmhd/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dmhd {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

template <typename Int>
Int to_int(const std::string& s) {
  Int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  return v;
}

bool to_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("not a boolean: '" + s + "'");
}

std::vector<double> to_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item)));
  return out;
}

std::string list_string(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out;
}

Vec3 to_vec3(const std::string& s) {
  const auto v = to_list(s);
  if (v.size() != 3) throw std::invalid_argument("expected three components: '" + s + "'");
  return {v[0], v[1], v[2]};
}

std::optional<double> optional_double(const std::string& s) {
  if (s == "auto") return std::nullopt;
  return to_double(s);
}

std::string optional_string(const std::optional<double>& v) { return v ? fmt(*v) : "auto"; }

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"run.scenario", [](RunConfig& c, const std::string& v) { c.scenario = parse_scenario(v); }},
      {"run.n", [](RunConfig& c, const std::string& v) { c.n = to_int<int>(v); }},
      {"run.t_final", [](RunConfig& c, const std::string& v) { c.t_final = to_double(v); }},
      {"run.sample_dt", [](RunConfig& c, const std::string& v) { c.sample_dt = to_double(v); }},
      {"run.epsilon", [](RunConfig& c, const std::string& v) { c.epsilon = to_double(v); }},
      {"run.seed", [](RunConfig& c, const std::string& v) { c.seed = to_int<std::uint64_t>(v); }},
      {"model.gamma", [](RunConfig& c, const std::string& v) { c.gamma = to_double(v); }},
      {"model.omega", [](RunConfig& c, const std::string& v) { c.omega = OmegaSpec::parse(v); }},
      {"model.r", [](RunConfig& c, const std::string& v) { c.r = to_double(v); }},
      {"time.dt", [](RunConfig& c, const std::string& v) { c.dt = optional_double(v); }},
      {"time.safety", [](RunConfig& c, const std::string& v) { c.safety = to_double(v); }},
      {"time.dt_max", [](RunConfig& c, const std::string& v) { c.dt_max = optional_double(v); }},
      {"time.recompute_dt", [](RunConfig& c, const std::string& v) { c.recompute_dt = to_bool(v); }},
      {"time.reproject_every",
       [](RunConfig& c, const std::string& v) { c.reproject_every = to_int<int>(v); }},
      {"initial.k_max", [](RunConfig& c, const std::string& v) { c.k_max = optional_double(v); }},
      {"initial.spectral_width",
       [](RunConfig& c, const std::string& v) { c.spectral_width = to_double(v); }},
      {"initial.mean_momentum",
       [](RunConfig& c, const std::string& v) { c.mean_momentum = to_vec3(v); }},
      {"diagnostics.orders",
       [](RunConfig& c, const std::string& v) {
         if (v == "auto") {
           c.orders.reset();
         } else {
           c.orders = to_list(v);
         }
       }},
      {"diagnostics.A", [](RunConfig& c, const std::string& v) { c.A = optional_double(v); }},
      {"diagnostics.density_weight",
       [](RunConfig& c, const std::string& v) { c.density_weight = to_double(v); }},
      {"diagnostics.calibration_samples",
       [](RunConfig& c, const std::string& v) { c.calibration_samples = to_int<int>(v); }},
      {"output.ndjson", [](RunConfig& c, const std::string& v) { c.ndjson = v; }},
      {"output.csv", [](RunConfig& c, const std::string& v) { c.csv = v; }},
      {"output.checkpoint_dir", [](RunConfig& c, const std::string& v) { c.checkpoint_dir = v; }},
      {"output.checkpoint_every",
       [](RunConfig& c, const std::string& v) { c.checkpoint_every = to_int<int>(v); }},
      {"output.resume", [](RunConfig& c, const std::string& v) { c.resume = v; }},
  };
  return table;
}

}  // namespace

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::nonlinear:
      return "nonlinear";
    case Scenario::linearized:
      return "linearized";
    case Scenario::euler_damping:
      return "euler-damping";
    case Scenario::single_mode_acoustic:
      return "single-mode-acoustic";
  }
  return "nonlinear";
}

Scenario parse_scenario(const std::string& name) {
  for (Scenario s : {Scenario::nonlinear, Scenario::linearized, Scenario::euler_damping,
                     Scenario::single_mode_acoustic}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

Vec3 OmegaSpec::resolve() const {
  if (!default_scaled) return vector;
  return {scale, scale * std::sqrt(2.0), scale * std::sqrt(3.0)};
}

std::string OmegaSpec::to_string() const {
  if (default_scaled) return "default-scaled:" + fmt(scale);
  return fmt(vector[0]) + "," + fmt(vector[1]) + "," + fmt(vector[2]);
}

OmegaSpec OmegaSpec::parse(const std::string& text) {
  const std::string t = trim(text);
  OmegaSpec spec;
  const std::string prefix = "default-scaled:";
  if (t.rfind(prefix, 0) == 0) {
    spec.default_scaled = true;
    spec.scale = to_double(trim(t.substr(prefix.size())));
    if (!(spec.scale > 0.0)) throw std::invalid_argument("omega scale must be positive");
    return spec;
  }
  spec.default_scaled = false;
  spec.scale = 1.0;
  spec.vector = to_vec3(t);
  return spec;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument("config: " + m); };
  if (n < 8 || n % 2 != 0) fail("n must be an even integer >= 8");
  if (!(t_final >= 0.0)) fail("t_final must be non-negative");
  if (!(sample_dt > 0.0)) fail("sample_dt must be positive");
  if (!(epsilon > 0.0)) fail("epsilon must be positive");
  if (!(gamma > 1.0)) fail("gamma must exceed 1");
  if (!(r > 2.0)) fail("r must exceed 2");
  if (dt && !(*dt > 0.0)) fail("dt must be positive");
  if (dt && sample_dt < *dt) fail("sample_dt must be at least dt");
  if (!(safety > 0.0 && safety <= 1.0)) fail("safety must lie in (0, 1]");
  if (dt_max && !(*dt_max > 0.0)) fail("dt_max must be positive");
  if (reproject_every < 1) fail("reproject_every must be >= 1");
  if (k_max && !(*k_max >= 1.0)) fail("k_max must be at least 1");
  if (!(spectral_width >= 0.0)) fail("spectral_width must be non-negative");
  if (norm(mean_momentum) >= 0.5 * epsilon) fail("|mean_momentum| must stay below epsilon/2");
  if (orders && orders->empty()) fail("orders must not be empty");
  if (A && !(*A > 0.0)) fail("A must be positive");
  if (!(density_weight > 0.0)) fail("density_weight must be positive");
  if (calibration_samples < 1) fail("calibration_samples must be positive");
  if (checkpoint_every < 0) fail("checkpoint_every must be non-negative");
  if (checkpoint_every > 0 && checkpoint_dir.empty()) fail("checkpoint_every needs checkpoint_dir");
  if (ndjson.empty()) fail("ndjson output path must be set");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument(where() + "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument(where() + "expected key = value");
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw std::invalid_argument(where() + "unknown key '" + key + "'");
    try {
      it->second(cfg, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where() + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[run]\n"
     << "scenario = " << to_string(c.scenario) << "\n"
     << "n = " << c.n << "\n"
     << "t_final = " << fmt(c.t_final) << "\n"
     << "sample_dt = " << fmt(c.sample_dt) << "\n"
     << "epsilon = " << fmt(c.epsilon) << "\n"
     << "seed = " << c.seed << "\n\n"
     << "[model]\n"
     << "gamma = " << fmt(c.gamma) << "\n"
     << "omega = " << c.omega.to_string() << "\n"
     << "r = " << fmt(c.r) << "\n\n"
     << "[time]\n"
     << "dt = " << optional_string(c.dt) << "\n"
     << "safety = " << fmt(c.safety) << "\n"
     << "dt_max = " << optional_string(c.dt_max) << "\n"
     << "recompute_dt = " << (c.recompute_dt ? "true" : "false") << "\n"
     << "reproject_every = " << c.reproject_every << "\n\n"
     << "[initial]\n"
     << "k_max = " << optional_string(c.k_max) << "\n"
     << "spectral_width = " << fmt(c.spectral_width) << "\n"
     << "mean_momentum = " << list_string({c.mean_momentum.begin(), c.mean_momentum.end()})
     << "\n\n"
     << "[diagnostics]\n"
     << "orders = " << (c.orders ? list_string(*c.orders) : std::string("auto")) << "\n"
     << "A = " << optional_string(c.A) << "\n"
     << "density_weight = " << fmt(c.density_weight) << "\n"
     << "calibration_samples = " << c.calibration_samples << "\n\n"
     << "[output]\n"
     << "ndjson = " << c.ndjson << "\n"
     << "csv = " << c.csv << "\n"
     << "checkpoint_dir = " << c.checkpoint_dir << "\n"
     << "checkpoint_every = " << c.checkpoint_every << "\n"
     << "resume = " << c.resume << "\n";
  return os.str();
}

void apply_overrides(RunConfig& cfg, const ConfigOverrides& o) {
  if (o.n) cfg.n = *o.n;
  if (o.t_final) cfg.t_final = *o.t_final;
  if (o.scenario) cfg.scenario = parse_scenario(*o.scenario);
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.ndjson = *o.out;
  if (o.checkpoint_every) cfg.checkpoint_every = *o.checkpoint_every;
  if (o.omega) cfg.omega = OmegaSpec::parse(*o.omega);
  if (o.r) cfg.r = *o.r;
}

}  // namespace dmhd
