#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmhd/grid.hpp"

namespace dmhd {

enum class Scenario { nonlinear, linearized, euler_damping, single_mode_acoustic };

[[nodiscard]] std::string to_string(Scenario s);
[[nodiscard]] Scenario parse_scenario(const std::string& name);

/// Either an explicit vector or λ·(1, √2, √3), written "default-scaled:<λ>".
struct OmegaSpec {
  bool default_scaled = true;
  double scale = 1.0;
  Vec3 vector{0.0, 0.0, 0.0};

  [[nodiscard]] Vec3 resolve() const;
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] static OmegaSpec parse(const std::string& text);

  friend bool operator==(const OmegaSpec&, const OmegaSpec&) = default;
};

struct RunConfig {
  // [run]
  Scenario scenario = Scenario::nonlinear;
  int n = 32;
  double t_final = 20.0;
  double sample_dt = 0.1;
  double epsilon = 1e-3;
  std::uint64_t seed = 1;

  // [model]
  double gamma = 2.0;
  OmegaSpec omega;
  double r = 3.0;

  // [time]
  std::optional<double> dt;  // unset: CFL step from the initial state
  double safety = 0.4;
  std::optional<double> dt_max;
  bool recompute_dt = false;
  int reproject_every = 1;

  // [initial]
  std::optional<double> k_max;  // unset: n/4
  double spectral_width = 1.5;
  Vec3 mean_momentum{0.0, 0.0, 0.0};

  // [diagnostics]
  std::optional<std::vector<double>> orders;  // unset: default ladder for r
  std::optional<double> A;                    // unset: calibrated
  double density_weight = 1.0;
  int calibration_samples = 1000;

  // [output]
  std::string ndjson = "diagnostics.ndjson";
  std::string csv;
  std::string checkpoint_dir;
  int checkpoint_every = 0;  // samples between checkpoints; 0 disables
  std::string resume;

  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

[[nodiscard]] RunConfig parse_config(const std::string& text);
[[nodiscard]] RunConfig load_config(const std::string& path);
[[nodiscard]] std::string serialize_config(const RunConfig& cfg);

/// Command-line values that take precedence over the file.
struct ConfigOverrides {
  std::optional<int> n;
  std::optional<double> t_final;
  std::optional<std::string> scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> checkpoint_every;
  std::optional<std::string> omega;
  std::optional<double> r;
};

void apply_overrides(RunConfig& cfg, const ConfigOverrides& o);

}  // namespace dmhd
