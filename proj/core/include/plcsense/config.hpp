#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "plcsense/baselines.hpp"
#include "plcsense/chanmodel.hpp"
#include "plcsense/tdr.hpp"

namespace plcsense::config {

/// Configuration error with the offending key path in the message.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VelocityPreset {
  std::string name;
  double v_p_mps = 0.0;
};

struct TapEntry {
  std::size_t observer = 0;
  std::size_t injector = 0;
  chanmodel::ChannelTaps taps;
};

struct TwoSegmentSpec {
  double d_a_m = 0.0;
  double d_b_m = 0.0;
  std::vector<double> reflection_coeffs;
  int bounce_order = 1;
  double delay_cap_s = 1e-3;
};

struct ScenarioSpec {
  enum class Type { identity, taps, two_segment };
  Type type = Type::identity;
  double v_p_mps = 2.56e8;
  double coherence_time_s = 0.01;
  std::vector<TapEntry> taps;
  TwoSegmentSpec two_segment;

  chanmodel::SensingScenario build(const tdr::SystemParams& params) const;
};

struct SweepAxes {
  std::vector<double> bandwidths_hz{10e3, 50e3, 100e3, 250e3, 500e3};
  std::vector<std::size_t> cp_lengths{30, 52};
  std::vector<std::size_t> n_plms{1, 2, 4, 8, 16};
  std::vector<VelocityPreset> velocities{{"lv", 1.50e8}, {"mv", 2.56e8}};
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 500;
  std::size_t n_symbols = 1;
  tdr::SystemParams system;
  ScenarioSpec scenario;
  chanmodel::NoiseModel noise;
  std::vector<baselines::Scheme> schemes{
      baselines::Scheme::ocdm, baselines::Scheme::tdma,
      baselines::Scheme::fdma, baselines::Scheme::cdma};
  SweepAxes sweep;
  std::string output_dir = "out";
  /// Canonical serialized form of the parsed document, hashed into outputs.
  std::string canonical_json;
};

/// Strict JSON parse: unknown keys, schema violations and invariant
/// violations all raise ConfigError with the key path. Missing keys fall
/// back to the defaults above.
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& json_text);

/// FNV-1a 64 over the canonical serialized form; stamped into CSV headers.
std::uint64_t config_hash(const std::string& json_text);

}  // namespace plcsense::config
