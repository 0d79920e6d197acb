#include "plcsense/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace plcsense::config {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + path + key + "'");
    }
  }
}

template <typename T>
T get_or(const json& obj, const std::string& path, const std::string& key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value at '" + path + key + "': " + e.what());
  }
}

chanmodel::NoiseKind noise_kind_from(const std::string& s, const std::string& path) {
  if (s == "none") return chanmodel::NoiseKind::none;
  if (s == "flat") return chanmodel::NoiseKind::flat;
  if (s == "exponential-psd") return chanmodel::NoiseKind::exponential_psd;
  throw ConfigError("bad value at '" + path + "kind': expected none|flat|exponential-psd");
}

void parse_system(const json& j, const std::string& path, tdr::SystemParams& p) {
  require_keys(j, path,
               {"bandwidth_hz", "sample_rate_hz", "frame_size", "cp_length", "n_plm",
                "tx_psd_dbm_hz", "window_length"});
  p.bandwidth_hz = get_or(j, path, "bandwidth_hz", p.bandwidth_hz);
  p.sample_rate_hz = get_or(j, path, "sample_rate_hz", 2.0 * p.bandwidth_hz);
  p.frame_size = get_or(j, path, "frame_size", p.frame_size);
  p.cp_length = get_or(j, path, "cp_length", p.cp_length);
  p.n_plm = get_or(j, path, "n_plm", p.n_plm);
  p.tx_psd_dbm_hz = get_or(j, path, "tx_psd_dbm_hz", p.tx_psd_dbm_hz);
  if (j.contains("window_length"))
    p.window_length = get_or<std::size_t>(j, path, "window_length", p.frame_size);
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("invalid '" + path + "': " + e.what());
  }
}

void parse_scenario(const json& j, const std::string& path, ScenarioSpec& s,
                    const tdr::SystemParams& params) {
  require_keys(j, path,
               {"type", "v_p_mps", "coherence_time_s", "taps", "two_segment"});
  const auto type = get_or<std::string>(j, path, "type", "identity");
  s.v_p_mps = get_or(j, path, "v_p_mps", s.v_p_mps);
  s.coherence_time_s = get_or(j, path, "coherence_time_s", s.coherence_time_s);
  if (type == "identity") {
    s.type = ScenarioSpec::Type::identity;
  } else if (type == "taps") {
    s.type = ScenarioSpec::Type::taps;
    if (!j.contains("taps")) throw ConfigError("missing '" + path + "taps'");
    std::size_t idx = 0;
    for (const auto& entry : j.at("taps")) {
      const std::string epath = path + "taps[" + std::to_string(idx) + "].";
      require_keys(entry, epath, {"observer", "injector", "taps"});
      TapEntry te;
      te.observer = get_or<std::size_t>(entry, epath, "observer", 0);
      te.injector = get_or<std::size_t>(entry, epath, "injector", 0);
      if (te.observer >= params.n_plm || te.injector >= params.n_plm)
        throw ConfigError("modem index out of range at '" + epath + "'");
      if (!entry.contains("taps")) throw ConfigError("missing '" + epath + "taps'");
      for (const auto& t : entry.at("taps")) {
        require_keys(t, epath + "taps.", {"delay_s", "amplitude"});
        te.taps.taps.push_back({get_or(t, epath, "delay_s", 0.0),
                                get_or(t, epath, "amplitude", 0.0)});
      }
      s.taps.push_back(std::move(te));
      ++idx;
    }
  } else if (type == "two_segment") {
    s.type = ScenarioSpec::Type::two_segment;
    if (!j.contains("two_segment")) throw ConfigError("missing '" + path + "two_segment'");
    const auto& ts = j.at("two_segment");
    const std::string tpath = path + "two_segment.";
    require_keys(ts, tpath,
                 {"d_a_m", "d_b_m", "reflection_coeffs", "bounce_order", "delay_cap_s"});
    s.two_segment.d_a_m = get_or(ts, tpath, "d_a_m", 0.0);
    s.two_segment.d_b_m = get_or(ts, tpath, "d_b_m", 0.0);
    s.two_segment.reflection_coeffs =
        get_or(ts, tpath, "reflection_coeffs", std::vector<double>{});
    s.two_segment.bounce_order = get_or(ts, tpath, "bounce_order", 1);
    s.two_segment.delay_cap_s = get_or(ts, tpath, "delay_cap_s", 1e-3);
    if (params.n_plm != 2)
      throw ConfigError("'" + path + "type' two_segment requires system.n_plm = 2");
  } else {
    throw ConfigError("bad value at '" + path + "type': expected identity|taps|two_segment");
  }
}

}  // namespace

chanmodel::SensingScenario ScenarioSpec::build(const tdr::SystemParams& params) const {
  chanmodel::SensingScenario scenario;
  switch (type) {
    case Type::two_segment:
      scenario = chanmodel::build_two_segment_scenario(
          two_segment.d_a_m, two_segment.d_b_m, v_p_mps, two_segment.reflection_coeffs,
          two_segment.bounce_order, params.sample_rate_hz, two_segment.delay_cap_s,
          coherence_time_s);
      return scenario;
    case Type::identity: {
      scenario.n_plm = params.n_plm;
      scenario.v_p_mps = v_p_mps;
      scenario.coherence_time_s = coherence_time_s;
      scenario.channels.assign(params.n_plm * params.n_plm,
                               chanmodel::ImpulseResponse{{0.0}, 1.0 / params.sample_rate_hz});
      for (std::size_t i = 0; i < params.n_plm; ++i)
        scenario.at(i, i) = chanmodel::ImpulseResponse{{1.0}, 1.0 / params.sample_rate_hz};
      return scenario;
    }
    case Type::taps: {
      scenario.n_plm = params.n_plm;
      scenario.v_p_mps = v_p_mps;
      scenario.coherence_time_s = coherence_time_s;
      scenario.channels.assign(params.n_plm * params.n_plm,
                               chanmodel::ImpulseResponse{{0.0}, 1.0 / params.sample_rate_hz});
      for (const auto& entry : taps) {
        scenario.at(entry.observer, entry.injector) =
            chanmodel::taps_to_impulse(entry.taps, params.sample_rate_hz);
      }
      return scenario;
    }
  }
  throw std::logic_error("scenario: unreachable");
}

ExperimentConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  require_keys(j, "",
               {"seed", "trials", "n_symbols", "system", "scenario", "noise", "schemes",
                "sweep", "output_dir"});

  ExperimentConfig cfg;
  if (!j.contains("seed")) throw ConfigError("missing 'seed' (explicit seeding required)");
  cfg.seed = get_or<std::uint64_t>(j, "", "seed", 0);
  cfg.trials = get_or(j, "", "trials", cfg.trials);
  cfg.n_symbols = get_or(j, "", "n_symbols", cfg.n_symbols);
  cfg.output_dir = get_or(j, "", "output_dir", cfg.output_dir);

  if (j.contains("system")) parse_system(j.at("system"), "system.", cfg.system);
  if (j.contains("scenario"))
    parse_scenario(j.at("scenario"), "scenario.", cfg.scenario, cfg.system);

  if (j.contains("noise")) {
    const auto& n = j.at("noise");
    require_keys(n, "noise.", {"kind", "a_dbm_hz", "b_dbm_hz", "c_per_khz"});
    cfg.noise.kind =
        noise_kind_from(get_or<std::string>(n, "noise.", "kind", "exponential-psd"), "noise.");
    cfg.noise.a_dbm_hz = get_or(n, "noise.", "a_dbm_hz", cfg.noise.a_dbm_hz);
    cfg.noise.b_dbm_hz = get_or(n, "noise.", "b_dbm_hz", cfg.noise.b_dbm_hz);
    cfg.noise.c_per_khz = get_or(n, "noise.", "c_per_khz", cfg.noise.c_per_khz);
  }

  if (j.contains("schemes")) {
    cfg.schemes.clear();
    for (const auto& s : j.at("schemes")) {
      try {
        cfg.schemes.push_back(baselines::scheme_from_name(s.get<std::string>()));
      } catch (const std::exception& e) {
        throw ConfigError(std::string("bad value in 'schemes': ") + e.what());
      }
    }
    if (cfg.schemes.empty()) throw ConfigError("'schemes' must be non-empty");
  }
  for (auto s : cfg.schemes) {
    if (s == baselines::Scheme::cdma &&
        (cfg.system.n_plm & (cfg.system.n_plm - 1)) != 0) {
      throw ConfigError("cdma requires system.n_plm to be a power of two");
    }
  }

  if (j.contains("sweep")) {
    const auto& sw = j.at("sweep");
    require_keys(sw, "sweep.", {"bandwidths_hz", "cp_lengths", "n_plms", "velocities"});
    cfg.sweep.bandwidths_hz = get_or(sw, "sweep.", "bandwidths_hz", cfg.sweep.bandwidths_hz);
    cfg.sweep.cp_lengths = get_or(sw, "sweep.", "cp_lengths", cfg.sweep.cp_lengths);
    cfg.sweep.n_plms = get_or(sw, "sweep.", "n_plms", cfg.sweep.n_plms);
    if (sw.contains("velocities")) {
      cfg.sweep.velocities.clear();
      for (const auto& v : sw.at("velocities")) {
        require_keys(v, "sweep.velocities.", {"name", "v_p_mps"});
        cfg.sweep.velocities.push_back(
            {get_or<std::string>(v, "sweep.velocities.", "name", ""),
             get_or(v, "sweep.velocities.", "v_p_mps", 0.0)});
      }
    }
    if (cfg.sweep.bandwidths_hz.empty() || cfg.sweep.cp_lengths.empty() ||
        cfg.sweep.n_plms.empty() || cfg.sweep.velocities.empty()) {
      throw ConfigError("sweep axes must be non-empty");
    }
  }

  cfg.canonical_json = j.dump();
  return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::uint64_t config_hash(const std::string& json_text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : json_text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace plcsense::config
