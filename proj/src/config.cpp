#include "gpelab/config.hpp"

#include <fstream>
#include <initializer_list>

#include "gpelab/errors.hpp"

namespace gpelab {

using nlohmann::json;

void TrapConfig::validate() const {
  if (!(nu_z_hz > 0) || !(nu_perp_hz > 0)) {
    throw ValidationError("trap: nu_z_hz and nu_perp_hz must be positive");
  }
  if (!(nu_z_hz < nu_perp_hz)) {
    throw ValidationError("trap: nu_z_hz (" + std::to_string(nu_z_hz) +
                          ") must be below nu_perp_hz (" + std::to_string(nu_perp_hz) +
                          ") for a quasi-1D trap");
  }
  if (!(atom_number > 0)) throw ValidationError("trap: atom_number must be positive");
  if (!(scattering_length_m > 0)) {
    throw ValidationError("trap: scattering_length must be positive");
  }
  if (!(mass_kg > 0)) throw ValidationError("trap: mass_kg must be positive");
  if (lattice) {
    if (lattice->depth_h_hz < 0) throw ValidationError("trap.lattice: depth must be >= 0");
    if (!(lattice->spacing_um > 0)) {
      throw ValidationError("trap.lattice: spacing must be positive");
    }
  }
  if (ramp) {
    if (!(ramp->nu_z_initial_hz > 0) || !(ramp->nu_perp_initial_hz > 0) ||
        !(ramp->nu_z_final_hz > 0) || !(ramp->nu_perp_final_hz > 0)) {
      throw ValidationError("trap.ramp: all frequencies must be positive");
    }
    if (ramp->duration_ms < 0) throw ValidationError("trap.ramp: duration must be >= 0");
    if (ramp->nu_z_final_hz != nu_z_hz || ramp->nu_perp_final_hz != nu_perp_hz) {
      throw ValidationError(
          "trap.ramp: final frequencies must equal trap.nu_z_hz/nu_perp_hz");
    }
  }
}

namespace {

void requireKeys(const json& obj, const std::string& context,
                 std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ValidationError(context + ": expected an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) throw ValidationError(context + ": unknown key '" + item.key() + "'");
  }
}

double numberAt(const json& obj, const std::string& context, const char* key,
                double fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) throw ValidationError(context + ": missing key '" + key + "'");
    return fallback;
  }
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ValidationError(context + "." + key + ": expected a number");
  return v.get<double>();
}

TrapConfig parseTrap(const json& j) {
  requireKeys(j, "trap",
              {"nu_z_hz", "nu_perp_hz", "atom_number", "scattering_length_nm",
               "mass_kg", "lattice", "ramp"});
  TrapConfig trap;
  trap.nu_z_hz = numberAt(j, "trap", "nu_z_hz", 0.0, true);
  trap.nu_perp_hz = numberAt(j, "trap", "nu_perp_hz", 0.0, true);
  trap.atom_number = numberAt(j, "trap", "atom_number", 0.0, true);
  trap.scattering_length_m =
      numberAt(j, "trap", "scattering_length_nm", kScatteringLengthRb87 * 1e9) * 1e-9;
  trap.mass_kg = numberAt(j, "trap", "mass_kg", kMassRb87);
  if (j.contains("lattice")) {
    const auto& l = j.at("lattice");
    requireKeys(l, "trap.lattice", {"depth_h_hz", "spacing_um", "offset_um"});
    LatticeSpec lat;
    lat.depth_h_hz = numberAt(l, "trap.lattice", "depth_h_hz", 0.0, true);
    lat.spacing_um = numberAt(l, "trap.lattice", "spacing_um", 0.0, true);
    lat.offset_um = numberAt(l, "trap.lattice", "offset_um", 0.0);
    trap.lattice = lat;
  }
  if (j.contains("ramp")) {
    const auto& r = j.at("ramp");
    requireKeys(r, "trap.ramp",
                {"nu_z_initial_hz", "nu_perp_initial_hz", "nu_z_final_hz",
                 "nu_perp_final_hz", "duration_ms"});
    RampSpec ramp;
    ramp.nu_z_initial_hz = numberAt(r, "trap.ramp", "nu_z_initial_hz", 0.0, true);
    ramp.nu_perp_initial_hz = numberAt(r, "trap.ramp", "nu_perp_initial_hz", 0.0, true);
    ramp.nu_z_final_hz = numberAt(r, "trap.ramp", "nu_z_final_hz", trap.nu_z_hz);
    ramp.nu_perp_final_hz = numberAt(r, "trap.ramp", "nu_perp_final_hz", trap.nu_perp_hz);
    ramp.duration_ms = numberAt(r, "trap.ramp", "duration_ms", 0.0, true);
    trap.ramp = ramp;
  }
  return trap;
}

std::vector<double> numberList(const json& obj, const std::string& context,
                               const char* key, std::vector<double> fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_array()) throw ValidationError(context + "." + key + ": expected an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ValidationError(context + "." + key + ": expected numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

ExperimentConfig configFromJson(const json& j) {
  requireKeys(j, "config",
              {"trap", "model", "grid", "time", "merge", "sweep", "fig2c", "tracking",
               "resolution", "output"});
  if (!j.contains("trap")) throw ValidationError("config: missing required block 'trap'");

  ExperimentConfig cfg;
  cfg.trap = parseTrap(j.at("trap"));

  if (j.contains("model")) {
    const auto& m = j.at("model");
    if (!m.is_string()) throw ValidationError("model: expected \"gpe1d\" or \"npse\"");
    const std::string s = m.get<std::string>();
    if (s == "gpe1d") {
      cfg.model = NonlinearSpec::Kind::Gpe1d;
    } else if (s == "npse") {
      cfg.model = NonlinearSpec::Kind::Npse;
    } else {
      throw ValidationError("model: unknown value '" + s + "'");
    }
  }

  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    requireKeys(g, "grid", {"n_points", "box_length_um"});
    if (g.contains("n_points") != g.contains("box_length_um")) {
      throw ValidationError("grid: n_points and box_length_um must be given together");
    }
    if (g.contains("n_points")) {
      cfg.grid.automatic = false;
      const double n = numberAt(g, "grid", "n_points", 0.0, true);
      cfg.grid.n_points = static_cast<int>(n);
      if (cfg.grid.n_points != n) throw ValidationError("grid.n_points: expected an integer");
      cfg.grid.box_length_um = numberAt(g, "grid", "box_length_um", 0.0, true);
      const int np = cfg.grid.n_points;
      if (np < 256 || (np & (np - 1)) != 0) {
        throw ValidationError("grid.n_points: must be a power of two >= 256");
      }
      if (!(cfg.grid.box_length_um > 0)) {
        throw ValidationError("grid.box_length_um: must be positive");
      }
    }
  }

  if (j.contains("time")) {
    const auto& t = j.at("time");
    requireKeys(t, "time", {"dt_ms", "safety"});
    cfg.time.dt_ms = numberAt(t, "time", "dt_ms", 0.0);
    cfg.time.safety = numberAt(t, "time", "safety", 0.05);
    if (cfg.time.dt_ms < 0) throw ValidationError("time.dt_ms: must be >= 0");
    if (!(cfg.time.safety > 0) || cfg.time.safety > 0.05) {
      throw ValidationError("time.safety: must be in (0, 0.05]");
    }
  }

  if (j.contains("merge")) {
    const auto& m = j.at("merge");
    requireKeys(m, "merge",
                {"barrier_depth_h_hz", "lattice_spacing_um", "hold_ms", "evolve_ms",
                 "snapshot_ms"});
    cfg.merge.barrier_depth_h_hz = numberAt(m, "merge", "barrier_depth_h_hz", 1000.0);
    cfg.merge.lattice_spacing_um = numberAt(m, "merge", "lattice_spacing_um", 5.7);
    cfg.merge.hold_ms = numberAt(m, "merge", "hold_ms", 0.0);
    cfg.merge.evolve_ms = numberAt(m, "merge", "evolve_ms", 120.0);
    cfg.merge.snapshot_ms = numberAt(m, "merge", "snapshot_ms", 0.5);
    if (cfg.merge.barrier_depth_h_hz < 0) {
      throw ValidationError("merge.barrier_depth_h_hz: must be >= 0");
    }
    if (!(cfg.merge.lattice_spacing_um > 0)) {
      throw ValidationError("merge.lattice_spacing_um: must be positive");
    }
    if (cfg.merge.hold_ms < 0) throw ValidationError("merge.hold_ms: must be >= 0");
    if (!(cfg.merge.evolve_ms > 0)) throw ValidationError("merge.evolve_ms: must be positive");
    if (!(cfg.merge.snapshot_ms > 0)) {
      throw ValidationError("merge.snapshot_ms: must be positive");
    }
  }

  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    requireKeys(s, "sweep",
                {"amplitudes_um", "evolve_ms", "snapshot_ms", "match_tolerance",
                 "max_refinements", "single_offset_fraction", "amplitude_definition"});
    cfg.sweep.amplitudes_um = numberList(s, "sweep", "amplitudes_um", {});
    cfg.sweep.evolve_ms = numberAt(s, "sweep", "evolve_ms", 120.0);
    cfg.sweep.snapshot_ms = numberAt(s, "sweep", "snapshot_ms", 0.5);
    cfg.sweep.match_tolerance = numberAt(s, "sweep", "match_tolerance", 0.02);
    cfg.sweep.max_refinements =
        static_cast<int>(numberAt(s, "sweep", "max_refinements", 5.0));
    cfg.sweep.single_offset_fraction =
        numberAt(s, "sweep", "single_offset_fraction", 0.1);
    if (s.contains("amplitude_definition")) {
      const auto& a = s.at("amplitude_definition");
      if (!a.is_string()) {
        throw ValidationError("sweep.amplitude_definition: expected \"peak\" or \"rms\"");
      }
      cfg.sweep.amplitude_definition = a.get<std::string>();
    }
    if (cfg.sweep.amplitude_definition != "peak" &&
        cfg.sweep.amplitude_definition != "rms") {
      throw ValidationError("sweep.amplitude_definition: expected \"peak\" or \"rms\"");
    }
    for (double a : cfg.sweep.amplitudes_um) {
      if (!(a > 0)) throw ValidationError("sweep.amplitudes_um: must be positive");
    }
    if (!(cfg.sweep.evolve_ms > 0) || !(cfg.sweep.snapshot_ms > 0)) {
      throw ValidationError("sweep: evolve_ms and snapshot_ms must be positive");
    }
    if (!(cfg.sweep.match_tolerance > 0)) {
      throw ValidationError("sweep.match_tolerance: must be positive");
    }
    if (cfg.sweep.max_refinements < 0) {
      throw ValidationError("sweep.max_refinements: must be >= 0");
    }
    if (!(cfg.sweep.single_offset_fraction > 0) || cfg.sweep.single_offset_fraction > 0.5) {
      throw ValidationError("sweep.single_offset_fraction: must be in (0, 0.5]");
    }
  }

  if (j.contains("fig2c")) {
    const auto& f = j.at("fig2c");
    requireKeys(f, "fig2c", {"amplitudes_um"});
    cfg.fig2c.amplitudes_um = numberList(f, "fig2c", "amplitudes_um", {});
    for (double a : cfg.fig2c.amplitudes_um) {
      if (!(a > 0)) throw ValidationError("fig2c.amplitudes_um: must be positive");
    }
  }

  if (j.contains("tracking")) {
    const auto& t = j.at("tracking");
    requireKeys(t, "tracking",
                {"search_window_fraction", "min_contrast", "collision_guard_um"});
    cfg.tracking.search_window_fraction =
        numberAt(t, "tracking", "search_window_fraction", 0.7);
    cfg.tracking.min_contrast = numberAt(t, "tracking", "min_contrast", 0.2);
    cfg.tracking.collision_guard_um =
        numberAt(t, "tracking", "collision_guard_um", 1.0);
    if (!(cfg.tracking.search_window_fraction > 0) ||
        cfg.tracking.search_window_fraction > 1.0) {
      throw ValidationError("tracking.search_window_fraction: must be in (0, 1]");
    }
    if (!(cfg.tracking.min_contrast > 0) || cfg.tracking.min_contrast >= 1.0) {
      throw ValidationError("tracking.min_contrast: must be in (0, 1)");
    }
    if (cfg.tracking.collision_guard_um < 0) {
      throw ValidationError("tracking.collision_guard_um: must be >= 0");
    }
  }

  if (j.contains("resolution")) {
    const auto& r = j.at("resolution");
    requireKeys(r, "resolution", {"sigma_z_um", "sigma_t_ms"});
    cfg.resolution.sigma_z_um = numberAt(r, "resolution", "sigma_z_um", 1.0);
    cfg.resolution.sigma_t_ms = numberAt(r, "resolution", "sigma_t_ms", 0.0);
    if (cfg.resolution.sigma_z_um < 0 || cfg.resolution.sigma_t_ms < 0) {
      throw ValidationError("resolution: sigmas must be >= 0");
    }
  }

  if (j.contains("output")) {
    const auto& o = j.at("output");
    requireKeys(o, "output", {"directory"});
    if (o.contains("directory")) {
      if (!o.at("directory").is_string()) {
        throw ValidationError("output.directory: expected a string");
      }
      cfg.output.directory = o.at("directory").get<std::string>();
    }
  }

  cfg.trap.validate();
  return cfg;
}

ExperimentConfig loadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("loadConfig: cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("loadConfig: " + path.string() + ": " + e.what());
  }
  return configFromJson(j);
}

json ExperimentConfig::toJson() const {
  json j;
  j["trap"]["nu_z_hz"] = trap.nu_z_hz;
  j["trap"]["nu_perp_hz"] = trap.nu_perp_hz;
  j["trap"]["atom_number"] = trap.atom_number;
  j["trap"]["scattering_length_nm"] = trap.scattering_length_m * 1e9;
  j["trap"]["mass_kg"] = trap.mass_kg;
  if (trap.lattice) {
    j["trap"]["lattice"] = {{"depth_h_hz", trap.lattice->depth_h_hz},
                            {"spacing_um", trap.lattice->spacing_um},
                            {"offset_um", trap.lattice->offset_um}};
  }
  if (trap.ramp) {
    j["trap"]["ramp"] = {{"nu_z_initial_hz", trap.ramp->nu_z_initial_hz},
                         {"nu_perp_initial_hz", trap.ramp->nu_perp_initial_hz},
                         {"nu_z_final_hz", trap.ramp->nu_z_final_hz},
                         {"nu_perp_final_hz", trap.ramp->nu_perp_final_hz},
                         {"duration_ms", trap.ramp->duration_ms}};
  }
  j["model"] = model == NonlinearSpec::Kind::Gpe1d ? "gpe1d" : "npse";
  if (!grid.automatic) {
    j["grid"] = {{"n_points", grid.n_points}, {"box_length_um", grid.box_length_um}};
  } else {
    j["grid"] = json::object();
  }
  j["time"] = {{"dt_ms", time.dt_ms}, {"safety", time.safety}};
  j["merge"] = {{"barrier_depth_h_hz", merge.barrier_depth_h_hz},
                {"lattice_spacing_um", merge.lattice_spacing_um},
                {"hold_ms", merge.hold_ms},
                {"evolve_ms", merge.evolve_ms},
                {"snapshot_ms", merge.snapshot_ms}};
  j["sweep"] = {{"amplitudes_um", sweep.amplitudes_um},
                {"evolve_ms", sweep.evolve_ms},
                {"snapshot_ms", sweep.snapshot_ms},
                {"match_tolerance", sweep.match_tolerance},
                {"max_refinements", sweep.max_refinements},
                {"single_offset_fraction", sweep.single_offset_fraction},
                {"amplitude_definition", sweep.amplitude_definition}};
  j["fig2c"] = {{"amplitudes_um", fig2c.amplitudes_um}};
  j["tracking"] = {{"search_window_fraction", tracking.search_window_fraction},
                   {"min_contrast", tracking.min_contrast},
                   {"collision_guard_um", tracking.collision_guard_um}};
  j["resolution"] = {{"sigma_z_um", resolution.sigma_z_um},
                     {"sigma_t_ms", resolution.sigma_t_ms}};
  j["output"] = {{"directory", output.directory}};
  return j;
}

void applyOverride(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ValidationError("override: expected key.path=value, got '" + assignment + "'");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);

  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // plain string
  }

  json* node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) throw ValidationError("override: empty key segment in '" + path + "'");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

void writeConfigEcho(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "config_echo.json");
  out << cfg.toJson().dump(2) << "\n";
}

}  // namespace gpelab
