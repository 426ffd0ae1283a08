// Command-line front end for the soliton laboratory: ground states, the merge
// experiment, single-soliton and two-soliton frequency pipelines, the
// four-curve frequency-vs-amplitude table and the critical-distance formula.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpelab/config.hpp"
#include "gpelab/errors.hpp"
#include "gpelab/pipelines.hpp"
#include "gpelab/units.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
};

void addCommon(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON config file")->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--override", args.overrides,
                  "ad-hoc config change, key.path=value (repeatable)");
}

gpelab::ExperimentConfig loadWithOverrides(const CommonArgs& args) {
  std::ifstream in(args.config_path);
  if (!in) throw gpelab::ValidationError("cannot open config " + args.config_path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw gpelab::ValidationError(std::string("config parse error: ") + e.what());
  }
  for (const auto& assignment : args.overrides) {
    gpelab::applyOverride(j, assignment);
  }
  return gpelab::configFromJson(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gpelab: dark-soliton pair dynamics in quasi-1D condensates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gpelab::kVersion);

  CommonArgs args;
  std::string mode;
  for (const char* name : {"ground-state", "merge", "single-freq", "sweep", "fig2c",
                           "critical-distance"}) {
    auto* cmd = app.add_subcommand(name);
    addCommon(cmd, args);
    cmd->callback([&mode, name] { mode = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    const gpelab::ExperimentConfig cfg = loadWithOverrides(args);
    const std::filesystem::path out = args.out_dir;

    if (mode == "ground-state") {
      const auto art = gpelab::runGroundState(cfg, out);
      std::printf("mu = %.6g (internal) = h * %.6g Hz\n", art.mu_internal, art.mu_h_hz);
      std::printf("TF radius = %.4g um, healing length = %.4g um\n", art.tf_radius_um,
                  art.healing_length_um);
    } else if (mode == "merge") {
      const auto summary = gpelab::runMerge(cfg, out);
      std::printf("well separation = %.3g um\n", summary.well_separation_um);
      std::printf("modal soliton count (late frames) = %d\n", summary.modal_soliton_count);
      std::printf("nu_s = %.4g Hz, nu_s/(nu_z/sqrt2) = %.4f\n", summary.nu_s_hz,
                  summary.ratio);
      std::printf("mean pair center = %.3g um\n", summary.mean_pair_center_um);
    } else if (mode == "single-freq") {
      const auto res = gpelab::runSingleSolitonFrequency(cfg, out);
      std::printf("nu_1s = %.5g Hz, nu_z/sqrt2 = %.5g Hz, ratio = %.4f\n", res.nu_1s_hz,
                  res.nu_z_hz / 1.4142135623730951, res.ratio);
      std::printf("mu = %.6g (internal)\n", res.mu_internal);
    } else if (mode == "sweep") {
      const auto res = gpelab::runSweep(cfg, out);
      std::printf("single reference: nu_1s = %.5g Hz (ratio %.4f)\n",
                  res.single.nu_1s_hz, res.single.ratio);
      for (const auto& row : res.rows) {
        std::printf("A = %.3g um (measured %.3g): nu_s = %.5g Hz, ratio %.4f%s\n",
                    row.requested_amplitude_um, row.measured_amplitude_um, row.nu_s_hz,
                    row.ratio, row.matched ? "" : "  [unmatched]");
      }
    } else if (mode == "fig2c") {
      const auto res = gpelab::runFig2c(cfg, out);
      std::printf("amplitude  nu_tf1d  nu_single  nu_pair  nu_model  [Hz]\n");
      for (const auto& row : res.rows) {
        std::printf("%8.3g  %7.4g  %8.5g  %7.5g  %8.5g\n", row.amplitude_um,
                    row.nu_tf1d_hz, row.nu_single_hz, row.nu_pair_hz, row.nu_model_hz);
      }
    } else if (mode == "critical-distance") {
      const double dc = gpelab::runCriticalDistance(cfg, out);
      std::printf("D_c = %.4g um\n", dc);
    }
  } catch (const gpelab::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const gpelab::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
