// Copyright 2026 The qshutter developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "experiments.hpp"

namespace {

using namespace qshutter;
using namespace qshutter::experiments;

struct CliOptions {
  ExperimentConfig config;
  std::string format = "json";
  double alpha_re = 0.0, alpha_im = 0.0, beta_re = 0.0, beta_im = 0.0;
  bool has_alpha = false, has_beta = false;
  // sweep only
  std::string vary;
  std::string values;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--theta", opt.config.theta_spec,
                  "rotation angle: radians, pi/<k>, pi/(2N) or pi/(N+1)");
  cmd->add_option("--cycles", opt.config.cycles, "cycle count N");
  cmd->add_option("--input", opt.config.input_label,
                  "input basis label (H1, V1, H2 or V2)");
  cmd->add_option("--seed", opt.config.seed, "random generator seed");
  cmd->add_option("--trials", opt.config.trials, "number of random trials");
  cmd->add_option("--format", opt.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opt.config.out_path, "output file path");
  cmd->add_option("--alpha-re", opt.alpha_re, "fixed qubit amplitude: Re(alpha)")
      ->each([&](const std::string&) { opt.has_alpha = true; });
  cmd->add_option("--alpha-im", opt.alpha_im, "fixed qubit amplitude: Im(alpha)")
      ->each([&](const std::string&) { opt.has_alpha = true; });
  cmd->add_option("--beta-re", opt.beta_re, "fixed qubit amplitude: Re(beta)")
      ->each([&](const std::string&) { opt.has_beta = true; });
  cmd->add_option("--beta-im", opt.beta_im, "fixed qubit amplitude: Im(beta)")
      ->each([&](const std::string&) { opt.has_beta = true; });
}

void finalize(CliOptions& opt) {
  opt.config.format = opt.format == "csv" ? Format::kCsv : Format::kJson;
  if (opt.has_alpha || opt.has_beta) {
    opt.config.alpha = cx(opt.alpha_re, opt.alpha_im);
    opt.config.beta = cx(opt.beta_re, opt.beta_im);
  }
}

void emit(const ResultRecord& record, const CliOptions& opt) {
  if (!opt.config.out_path.empty()) {
    return;  // run() already wrote the file
  }
  if (opt.config.format == Format::kCsv) {
    std::cout << record_csv(record);
  } else {
    std::cout << record_json(record).dump(2) << "\n";
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{
      "qshutter: numerically exact simulations of interaction-free "
      "measurement devices (quantum interrogation, nested-interferometer "
      "quantum shutter, shutter-based quantum memory and CNOT)"};
  app.require_subcommand(1);

  CliOptions opt;
  std::optional<Experiment> chosen;
  bool bomb_flag = true;
  bool particle_flag = false;

  auto* interrogate =
      app.add_subcommand("interrogate",
                         "N-cycle interrogation of an absorbing object; "
                         "defaults: cycles 24, theta pi/(2N), bomb present");
  interrogate->add_flag("--bomb,!--no-bomb", bomb_flag,
                        "absorbing object present (default true)");
  add_common_flags(interrogate, opt);

  auto* evolve =
      app.add_subcommand("shutter-evolve",
                         "odd-N evolution of the nested device; defaults: "
                         "cycles 23, theta pi/(N+1), empty");
  evolve->add_flag("--particle,!--no-particle", particle_flag,
                   "particle present in the device (default false)");
  add_common_flags(evolve, opt);

  auto* converge = app.add_subcommand(
      "shutter-converge",
      "finite-N shutter gate: leakage and distance to the ideal gate");
  add_common_flags(converge, opt);

  auto* roundtrip = app.add_subcommand(
      "memory-roundtrip",
      "write/read/correct cycles over random qubits and all branches");
  add_common_flags(roundtrip, opt);

  auto* cnot = app.add_subcommand(
      "cnot", "shutter CNOT over basis and random inputs, all (branch, a1, "
              "a2) combinations");
  add_common_flags(cnot, opt);

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "run one experiment over a list of parameter values");
  std::string sweep_experiment;
  sweep_cmd
      ->add_option("experiment", sweep_experiment,
                   "experiment to sweep (interrogate, shutter-evolve, ...)")
      ->required();
  sweep_cmd->add_option("--vary", opt.vary, "parameter to vary")
      ->required()
      ->check(CLI::IsMember({"cycles", "theta", "trials", "seed"}));
  sweep_cmd
      ->add_option("--values", opt.values,
                   "comma list and/or ranges, e.g. 1..100 or 3..201:2")
      ->required();
  sweep_cmd->add_flag("--bomb,!--no-bomb", bomb_flag);
  sweep_cmd->add_flag("--particle,!--no-particle", particle_flag);
  add_common_flags(sweep_cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int printed = app.exit(e);
    return printed == 0 ? kExitOk : kExitUsage;
  }

  if (interrogate->parsed()) {
    chosen = Experiment::kInterrogate;
    opt.config.bomb = bomb_flag;
  } else if (evolve->parsed()) {
    chosen = Experiment::kShutterEvolve;
    opt.config.particle = particle_flag;
  } else if (converge->parsed()) {
    chosen = Experiment::kShutterConverge;
  } else if (roundtrip->parsed()) {
    chosen = Experiment::kMemoryRoundtrip;
  } else if (cnot->parsed()) {
    chosen = Experiment::kCnot;
  }

  finalize(opt);

  if (sweep_cmd->parsed()) {
    opt.config.experiment = experiment_from_name(sweep_experiment);
    if (opt.config.experiment == Experiment::kInterrogate) {
      opt.config.bomb = bomb_flag;
    }
    if (opt.config.experiment == Experiment::kShutterEvolve) {
      opt.config.particle = particle_flag;
    }
    if (sweep_cmd->count("--format") == 0) {
      opt.config.format = Format::kCsv;  // sweeps default to the flat table
    }
    const auto values = parse_values_list(opt.values);
    const auto records = sweep(opt.config, opt.vary, values);
    if (opt.config.out_path.empty()) {
      if (opt.config.format == Format::kJson) {
        nlohmann::json all = nlohmann::json::array();
        for (const auto& r : records) {
          all.push_back(record_json(r));
        }
        std::cout << all.dump(2) << "\n";
      } else {
        std::cout << sweep_csv(records, opt.vary);
      }
    }
    return kExitOk;
  }

  opt.config.experiment = chosen.value();
  emit(run(opt.config), opt);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const invariant_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return kExitInternal;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
