// Copyright 2026 The ghz-decay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ghzdecay/errors.hpp"
#include "ghzdecay/harness.hpp"
#include "ghzdecay/version.hpp"

namespace {

// Exit categories: 0 ok, 1 unexpected, 2 config, 3 numeric, 4 resource.
constexpr int exit_unexpected = 1;
constexpr int exit_config = 2;
constexpr int exit_numeric = 3;
constexpr int exit_resource = 4;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  int threads = 0;
};

void add_common(CLI::App* sub, CommonOptions& opts) {
  sub->add_option("--config", opts.config_path, "experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--seed", opts.seed, "override the config seed");
  sub->add_option("--out", opts.out_dir, "override the output directory");
  sub->add_option("--threads", opts.threads,
                  "worker threads (0 = hardware concurrency)");
}

ghzdecay::ExperimentSpec load_spec(const CommonOptions& opts,
                                   ghzdecay::ExperimentKind kind) {
  std::ifstream in(opts.config_path);
  if (!in) {
    throw ghzdecay::config_error(opts.config_path +
                                 ": cannot open config file");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  ghzdecay::ExperimentSpec spec =
      ghzdecay::parse_config_text(buffer.str(), opts.config_path, kind);
  if (opts.seed) {
    spec.seed = *opts.seed;
  }
  if (opts.out_dir) {
    spec.out_dir = *opts.out_dir;
  }
  return spec;
}

void print_bound_table(const ghzdecay::ExperimentSpec& spec,
                       const std::vector<ghzdecay::BoundRow>& rows) {
  std::printf("# %s bound multipliers\n", ghzdecay::echo_config(spec).c_str());
  std::printf("%4s  %10s  %22s\n", "N", "p", "multiplier");
  for (const auto& row : rows) {
    std::printf("%4d  %10.6f  %22.17g\n", row.num_qubits, row.p,
                row.multiplier);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local-decoherence scaling experiments for generalized "
               "GHZ states"};
  app.set_version_flag("--version", ghzdecay::version_string);
  app.require_subcommand(1);

  struct SubCommand {
    const char* name;
    const char* description;
    ghzdecay::ExperimentKind kind;
  };
  const SubCommand subs[] = {
      {"bound", "print closed-form bound multipliers",
       ghzdecay::ExperimentKind::BoundTable},
      {"evolve", "single-state negativity trajectory",
       ghzdecay::ExperimentKind::Evolve},
      {"sample", "Monte-Carlo negativity statistics",
       ghzdecay::ExperimentKind::Sample},
      {"fig1", "Haar-sample decay vs bound, most balanced cut",
       ghzdecay::ExperimentKind::Fig1},
      {"fig2", "Haar-sample decay vs bound, least balanced cut",
       ghzdecay::ExperimentKind::Fig2},
      {"fig3", "mean normalized negativity vs system size",
       ghzdecay::ExperimentKind::Fig3},
  };

  CommonOptions opts;
  for (const SubCommand& sub : subs) {
    add_common(app.add_subcommand(sub.name, sub.description), opts);
  }

  CLI11_PARSE(app, argc, argv);

  ghzdecay::ExperimentKind kind = ghzdecay::ExperimentKind::Fig1;
  for (const SubCommand& sub : subs) {
    if (app.got_subcommand(sub.name)) {
      kind = sub.kind;
      break;
    }
  }

  try {
    const ghzdecay::ExperimentSpec spec = load_spec(opts, kind);
    if (spec.kind == ghzdecay::ExperimentKind::BoundTable) {
      print_bound_table(spec, ghzdecay::run_bound_table(spec));
    } else {
      ghzdecay::run_experiment(spec, opts.threads);
    }
    return 0;
  } catch (const ghzdecay::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const ghzdecay::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return exit_numeric;
  } catch (const ghzdecay::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return exit_resource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_unexpected;
  }
}
