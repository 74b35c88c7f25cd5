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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ghzdecay/bounds.hpp"
#include "ghzdecay/entanglement.hpp"
#include "ghzdecay/sampling.hpp"

namespace ghzdecay {

enum class ExperimentKind { Fig1, Fig2, Fig3, BoundTable, Evolve, Sample };

const char* to_string(ExperimentKind kind);

/// Sample-size schedules for the scaling experiment. The desk-scale
/// default keeps the qubit range tractable in memory and minutes; the
/// full-size schedule stays selectable where the machine permits.
enum class ScheduleKind { Default, FullSize, Custom };

struct BoundTableSpec {
  BoundFamily family = BoundFamily::DepolarizingGhzDiag;
  std::optional<double> nbar;
  bool diffusive = false;
  std::optional<cplx> alpha;
  std::optional<cplx> beta;
  std::optional<int> kappa;

  bool operator==(const BoundTableSpec&) const = default;
};

/// A fully validated experiment description; parse_config fills
/// defaults and rejects unknown keys.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::Fig1;
  std::vector<int> n_list;
  std::vector<double> p_grid;
  ChannelSpec channel;
  CutPolicy cut_policy = CutPolicy::MostBalanced;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::uint64_t sample_size = 2000;
  ScheduleKind schedule = ScheduleKind::Default;
  std::map<int, std::uint64_t> schedule_sizes;  // resolved per N
  double normalized_floor = 1e-9;
  int num_bins = 50;
  int max_qubits = 10;
  std::optional<GhzSpec> initial_ghz;
  std::string initial_file;
  std::string save_initial;
  BoundTableSpec bound;

  bool operator==(const ExperimentSpec&) const = default;
};

/// Reads a JSON experiment config. Unknown keys are rejected by name;
/// value errors name the offending key. "kind" is required.
ExperimentSpec parse_config(const std::string& path);

/// Same, from a JSON string (source_name only labels error messages).
/// When expected_kind is set, a missing "kind" defaults to it and a
/// conflicting one is an error.
ExperimentSpec parse_config_text(
    const std::string& text, const std::string& source_name,
    std::optional<ExperimentKind> expected_kind = std::nullopt);

/// Canonical JSON echo of a spec; parsing it again reproduces the spec
/// exactly. Embedded in every output CSV.
std::string echo_config(const ExperimentSpec& spec);

/// Refuses qubit counts above the cap with a message that estimates
/// the memory two resident density matrices plus the eigensolver
/// workspace would need.
void guard_qubit_count(int num_qubits, int max_qubits);

struct FigPoint {
  double p = 0.0;
  double bound = 0.0;
  double ghz_normalized = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  double stderror = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::uint64_t included = 0;
  std::uint64_t excluded = 0;
  Histogram hist;
};

struct FigCurve {
  int num_qubits = 2;
  std::uint64_t sample_size = 0;
  Bipartition cut{2, 1};
  std::vector<FigPoint> points;
};

struct Fig3Row {
  int num_qubits = 2;
  double p = 0.0;
  double bound = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  double stderror = 0.0;
  std::uint64_t sample_size = 0;
  std::uint64_t included = 0;
  std::uint64_t excluded = 0;
};

struct EvolveRow {
  double p = 0.0;
  std::uint64_t cut_mask = 0;
  double value = 0.0;
  double normalized = 0.0;  // NaN when the initial negativity is floored
  double bound_multiplier = 0.0;
  double bound_value = 0.0;
};

struct BoundRow {
  int num_qubits = 2;
  double p = 0.0;
  double multiplier = 0.0;
};

/// Haar-sample decay curves against the closed-form bound and the
/// balanced two-branch reference state; most balanced cut. Writes
/// fig1_N<k>.csv and fig1_N<k>_hist.csv per N when out_dir is set.
std::vector<FigCurve> run_fig1(const ExperimentSpec& spec, int threads = 0);

/// Same for the least balanced cut (fig2_*.csv).
std::vector<FigCurve> run_fig2(const ExperimentSpec& spec, int threads = 0);

/// Mean normalized negativity versus system size at fixed p under
/// dephasing, least balanced cut (fig3.csv).
std::vector<Fig3Row> run_fig3(const ExperimentSpec& spec, int threads = 0);

/// Single-state trajectory: negativity per (p, cut) plus the matching
/// bound column (evolve.csv).
std::vector<EvolveRow> run_evolve(const ExperimentSpec& spec, int threads = 0);

/// Closed-form bound table over n_list x p_grid (bound_table.csv); the
/// CLI also prints it.
std::vector<BoundRow> run_bound_table(const ExperimentSpec& spec);

/// run_sample wrapper writing sample_stats.csv and sample_summary.json.
SampleStats run_sample_experiment(const ExperimentSpec& spec, int threads = 0);

/// Dispatch on spec.kind.
void run_experiment(const ExperimentSpec& spec, int threads = 0);

}  // namespace ghzdecay
