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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ghzdecay/errors.hpp"
#include "ghzdecay/harness.hpp"
#include "ghzdecay/qstate_io.hpp"

using namespace ghzdecay;

namespace {

namespace fs = std::filesystem;

const double inv_sqrt2 = std::sqrt(0.5);

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const char* name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

bool error_mentions(const std::exception& e, const std::string& needle) {
  return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config parsing names offending keys") {
  SUBCASE("kind is required") {
    try {
      parse_config_text("", "test");
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(error_mentions(e, "kind"));
    }
  }

  SUBCASE("out-of-range probability names the key") {
    try {
      parse_config_text(R"({"kind": "fig3", "p": 1.5})", "test");
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(error_mentions(e, "\"p\""));
    }
  }

  SUBCASE("unknown keys are rejected by name") {
    try {
      parse_config_text(R"({"kind": "fig1", "pgrid": [0.5]})", "test");
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(error_mentions(e, "pgrid"));
    }
  }

  SUBCASE("figure channels are pinned to their families") {
    CHECK_THROWS_AS(parse_config_text(
                        R"({"kind": "fig1", "channel": {"family": "dephasing"}})",
                        "test"),
                    config_error);
    CHECK_THROWS_AS(parse_config_text(
                        R"({"kind": "fig3", "channel": {"family": "depolarizing"}})",
                        "test"),
                    config_error);
  }

  SUBCASE("sample needs a qubit count, evolve an initial state") {
    CHECK_THROWS_AS(
        parse_config_text(
            R"({"kind": "sample", "channel": {"family": "dephasing"}})",
            "test"),
        config_error);
    CHECK_THROWS_AS(
        parse_config_text(
            R"({"kind": "evolve", "channel": {"family": "dephasing"}})",
            "test"),
        config_error);
  }

  SUBCASE("thermal channel needs a bath") {
    try {
      parse_config_text(
          R"({"kind": "sample", "n": 3, "channel": {"family": "thermal"}})",
          "test");
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(error_mentions(e, "nbar"));
    }
  }

  SUBCASE("schedules validate their coverage") {
    CHECK_THROWS_AS(
        parse_config_text(
            R"({"kind": "fig3", "n_list": [15], "schedule": "full"})",
            "test"),
        config_error);
    try {
      parse_config_text(
          R"({"kind": "fig3", "n_list": [2, 3], "schedule": {"2": 10}})",
          "test");
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(error_mentions(e, "N=3"));
    }
  }

  SUBCASE("conflicting probability spellings are rejected") {
    CHECK_THROWS_AS(
        parse_config_text(R"({"kind": "fig3", "p": 0.3, "p_grid": [0.3]})",
                          "test"),
        config_error);
    CHECK_THROWS_AS(
        parse_config_text(
            R"({"kind": "sample", "n": 3, "p": 0.3,
                "channel": {"family": "dephasing", "p": 0.4}})",
            "test"),
        config_error);
  }

  SUBCASE("subcommand kind must match an explicit config kind") {
    CHECK_THROWS_AS(parse_config_text(R"({"kind": "fig1"})", "test",
                                      ExperimentKind::Fig2),
                    config_error);
    const ExperimentSpec spec =
        parse_config_text("{}", "test", ExperimentKind::Fig1);
    CHECK(spec.kind == ExperimentKind::Fig1);
  }
}

TEST_CASE("defaults fill a bare figure config") {
  const ExperimentSpec spec = parse_config_text(R"({"kind": "fig1"})", "test");
  CHECK(spec.n_list == std::vector<int>{2, 3, 4, 5, 6});
  CHECK(spec.p_grid.size() == 21);
  CHECK(spec.p_grid.front() == 0.0);
  CHECK(spec.p_grid.back() == 1.0);
  CHECK(spec.channel.family == ChannelFamily::Depolarizing);
  CHECK(spec.cut_policy == CutPolicy::MostBalanced);
  CHECK(spec.sample_size == 2000);
  CHECK(spec.max_qubits == 10);

  const ExperimentSpec fig3 = parse_config_text(R"({"kind": "fig3"})", "test");
  CHECK(fig3.p_grid == std::vector<double>{0.3});
  CHECK(fig3.channel.family == ChannelFamily::Dephasing);
  CHECK(fig3.cut_policy == CutPolicy::LeastBalanced);
  CHECK(fig3.schedule == ScheduleKind::Default);
  CHECK(fig3.schedule_sizes.at(7) == 2000);
  CHECK(fig3.schedule_sizes.at(9) == 500);
  CHECK(fig3.schedule_sizes.at(10) == 100);
}

TEST_CASE("config echo round-trips exactly") {
  const std::string text = R"({
    "kind": "fig3",
    "n_list": [2, 3, 4, 5, 6, 7, 8],
    "p": 0.3,
    "channel": {"family": "dephasing"},
    "seed": 987654321,
    "out_dir": "results",
    "schedule": "default",
    "normalized_floor": 1e-9,
    "num_bins": 40,
    "max_qubits": 10
  })";
  const ExperimentSpec spec = parse_config_text(text, "test");
  const std::string echoed = echo_config(spec);
  const ExperimentSpec round = parse_config_text(echoed, "echo");
  CHECK(round == spec);
  CHECK(echo_config(round) == echoed);

  const std::string evolve_text = R"({
    "kind": "evolve",
    "channel": {"family": "thermal", "nbar": 0.5},
    "initial": {"ghz": {"n": 3, "k": 2, "parity": "-",
                        "alpha": [0.6, 0.0], "beta": [0.0, 0.8]}},
    "p_grid": [0.0, 0.5, 1.0]
  })";
  const ExperimentSpec espec = parse_config_text(evolve_text, "test");
  CHECK(parse_config_text(echo_config(espec), "echo") == espec);
}

TEST_CASE("memory guard refuses over-cap sizes with an estimate") {
  CHECK_NOTHROW(guard_qubit_count(10, 10));
  try {
    guard_qubit_count(12, 10);
    FAIL("expected resource_error");
  } catch (const resource_error& e) {
    CHECK(error_mentions(e, "N=12"));
    CHECK(error_mentions(e, "MiB"));
    CHECK(error_mentions(e, "max_qubits"));
  }
}

TEST_CASE("evolve reproduces closed forms") {
  SUBCASE("dephased balanced state follows (1-p)^N") {
    ExperimentSpec spec = parse_config_text(
        R"({"kind": "evolve",
            "channel": {"family": "dephasing"},
            "initial": {"ghz": {"n": 3, "k": 0, "parity": "+",
                                "alpha": 0.7071067811865476,
                                "beta": 0.7071067811865476}},
            "p_grid": [0.0, 0.2, 0.5, 0.9]})",
        "test");
    const auto rows = run_evolve(spec);
    for (const EvolveRow& row : rows) {
      CHECK(std::abs(row.normalized - std::pow(1.0 - row.p, 3)) < 1e-9);
      CHECK(row.bound_multiplier ==
            doctest::Approx(std::pow(1.0 - row.p, 3)));
    }
  }

  SUBCASE("a zero-probability grid is the identity row") {
    ExperimentSpec spec = parse_config_text(
        R"({"kind": "evolve",
            "channel": {"family": "depolarizing"},
            "initial": {"ghz": {"n": 2, "k": 0, "parity": "+",
                                "alpha": 0.7071067811865476,
                                "beta": 0.7071067811865476}},
            "p_grid": [0.0]})",
        "test");
    const auto rows = run_evolve(spec);
    for (const EvolveRow& row : rows) {
      CHECK(row.normalized == 1.0);
      CHECK(row.value == doctest::Approx(0.5).epsilon(1e-12));
    }
  }

  SUBCASE("full amplitude damping drains every excitation") {
    ExperimentSpec spec = parse_config_text(
        R"({"kind": "evolve",
            "channel": {"family": "thermal", "nbar": 0.0},
            "initial": {"ghz": {"n": 3, "k": 2, "parity": "-",
                                "alpha": 0.6, "beta": 0.8}},
            "p_grid": [1.0]})",
        "test");
    const auto rows = run_evolve(spec);
    for (const EvolveRow& row : rows) {
      CHECK(row.value <= 1e-10);
    }
  }
}

TEST_CASE("evolve accepts snapshot files and saves them") {
  TempDir dir("ghzdecay_harness_evolve");
  const PureState psi = make_generalized_ghz(
      GhzSpec(2, 0, +1, cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0}));
  const std::string snapshot = (dir.path / "bell.qsnap").string();
  save_state(psi, snapshot);

  std::ostringstream cfg;
  cfg << R"({"kind": "evolve", "channel": {"family": "dephasing"},)"
      << R"("initial": {"file": ")" << snapshot << R"("},)"
      << R"("p_grid": [0.5], "save_initial": ")"
      << (dir.path / "copy.qsnap").string() << R"("})";
  ExperimentSpec spec = parse_config_text(cfg.str(), "test");
  spec.out_dir = (dir.path / "out").string();
  const auto rows = run_evolve(spec);
  REQUIRE(rows.size() == 1);
  CHECK(std::abs(rows[0].normalized - std::pow(0.5, 2)) < 1e-9);
  CHECK(fs::exists(dir.path / "copy.qsnap"));
  CHECK(fs::exists(dir.path / "out" / "evolve.csv"));

  const std::string csv = slurp(dir.path / "out" / "evolve.csv");
  CHECK(csv.find("# version: ") != std::string::npos);
  CHECK(csv.find("# seed: ") != std::string::npos);
  CHECK(csv.find("# config: ") != std::string::npos);
  CHECK(csv.find("p,cut_mask,negativity,normalized") != std::string::npos);
}

TEST_CASE("fig1 output respects the bound for the reference state") {
  TempDir dir("ghzdecay_harness_fig1");
  ExperimentSpec spec = parse_config_text(
      R"({"kind": "fig1", "n_list": [2, 3], "sample_size": 25,
          "p_grid": [0.0, 0.3, 0.7], "seed": 11})",
      "test");
  spec.out_dir = dir.path.string();
  const auto curves = run_fig1(spec, 2);
  REQUIRE(curves.size() == 2);
  for (const FigCurve& curve : curves) {
    for (const FigPoint& pt : curve.points) {
      CHECK(pt.ghz_normalized <= pt.bound + 1e-9);
      CHECK(pt.included + pt.excluded == spec.sample_size);
    }
  }
  CHECK(fs::exists(dir.path / "fig1_N2.csv"));
  CHECK(fs::exists(dir.path / "fig1_N3_hist.csv"));

  // Byte-identical re-run.
  const std::string first = slurp(dir.path / "fig1_N3.csv");
  run_fig1(spec, 1);
  CHECK(slurp(dir.path / "fig1_N3.csv") == first);
}

TEST_CASE("fig3 rows carry the dephasing bound") {
  ExperimentSpec spec = parse_config_text(
      R"({"kind": "fig3", "n_list": [2, 3],
          "schedule": {"2": 20, "3": 20}, "seed": 5})",
      "test");
  const auto rows = run_fig3(spec, 2);
  REQUIRE(rows.size() == 2);
  for (const Fig3Row& row : rows) {
    CHECK(row.p == 0.3);
    CHECK(row.bound == doctest::Approx(std::pow(0.7, row.num_qubits)));
    CHECK(row.sample_size == 20);
  }
}

TEST_CASE("bound table matches the bounds module") {
  ExperimentSpec spec = parse_config_text(
      R"({"kind": "bound", "n_list": [2, 4], "p_grid": [0.25, 0.75],
          "bound": {"family": "thermal_uniform", "nbar": 1.0}})",
      "test");
  const auto rows = run_bound_table(spec);
  REQUIRE(rows.size() == 4);
  for (const BoundRow& row : rows) {
    CHECK(row.multiplier ==
          bound_thermal_uniform(row.num_qubits, 1.0, row.p));
  }

  ExperimentSpec missing = spec;
  missing.bound.nbar.reset();
  CHECK_THROWS_AS(run_bound_table(missing), config_error);
}

TEST_CASE("sample experiment writes parseable outputs") {
  TempDir dir("ghzdecay_harness_sample");
  ExperimentSpec spec = parse_config_text(
      R"({"kind": "sample", "n": 3, "sample_size": 15,
          "channel": {"family": "depolarizing"},
          "p_grid": [0.0, 0.4], "cut_policy": "all", "seed": 3})",
      "test");
  spec.out_dir = dir.path.string();
  const SampleStats stats = run_sample_experiment(spec, 2);
  CHECK(stats.cuts.size() == 3);
  CHECK(fs::exists(dir.path / "sample_stats.csv"));
  CHECK(fs::exists(dir.path / "sample_summary.json"));

  const std::string csv = slurp(dir.path / "sample_stats.csv");
  CHECK(csv.find("p,cut_mask,statistic,value") != std::string::npos);
  // 17-significant-digit floats: 0.4 must round-trip its shortest form.
  CHECK(csv.find("0.40000000000000002") != std::string::npos);
}

TEST_CASE("run_experiment dispatches every kind") {
  TempDir dir("ghzdecay_harness_dispatch");
  ExperimentSpec spec = parse_config_text(
      R"({"kind": "bound", "n_list": [2], "p_grid": [0.5],
          "bound": {"family": "dephasing"}})",
      "test");
  spec.out_dir = dir.path.string();
  run_experiment(spec);
  CHECK(fs::exists(dir.path / "bound_table.csv"));
}

}  // TEST_SUITE
