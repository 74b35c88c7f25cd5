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

#include "ghzdecay/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ghzdecay/errors.hpp"
#include "ghzdecay/qstate_io.hpp"
#include "ghzdecay/version.hpp"

namespace ghzdecay {

using nlohmann::json;

namespace {

// ------------------------------------------------------------------
// Names
// ------------------------------------------------------------------

constexpr std::pair<ExperimentKind, const char*> kind_names[] = {
    {ExperimentKind::Fig1, "fig1"},     {ExperimentKind::Fig2, "fig2"},
    {ExperimentKind::Fig3, "fig3"},     {ExperimentKind::BoundTable, "bound"},
    {ExperimentKind::Evolve, "evolve"}, {ExperimentKind::Sample, "sample"},
};

constexpr std::pair<CutPolicy, const char*> policy_names[] = {
    {CutPolicy::MostBalanced, "most_balanced"},
    {CutPolicy::LeastBalanced, "least_balanced"},
    {CutPolicy::All, "all"},
};

constexpr std::pair<ChannelFamily, const char*> family_names[] = {
    {ChannelFamily::Depolarizing, "depolarizing"},
    {ChannelFamily::Dephasing, "dephasing"},
    {ChannelFamily::Thermal, "thermal"},
};

constexpr std::pair<BoundFamily, const char*> bound_family_names[] = {
    {BoundFamily::DepolarizingGhzDiag, "depolarizing_ghz_diag"},
    {BoundFamily::DepolarizingTwoQubitAny, "depolarizing_two_qubit_any"},
    {BoundFamily::Dephasing, "dephasing"},
    {BoundFamily::ThermalStateDependent, "thermal_state_dependent"},
    {BoundFamily::ThermalUniform, "thermal_uniform"},
};

template <typename E, std::size_t N>
const char* enum_name(const std::pair<E, const char*> (&table)[N], E value) {
  for (const auto& [e, name] : table) {
    if (e == value) {
      return name;
    }
  }
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> enum_value(const std::pair<E, const char*> (&table)[N],
                            const std::string& name) {
  for (const auto& [e, n] : table) {
    if (name == n) {
      return e;
    }
  }
  return std::nullopt;
}

// ------------------------------------------------------------------
// Config reading
// ------------------------------------------------------------------

[[noreturn]] void fail(const std::string& source, const std::string& message) {
  throw config_error(source + ": " + message);
}

void check_keys(const json& obj, const std::string& source,
                const std::string& scope,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      fail(source, "unknown key \"" + scope + item.key() + "\"");
    }
  }
}

double get_double(const json& v, const std::string& source,
                  const std::string& key) {
  if (!v.is_number()) {
    fail(source, "key \"" + key + "\" must be a number");
  }
  return v.get<double>();
}

double get_probability(const json& v, const std::string& source,
                       const std::string& key) {
  const double p = get_double(v, source, key);
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    fail(source, "key \"" + key + "\" must lie in [0, 1]");
  }
  return p;
}

std::int64_t get_integer(const json& v, const std::string& source,
                         const std::string& key) {
  if (!v.is_number_integer()) {
    fail(source, "key \"" + key + "\" must be an integer");
  }
  return v.get<std::int64_t>();
}

std::uint64_t get_unsigned(const json& v, const std::string& source,
                           const std::string& key) {
  if (v.is_number_unsigned()) {
    return v.get<std::uint64_t>();
  }
  const std::int64_t i = get_integer(v, source, key);
  if (i < 0) {
    fail(source, "key \"" + key + "\" must be >= 0");
  }
  return static_cast<std::uint64_t>(i);
}

std::string get_string(const json& v, const std::string& source,
                       const std::string& key) {
  if (!v.is_string()) {
    fail(source, "key \"" + key + "\" must be a string");
  }
  return v.get<std::string>();
}

/// Complex values are written [re, im]; a bare number means a real.
cplx get_complex(const json& v, const std::string& source,
                 const std::string& key) {
  if (v.is_number()) {
    return cplx{v.get<double>(), 0.0};
  }
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return cplx{v[0].get<double>(), v[1].get<double>()};
  }
  fail(source, "key \"" + key + "\" must be a number or an [re, im] pair");
}

std::vector<double> default_p_grid() {
  std::vector<double> grid(21);
  for (int i = 0; i <= 20; ++i) {
    grid[i] = static_cast<double>(i) * 0.05;
  }
  grid.back() = 1.0;
  return grid;
}

ChannelSpec parse_channel(const json& obj, const std::string& source,
                          std::optional<double>* scalar_p) {
  if (!obj.is_object()) {
    fail(source, "key \"channel\" must be an object");
  }
  check_keys(obj, source, "channel.", {"family", "p", "nbar", "diffusive"});
  if (!obj.contains("family")) {
    fail(source, "key \"channel.family\" is required");
  }
  ChannelSpec spec;
  const std::string family =
      get_string(obj.at("family"), source, "channel.family");
  const auto parsed = enum_value(family_names, family);
  if (!parsed) {
    fail(source, "key \"channel.family\" must be one of depolarizing, "
                 "dephasing, thermal");
  }
  spec.family = *parsed;
  if (obj.contains("diffusive")) {
    if (!obj.at("diffusive").is_boolean()) {
      fail(source, "key \"channel.diffusive\" must be a boolean");
    }
    spec.diffusive = obj.at("diffusive").get<bool>();
  }
  if (obj.contains("nbar")) {
    const double nbar = get_double(obj.at("nbar"), source, "channel.nbar");
    if (!std::isfinite(nbar) || nbar < 0.0) {
      fail(source, "key \"channel.nbar\" must be >= 0");
    }
    spec.nbar = nbar;
  }
  if (spec.family != ChannelFamily::Thermal &&
      (obj.contains("nbar") || spec.diffusive)) {
    fail(source,
         "keys \"channel.nbar\"/\"channel.diffusive\" only apply to the "
         "thermal family");
  }
  if (spec.family == ChannelFamily::Thermal && !spec.diffusive &&
      !obj.contains("nbar")) {
    fail(source, "key \"channel.nbar\" is required for the thermal family "
                 "(or set channel.diffusive)");
  }
  if (obj.contains("p")) {
    *scalar_p = get_probability(obj.at("p"), source, "channel.p");
  }
  return spec;
}

GhzSpec parse_ghz(const json& obj, const std::string& source,
                  const std::string& scope) {
  if (!obj.is_object()) {
    fail(source, "key \"" + scope + "\" must be an object");
  }
  check_keys(obj, source, scope + ".", {"n", "k", "parity", "alpha", "beta"});
  for (const char* key : {"n", "k", "parity", "alpha", "beta"}) {
    if (!obj.contains(key)) {
      fail(source, "key \"" + scope + "." + key + "\" is required");
    }
  }
  const auto n = get_integer(obj.at("n"), source, scope + ".n");
  const auto k = get_unsigned(obj.at("k"), source, scope + ".k");
  int parity = 0;
  const json& pv = obj.at("parity");
  if (pv.is_string()) {
    const std::string s = pv.get<std::string>();
    parity = s == "+" ? 1 : s == "-" ? -1 : 0;
  } else if (pv.is_number_integer()) {
    parity = static_cast<int>(pv.get<std::int64_t>());
  }
  if (parity != 1 && parity != -1) {
    fail(source, "key \"" + scope + ".parity\" must be \"+\", \"-\", 1 or -1");
  }
  const cplx alpha = get_complex(obj.at("alpha"), source, scope + ".alpha");
  const cplx beta = get_complex(obj.at("beta"), source, scope + ".beta");
  try {
    return GhzSpec(static_cast<int>(n), k, parity, alpha, beta);
  } catch (const std::exception& e) {
    fail(source, "key \"" + scope + "\": " + e.what());
  }
}

std::map<int, std::uint64_t> default_schedule(const std::vector<int>& n_list) {
  std::map<int, std::uint64_t> sizes;
  for (int n : n_list) {
    sizes[n] = n <= 7 ? 2000 : n <= 9 ? 500 : 100;
  }
  return sizes;
}

std::map<int, std::uint64_t> full_schedule(const std::vector<int>& n_list,
                                            const std::string& source) {
  std::map<int, std::uint64_t> sizes;
  for (int n : n_list) {
    if (n <= 7) {
      sizes[n] = 10000;
    } else if (n <= 10) {
      sizes[n] = 5000;
    } else if (n == 11) {
      sizes[n] = 1560;
    } else if (n == 12) {
      sizes[n] = 100;
    } else if (n == 13) {
      sizes[n] = 10;
    } else if (n == 14) {
      sizes[n] = 1;
    } else {
      fail(source, "key \"schedule\": the full-size schedule stops at N=14");
    }
  }
  return sizes;
}

json ghz_to_json(const GhzSpec& g) {
  json j;
  j["n"] = g.num_qubits;
  j["k"] = g.label;
  j["parity"] = g.parity;
  j["alpha"] = {g.alpha.real(), g.alpha.imag()};
  j["beta"] = {g.beta.real(), g.beta.imag()};
  return j;
}

json channel_to_json(const ChannelSpec& c) {
  json j;
  j["family"] = enum_name(family_names, c.family);
  if (c.family == ChannelFamily::Thermal) {
    j["diffusive"] = c.diffusive;
    if (!c.diffusive) {
      j["nbar"] = c.nbar;
    }
  }
  return j;
}

// ------------------------------------------------------------------
// CSV output
// ------------------------------------------------------------------

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(std::uint64_t v) { return std::to_string(v); }

class Csv {
 public:
  explicit Csv(const std::filesystem::path& path) : out_(path) {
    if (!out_) {
      throw resource_error("cannot open " + path.string() + " for writing");
    }
  }

  void meta(const ExperimentSpec& spec) {
    out_ << "# version: " << version_string << "\n";
    out_ << "# experiment: " << to_string(spec.kind) << "\n";
    out_ << "# seed: " << spec.seed << "\n";
    out_ << "# config: " << echo_config(spec) << "\n";
  }

  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) {
        out_ << ',';
      }
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

std::filesystem::path prepared_out_dir(const ExperimentSpec& spec) {
  std::filesystem::path dir(spec.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw resource_error("cannot create output directory " + spec.out_dir +
                         ": " + ec.message());
  }
  return dir;
}

void write_fig_csv(const ExperimentSpec& spec, const char* stem,
                   const FigCurve& curve) {
  const auto dir = prepared_out_dir(spec);
  const std::string base =
      std::string(stem) + "_N" + std::to_string(curve.num_qubits);
  Csv csv(dir / (base + ".csv"));
  csv.meta(spec);
  csv.line({"p", "bound", "ghz_normalized", "mean", "stddev", "stderr", "min",
            "max", "included", "excluded"});
  for (const FigPoint& pt : curve.points) {
    csv.line({fmt(pt.p), fmt(pt.bound), fmt(pt.ghz_normalized), fmt(pt.mean),
              fmt(pt.stddev), fmt(pt.stderror), fmt(pt.min), fmt(pt.max),
              fmt(pt.included), fmt(pt.excluded)});
  }
  Csv hist(dir / (base + "_hist.csv"));
  hist.meta(spec);
  hist.line({"p", "bin_lo", "bin_hi", "count"});
  for (const FigPoint& pt : curve.points) {
    const auto edges = pt.hist.edges();
    for (std::size_t b = 0; b < pt.hist.counts.size(); ++b) {
      hist.line({fmt(pt.p), fmt(edges[b]), fmt(edges[b + 1]),
                 fmt(pt.hist.counts[b])});
    }
  }
}

// ------------------------------------------------------------------
// Runners
// ------------------------------------------------------------------

FigPoint make_fig_point(double p, double bound, double ghz_normalized,
                        const CutPointStats& s, std::uint64_t excluded) {
  FigPoint pt;
  pt.p = p;
  pt.bound = bound;
  pt.ghz_normalized = ghz_normalized;
  pt.mean = s.mean;
  pt.stddev = s.stddev;
  pt.stderror =
      s.included > 0 ? s.stddev / std::sqrt(static_cast<double>(s.included))
                     : 0.0;
  pt.min = s.min;
  pt.max = s.max;
  pt.included = s.included;
  pt.excluded = excluded;
  pt.hist = s.hist;
  return pt;
}

std::vector<FigCurve> run_fig_common(const ExperimentSpec& spec, int threads,
                                     CutPolicy policy, const char* stem) {
  std::vector<FigCurve> curves;
  for (int n : spec.n_list) {
    guard_qubit_count(n, spec.max_qubits);
    SampleConfig cfg;
    cfg.num_qubits = n;
    cfg.sample_size = spec.sample_size;
    cfg.channel = spec.channel;
    cfg.p_grid = spec.p_grid;
    cfg.cut_policy = policy;
    cfg.seed = substream_seed(spec.seed, static_cast<std::uint64_t>(n));
    cfg.normalized_floor = spec.normalized_floor;
    cfg.num_bins = spec.num_bins;
    const SampleStats stats = run_sample(cfg, threads);
    const Bipartition& cut = stats.cuts.front();

    // Balanced two-branch reference state, the figures' dotted line.
    const GhzSpec ghz(n, 0, +1, cplx{std::sqrt(0.5), 0.0},
                      cplx{std::sqrt(0.5), 0.0});
    const DensityMatrix rho0 = density_from_pure(make_generalized_ghz(ghz));
    const double ghz_initial = negativity(rho0, cut).value;

    FigCurve curve;
    curve.num_qubits = n;
    curve.sample_size = spec.sample_size;
    curve.cut = cut;
    for (std::size_t pi = 0; pi < spec.p_grid.size(); ++pi) {
      const double p = spec.p_grid[pi];
      const DensityMatrix rho_p =
          p == 0.0 ? rho0 : apply_local(rho0, spec.channel.at(p));
      const double ghz_normalized =
          negativity(rho_p, cut).value / ghz_initial;
      const double bound = spec.channel.family == ChannelFamily::Dephasing
                               ? bound_dephasing(n, p)
                               : bound_depolarizing(n, p);
      curve.points.push_back(make_fig_point(p, bound, ghz_normalized,
                                            stats.by_cut[0][pi],
                                            stats.excluded[0]));
    }
    if (!spec.out_dir.empty()) {
      write_fig_csv(spec, stem, curve);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  return enum_name(kind_names, kind);
}

void guard_qubit_count(int num_qubits, int max_qubits) {
  if (num_qubits <= max_qubits) {
    return;
  }
  const double state_bytes = 2.0 * 16.0 * std::pow(4.0, num_qubits);
  const double solver_bytes = 16.0 * std::pow(4.0, num_qubits);
  const double mib = 1024.0 * 1024.0;
  std::ostringstream msg;
  msg << "refusing N=" << num_qubits << " (cap " << max_qubits
      << "): two resident 2^N x 2^N complex matrices need ~"
      << fmt(state_bytes / mib) << " MiB (2*16*4^N bytes) plus ~"
      << fmt(solver_bytes / mib)
      << " MiB eigensolver workspace; raise max_qubits if the machine has "
         "room";
  throw resource_error(msg.str());
}

ExperimentSpec parse_config_text(const std::string& text,
                                 const std::string& source,
                                 std::optional<ExperimentKind> expected_kind) {
  json root;
  const bool blank =
      text.find_first_not_of(" \t\r\n") == std::string::npos;
  if (blank) {
    root = json::object();
  } else {
    try {
      root = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(source, e.what());
    }
  }
  if (!root.is_object()) {
    fail(source, "top-level config must be a JSON object");
  }

  ExperimentSpec spec;

  // Kind first; it decides which keys are legal.
  if (root.contains("kind")) {
    const std::string name = get_string(root.at("kind"), source, "kind");
    const auto kind = enum_value(kind_names, name);
    if (!kind) {
      fail(source, "key \"kind\" must be one of fig1, fig2, fig3, bound, "
                   "evolve, sample");
    }
    if (expected_kind && *kind != *expected_kind) {
      fail(source, std::string("config kind \"") + name +
                       "\" does not match the requested subcommand \"" +
                       to_string(*expected_kind) + "\"");
    }
    spec.kind = *kind;
  } else if (expected_kind) {
    spec.kind = *expected_kind;
  } else {
    fail(source, "key \"kind\" is required");
  }

  switch (spec.kind) {
    case ExperimentKind::Fig1:
    case ExperimentKind::Fig2:
      check_keys(root, source, "",
                 {"kind", "n_list", "p_grid", "p", "channel", "cut_policy",
                  "seed", "out_dir", "sample_size", "normalized_floor",
                  "num_bins", "max_qubits"});
      break;
    case ExperimentKind::Fig3:
      check_keys(root, source, "",
                 {"kind", "n_list", "p_grid", "p", "channel", "cut_policy",
                  "seed", "out_dir", "schedule", "normalized_floor",
                  "num_bins", "max_qubits"});
      break;
    case ExperimentKind::BoundTable:
      check_keys(root, source, "",
                 {"kind", "n_list", "p_grid", "p", "bound", "seed", "out_dir",
                  "max_qubits"});
      break;
    case ExperimentKind::Evolve:
      check_keys(root, source, "",
                 {"kind", "p_grid", "p", "channel", "cut_policy", "seed",
                  "out_dir", "normalized_floor", "max_qubits", "initial",
                  "save_initial"});
      break;
    case ExperimentKind::Sample:
      check_keys(root, source, "",
                 {"kind", "n", "p_grid", "p", "channel", "cut_policy", "seed",
                  "out_dir", "sample_size", "normalized_floor", "num_bins",
                  "max_qubits", "initial"});
      break;
  }

  // Universal scalars.
  if (root.contains("seed")) {
    spec.seed = get_unsigned(root.at("seed"), source, "seed");
  }
  if (root.contains("out_dir")) {
    spec.out_dir = get_string(root.at("out_dir"), source, "out_dir");
  }
  if (root.contains("max_qubits")) {
    const auto cap = get_integer(root.at("max_qubits"), source, "max_qubits");
    if (cap < 1) {
      fail(source, "key \"max_qubits\" must be >= 1");
    }
    spec.max_qubits = static_cast<int>(cap);
  }
  if (root.contains("normalized_floor")) {
    const double floor_value =
        get_double(root.at("normalized_floor"), source, "normalized_floor");
    if (!(floor_value > 0.0) || !std::isfinite(floor_value)) {
      fail(source, "key \"normalized_floor\" must be > 0");
    }
    spec.normalized_floor = floor_value;
  }
  if (root.contains("num_bins")) {
    const auto bins = get_integer(root.at("num_bins"), source, "num_bins");
    if (bins < 1) {
      fail(source, "key \"num_bins\" must be >= 1");
    }
    spec.num_bins = static_cast<int>(bins);
  }
  if (root.contains("sample_size")) {
    spec.sample_size = get_unsigned(root.at("sample_size"), source,
                                    "sample_size");
    if (spec.sample_size < 1) {
      fail(source, "key \"sample_size\" must be >= 1");
    }
  }

  // Channel (families only; \"custom\" is API-level).
  std::optional<double> channel_p;
  if (root.contains("channel")) {
    spec.channel = parse_channel(root.at("channel"), source, &channel_p);
  }
  switch (spec.kind) {
    case ExperimentKind::Fig1:
    case ExperimentKind::Fig2:
      if (root.contains("channel") &&
          spec.channel.family != ChannelFamily::Depolarizing) {
        fail(source, std::string("key \"channel\": ") + to_string(spec.kind) +
                         " is a depolarizing experiment");
      }
      spec.channel.family = ChannelFamily::Depolarizing;
      break;
    case ExperimentKind::Fig3:
      if (root.contains("channel") &&
          spec.channel.family != ChannelFamily::Dephasing) {
        fail(source, "key \"channel\": fig3 is a dephasing experiment");
      }
      spec.channel.family = ChannelFamily::Dephasing;
      break;
    case ExperimentKind::Evolve:
    case ExperimentKind::Sample:
      if (!root.contains("channel")) {
        fail(source, "key \"channel\" is required");
      }
      break;
    case ExperimentKind::BoundTable:
      break;
  }

  // Cut policy; figures fix theirs by definition.
  if (root.contains("cut_policy")) {
    const std::string name =
        get_string(root.at("cut_policy"), source, "cut_policy");
    const auto policy = enum_value(policy_names, name);
    if (!policy) {
      fail(source, "key \"cut_policy\" must be one of most_balanced, "
                   "least_balanced, all");
    }
    spec.cut_policy = *policy;
  } else {
    switch (spec.kind) {
      case ExperimentKind::Fig1:
        spec.cut_policy = CutPolicy::MostBalanced;
        break;
      case ExperimentKind::Fig2:
      case ExperimentKind::Fig3:
        spec.cut_policy = CutPolicy::LeastBalanced;
        break;
      case ExperimentKind::Evolve:
        spec.cut_policy = CutPolicy::All;
        break;
      default:
        spec.cut_policy = CutPolicy::MostBalanced;
        break;
    }
  }
  if ((spec.kind == ExperimentKind::Fig1 &&
       spec.cut_policy != CutPolicy::MostBalanced) ||
      (spec.kind == ExperimentKind::Fig2 &&
       spec.cut_policy != CutPolicy::LeastBalanced) ||
      (spec.kind == ExperimentKind::Fig3 &&
       spec.cut_policy != CutPolicy::LeastBalanced)) {
    fail(source, "key \"cut_policy\" contradicts the figure definition");
  }

  // Probability grid: explicit list, scalar "p" shorthand, channel.p
  // shorthand, or the per-kind default; mixing the spellings is an
  // error rather than a precedence puzzle.
  if (root.contains("p_grid") && (root.contains("p") || channel_p)) {
    fail(source, "give either \"p_grid\" or a scalar \"p\", not both");
  }
  if (root.contains("p") && channel_p) {
    fail(source, "give either \"p\" or \"channel.p\", not both");
  }
  if (root.contains("p_grid")) {
    if (!root.at("p_grid").is_array() || root.at("p_grid").empty()) {
      fail(source, "key \"p_grid\" must be a non-empty array");
    }
    double prev = -1.0;
    for (const auto& v : root.at("p_grid")) {
      const double p = get_probability(v, source, "p_grid");
      if (p <= prev) {
        fail(source, "key \"p_grid\" must be strictly increasing");
      }
      prev = p;
      spec.p_grid.push_back(p);
    }
  } else if (root.contains("p")) {
    spec.p_grid = {get_probability(root.at("p"), source, "p")};
  } else if (channel_p) {
    spec.p_grid = {*channel_p};
  } else if (spec.kind == ExperimentKind::Fig3) {
    spec.p_grid = {0.3};
  } else {
    spec.p_grid = default_p_grid();
  }

  // Qubit counts.
  if (root.contains("n_list")) {
    if (!root.at("n_list").is_array() || root.at("n_list").empty()) {
      fail(source, "key \"n_list\" must be a non-empty array");
    }
    for (const auto& v : root.at("n_list")) {
      const auto n = get_integer(v, source, "n_list");
      const int min_n = spec.kind == ExperimentKind::BoundTable ? 1 : 2;
      if (n < min_n || n > 62) {
        fail(source, "key \"n_list\" entries must be >= " +
                         std::to_string(min_n));
      }
      spec.n_list.push_back(static_cast<int>(n));
    }
  } else {
    switch (spec.kind) {
      case ExperimentKind::Fig1:
      case ExperimentKind::Fig2:
        spec.n_list = {2, 3, 4, 5, 6};
        break;
      case ExperimentKind::Fig3:
        spec.n_list = {2, 3, 4, 5, 6, 7, 8, 9, 10};
        break;
      case ExperimentKind::BoundTable:
        spec.n_list = {2, 4, 6, 8};
        break;
      default:
        break;
    }
  }
  if (root.contains("n")) {
    const auto n = get_integer(root.at("n"), source, "n");
    if (n < 2 || n > 62) {
      fail(source, "key \"n\" must be >= 2");
    }
    spec.n_list = {static_cast<int>(n)};
  } else if (spec.kind == ExperimentKind::Sample) {
    fail(source, "key \"n\" is required");
  }

  // Fig3 sample-size schedule.
  if (spec.kind == ExperimentKind::Fig3) {
    if (!root.contains("schedule")) {
      spec.schedule = ScheduleKind::Default;
      spec.schedule_sizes = default_schedule(spec.n_list);
    } else if (root.at("schedule").is_string()) {
      const std::string name = root.at("schedule").get<std::string>();
      if (name == "default") {
        spec.schedule = ScheduleKind::Default;
        spec.schedule_sizes = default_schedule(spec.n_list);
      } else if (name == "full") {
        spec.schedule = ScheduleKind::FullSize;
        spec.schedule_sizes = full_schedule(spec.n_list, source);
      } else {
        fail(source, "key \"schedule\" must be \"default\", \"full\" or a "
                     "{N: size} object");
      }
    } else if (root.at("schedule").is_object()) {
      spec.schedule = ScheduleKind::Custom;
      for (const auto& item : root.at("schedule").items()) {
        int n = 0;
        try {
          n = std::stoi(item.key());
        } catch (const std::exception&) {
          fail(source, "key \"schedule\" has a non-numeric qubit count \"" +
                           item.key() + "\"");
        }
        const auto size =
            get_unsigned(item.value(), source, "schedule." + item.key());
        if (size < 1) {
          fail(source, "key \"schedule." + item.key() + "\" must be >= 1");
        }
        spec.schedule_sizes[n] = size;
      }
      for (int n : spec.n_list) {
        if (!spec.schedule_sizes.count(n)) {
          fail(source, "key \"schedule\" misses an entry for N=" +
                           std::to_string(n));
        }
      }
    } else {
      fail(source, "key \"schedule\" must be \"default\", \"paper\" or a "
                   "{N: size} object");
    }
  }

  // Initial state (evolve: ghz or file; sample: ghz override).
  if (root.contains("initial")) {
    const json& init = root.at("initial");
    if (!init.is_object()) {
      fail(source, "key \"initial\" must be an object");
    }
    check_keys(init, source, "initial.", {"ghz", "file"});
    if (init.contains("ghz") == init.contains("file")) {
      fail(source, "key \"initial\" needs exactly one of \"ghz\", \"file\"");
    }
    if (init.contains("ghz")) {
      spec.initial_ghz = parse_ghz(init.at("ghz"), source, "initial.ghz");
    } else {
      if (spec.kind == ExperimentKind::Sample) {
        fail(source, "key \"initial.file\" is not available for sampling; "
                     "use a ghz override");
      }
      spec.initial_file = get_string(init.at("file"), source, "initial.file");
    }
  } else if (spec.kind == ExperimentKind::Evolve) {
    fail(source, "key \"initial\" is required");
  }
  if (root.contains("save_initial")) {
    spec.save_initial =
        get_string(root.at("save_initial"), source, "save_initial");
  }

  // Bound-table request.
  if (spec.kind == ExperimentKind::BoundTable) {
    if (!root.contains("bound")) {
      fail(source, "key \"bound\" is required");
    }
    const json& b = root.at("bound");
    if (!b.is_object()) {
      fail(source, "key \"bound\" must be an object");
    }
    check_keys(b, source, "bound.",
               {"family", "nbar", "diffusive", "alpha", "beta", "kappa"});
    if (!b.contains("family")) {
      fail(source, "key \"bound.family\" is required");
    }
    const std::string name =
        get_string(b.at("family"), source, "bound.family");
    const auto family = enum_value(bound_family_names, name);
    if (!family) {
      fail(source,
           "key \"bound.family\" must be one of depolarizing_ghz_diag, "
           "depolarizing_two_qubit_any, dephasing, thermal_state_dependent, "
           "thermal_uniform");
    }
    spec.bound.family = *family;
    if (b.contains("nbar")) {
      const double nbar = get_double(b.at("nbar"), source, "bound.nbar");
      if (!std::isfinite(nbar) || nbar < 0.0) {
        fail(source, "key \"bound.nbar\" must be >= 0");
      }
      spec.bound.nbar = nbar;
    }
    if (b.contains("diffusive")) {
      if (!b.at("diffusive").is_boolean()) {
        fail(source, "key \"bound.diffusive\" must be a boolean");
      }
      spec.bound.diffusive = b.at("diffusive").get<bool>();
    }
    if (b.contains("alpha")) {
      spec.bound.alpha = get_complex(b.at("alpha"), source, "bound.alpha");
    }
    if (b.contains("beta")) {
      spec.bound.beta = get_complex(b.at("beta"), source, "bound.beta");
    }
    if (b.contains("kappa")) {
      const auto kappa = get_integer(b.at("kappa"), source, "bound.kappa");
      if (kappa < 0) {
        fail(source, "key \"bound.kappa\" must be >= 0");
      }
      spec.bound.kappa = static_cast<int>(kappa);
    }
  }

  return spec;
}

ExperimentSpec parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error(path + ": cannot open config file");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

std::string echo_config(const ExperimentSpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind);
  j["seed"] = spec.seed;
  if (!spec.out_dir.empty()) {
    j["out_dir"] = spec.out_dir;
  }
  j["max_qubits"] = spec.max_qubits;
  j["p_grid"] = spec.p_grid;
  switch (spec.kind) {
    case ExperimentKind::Fig1:
    case ExperimentKind::Fig2:
      j["n_list"] = spec.n_list;
      j["sample_size"] = spec.sample_size;
      j["channel"] = channel_to_json(spec.channel);
      j["cut_policy"] = enum_name(policy_names, spec.cut_policy);
      j["normalized_floor"] = spec.normalized_floor;
      j["num_bins"] = spec.num_bins;
      break;
    case ExperimentKind::Fig3: {
      j["n_list"] = spec.n_list;
      j["channel"] = channel_to_json(spec.channel);
      j["cut_policy"] = enum_name(policy_names, spec.cut_policy);
      j["normalized_floor"] = spec.normalized_floor;
      j["num_bins"] = spec.num_bins;
      if (spec.schedule == ScheduleKind::Default) {
        j["schedule"] = "default";
      } else if (spec.schedule == ScheduleKind::FullSize) {
        j["schedule"] = "full";
      } else {
        json sizes;
        for (const auto& [n, size] : spec.schedule_sizes) {
          sizes[std::to_string(n)] = size;
        }
        j["schedule"] = std::move(sizes);
      }
      break;
    }
    case ExperimentKind::BoundTable: {
      j["n_list"] = spec.n_list;
      json b;
      b["family"] = enum_name(bound_family_names, spec.bound.family);
      if (spec.bound.nbar) {
        b["nbar"] = *spec.bound.nbar;
      }
      if (spec.bound.diffusive) {
        b["diffusive"] = true;
      }
      if (spec.bound.alpha) {
        b["alpha"] = {spec.bound.alpha->real(), spec.bound.alpha->imag()};
      }
      if (spec.bound.beta) {
        b["beta"] = {spec.bound.beta->real(), spec.bound.beta->imag()};
      }
      if (spec.bound.kappa) {
        b["kappa"] = *spec.bound.kappa;
      }
      j["bound"] = std::move(b);
      break;
    }
    case ExperimentKind::Evolve: {
      j["channel"] = channel_to_json(spec.channel);
      j["cut_policy"] = enum_name(policy_names, spec.cut_policy);
      j["normalized_floor"] = spec.normalized_floor;
      json init;
      if (spec.initial_ghz) {
        init["ghz"] = ghz_to_json(*spec.initial_ghz);
      } else {
        init["file"] = spec.initial_file;
      }
      j["initial"] = std::move(init);
      if (!spec.save_initial.empty()) {
        j["save_initial"] = spec.save_initial;
      }
      break;
    }
    case ExperimentKind::Sample: {
      j["n"] = spec.n_list.front();
      j["sample_size"] = spec.sample_size;
      j["channel"] = channel_to_json(spec.channel);
      j["cut_policy"] = enum_name(policy_names, spec.cut_policy);
      j["normalized_floor"] = spec.normalized_floor;
      j["num_bins"] = spec.num_bins;
      if (spec.initial_ghz) {
        json init;
        init["ghz"] = ghz_to_json(*spec.initial_ghz);
        j["initial"] = std::move(init);
      }
      break;
    }
  }
  return j.dump();
}

std::vector<FigCurve> run_fig1(const ExperimentSpec& spec, int threads) {
  return run_fig_common(spec, threads, CutPolicy::MostBalanced, "fig1");
}

std::vector<FigCurve> run_fig2(const ExperimentSpec& spec, int threads) {
  return run_fig_common(spec, threads, CutPolicy::LeastBalanced, "fig2");
}

std::vector<Fig3Row> run_fig3(const ExperimentSpec& spec, int threads) {
  std::vector<Fig3Row> rows;
  for (int n : spec.n_list) {
    guard_qubit_count(n, spec.max_qubits);
    SampleConfig cfg;
    cfg.num_qubits = n;
    cfg.sample_size = spec.schedule_sizes.at(n);
    cfg.channel = spec.channel;
    cfg.p_grid = spec.p_grid;
    cfg.cut_policy = CutPolicy::LeastBalanced;
    cfg.seed = substream_seed(spec.seed, static_cast<std::uint64_t>(n));
    cfg.normalized_floor = spec.normalized_floor;
    cfg.num_bins = spec.num_bins;
    const SampleStats stats = run_sample(cfg, threads);
    for (std::size_t pi = 0; pi < spec.p_grid.size(); ++pi) {
      const CutPointStats& s = stats.by_cut[0][pi];
      Fig3Row row;
      row.num_qubits = n;
      row.p = spec.p_grid[pi];
      row.bound = bound_dephasing(n, row.p);
      row.mean = s.mean;
      row.stddev = s.stddev;
      row.stderror =
          s.included > 0
              ? s.stddev / std::sqrt(static_cast<double>(s.included))
              : 0.0;
      row.sample_size = cfg.sample_size;
      row.included = s.included;
      row.excluded = stats.excluded[0];
      rows.push_back(row);
    }
  }
  if (!spec.out_dir.empty()) {
    Csv csv(prepared_out_dir(spec) / "fig3.csv");
    csv.meta(spec);
    csv.line({"n", "p", "bound", "mean", "stddev", "stderr", "sample_size",
              "included", "excluded"});
    for (const Fig3Row& r : rows) {
      csv.line({std::to_string(r.num_qubits), fmt(r.p), fmt(r.bound),
                fmt(r.mean), fmt(r.stddev), fmt(r.stderror),
                fmt(r.sample_size), fmt(r.included), fmt(r.excluded)});
    }
  }
  return rows;
}

std::vector<EvolveRow> run_evolve(const ExperimentSpec& spec, int threads) {
  (void)threads;  // single-state inspection is sequential
  std::optional<DensityMatrix> rho0;
  std::optional<PureState> psi0;
  if (spec.initial_ghz) {
    psi0 = make_generalized_ghz(*spec.initial_ghz);
    guard_qubit_count(psi0->num_qubits(), spec.max_qubits);
    rho0 = density_from_pure(*psi0);
  } else {
    StateSnapshot snapshot = load_state(spec.initial_file);
    if (std::holds_alternative<PureState>(snapshot)) {
      psi0 = std::get<PureState>(std::move(snapshot));
      guard_qubit_count(psi0->num_qubits(), spec.max_qubits);
      rho0 = density_from_pure(*psi0);
    } else {
      rho0 = std::get<DensityMatrix>(std::move(snapshot));
      guard_qubit_count(rho0->num_qubits(), spec.max_qubits);
      if (!rho0->is_positive_semidefinite()) {
        throw config_error(spec.initial_file +
                           ": snapshot is not positive semidefinite");
      }
    }
  }
  if (!spec.save_initial.empty()) {
    if (psi0) {
      save_state(*psi0, spec.save_initial);
    } else {
      save_state(*rho0, spec.save_initial);
    }
  }

  const int n = rho0->num_qubits();
  const auto cuts = enumerate_cuts(n, spec.cut_policy);
  std::vector<double> initial_values;
  initial_values.reserve(cuts.size());
  for (const Bipartition& cut : cuts) {
    initial_values.push_back(negativity(*rho0, cut).value);
  }

  std::vector<EvolveRow> rows;
  for (double p : spec.p_grid) {
    const DensityMatrix rho_p =
        p == 0.0 ? *rho0 : apply_local(*rho0, spec.channel.at(p));
    for (std::size_t c = 0; c < cuts.size(); ++c) {
      EvolveRow row;
      row.p = p;
      row.cut_mask = cuts[c].side_a_mask();
      row.value = negativity(rho_p, cuts[c]).value;
      row.normalized = initial_values[c] > spec.normalized_floor
                           ? row.value / initial_values[c]
                           : std::nan("");
      switch (spec.channel.family) {
        case ChannelFamily::Depolarizing:
          row.bound_multiplier = bound_depolarizing(n, p);
          row.bound_value = row.bound_multiplier * initial_values[c];
          break;
        case ChannelFamily::Dephasing:
          row.bound_multiplier = bound_dephasing(n, p);
          row.bound_value = row.bound_multiplier * initial_values[c];
          break;
        case ChannelFamily::Thermal: {
          // State-dependent form for an explicit two-branch initial
          // state, state-independent form otherwise; both cap E_max.
          if (spec.initial_ghz) {
            const GhzSpec& g = *spec.initial_ghz;
            const int kappa = hamming_weight(g.label);
            row.bound_multiplier =
                spec.channel.diffusive
                    ? bound_thermal_state_dependent_diffusive(
                          g.alpha, g.beta, kappa, n, p)
                    : bound_thermal_state_dependent(g.alpha, g.beta, kappa, n,
                                                    spec.channel.nbar, p);
          } else {
            row.bound_multiplier =
                spec.channel.diffusive
                    ? bound_thermal_uniform_diffusive(n, p)
                    : bound_thermal_uniform(n, spec.channel.nbar, p);
          }
          row.bound_value = row.bound_multiplier * max_negativity(cuts[c]);
          break;
        }
        case ChannelFamily::Custom:
          break;
      }
      rows.push_back(row);
    }
  }

  if (!spec.out_dir.empty()) {
    Csv csv(prepared_out_dir(spec) / "evolve.csv");
    csv.meta(spec);
    csv.line({"p", "cut_mask", "negativity", "normalized", "bound_multiplier",
              "bound_value"});
    for (const EvolveRow& r : rows) {
      csv.line({fmt(r.p), fmt(r.cut_mask), fmt(r.value), fmt(r.normalized),
                fmt(r.bound_multiplier), fmt(r.bound_value)});
    }
  }
  return rows;
}

std::vector<BoundRow> run_bound_table(const ExperimentSpec& spec) {
  std::vector<BoundRow> rows;
  for (int n : spec.n_list) {
    for (double p : spec.p_grid) {
      BoundQuery q;
      q.family = spec.bound.family;
      q.num_qubits = n;
      q.p = p;
      q.nbar = spec.bound.nbar;
      q.diffusive = spec.bound.diffusive;
      q.alpha = spec.bound.alpha;
      q.beta = spec.bound.beta;
      q.kappa = spec.bound.kappa;
      BoundRow row;
      row.num_qubits = n;
      row.p = p;
      try {
        row.multiplier = evaluate_bound(q);
      } catch (const std::invalid_argument& e) {
        throw config_error(std::string("bound: ") + e.what());
      }
      rows.push_back(row);
    }
  }
  if (!spec.out_dir.empty()) {
    Csv csv(prepared_out_dir(spec) / "bound_table.csv");
    csv.meta(spec);
    csv.line({"family", "n", "p", "multiplier"});
    for (const BoundRow& r : rows) {
      csv.line({enum_name(bound_family_names, spec.bound.family),
                std::to_string(r.num_qubits), fmt(r.p), fmt(r.multiplier)});
    }
  }
  return rows;
}

SampleStats run_sample_experiment(const ExperimentSpec& spec, int threads) {
  const int n = spec.n_list.front();
  guard_qubit_count(n, spec.max_qubits);
  SampleConfig cfg;
  cfg.num_qubits = n;
  cfg.sample_size = spec.sample_size;
  cfg.channel = spec.channel;
  cfg.p_grid = spec.p_grid;
  cfg.cut_policy = spec.cut_policy;
  cfg.seed = spec.seed;
  cfg.normalized_floor = spec.normalized_floor;
  cfg.num_bins = spec.num_bins;
  cfg.initial_ghz = spec.initial_ghz;
  const SampleStats stats = run_sample(cfg, threads);

  if (!spec.out_dir.empty()) {
    const auto dir = prepared_out_dir(spec);
    Csv csv(dir / "sample_stats.csv");
    csv.meta(spec);
    csv.line({"p", "cut_mask", "statistic", "value"});
    for (std::size_t c = 0; c < stats.cuts.size(); ++c) {
      const std::string mask = fmt(stats.cuts[c].side_a_mask());
      for (std::size_t pi = 0; pi < stats.p_grid.size(); ++pi) {
        const CutPointStats& s = stats.by_cut[c][pi];
        const std::string p = fmt(stats.p_grid[pi]);
        csv.line({p, mask, "mean", fmt(s.mean)});
        csv.line({p, mask, "stddev", fmt(s.stddev)});
        csv.line({p, mask, "min", fmt(s.min)});
        csv.line({p, mask, "max", fmt(s.max)});
        csv.line({p, mask, "included", fmt(s.included)});
        csv.line({p, mask, "excluded", fmt(stats.excluded[c])});
      }
    }

    json summary;
    summary["version"] = version_string;
    summary["seed"] = spec.seed;
    summary["config"] = json::parse(echo_config(spec));
    summary["failed_samples"] = stats.failed_samples;
    json results = json::array();
    for (std::size_t c = 0; c < stats.cuts.size(); ++c) {
      json cut;
      cut["cut_mask"] = stats.cuts[c].side_a_mask();
      cut["excluded"] = stats.excluded[c];
      json per_p = json::array();
      for (std::size_t pi = 0; pi < stats.p_grid.size(); ++pi) {
        const CutPointStats& s = stats.by_cut[c][pi];
        json point;
        point["p"] = stats.p_grid[pi];
        point["mean"] = s.mean;
        point["stddev"] = s.stddev;
        point["min"] = s.min;
        point["max"] = s.max;
        point["included"] = s.included;
        point["hist"] = {{"lo", s.hist.lo},
                         {"hi", s.hist.hi},
                         {"counts", s.hist.counts}};
        per_p.push_back(std::move(point));
      }
      cut["per_p"] = std::move(per_p);
      results.push_back(std::move(cut));
    }
    summary["results"] = std::move(results);
    std::ofstream out(dir / "sample_summary.json");
    if (!out) {
      throw resource_error("cannot open sample_summary.json for writing");
    }
    out << summary.dump(2) << "\n";
  }
  return stats;
}

void run_experiment(const ExperimentSpec& spec, int threads) {
  switch (spec.kind) {
    case ExperimentKind::Fig1:
      run_fig1(spec, threads);
      return;
    case ExperimentKind::Fig2:
      run_fig2(spec, threads);
      return;
    case ExperimentKind::Fig3:
      run_fig3(spec, threads);
      return;
    case ExperimentKind::BoundTable:
      run_bound_table(spec);
      return;
    case ExperimentKind::Evolve:
      run_evolve(spec, threads);
      return;
    case ExperimentKind::Sample:
      run_sample_experiment(spec, threads);
      return;
  }
}

}  // namespace ghzdecay
