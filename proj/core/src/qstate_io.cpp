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

#include "ghzdecay/qstate_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "ghzdecay/errors.hpp"

namespace ghzdecay {

namespace {

constexpr char magic[4] = {'Q', 'S', 'N', 'P'};
constexpr std::uint8_t tag_pure = 1;
constexpr std::uint8_t tag_density = 2;
constexpr std::uint8_t format_version = 1;

bool is_json_path(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

void write_binary(const std::string& path, std::uint8_t tag, int num_qubits,
                  const std::vector<cplx>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw resource_error("cannot open " + path + " for writing");
  }
  out.write(magic, 4);
  out.put(static_cast<char>(tag));
  out.put(static_cast<char>(format_version));
  out.put(0);
  out.put(0);
  const std::uint32_t n = static_cast<std::uint32_t>(num_qubits);
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(cplx)));
  if (!out) {
    throw resource_error("short write to " + path);
  }
}

void write_json(const std::string& path, const char* type, int num_qubits,
                const std::vector<cplx>& data) {
  nlohmann::json j;
  j["type"] = type;
  j["num_qubits"] = num_qubits;
  nlohmann::json entries = nlohmann::json::array();
  for (const cplx& e : data) {
    entries.push_back({e.real(), e.imag()});
  }
  j["data"] = std::move(entries);
  std::ofstream out(path);
  if (!out) {
    throw resource_error("cannot open " + path + " for writing");
  }
  out << j.dump() << "\n";
}

std::vector<cplx> parse_json_entries(const nlohmann::json& j) {
  std::vector<cplx> data;
  data.reserve(j.size());
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) {
      throw std::invalid_argument("snapshot entries must be [re, im] pairs");
    }
    data.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return data;
}

}  // namespace

void save_state(const PureState& psi, const std::string& path) {
  if (is_json_path(path)) {
    write_json(path, "pure_state", psi.num_qubits(), psi.amplitudes());
  } else {
    write_binary(path, tag_pure, psi.num_qubits(), psi.amplitudes());
  }
}

void save_state(const DensityMatrix& rho, const std::string& path) {
  if (is_json_path(path)) {
    write_json(path, "density_matrix", rho.num_qubits(), rho.elements());
  } else {
    write_binary(path, tag_density, rho.num_qubits(), rho.elements());
  }
}

StateSnapshot load_state(const std::string& path) {
  if (is_json_path(path)) {
    std::ifstream in(path);
    if (!in) {
      throw std::invalid_argument("cannot open snapshot " + path);
    }
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument("snapshot " + path + ": " + e.what());
    }
    const std::string type = j.at("type").get<std::string>();
    const int num_qubits = j.at("num_qubits").get<int>();
    std::vector<cplx> data = parse_json_entries(j.at("data"));
    if (type == "pure_state") {
      return PureState(num_qubits, std::move(data));
    }
    if (type == "density_matrix") {
      return DensityMatrix(num_qubits, std::move(data));
    }
    throw std::invalid_argument("snapshot " + path + ": unknown type " + type);
  }

  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open snapshot " + path);
  }
  char head[8];
  in.read(head, 8);
  if (!in || std::memcmp(head, magic, 4) != 0) {
    throw std::invalid_argument("snapshot " + path + ": bad magic");
  }
  const std::uint8_t tag = static_cast<std::uint8_t>(head[4]);
  if (static_cast<std::uint8_t>(head[5]) != format_version) {
    throw std::invalid_argument("snapshot " + path +
                                ": unsupported format version");
  }
  std::uint32_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  if (!in || n == 0 || n > 62) {
    throw std::invalid_argument("snapshot " + path + ": bad qubit count");
  }
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t count = tag == tag_pure ? dim : dim * dim;
  std::vector<cplx> data(count);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(count * sizeof(cplx)));
  if (!in) {
    throw std::invalid_argument("snapshot " + path + ": truncated payload");
  }
  if (tag == tag_pure) {
    return PureState(static_cast<int>(n), std::move(data));
  }
  if (tag == tag_density) {
    return DensityMatrix(static_cast<int>(n), std::move(data));
  }
  throw std::invalid_argument("snapshot " + path + ": unknown type tag");
}

}  // namespace ghzdecay
