// Copyright 2026 The stocheuler Authors
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

#include "stocheuler/snapshot.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>

#include "stocheuler/error.hpp"

namespace stocheuler::snapshot {
namespace {

constexpr std::array<char, 4> kMagic{'S', 'E', 'F', 'S'};

template <typename T>
void put(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& in, const std::filesystem::path& path) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw Error(ErrorKind::IoError, "truncated snapshot " + path.string());
  return value;
}

}  // namespace

void write_binary(const SpectralField& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  const Grid& g = field.grid();
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kBinaryVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(field.components()));
  put<std::uint32_t>(out, field.divergence_free() ? 1u : 0u);
  put<double>(out, g.length());
  put<double>(out, g.dealias_fraction());
  put<std::uint64_t>(out, g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Wavevector k = g.wavevector(i);
    for (int d = 0; d < g.dim(); ++d) put<std::int32_t>(out, k[d]);
    for (int c = 0; c < field.components(); ++c) {
      put<double>(out, field.at(c, i).real());
      put<double>(out, field.at(c, i).imag());
    }
  }
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

SpectralField read_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw Error(ErrorKind::IoError, path.string() + " is not a field snapshot");
  const auto version = get<std::uint32_t>(in, path);
  if (version != kBinaryVersion) {
    throw Error(ErrorKind::VersionError, "snapshot version " + std::to_string(version) + " in " + path.string());
  }
  const auto dim = static_cast<int>(get<std::uint32_t>(in, path));
  const auto n = static_cast<int>(get<std::uint32_t>(in, path));
  const auto components = static_cast<int>(get<std::uint32_t>(in, path));
  const auto flags = get<std::uint32_t>(in, path);
  const auto length = get<double>(in, path);
  const auto dealias_fraction = get<double>(in, path);
  const Grid grid(dim, n, length, dealias_fraction);
  SpectralField field(grid, components);
  field.set_divergence_free((flags & 1u) != 0);
  const auto count = get<std::uint64_t>(in, path);
  for (std::uint64_t r = 0; r < count; ++r) {
    Wavevector k{0, 0, 0};
    for (int d = 0; d < dim; ++d) k[d] = get<std::int32_t>(in, path);
    const std::size_t flat = grid.flat_index(k);
    for (int c = 0; c < components; ++c) {
      const double re = get<double>(in, path);
      const double im = get<double>(in, path);
      field.at(c, flat) = Complex(re, im);
    }
  }
  return field;
}

std::string to_json(const SpectralField& field) {
  const Grid& g = field.grid();
  nlohmann::json modes = nlohmann::json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool nonzero = false;
    for (int c = 0; c < field.components(); ++c) nonzero = nonzero || field.at(c, i) != Complex(0.0, 0.0);
    if (!nonzero) continue;
    const Wavevector k = g.wavevector(i);
    nlohmann::json kv = nlohmann::json::array();
    for (int d = 0; d < g.dim(); ++d) kv.push_back(k[d]);
    nlohmann::json cv = nlohmann::json::array();
    for (int c = 0; c < field.components(); ++c) cv.push_back({field.at(c, i).real(), field.at(c, i).imag()});
    modes.push_back({{"k", kv}, {"c", cv}});
  }
  const nlohmann::json doc = {{"format", "stocheuler-field"},
                              {"version", kBinaryVersion},
                              {"dim", g.dim()},
                              {"n", g.n()},
                              {"length", g.length()},
                              {"dealias_fraction", g.dealias_fraction()},
                              {"components", field.components()},
                              {"divergence_free", field.divergence_free()},
                              {"modes", modes}};
  return doc.dump();
}

SpectralField from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::IoError, std::string("field JSON does not parse: ") + e.what());
  }
  if (doc.value("format", "") != "stocheuler-field") throw Error(ErrorKind::IoError, "not a field JSON document");
  if (doc.at("version").get<std::uint32_t>() != kBinaryVersion) {
    throw Error(ErrorKind::VersionError, "field JSON version " + doc.at("version").dump());
  }
  const Grid grid(doc.at("dim").get<int>(), doc.at("n").get<int>(), doc.at("length").get<double>(),
                  doc.at("dealias_fraction").get<double>());
  SpectralField field(grid, doc.at("components").get<int>());
  field.set_divergence_free(doc.at("divergence_free").get<bool>());
  for (const auto& mode : doc.at("modes")) {
    Wavevector k{0, 0, 0};
    for (int d = 0; d < grid.dim(); ++d) k[d] = mode.at("k").at(d).get<int>();
    const std::size_t flat = grid.flat_index(k);
    for (int c = 0; c < field.components(); ++c) {
      const auto& pair = mode.at("c").at(c);
      field.at(c, flat) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
  }
  return field;
}

}  // namespace stocheuler::snapshot
