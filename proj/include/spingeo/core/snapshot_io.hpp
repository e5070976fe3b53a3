#pragma once

// Field snapshots: a raw little-endian float64 array (node-major, x fastest,
// components contiguous per node) plus a JSON sidecar
// {dims, extents, points, rank, component_count}.

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spingeo/core/grid.hpp"

namespace spingeo::io {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; add byte swapping for BE hosts");

/// Writes `content` to `path` through a temporary file and a rename.
inline void write_atomic(const std::filesystem::path& path,
                         const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw Error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

struct SnapshotHeader {
  GridSpec grid;
  int rank = 0;
  int component_count = 1;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["dims"] = grid.dims();
    j["extents"] = std::vector<double>(grid.extents().begin(),
                                       grid.extents().begin() + grid.dims());
    j["points"] = std::vector<int>(grid.point_counts().begin(),
                                   grid.point_counts().begin() + grid.dims());
    j["rank"] = rank;
    j["component_count"] = component_count;
    return j;
  }

  static SnapshotHeader from_json(const nlohmann::json& j) {
    const int dims = j.at("dims").get<int>();
    const auto ext = j.at("extents").get<std::vector<double>>();
    const auto pts = j.at("points").get<std::vector<int>>();
    if (static_cast<int>(ext.size()) != dims || static_cast<int>(pts.size()) != dims)
      throw InvalidArgument("snapshot header: extents/points length != dims");
    std::array<double, 3> e{1, 1, 1};
    std::array<int, 3> p{1, 1, 1};
    for (int a = 0; a < dims; ++a) {
      e[a] = ext[a];
      p[a] = pts[a];
    }
    return {GridSpec(dims, e, p), j.at("rank").get<int>(),
            j.at("component_count").get<int>()};
  }
};

inline void write_raw(const std::filesystem::path& base,
                      const SnapshotHeader& header,
                      const std::vector<double>& data) {
  if (data.size() != header.grid.size() * header.component_count)
    throw InvalidArgument("snapshot: data size does not match header");
  std::string bytes(data.size() * sizeof(double), '\0');
  std::memcpy(bytes.data(), data.data(), bytes.size());
  auto bin = base;
  bin += ".bin";
  auto js = base;
  js += ".json";
  write_atomic(bin, bytes);
  write_atomic(js, header.to_json().dump(2) + "\n");
}

inline std::pair<SnapshotHeader, std::vector<double>> read_raw(
    const std::filesystem::path& base) {
  auto js = base;
  js += ".json";
  auto bin = base;
  bin += ".bin";
  std::ifstream jis(js);
  if (!jis) throw Error("cannot open " + js.string());
  const auto header = SnapshotHeader::from_json(nlohmann::json::parse(jis));
  std::vector<double> data(header.grid.size() * header.component_count);
  std::ifstream bis(bin, std::ios::binary);
  if (!bis) throw Error("cannot open " + bin.string());
  bis.read(reinterpret_cast<char*>(data.data()),
           static_cast<std::streamsize>(data.size() * sizeof(double)));
  if (bis.gcount() != static_cast<std::streamsize>(data.size() * sizeof(double)))
    throw Error("snapshot payload shorter than header promises: " + bin.string());
  return {header, std::move(data)};
}

inline void write_field(const std::filesystem::path& base, const ScalarField& f) {
  write_raw(base, {f.grid, 0, 1}, f.values);
}

inline void write_field(const std::filesystem::path& base, const VectorField& f) {
  std::vector<double> d;
  d.reserve(f.size() * 3);
  for (const auto& v : f.values) d.insert(d.end(), {v[0], v[1], v[2]});
  write_raw(base, {f.grid, 1, 3}, d);
}

/// Spinors are stored as (Re psi1, Im psi1, Re psi2, Im psi2) per node.
inline void write_field(const std::filesystem::path& base, const SpinorField& f) {
  std::vector<double> d;
  d.reserve(f.size() * 4);
  for (const auto& v : f.values)
    d.insert(d.end(), {v[0].real(), v[0].imag(), v[1].real(), v[1].imag()});
  write_raw(base, {f.grid, 1, 4}, d);
}

inline SpinorField read_spinor(const std::filesystem::path& base) {
  auto [header, data] = read_raw(base);
  if (header.rank != 1 || header.component_count != 4)
    throw InvalidArgument("snapshot is not a spinor field (rank 1, 4 components)");
  SpinorField f(header.grid);
  for (std::size_t n = 0; n < f.size(); ++n)
    f[n] = Spinor(cplx(data[4 * n], data[4 * n + 1]),
                  cplx(data[4 * n + 2], data[4 * n + 3]));
  if (!all_finite(f)) throw InvalidArgument("spinor snapshot has non-finite values");
  return f;
}

}  // namespace spingeo::io
