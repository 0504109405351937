#pragma once

#include "qgopt/common.hpp"
#include "qgopt/registers.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace qgopt {

/// Shortest-roundtrip decimal rendering; identical bytes for identical values.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // trim to the shortest string that parses back exactly
  for (int prec = 1; prec < 17; ++prec) {
    char probe[40];
    std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
    if (std::strtod(probe, nullptr) == v) return probe;
  }
  return buf;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render() const {
    std::string out;
    auto join = [&out](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
      out += '\n';
    };
    join(header);
    for (const auto& r : rows) join(r);
    return out;
  }
};

/// Geometry column label from the per-coordinate indices, e.g. "3" or "3_1".
inline std::string geometry_label(const GeometryGrid& grid, std::uint64_t j_flat) {
  const auto idx = grid.unflatten_geometry(j_flat);
  std::string label;
  for (std::size_t c = 0; c < idx.size(); ++c) {
    if (c) label += '_';
    label += std::to_string(idx[c]);
  }
  return label;
}

inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw validation_error("cannot open " + tmp + " for writing");
    os << content;
  }
  std::filesystem::rename(tmp, path);
}

/// In-memory run output: file name -> content. Written in one pass so the
/// manifest can list every artifact and tests can compare bytes directly.
struct RunArtifacts {
  std::vector<std::pair<std::string, std::string>> files;

  void add(const std::string& name, std::string content) {
    files.emplace_back(name, std::move(content));
  }

  void write_all(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    for (const auto& [name, content] : files) write_file_atomic(dir / name, content);
  }
};

} // namespace qgopt
