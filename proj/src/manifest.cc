// src/manifest.cc

// Copyright 2026  dpa authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "dpa/manifest.h"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "dpa/error.h"

namespace dpa {

namespace {

constexpr const char* kHeader = "path,weight_g,duration_s";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

DatasetManifest read_manifest(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw DataError("cannot open manifest: " + path);

  std::string line;
  if (!std::getline(file, line)) throw DataError("empty manifest: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) {
    throw DataError("manifest header must be `" + std::string(kHeader) + "`: " + path);
  }

  DatasetManifest manifest;
  std::set<std::string> seen;
  std::size_t line_no = 1;
  while (std::getline(file, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv(line);
    if (fields.size() != 3) {
      throw DataError("manifest line " + std::to_string(line_no) +
                      ": expected 3 comma-separated fields (paths with commas are rejected)");
    }
    ManifestEntry entry;
    entry.path = fields[0];
    if (entry.path.empty()) {
      throw DataError("manifest line " + std::to_string(line_no) + ": empty path");
    }
    auto [wp, wec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(),
                                     entry.weight_g);
    if (wec != std::errc() || wp != fields[1].data() + fields[1].size() || entry.weight_g < 0) {
      throw DataError("manifest line " + std::to_string(line_no) + ": bad weight_g `" +
                      fields[1] + "`");
    }
    try {
      std::size_t consumed = 0;
      entry.duration_s = std::stod(fields[2], &consumed);
      if (consumed != fields[2].size()) throw std::invalid_argument(fields[2]);
    } catch (const std::exception&) {
      throw DataError("manifest line " + std::to_string(line_no) + ": bad duration_s `" +
                      fields[2] + "`");
    }
    if (entry.duration_s < 0.0) {
      throw DataError("manifest line " + std::to_string(line_no) + ": negative duration");
    }
    if (!seen.insert(entry.path).second) {
      throw DataError("manifest has duplicate path: " + entry.path);
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

void write_manifest(const std::string& path, const DatasetManifest& manifest) {
  std::set<std::string> seen;
  std::ostringstream out;
  out << kHeader << "\n";
  for (const ManifestEntry& entry : manifest.entries) {
    if (entry.path.find(',') != std::string::npos) {
      throw DataError("manifest paths must not contain commas: " + entry.path);
    }
    if (!seen.insert(entry.path).second) {
      throw DataError("manifest has duplicate path: " + entry.path);
    }
    char duration[64];
    std::snprintf(duration, sizeof duration, "%.12g", entry.duration_s);
    out << entry.path << "," << entry.weight_g << "," << duration << "\n";
  }

  const std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::trunc);
    if (!file) throw DataError("cannot write manifest: " + tmp);
    file << out.str();
    if (!file) throw DataError("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::string resolve_entry_path(const std::string& manifest_path, const std::string& entry_path) {
  std::filesystem::path p(entry_path);
  if (p.is_absolute()) return entry_path;
  return (std::filesystem::path(manifest_path).parent_path() / p).string();
}

}  // namespace dpa
