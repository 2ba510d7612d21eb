// dpa/manifest.h

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

#ifndef DPA_MANIFEST_H_
#define DPA_MANIFEST_H_

#include <string>
#include <vector>

namespace dpa {

struct ManifestEntry {
  std::string path;
  int weight_g = 0;
  double duration_s = 0.0;
};

// CSV dataset index: `path,weight_g,duration_s`, one recording per row.
// Paths are stored verbatim; paths containing commas are rejected rather
// than quoted. Relative paths resolve against the manifest's directory.
struct DatasetManifest {
  std::vector<ManifestEntry> entries;
};

DatasetManifest read_manifest(const std::string& path);
void write_manifest(const std::string& path, const DatasetManifest& manifest);

// Directory of the manifest file, used to resolve relative entry paths.
std::string resolve_entry_path(const std::string& manifest_path, const std::string& entry_path);

}  // namespace dpa

#endif  // DPA_MANIFEST_H_
