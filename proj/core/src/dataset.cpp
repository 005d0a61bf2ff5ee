// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/train/dataset.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "dvdet/errors.hpp"

namespace dvdet::train {

using nlohmann::json;

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open manifest: " + path.string());
  std::vector<ManifestEntry> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError("manifest line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.contains("id")) {
      throw FormatError("manifest line " + std::to_string(line_no) + ": missing id");
    }
    ManifestEntry entry;
    entry.id = j["id"].get<std::string>();
    entry.ast_path = j.value("ast_path", std::string());
    entry.bytecode_path = j.value("bytecode_path", std::string());
    entry.label = j.value("label", std::string());
    entry.label_source = j.value("label_source", std::string());
    entry.solc_version = j.value("solc_version", std::string());
    out.push_back(std::move(entry));
  }
  return out;
}

std::string_view to_string(TaskKind task) {
  return task == TaskKind::Existence ? "existence" : "type";
}

TaskKind task_from_string(std::string_view name) {
  if (name == "existence") return TaskKind::Existence;
  if (name == "type") return TaskKind::Type;
  throw FormatError("unknown task: " + std::string(name));
}

LabelMap::LabelMap(TaskKind task, std::vector<std::string> classes)
    : task_(task), classes_(std::move(classes)) {
  if (task_ == TaskKind::Existence && classes_.size() != 2) {
    throw InvariantError("existence task needs exactly 2 classes");
  }
  if (classes_.size() < 2) throw InvariantError("need at least 2 classes");
}

int LabelMap::index_of(const std::string& label) const {
  if (task_ == TaskKind::Existence) {
    return label == classes_[0] ? 0 : 1;
  }
  auto it = std::find(classes_.begin(), classes_.end(), label);
  if (it == classes_.end()) {
    throw FormatError("label '" + label + "' is not a configured class");
  }
  return static_cast<int>(it - classes_.begin());
}

std::vector<std::string> LabelMap::default_existence_classes() { return {"safe", "vulnerable"}; }

std::vector<std::string> LabelMap::default_type_classes() {
  return {"safe", "ReEn", "LoWc", "AcCl"};
}

}  // namespace dvdet::train
