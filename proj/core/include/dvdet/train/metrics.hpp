// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dvdet::train {

struct Metrics {
  size_t total = 0;
  std::vector<std::vector<size_t>> confusion;       // [actual][predicted]
  double accuracy = 0;                              // trace / total
  std::vector<std::optional<double>> recall;        // null for zero-support classes
  std::vector<double> one_vs_rest_accuracy;         // per class
  std::optional<double> existence_accuracy;         // safe-vs-rest, when class 0 is "safe"
};

// actual/predicted class index pairs.
Metrics compute_metrics(std::span<const std::pair<int, int>> outcomes, size_t num_classes,
                        bool first_class_is_safe);

std::string metrics_to_json(const Metrics& m, std::span<const std::string> class_names);

// Plain-text table: one row per class with one-vs-rest accuracy and recall,
// plus overall and existence accuracy lines.
std::string metrics_to_table(const Metrics& m, std::span<const std::string> class_names);

}  // namespace dvdet::train
