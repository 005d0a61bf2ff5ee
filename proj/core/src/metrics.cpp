// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/train/metrics.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "dvdet/errors.hpp"

namespace dvdet::train {

Metrics compute_metrics(std::span<const std::pair<int, int>> outcomes, size_t num_classes,
                        bool first_class_is_safe) {
  Metrics m;
  m.total = outcomes.size();
  m.confusion.assign(num_classes, std::vector<size_t>(num_classes, 0));
  for (const auto& [actual, predicted] : outcomes) {
    if (actual < 0 || static_cast<size_t>(actual) >= num_classes || predicted < 0 ||
        static_cast<size_t>(predicted) >= num_classes) {
      throw InvariantError("metrics: class index out of range");
    }
    m.confusion[actual][predicted]++;
  }

  size_t trace = 0;
  for (size_t c = 0; c < num_classes; ++c) trace += m.confusion[c][c];
  m.accuracy = m.total == 0 ? 0.0 : static_cast<double>(trace) / static_cast<double>(m.total);

  m.recall.resize(num_classes);
  m.one_vs_rest_accuracy.resize(num_classes);
  for (size_t c = 0; c < num_classes; ++c) {
    size_t support = 0;
    for (size_t p = 0; p < num_classes; ++p) support += m.confusion[c][p];
    if (support == 0) {
      m.recall[c] = std::nullopt;
    } else {
      m.recall[c] = static_cast<double>(m.confusion[c][c]) / static_cast<double>(support);
    }
    // one-vs-rest: correct when both sides agree on "is class c"
    size_t agree = 0;
    for (size_t a = 0; a < num_classes; ++a) {
      for (size_t p = 0; p < num_classes; ++p) {
        const bool actual_c = a == c;
        const bool predicted_c = p == c;
        if (actual_c == predicted_c) agree += m.confusion[a][p];
      }
    }
    m.one_vs_rest_accuracy[c] =
        m.total == 0 ? 0.0 : static_cast<double>(agree) / static_cast<double>(m.total);
  }

  if (first_class_is_safe && num_classes >= 2) {
    size_t agree = 0;
    for (size_t a = 0; a < num_classes; ++a) {
      for (size_t p = 0; p < num_classes; ++p) {
        if ((a == 0) == (p == 0)) agree += m.confusion[a][p];
      }
    }
    m.existence_accuracy =
        m.total == 0 ? 0.0 : static_cast<double>(agree) / static_cast<double>(m.total);
  }
  return m;
}

std::string metrics_to_json(const Metrics& m, std::span<const std::string> class_names) {
  nlohmann::json j;
  j["total"] = m.total;
  j["accuracy"] = m.accuracy;
  j["confusion"] = m.confusion;
  j["classes"] = nlohmann::json::array();
  for (size_t c = 0; c < class_names.size(); ++c) {
    nlohmann::json jc{{"name", class_names[c]},
                      {"one_vs_rest_accuracy", m.one_vs_rest_accuracy[c]}};
    if (m.recall[c]) {
      jc["recall"] = *m.recall[c];
    } else {
      jc["recall"] = nullptr;
    }
    j["classes"].push_back(std::move(jc));
  }
  if (m.existence_accuracy) j["existence_accuracy"] = *m.existence_accuracy;
  return j.dump(2) + "\n";
}

std::string metrics_to_table(const Metrics& m, std::span<const std::string> class_names) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-12s %10s %10s\n", "class", "Acc(%)", "Recall(%)");
  out += buf;
  for (size_t c = 0; c < class_names.size(); ++c) {
    if (m.recall[c]) {
      std::snprintf(buf, sizeof(buf), "%-12s %10.2f %10.2f\n", class_names[c].c_str(),
                    100.0 * m.one_vs_rest_accuracy[c], 100.0 * *m.recall[c]);
    } else {
      std::snprintf(buf, sizeof(buf), "%-12s %10.2f %10s\n", class_names[c].c_str(),
                    100.0 * m.one_vs_rest_accuracy[c], "n/a");
    }
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "%-12s %10.2f\n", "overall", 100.0 * m.accuracy);
  out += buf;
  if (m.existence_accuracy) {
    std::snprintf(buf, sizeof(buf), "%-12s %10.2f\n", "existence", 100.0 * *m.existence_accuracy);
    out += buf;
  }
  return out;
}

}  // namespace dvdet::train
