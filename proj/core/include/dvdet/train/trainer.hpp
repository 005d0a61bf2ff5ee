// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>

#include "dvdet/model/detector.hpp"
#include "dvdet/nn/optim.hpp"
#include "dvdet/train/metrics.hpp"

namespace dvdet::train {

struct TrainConfig {
  int epochs = 50;
  int batch = 32;
  double lr0 = 0.01;
  uint64_t seed = 0;
};

struct EpochStats {
  int epoch = 0;
  double lr = 0;
  double train_loss = 0;
  double train_accuracy = 0;
  std::optional<double> val_loss;
  std::optional<double> val_accuracy;
};

struct TrainResult {
  std::vector<EpochStats> history;
  int best_epoch = -1;  // -1 when no validation set was given
  std::optional<Metrics> best_val_metrics;
};

// Seeded-shuffle minibatch loop: forward both views per the detector's mode,
// backward, Adam with the cosine schedule over epochs*batches total steps.
// With a validation set, the best-accuracy epoch's parameters (ties broken
// by lower loss) are restored into the detector before returning.
TrainResult train(model::Detector& detector, std::span<const Sample> train_samples,
                  std::span<const Sample> val_samples, const TrainConfig& config);

// Dropout-free evaluation.
Metrics evaluate(const model::Detector& detector, std::span<const Sample> samples);
double mean_loss(const model::Detector& detector, std::span<const Sample> samples);

std::string train_report_json(const TrainResult& result, const model::Detector& detector,
                              const TrainConfig& config);

}  // namespace dvdet::train
