// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/train/trainer.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dvdet/errors.hpp"

namespace dvdet::train {

using model::Detector;
using nn::Real;

namespace {

int argmax(std::span<const Real> v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::vector<std::pair<int, int>> outcomes_for(const Detector& detector,
                                              std::span<const Sample> samples) {
  std::vector<std::pair<int, int>> outcomes;
  outcomes.reserve(samples.size());
  for (const Sample& s : samples) {
    model::SampleOutput out = detector.predict(s);
    outcomes.emplace_back(s.label, argmax(out.probs));
  }
  return outcomes;
}

}  // namespace

Metrics evaluate(const Detector& detector, std::span<const Sample> samples) {
  auto outcomes = outcomes_for(detector, samples);
  const auto& classes = detector.class_names();
  const bool safe_first = !classes.empty() && classes.front() == "safe";
  return compute_metrics(outcomes, detector.config().num_classes, safe_first);
}

double mean_loss(const Detector& detector, std::span<const Sample> samples) {
  if (samples.empty()) return 0.0;
  double total = 0;
  for (const Sample& s : samples) total += detector.loss(s);
  return total / static_cast<double>(samples.size());
}

TrainResult train(Detector& detector, std::span<const Sample> train_samples,
                  std::span<const Sample> val_samples, const TrainConfig& config) {
  if (train_samples.empty()) throw std::invalid_argument("train: empty training set");
  if (config.batch < 1) throw std::invalid_argument("train: batch must be >= 1");

  TrainResult result;
  if (config.epochs == 0) return result;

  const nn::CounterRng rng(config.seed);
  const uint64_t shuffle_stream = nn::CounterRng::stream_of("train.shuffle");

  const size_t n = train_samples.size();
  const long batches_per_epoch =
      static_cast<long>((n + static_cast<size_t>(config.batch) - 1) /
                        static_cast<size_t>(config.batch));
  const long total_steps = static_cast<long>(config.epochs) * batches_per_epoch;

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  nn::ParamStore best_params;
  double best_acc = -1;
  double best_loss = 0;
  long step = 0;
  uint64_t shuffle_counter = 0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    // seeded Fisher-Yates
    for (size_t i = n; i > 1; --i) {
      const size_t j = rng.bits(shuffle_stream, shuffle_counter++) % i;
      std::swap(order[i - 1], order[j]);
    }

    double epoch_loss = 0;
    double lr_used = 0;
    for (size_t start = 0; start < n; start += static_cast<size_t>(config.batch)) {
      const size_t end = std::min(n, start + static_cast<size_t>(config.batch));
      std::vector<const Sample*> batch;
      batch.reserve(end - start);
      for (size_t i = start; i < end; ++i) batch.push_back(&train_samples[order[i]]);

      const Real lr = nn::cosine_lr(step, total_steps, static_cast<Real>(config.lr0));
      lr_used = lr;
      const Real batch_loss =
          detector.loss_and_gradients(batch, nn::CounterRng::substream(config.seed, step));
      epoch_loss += batch_loss * static_cast<Real>(batch.size());

      nn::AdamConfig adam;
      adam.lr = lr;
      nn::adam_step(detector.params(), adam, step + 1);
      ++step;
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.lr = lr_used;
    stats.train_loss = epoch_loss / static_cast<double>(n);
    stats.train_accuracy = evaluate(detector, train_samples).accuracy;
    if (!val_samples.empty()) {
      Metrics val = evaluate(detector, val_samples);
      stats.val_accuracy = val.accuracy;
      stats.val_loss = mean_loss(detector, val_samples);
      const bool better = *stats.val_accuracy > best_acc ||
                          (*stats.val_accuracy == best_acc && *stats.val_loss < best_loss);
      if (better) {
        best_acc = *stats.val_accuracy;
        best_loss = *stats.val_loss;
        best_params = detector.params();
        result.best_epoch = epoch;
        result.best_val_metrics = std::move(val);
      }
    }
    result.history.push_back(stats);
  }

  if (!val_samples.empty() && result.best_epoch >= 0) {
    detector.params() = std::move(best_params);
  }
  return result;
}

std::string train_report_json(const TrainResult& result, const Detector& detector,
                              const TrainConfig& config) {
  nlohmann::json j;
  j["mode"] = std::string(model::to_string(detector.mode()));
  j["classes"] = detector.class_names();
  j["epochs"] = config.epochs;
  j["batch"] = config.batch;
  j["lr0"] = config.lr0;
  j["seed"] = config.seed;
  j["best_epoch"] = result.best_epoch;
  j["history"] = nlohmann::json::array();
  for (const EpochStats& e : result.history) {
    nlohmann::json je{{"epoch", e.epoch},
                      {"lr", e.lr},
                      {"train_loss", e.train_loss},
                      {"train_accuracy", e.train_accuracy}};
    if (e.val_loss) je["val_loss"] = *e.val_loss;
    if (e.val_accuracy) je["val_accuracy"] = *e.val_accuracy;
    j["history"].push_back(std::move(je));
  }
  return j.dump(2) + "\n";
}

}  // namespace dvdet::train
