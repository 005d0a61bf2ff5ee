// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/model/detector.hpp"

#include <nlohmann/json.hpp>

#include "dvdet/errors.hpp"

namespace dvdet::model {

using nlohmann::json;
using nn::Real;
using nn::Tensor;

std::string_view to_string(ViewMode mode) {
  switch (mode) {
    case ViewMode::Dual: return "dual";
    case ViewMode::SourceOnly: return "source-only";
    case ViewMode::BytecodeOnly: return "bytecode-only";
  }
  return "?";
}

ViewMode view_mode_from_string(std::string_view name) {
  if (name == "dual") return ViewMode::Dual;
  if (name == "source-only") return ViewMode::SourceOnly;
  if (name == "bytecode-only") return ViewMode::BytecodeOnly;
  throw FormatError("unknown mode: " + std::string(name));
}

std::string ModelConfig::to_json() const {
  json j{{"graph_in", graph_in},
         {"egat_hidden", egat_hidden},
         {"egat_out", egat_out},
         {"seq_in", seq_in},
         {"gru_hidden", gru_hidden},
         {"num_classes", num_classes},
         {"dropout", dropout},
         {"leaky_slope", leaky_slope},
         {"path_pool", path_pool == PathPool::Mean ? "mean" : "max"},
         {"oov_buckets", oov_buckets}};
  return j.dump();
}

ModelConfig ModelConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CheckpointError(std::string("bad model config: ") + e.what());
  }
  ModelConfig c;
  c.graph_in = j.value("graph_in", c.graph_in);
  c.egat_hidden = j.value("egat_hidden", c.egat_hidden);
  c.egat_out = j.value("egat_out", c.egat_out);
  c.seq_in = j.value("seq_in", c.seq_in);
  c.gru_hidden = j.value("gru_hidden", c.gru_hidden);
  c.num_classes = j.value("num_classes", c.num_classes);
  c.dropout = j.value("dropout", c.dropout);
  c.leaky_slope = j.value("leaky_slope", c.leaky_slope);
  c.path_pool = j.value("path_pool", std::string("mean")) == "max" ? PathPool::Max : PathPool::Mean;
  c.oov_buckets = j.value("oov_buckets", c.oov_buckets);
  return c;
}

Detector::Detector(ModelConfig config, ViewMode mode, std::vector<std::string> class_names,
                   uint64_t seed)
    : config_(std::move(config)),
      mode_(mode),
      class_names_(std::move(class_names)),
      rng_(seed),
      table_(EmbeddingTable::opcode_table(config_.seq_in, config_.oov_buckets)),
      egat_("egat", config_.graph_in, config_.egat_hidden, config_.egat_out, config_.dropout,
            config_.leaky_slope),
      agru_("agru", config_.seq_in, config_.gru_hidden, config_.dropout),
      fusion_("fuse", config_.egat_out, config_.gru_hidden, config_.num_classes) {
  if (class_names_.size() != config_.num_classes) {
    throw InvariantError("class name count does not match num_classes");
  }
  egat_.init_params(store_, rng_);
  agru_.init_params(store_, rng_);
  fusion_.init_params(store_, rng_);
  table_.init_params(store_, rng_);
}

struct Detector::ForwardCaches {
  GraphView view;
  EgatEncoder::Cache egat;
  Tensor node_states;
  std::vector<SequenceEmbedding> path_inputs;
  std::vector<AgruEncoder::Cache> agru;
  std::vector<std::vector<Real>> path_vectors;
  FusionHead::Cache fusion;
};

SampleOutput Detector::forward(const train::Sample& sample, bool training, uint64_t noise_scope,
                               ForwardCaches* caches) const {
  const bool use_source = mode_ != ViewMode::BytecodeOnly;
  const bool use_bytecode = mode_ != ViewMode::SourceOnly;

  std::vector<Real> graph_vec(config_.egat_out, Real(0));
  if (use_source) {
    if (!sample.graph) {
      throw InvariantError("sample " + sample.id + " has no source graph in mode " +
                           std::string(to_string(mode_)));
    }
    GraphView view = GraphView::from(*sample.graph);
    EgatEncoder::Cache local;
    EgatEncoder::Cache* cache = caches ? &caches->egat : &local;
    Tensor states =
        egat_.forward(view, sample.graph->features, store_, training, rng_, noise_scope, cache);
    graph_vec = graph_readout(states);
    if (caches) {
      caches->view = std::move(view);
      caches->node_states = std::move(states);
    }
  }

  std::vector<Real> seq_vec(config_.gru_hidden, Real(0));
  if (use_bytecode) {
    if (sample.paths.empty()) {
      throw InvariantError("sample " + sample.id + " has no control-flow paths in mode " +
                           std::string(to_string(mode_)));
    }
    std::vector<std::vector<Real>> path_vectors;
    path_vectors.reserve(sample.paths.size());
    for (size_t p = 0; p < sample.paths.size(); ++p) {
      SequenceEmbedding embedded = embed_opcode_sequence(sample.paths[p], table_, store_);
      AgruEncoder::Cache local;
      AgruEncoder::Cache* cache = nullptr;
      if (caches) {
        caches->agru.emplace_back();
        cache = &caches->agru.back();
      } else {
        cache = &local;
      }
      path_vectors.push_back(agru_.forward(embedded.matrix, store_, training,
                                           rng_, nn::CounterRng::substream(noise_scope, p),
                                           cache));
      if (caches) caches->path_inputs.push_back(std::move(embedded));
    }
    seq_vec = pool_paths(path_vectors, config_.path_pool);
    if (caches) caches->path_vectors = std::move(path_vectors);
  }

  FusionHead::Cache local_fusion;
  FusionHead::Cache* fusion_cache = caches ? &caches->fusion : &local_fusion;
  std::vector<Real> probs = fusion_.predict(graph_vec, seq_vec, store_, fusion_cache);

  SampleOutput out;
  out.probs = std::move(probs);
  out.graph_vec = std::move(graph_vec);
  out.seq_vec = std::move(seq_vec);
  return out;
}

SampleOutput Detector::predict(const train::Sample& sample) const {
  return forward(sample, /*training=*/false, /*noise_scope=*/0, nullptr);
}

Real Detector::loss(const train::Sample& sample) const {
  if (sample.label < 0) throw InvariantError("loss: sample " + sample.id + " is unlabeled");
  SampleOutput out = forward(sample, false, 0, nullptr);
  return nn::cross_entropy(out.probs, static_cast<size_t>(sample.label));
}

Real Detector::loss_and_gradients(std::span<const train::Sample* const> batch,
                                  uint64_t noise_scope) {
  if (batch.empty()) throw InvariantError("loss_and_gradients: empty batch");
  const Real inv_batch = Real(1) / static_cast<Real>(batch.size());
  Real total_loss = 0;

  for (size_t b = 0; b < batch.size(); ++b) {
    const train::Sample& sample = *batch[b];
    if (sample.label < 0 || static_cast<size_t>(sample.label) >= config_.num_classes) {
      throw InvariantError("sample " + sample.id + " has no valid label");
    }
    ForwardCaches caches;
    const uint64_t scope = nn::CounterRng::substream(noise_scope, b);
    SampleOutput out = forward(sample, /*training=*/true, scope, &caches);
    total_loss += nn::cross_entropy(out.probs, static_cast<size_t>(sample.label));

    // d logits of softmax + cross-entropy, scaled for the batch mean.
    std::vector<Real> d_logits = caches.fusion.probs;
    d_logits[static_cast<size_t>(sample.label)] -= Real(1);
    for (Real& v : d_logits) v *= inv_batch;

    FusionHead::InputGrads views = fusion_.backward(caches.fusion, d_logits, store_);

    if (mode_ != ViewMode::BytecodeOnly) {
      // readout was a mean over node rows
      const size_t n = caches.node_states.rows();
      Tensor d_states({n, config_.egat_out});
      for (size_t i = 0; i < n; ++i) {
        Real* row = d_states.row(i);
        for (size_t d = 0; d < config_.egat_out; ++d) {
          row[d] = views.d_graph[d] / static_cast<Real>(n);
        }
      }
      egat_.backward(caches.view, caches.egat, d_states, store_);
    }

    if (mode_ != ViewMode::SourceOnly) {
      const size_t paths = caches.path_vectors.size();
      Tensor& table_grad = store_.grad(table_.param_name);
      for (size_t p = 0; p < paths; ++p) {
        std::vector<Real> d_path(config_.gru_hidden);
        if (config_.path_pool == PathPool::Mean) {
          for (size_t d = 0; d < config_.gru_hidden; ++d) {
            d_path[d] = views.d_seq[d] / static_cast<Real>(paths);
          }
        } else {
          // max pooling routes the gradient to the first argmax path
          for (size_t d = 0; d < config_.gru_hidden; ++d) {
            size_t arg = 0;
            for (size_t q = 1; q < paths; ++q) {
              if (caches.path_vectors[q][d] > caches.path_vectors[arg][d]) arg = q;
            }
            d_path[d] = arg == p ? views.d_seq[d] : Real(0);
          }
        }
        Tensor d_seq = agru_.backward(caches.agru[p], d_path, store_);
        const SequenceEmbedding& embedded = caches.path_inputs[p];
        for (size_t t = 0; t < embedded.rows.size(); ++t) {
          Real* grad_row = table_grad.row(embedded.rows[t]);
          const Real* d_row = d_seq.row(t);
          for (size_t d = 0; d < config_.seq_in; ++d) grad_row[d] += d_row[d];
        }
      }
    }
  }
  return total_loss * inv_batch;
}

std::string Detector::meta_json() const {
  json j{{"model", json::parse(config_.to_json())},
         {"mode", std::string(to_string(mode_))},
         {"classes", class_names_},
         {"seed", rng_.seed()}};
  return j.dump();
}

Detector Detector::from_meta_json(const std::string& meta) {
  json j;
  try {
    j = json::parse(meta);
  } catch (const json::parse_error& e) {
    throw CheckpointError(std::string("bad checkpoint metadata: ") + e.what());
  }
  ModelConfig config = ModelConfig::from_json(j.at("model").dump());
  ViewMode mode = view_mode_from_string(j.value("mode", "dual"));
  std::vector<std::string> classes = j.at("classes").get<std::vector<std::string>>();
  uint64_t seed = j.value("seed", uint64_t{0});
  return Detector(std::move(config), mode, std::move(classes), seed);
}

}  // namespace dvdet::model
