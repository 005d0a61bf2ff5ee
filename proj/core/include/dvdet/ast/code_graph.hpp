// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dvdet/ast/rules.hpp"
#include "dvdet/nn/tensor.hpp"

namespace dvdet::ast {

// The weighted contract graph (V, E, X, S): undirected edges over AST nodes,
// per-node feature rows, per-node tier values and per-edge importance
// weights S_ij = min(S_i, S_j).
struct WeightedCodeGraph {
  std::vector<int> node_ids;                    // AST ids; row order = document order
  std::vector<std::pair<size_t, size_t>> edges; // row-index pairs, first < second
  std::vector<double> node_tiers;               // S_i, one per row
  std::vector<double> edge_weights;             // S_ij, parallel to edges
  nn::Tensor features;                          // |V| x dim

  size_t node_count() const { return node_ids.size(); }
};

// min(s_i, s_j); inputs outside {1, 1.25, 1.5, 2} are a domain error.
double edge_weight(double s_i, double s_j);

using NodeEmbedder = std::function<std::vector<nn::Real>(const AstNode&)>;

struct GraphOptions {
  // Adds edges between consecutive statements of each Block as a cheap
  // control-flow approximation on top of the parent-child tree edges.
  bool sibling_edges = false;
};

WeightedCodeGraph build_weighted_graph(const Ast& ast, const VulnRuleSet& rules,
                                       const NodeEmbedder& embedder,
                                       const GraphOptions& options = {});

std::string to_json(const WeightedCodeGraph& graph, const Ast& ast);

}  // namespace dvdet::ast
