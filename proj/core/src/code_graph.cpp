// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/ast/code_graph.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dvdet/errors.hpp"

namespace dvdet::ast {

double edge_weight(double s_i, double s_j) {
  if (!is_tier_value(s_i) || !is_tier_value(s_j)) {
    throw std::invalid_argument("edge_weight: values must be in {1, 1.25, 1.5, 2}");
  }
  return std::min(s_i, s_j);
}

WeightedCodeGraph build_weighted_graph(const Ast& ast, const VulnRuleSet& rules,
                                       const NodeEmbedder& embedder,
                                       const GraphOptions& options) {
  WeightedCodeGraph g;
  const size_t n = ast.size();
  g.node_ids.reserve(n);
  for (const AstNode& node : ast.nodes) g.node_ids.push_back(node.id);

  const std::vector<ImportanceTier> tiers = classify_ast(ast, rules);
  g.node_tiers.reserve(n);
  for (ImportanceTier t : tiers) g.node_tiers.push_back(tier_value(t));

  auto add_edge = [&](size_t u, size_t v) {
    if (u == v) return;
    if (u > v) std::swap(u, v);
    auto e = std::make_pair(u, v);
    if (std::find(g.edges.begin(), g.edges.end(), e) == g.edges.end()) {
      g.edges.push_back(e);
      g.edge_weights.push_back(edge_weight(g.node_tiers[u], g.node_tiers[v]));
    }
  };

  for (const AstNode& node : ast.nodes) {
    const size_t u = ast.index.at(node.id);
    for (int child : node.children) add_edge(u, ast.index.at(child));
  }
  if (options.sibling_edges) {
    for (const AstNode& node : ast.nodes) {
      if (node.node_type != "Block") continue;
      for (size_t i = 1; i < node.children.size(); ++i) {
        add_edge(ast.index.at(node.children[i - 1]), ast.index.at(node.children[i]));
      }
    }
  }

  size_t dim = 0;
  for (size_t i = 0; i < n; ++i) {
    std::vector<nn::Real> row = embedder(ast.nodes[i]);
    if (i == 0) {
      dim = row.size();
      g.features = nn::Tensor({n, dim});
    } else if (row.size() != dim) {
      throw InvariantError("embedder width mismatch at node " + std::to_string(g.node_ids[i]) +
                           ": got " + std::to_string(row.size()) + ", expected " +
                           std::to_string(dim));
    }
    std::copy(row.begin(), row.end(), g.features.row(i));
  }
  return g;
}

std::string to_json(const WeightedCodeGraph& graph, const Ast& ast) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (size_t i = 0; i < graph.node_count(); ++i) {
    const AstNode& node = ast.node(graph.node_ids[i]);
    j["nodes"].push_back({{"id", node.id},
                          {"type", node.node_type},
                          {"tier", graph.node_tiers[i]},
                          {"feature_ref", i}});
  }
  j["edges"] = nlohmann::json::array();
  for (size_t e = 0; e < graph.edges.size(); ++e) {
    j["edges"].push_back({{"u", graph.node_ids[graph.edges[e].first]},
                          {"v", graph.node_ids[graph.edges[e].second]},
                          {"weight", graph.edge_weights[e]}});
  }
  return j.dump(2) + "\n";
}

}  // namespace dvdet::ast
