// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dvdet/ast/ast.hpp"

namespace dvdet::ast {

// Four-tier node importance with values S = {2, 1.5, 1.25, 1}.
enum class ImportanceTier { Core, SubCore, Auxiliary, Peripheral };

double tier_value(ImportanceTier tier);
std::string_view tier_name(ImportanceTier tier);
bool is_tier_value(double v);

struct FieldCondition {
  std::string name;
  std::string value;
  bool substring = false;  // substring match instead of equality
};

// All present conditions must hold. Source matching is exact, case-sensitive
// substring over the node's own excerpt. child_member needs tree context:
// it requires a direct child whose name/memberName equals the given string
// (how call.value() is told apart from msg.value without source text).
struct Matcher {
  std::optional<std::string> node_type;
  std::optional<std::string> source_substring;
  std::optional<FieldCondition> field;
  std::optional<std::string> child_member;
};

struct VulnRuleSet {
  std::string vuln_id;
  std::string note;
  std::vector<Matcher> core;
  std::vector<Matcher> sub_core;
  std::vector<Matcher> auxiliary;

  static VulnRuleSet reentrancy_defaults();
  static VulnRuleSet from_json_file(const std::string& path);
};

bool matches(const Matcher& m, const AstNode& node, const Ast* context = nullptr);

// First match wins in core -> sub_core -> auxiliary order; peripheral
// otherwise. Without context, child_member conditions never match.
ImportanceTier classify_importance(const AstNode& node, const VulnRuleSet& rules,
                                   const Ast* context = nullptr);

// Whole-tree classification. On top of per-node matching, repeat core or
// sub-core matches of an identical node (same type and retained fields)
// inside one FunctionDefinition are downgraded to auxiliary.
std::vector<ImportanceTier> classify_ast(const Ast& ast, const VulnRuleSet& rules);

}  // namespace dvdet::ast
