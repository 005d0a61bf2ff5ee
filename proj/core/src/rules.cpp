// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/ast/rules.hpp"

#include <fstream>
#include <functional>

#include <nlohmann/json.hpp>

#include "dvdet/errors.hpp"

namespace dvdet::ast {

using nlohmann::json;

double tier_value(ImportanceTier tier) {
  switch (tier) {
    case ImportanceTier::Core: return 2.0;
    case ImportanceTier::SubCore: return 1.5;
    case ImportanceTier::Auxiliary: return 1.25;
    case ImportanceTier::Peripheral: return 1.0;
  }
  throw InvariantError("bad tier");
}

std::string_view tier_name(ImportanceTier tier) {
  switch (tier) {
    case ImportanceTier::Core: return "core";
    case ImportanceTier::SubCore: return "sub_core";
    case ImportanceTier::Auxiliary: return "auxiliary";
    case ImportanceTier::Peripheral: return "peripheral";
  }
  return "?";
}

bool is_tier_value(double v) { return v == 2.0 || v == 1.5 || v == 1.25 || v == 1.0; }

namespace {

bool field_holds(const FieldCondition& cond, const AstNode& node) {
  auto it = node.retained_fields.find(cond.name);
  if (it == node.retained_fields.end()) return false;
  const std::string text = to_string(it->second);
  if (cond.substring) return text.find(cond.value) != std::string::npos;
  return text == cond.value;
}

bool names_child(const std::string& wanted, const AstNode& child) {
  for (const char* key : {"memberName", "name"}) {
    auto it = child.retained_fields.find(key);
    if (it != child.retained_fields.end() && to_string(it->second) == wanted) return true;
  }
  return false;
}

}  // namespace

bool matches(const Matcher& m, const AstNode& node, const Ast* context) {
  if (m.node_type && node.node_type != *m.node_type) return false;
  if (m.source_substring &&
      node.source_text.find(*m.source_substring) == std::string::npos) {
    return false;
  }
  if (m.field && !field_holds(*m.field, node)) return false;
  if (m.child_member) {
    if (!context) return false;
    bool found = false;
    for (int child_id : node.children) {
      if (names_child(*m.child_member, context->node(child_id))) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

ImportanceTier classify_importance(const AstNode& node, const VulnRuleSet& rules,
                                   const Ast* context) {
  auto any = [&](const std::vector<Matcher>& ms) {
    for (const Matcher& m : ms) {
      if (matches(m, node, context)) return true;
    }
    return false;
  };
  if (any(rules.core)) return ImportanceTier::Core;
  if (any(rules.sub_core)) return ImportanceTier::SubCore;
  if (any(rules.auxiliary)) return ImportanceTier::Auxiliary;
  return ImportanceTier::Peripheral;
}

std::vector<ImportanceTier> classify_ast(const Ast& ast, const VulnRuleSet& rules) {
  std::vector<ImportanceTier> tiers(ast.size(), ImportanceTier::Peripheral);

  // Identity of a match for the duplicate rule: type plus retained fields.
  auto identity = [](const AstNode& n) {
    std::string key = n.node_type;
    for (const auto& [name, value] : n.retained_fields) {
      key += '\x1f';
      key += name;
      key += '=';
      key += to_string(value);
    }
    return key;
  };

  // Document-order walk tracking the enclosing function; the first core or
  // sub-core match of an identity stays, repeats become auxiliary.
  std::function<void(int, int)> walk = [&](int id, int function_id) {
    const AstNode& node = ast.node(id);
    if (node.node_type == "FunctionDefinition") function_id = id;
    tiers[ast.index.at(id)] = classify_importance(node, rules, &ast);
    for (int child : node.children) walk(child, function_id);
  };

  std::map<std::pair<int, std::string>, int> first_seen;
  std::function<void(int, int)> dedupe = [&](int id, int function_id) {
    const AstNode& node = ast.node(id);
    if (node.node_type == "FunctionDefinition") function_id = id;
    const size_t slot = ast.index.at(id);
    if (function_id >= 0 &&
        (tiers[slot] == ImportanceTier::Core || tiers[slot] == ImportanceTier::SubCore)) {
      auto key = std::make_pair(function_id, identity(node));
      auto [it, inserted] = first_seen.try_emplace(key, id);
      if (!inserted) tiers[slot] = ImportanceTier::Auxiliary;
    }
    for (int child : node.children) dedupe(child, function_id);
  };

  if (!ast.nodes.empty()) {
    walk(ast.nodes[0].id, -1);
    dedupe(ast.nodes[0].id, -1);
  }
  return tiers;
}

namespace {

Matcher matcher_from_json(const json& j) {
  Matcher m;
  if (j.contains("node_type")) m.node_type = j["node_type"].get<std::string>();
  if (j.contains("source")) m.source_substring = j["source"].get<std::string>();
  if (j.contains("field")) {
    FieldCondition f;
    f.name = j["field"]["name"].get<std::string>();
    f.value = j["field"]["value"].get<std::string>();
    f.substring = j["field"].value("substring", false);
    m.field = std::move(f);
  }
  if (j.contains("child_member")) m.child_member = j["child_member"].get<std::string>();
  return m;
}

std::vector<Matcher> matchers_from_json(const json& j, const char* key) {
  std::vector<Matcher> out;
  if (!j.contains(key)) return out;
  for (const auto& item : j[key]) out.push_back(matcher_from_json(item));
  return out;
}

}  // namespace

namespace {

Matcher type_matcher(std::string node_type) {
  Matcher m;
  m.node_type = std::move(node_type);
  return m;
}

Matcher field_matcher(std::string node_type, std::string field, std::string value,
                      bool substring = false) {
  Matcher m;
  m.node_type = std::move(node_type);
  m.field = FieldCondition{std::move(field), std::move(value), substring};
  return m;
}

Matcher source_matcher(std::string node_type, std::string substring) {
  Matcher m;
  m.node_type = std::move(node_type);
  m.source_substring = std::move(substring);
  return m;
}

}  // namespace

VulnRuleSet VulnRuleSet::reentrancy_defaults() {
  VulnRuleSet r;
  r.vuln_id = "reentrancy";
  r.note = "built-in default rule set";
  // call.value(...) — the member access itself plus the enclosing calls.
  Matcher call_value = field_matcher("MemberAccess", "memberName", "value");
  call_value.child_member = "call";
  r.core.push_back(std::move(call_value));
  r.core.push_back(source_matcher("FunctionCall", ".call.value("));
  r.core.push_back(source_matcher("FunctionCall", ".call{value"));
  Matcher call_options = type_matcher("FunctionCallOptions");
  call_options.child_member = "call";
  r.core.push_back(std::move(call_options));
  // require / if-conditions / msg.sender / balance.
  r.sub_core.push_back(field_matcher("Identifier", "name", "require"));
  r.sub_core.push_back(type_matcher("IfStatement"));
  r.sub_core.push_back(field_matcher("MemberAccess", "memberName", "sender"));
  r.sub_core.push_back(field_matcher("MemberAccess", "memberName", "balance"));
  r.sub_core.push_back(field_matcher("Identifier", "name", "balance", /*substring=*/true));
  // Loop/branch statement blocks.
  r.auxiliary.push_back(type_matcher("ForStatement"));
  r.auxiliary.push_back(type_matcher("WhileStatement"));
  r.auxiliary.push_back(type_matcher("DoWhileStatement"));
  r.auxiliary.push_back(type_matcher("Conditional"));
  return r;
}

VulnRuleSet VulnRuleSet::from_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open rule set: " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw FormatError("rule set " + path + ": " + e.what());
  }
  VulnRuleSet r;
  r.vuln_id = j.value("vuln_id", std::string("unnamed"));
  r.note = j.value("note", std::string());
  r.core = matchers_from_json(j, "core");
  r.sub_core = matchers_from_json(j, "sub_core");
  r.auxiliary = matchers_from_json(j, "auxiliary");
  return r;
}

}  // namespace dvdet::ast
