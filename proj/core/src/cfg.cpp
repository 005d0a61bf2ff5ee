// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/evm/cfg.hpp"

#include <algorithm>
#include <deque>

#include <nlohmann/json.hpp>

#include "dvdet/errors.hpp"
#include "dvdet/hex.hpp"

namespace dvdet::evm {

std::string_view to_string(Terminator t) {
  switch (t) {
    case Terminator::Jump: return "JUMP";
    case Terminator::Jumpi: return "JUMPI";
    case Terminator::Stop: return "STOP";
    case Terminator::Return: return "RETURN";
    case Terminator::Revert: return "REVERT";
    case Terminator::Selfdestruct: return "SELFDESTRUCT";
    case Terminator::Invalid: return "INVALID";
    case Terminator::Fallthrough: return "FALLTHROUGH";
  }
  return "?";
}

std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::Jump: return "jump";
    case EdgeKind::Fallthrough: return "fallthrough";
    case EdgeKind::BranchTaken: return "branch-taken";
    case EdgeKind::BranchNotTaken: return "branch-not-taken";
    case EdgeKind::Unresolved: return "unresolved";
  }
  return "?";
}

namespace {

Terminator terminator_of(const Instruction& ins) {
  if (!ins.is_valid) return Terminator::Invalid;
  switch (ins.opcode) {
    case OP_JUMP: return Terminator::Jump;
    case OP_JUMPI: return Terminator::Jumpi;
    case OP_STOP: return Terminator::Stop;
    case OP_RETURN: return Terminator::Return;
    case OP_REVERT: return Terminator::Revert;
    case OP_SELFDESTRUCT: return Terminator::Selfdestruct;
    case OP_INVALID: return Terminator::Invalid;
    default: return Terminator::Fallthrough;
  }
}

bool ends_block(const Instruction& ins) {
  return !ins.is_valid || is_block_terminator(ins.opcode);
}

// Immediate value as an offset, when it fits in 64 bits.
std::optional<size_t> immediate_value(const Instruction& ins) {
  if (ins.immediate.empty()) return std::nullopt;
  size_t value = 0;
  for (uint8_t b : ins.immediate) {
    if (value > (SIZE_MAX >> 8)) return std::nullopt;
    value = (value << 8) | b;
  }
  return value;
}

}  // namespace

ControlFlowGraph build_cfg(std::span<const Instruction> instructions) {
  ControlFlowGraph cfg;
  if (instructions.empty()) {
    cfg.blocks.emplace(0, BasicBlock{0, 0, {}, Terminator::Fallthrough});
    cfg.entry = 0;
    return cfg;
  }

  // JUMPDEST offsets and leader flags.
  std::set<size_t> jumpdests;
  for (const Instruction& ins : instructions) {
    if (ins.is_valid && ins.opcode == OP_JUMPDEST) jumpdests.insert(ins.offset);
  }

  std::vector<BasicBlock> blocks;
  BasicBlock current;
  current.id = 0;
  current.start_offset = instructions.front().offset;
  auto close_block = [&](Terminator term) {
    current.terminator = term;
    blocks.push_back(std::move(current));
    current = BasicBlock{};
    current.id = static_cast<int>(blocks.size());
  };

  for (size_t i = 0; i < instructions.size(); ++i) {
    const Instruction& ins = instructions[i];
    if (!current.instructions.empty() && ins.is_valid && ins.opcode == OP_JUMPDEST) {
      close_block(Terminator::Fallthrough);
    }
    if (current.instructions.empty()) current.start_offset = ins.offset;
    current.instructions.push_back(ins);
    if (ends_block(ins)) {
      close_block(terminator_of(ins));
    }
  }
  if (!current.instructions.empty()) close_block(Terminator::Fallthrough);

  std::map<size_t, int> block_at_offset;
  for (const BasicBlock& b : blocks) block_at_offset[b.start_offset] = b.id;

  cfg.entry = 0;

  int sink_id = static_cast<int>(blocks.size());
  bool sink_used = false;
  auto unresolved_target = [&]() {
    sink_used = true;
    return sink_id;
  };

  // Resolves the PUSH-immediately-before-JUMP/JUMPI pattern to a JUMPDEST
  // block start; everything else is unresolved.
  auto resolve_jump = [&](const BasicBlock& b) -> std::optional<int> {
    if (b.instructions.size() < 2) return std::nullopt;
    const Instruction& push = b.instructions[b.instructions.size() - 2];
    if (!is_push_with_immediate(push.opcode)) return std::nullopt;
    std::optional<size_t> target = immediate_value(push);
    if (!target || !jumpdests.contains(*target)) return std::nullopt;
    auto it = block_at_offset.find(*target);
    if (it == block_at_offset.end()) return std::nullopt;
    return it->second;
  };

  for (size_t idx = 0; idx < blocks.size(); ++idx) {
    const BasicBlock& b = blocks[idx];
    const bool has_next = idx + 1 < blocks.size();
    const int next_id = has_next ? blocks[idx + 1].id : -1;
    switch (b.terminator) {
      case Terminator::Jump: {
        if (auto dst = resolve_jump(b)) {
          cfg.edges.insert({b.id, *dst, EdgeKind::Jump});
        } else {
          cfg.edges.insert({b.id, unresolved_target(), EdgeKind::Unresolved});
        }
        break;
      }
      case Terminator::Jumpi: {
        if (auto dst = resolve_jump(b)) {
          cfg.edges.insert({b.id, *dst, EdgeKind::BranchTaken});
        } else {
          cfg.edges.insert({b.id, unresolved_target(), EdgeKind::Unresolved});
        }
        if (has_next) cfg.edges.insert({b.id, next_id, EdgeKind::BranchNotTaken});
        break;
      }
      case Terminator::Fallthrough: {
        if (has_next) cfg.edges.insert({b.id, next_id, EdgeKind::Fallthrough});
        break;
      }
      default:
        break;  // halting terminators have no successors
    }
  }

  for (BasicBlock& b : blocks) cfg.blocks.emplace(b.id, std::move(b));
  if (sink_used) {
    size_t end_offset = instructions.back().offset + instructions.back().encoded_size();
    cfg.blocks.emplace(sink_id, BasicBlock{sink_id, end_offset, {}, Terminator::Invalid});
    cfg.sink = sink_id;
  }
  return cfg;
}

ControlFlowGraph eliminate_dead_blocks(const ControlFlowGraph& cfg) {
  std::multimap<int, int> succ;
  for (const CfgEdge& e : cfg.edges) succ.emplace(e.src, e.dst);

  std::set<int> reachable{cfg.entry};
  std::deque<int> queue{cfg.entry};
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    auto [lo, hi] = succ.equal_range(id);
    for (auto it = lo; it != hi; ++it) {
      if (reachable.insert(it->second).second) queue.push_back(it->second);
    }
  }

  ControlFlowGraph out;
  out.entry = cfg.entry;
  for (const auto& [id, block] : cfg.blocks) {
    if (reachable.contains(id)) out.blocks.emplace(id, block);
  }
  for (const CfgEdge& e : cfg.edges) {
    if (reachable.contains(e.src) && reachable.contains(e.dst)) out.edges.insert(e);
  }
  if (cfg.sink && reachable.contains(*cfg.sink)) out.sink = cfg.sink;
  return out;
}

std::vector<ControlFlowPath> extract_paths(const ControlFlowGraph& cfg, const PathLimits& limits) {
  if (limits.max_paths < 1 || limits.max_blocks_per_path < 1) {
    throw InvariantError("extract_paths: limits must be >= 1");
  }
  if (!cfg.blocks.contains(cfg.entry)) {
    throw InvariantError("extract_paths: entry block missing");
  }

  // Distinct resolved successors per block, ascending by destination offset.
  std::map<int, std::vector<int>> children;
  for (const CfgEdge& e : cfg.edges) {
    if (e.kind == EdgeKind::Unresolved) continue;
    auto& v = children[e.src];
    if (std::find(v.begin(), v.end(), e.dst) == v.end()) v.push_back(e.dst);
  }
  for (auto& [id, v] : children) {
    std::sort(v.begin(), v.end(), [&](int a, int b) {
      return cfg.blocks.at(a).start_offset < cfg.blocks.at(b).start_offset;
    });
  }

  std::vector<ControlFlowPath> paths;
  std::vector<int> stack;
  std::set<int> on_path;

  auto emit = [&](bool truncated) {
    ControlFlowPath p;
    p.block_ids = stack;
    p.truncated = truncated;
    for (int id : stack) {
      for (const Instruction& ins : cfg.blocks.at(id).instructions) {
        p.opcodes.push_back(ins.mnemonic);
      }
    }
    paths.push_back(std::move(p));
  };

  // Explicit recursion keeps the visit-once and bound semantics obvious.
  auto dfs = [&](auto&& self, int id) -> void {
    if (paths.size() >= limits.max_paths) return;
    stack.push_back(id);
    on_path.insert(id);
    if (stack.size() >= limits.max_blocks_per_path) {
      bool has_more = false;
      auto it = children.find(id);
      if (it != children.end()) {
        for (int c : it->second) {
          if (!on_path.contains(c)) has_more = true;
        }
      }
      emit(has_more);
    } else {
      bool advanced = false;
      auto it = children.find(id);
      if (it != children.end()) {
        for (int c : it->second) {
          if (on_path.contains(c)) continue;
          if (paths.size() >= limits.max_paths) break;
          advanced = true;
          self(self, c);
        }
      }
      if (!advanced && paths.size() < limits.max_paths) emit(false);
    }
    on_path.erase(id);
    stack.pop_back();
  };
  dfs(dfs, cfg.entry);
  return paths;
}

std::string to_dot(const ControlFlowGraph& cfg) {
  std::string out = "digraph cfg {\n  node [shape=box fontname=monospace];\n";
  for (const auto& [id, b] : cfg.blocks) {
    std::string label = "B" + std::to_string(id) + " @" + std::to_string(b.start_offset) + "\\n";
    for (const Instruction& ins : b.instructions) {
      label += std::string(ins.mnemonic);
      if (!ins.immediate.empty()) label += " 0x" + to_hex(ins.immediate);
      label += "\\l";
    }
    out += "  n" + std::to_string(id) + " [label=\"" + label + "\"];\n";
  }
  for (const CfgEdge& e : cfg.edges) {
    out += "  n" + std::to_string(e.src) + " -> n" + std::to_string(e.dst) + " [label=\"" +
           std::string(to_string(e.kind)) + "\"];\n";
  }
  out += "}\n";
  return out;
}

std::string to_json(const ControlFlowGraph& cfg) {
  nlohmann::json j;
  j["entry"] = cfg.entry;
  if (cfg.sink) j["sink"] = *cfg.sink;
  j["blocks"] = nlohmann::json::array();
  for (const auto& [id, b] : cfg.blocks) {
    nlohmann::json jb{{"id", id},
                      {"start_offset", b.start_offset},
                      {"terminator", std::string(to_string(b.terminator))}};
    jb["instructions"] = nlohmann::json::array();
    for (const Instruction& ins : b.instructions) {
      nlohmann::json ji{{"offset", ins.offset}, {"mnemonic", std::string(ins.mnemonic)}};
      if (!ins.immediate.empty()) ji["immediate"] = to_hex(ins.immediate);
      jb["instructions"].push_back(std::move(ji));
    }
    j["blocks"].push_back(std::move(jb));
  }
  j["edges"] = nlohmann::json::array();
  for (const CfgEdge& e : cfg.edges) {
    j["edges"].push_back(
        {{"src", e.src}, {"dst", e.dst}, {"kind", std::string(to_string(e.kind))}});
  }
  return j.dump(2) + "\n";
}

}  // namespace dvdet::evm
