// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dvdet/evm/disasm.hpp"

namespace dvdet::evm {

enum class Terminator { Jump, Jumpi, Stop, Return, Revert, Selfdestruct, Invalid, Fallthrough };
enum class EdgeKind { Jump, Fallthrough, BranchTaken, BranchNotTaken, Unresolved };

std::string_view to_string(Terminator t);
std::string_view to_string(EdgeKind k);

struct BasicBlock {
  int id = 0;
  size_t start_offset = 0;
  std::vector<Instruction> instructions;
  Terminator terminator = Terminator::Fallthrough;
};

struct CfgEdge {
  int src = 0;
  int dst = 0;
  EdgeKind kind = EdgeKind::Fallthrough;
  auto operator<=>(const CfgEdge&) const = default;
};

struct ControlFlowGraph {
  std::map<int, BasicBlock> blocks;
  std::set<CfgEdge> edges;
  int entry = 0;
  // Synthetic empty block that unresolved jumps point at; paths never
  // traverse into it.
  std::optional<int> sink;
};

// Splits at JUMPDEST leaders and after terminators. Direct targets are
// resolved only for the immediate PUSH-before-JUMP/JUMPI pattern; anything
// else becomes an unresolved edge into the sink. Never fails.
ControlFlowGraph build_cfg(std::span<const Instruction> instructions);

// Keeps exactly the blocks reachable from entry; edge set restricted to
// surviving endpoints; ids and entry preserved.
ControlFlowGraph eliminate_dead_blocks(const ControlFlowGraph& cfg);

struct ControlFlowPath {
  std::vector<int> block_ids;
  std::vector<std::string_view> opcodes;  // flattened mnemonic sequence
  bool truncated = false;                 // hit max_blocks_per_path
};

struct PathLimits {
  size_t max_paths = 32;
  size_t max_blocks_per_path = 256;
};

// Depth-first path enumeration from entry. Only resolved edges are walked,
// children in ascending destination-offset order, each block at most once
// per path; stops after max_paths paths.
std::vector<ControlFlowPath> extract_paths(const ControlFlowGraph& cfg,
                                           const PathLimits& limits = {});

std::string to_dot(const ControlFlowGraph& cfg);
std::string to_json(const ControlFlowGraph& cfg);

}  // namespace dvdet::evm
