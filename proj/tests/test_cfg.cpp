// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <set>

#include "dvdet/evm/cfg.hpp"
#include "dvdet/hex.hpp"
#include "dvdet/nn/rng.hpp"

using namespace dvdet;
using namespace dvdet::evm;

namespace {

ControlFlowGraph cfg_of(const std::string& hex) {
  auto d = disassemble(parse_hex(hex));
  return build_cfg(d.instructions);
}

// Synthetic CFG with one empty block per id and resolved jump edges.
ControlFlowGraph make_cfg(size_t blocks, const std::vector<std::pair<int, int>>& edges) {
  ControlFlowGraph cfg;
  for (size_t i = 0; i < blocks; ++i) {
    BasicBlock b;
    b.id = static_cast<int>(i);
    b.start_offset = i * 10;
    Instruction ins;
    ins.offset = i * 10;
    ins.opcode = OP_JUMPDEST;
    ins.mnemonic = opcode_info(OP_JUMPDEST).mnemonic;
    b.instructions.push_back(ins);
    b.terminator = Terminator::Jump;
    cfg.blocks.emplace(b.id, std::move(b));
  }
  for (auto [src, dst] : edges) cfg.edges.insert({src, dst, EdgeKind::Jump});
  cfg.entry = 0;
  return cfg;
}

// Independent all-root-to-sink-paths enumeration used as the oracle.
void oracle_paths(const ControlFlowGraph& cfg, int id, std::vector<int>& path,
                  std::vector<std::vector<int>>& out) {
  path.push_back(id);
  std::set<int> next;
  for (const CfgEdge& e : cfg.edges) {
    if (e.src == id && e.kind != EdgeKind::Unresolved &&
        std::find(path.begin(), path.end(), e.dst) == path.end()) {
      next.insert(e.dst);
    }
  }
  if (next.empty()) {
    out.push_back(path);
  } else {
    for (int dst : next) oracle_paths(cfg, dst, path, out);
  }
  path.pop_back();
}

}  // namespace

TEST_CASE("straight-line code is one block with no edges") {
  auto cfg = cfg_of("6001600201 00");
  CHECK(cfg.blocks.size() == 1);
  CHECK(cfg.edges.empty());
  CHECK(cfg.blocks.at(0).terminator == Terminator::Stop);
  CHECK_FALSE(cfg.sink.has_value());
}

TEST_CASE("jumpi splits into taken and not-taken edges") {
  // 0: PUSH1 0x04; 2: JUMPI; 3: STOP; 4: JUMPDEST; 5: STOP
  auto cfg = cfg_of("6004 57 00 5b 00");
  REQUIRE(cfg.blocks.size() == 3);
  REQUIRE(cfg.edges.size() == 2);
  std::set<EdgeKind> kinds;
  for (const CfgEdge& e : cfg.edges) kinds.insert(e.kind);
  CHECK(kinds == std::set<EdgeKind>{EdgeKind::BranchTaken, EdgeKind::BranchNotTaken});
  // taken edge targets the JUMPDEST block
  for (const CfgEdge& e : cfg.edges) {
    if (e.kind == EdgeKind::BranchTaken) {
      CHECK(cfg.blocks.at(e.dst).start_offset == 4);
    }
  }
}

TEST_CASE("jump without a preceding PUSH is unresolved into sink") {
  auto cfg = cfg_of("80 56");  // DUP1; JUMP
  REQUIRE(cfg.sink.has_value());
  REQUIRE(cfg.edges.size() == 1);
  const CfgEdge& e = *cfg.edges.begin();
  CHECK(e.kind == EdgeKind::Unresolved);
  CHECK(e.dst == *cfg.sink);
  CHECK(cfg.blocks.at(*cfg.sink).instructions.empty());
}

TEST_CASE("jump to a non-JUMPDEST offset is unresolved") {
  auto cfg = cfg_of("6003 56 00");  // PUSH1 3; JUMP; STOP (3 is not a JUMPDEST)
  REQUIRE(cfg.sink.has_value());
  bool unresolved = false;
  for (const CfgEdge& e : cfg.edges) {
    if (e.kind == EdgeKind::Unresolved) unresolved = true;
  }
  CHECK(unresolved);
}

TEST_CASE("jumpdest only leads blocks and terminators only end them") {
  auto cfg = cfg_of("6001 5b 6002 5b 00 fe 5b 56");
  for (const auto& [id, b] : cfg.blocks) {
    for (size_t i = 0; i < b.instructions.size(); ++i) {
      const Instruction& ins = b.instructions[i];
      if (ins.opcode == OP_JUMPDEST && ins.is_valid) CHECK(i == 0);
      if (is_block_terminator(ins.opcode) || !ins.is_valid) {
        CHECK(i == b.instructions.size() - 1);
      }
    }
  }
}

TEST_CASE("empty code keeps a single empty entry") {
  auto cfg = build_cfg({});
  CHECK(cfg.blocks.size() == 1);
  CHECK(cfg.blocks.at(0).instructions.empty());
  auto cleaned = eliminate_dead_blocks(cfg);
  CHECK(cleaned.blocks.size() == 1);
  CHECK(cleaned.entry == cfg.entry);
}

TEST_CASE("eliminate_dead_blocks removes the unreferenced jumpdest block") {
  auto cfg = cfg_of("00 5b 00");  // STOP | JUMPDEST; STOP (unreachable)
  REQUIRE(cfg.blocks.size() == 2);
  auto cleaned = eliminate_dead_blocks(cfg);
  CHECK(cleaned.blocks.size() == 1);
  CHECK(cleaned.blocks.contains(cleaned.entry));
}

TEST_CASE("eliminate_dead_blocks is identity on fully reachable graphs") {
  auto cfg = cfg_of("6004 57 00 5b 00");
  auto cleaned = eliminate_dead_blocks(cfg);
  CHECK(cleaned.blocks.size() == cfg.blocks.size());
  CHECK(cleaned.edges == cfg.edges);
}

TEST_CASE("after elimination every block is reachable from entry") {
  // contains an unreachable block after RETURN
  auto cfg = eliminate_dead_blocks(cfg_of("6004 57 00 5b f3 5b 00"));
  // independent BFS
  std::set<int> seen{cfg.entry};
  std::vector<int> queue{cfg.entry};
  while (!queue.empty()) {
    int id = queue.back();
    queue.pop_back();
    for (const CfgEdge& e : cfg.edges) {
      if (e.src == id && seen.insert(e.dst).second) queue.push_back(e.dst);
    }
  }
  CHECK(seen.size() == cfg.blocks.size());
}

TEST_CASE("diamond yields exactly two paths") {
  auto cfg = make_cfg(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  auto paths = extract_paths(cfg, {100, 100});
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].block_ids == std::vector<int>{0, 1, 3});
  CHECK(paths[1].block_ids == std::vector<int>{0, 2, 3});
  CHECK_FALSE(paths[0].truncated);
}

TEST_CASE("self-loop is visited at most once per path") {
  auto cfg = make_cfg(2, {{0, 0}, {0, 1}});
  auto paths = extract_paths(cfg, {100, 100});
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].block_ids == std::vector<int>{0, 1});
}

TEST_CASE("paths start at entry and follow edges") {
  auto cfg = cfg_of("6004 57 00 5b 00");
  auto paths = extract_paths(cfg, {100, 100});
  for (const auto& p : paths) {
    REQUIRE_FALSE(p.block_ids.empty());
    CHECK(p.block_ids.front() == cfg.entry);
    for (size_t i = 1; i < p.block_ids.size(); ++i) {
      bool connected = false;
      for (const CfgEdge& e : cfg.edges) {
        if (e.src == p.block_ids[i - 1] && e.dst == p.block_ids[i]) connected = true;
      }
      CHECK(connected);
    }
  }
}

TEST_CASE("flattened opcode count matches the blocks on the path") {
  auto cfg = cfg_of("6004 57 00 5b 6001 00");
  auto paths = extract_paths(cfg, {100, 100});
  for (const auto& p : paths) {
    size_t total = 0;
    for (int id : p.block_ids) total += cfg.blocks.at(id).instructions.size();
    CHECK(p.opcodes.size() == total);
  }
}

TEST_CASE("max_paths bounds enumeration") {
  auto cfg = make_cfg(4, {{0, 1}, {0, 2}, {0, 3}});
  auto paths = extract_paths(cfg, {2, 100});
  CHECK(paths.size() == 2);
}

TEST_CASE("max_blocks_per_path truncates and flags") {
  auto cfg = make_cfg(4, {{0, 1}, {1, 2}, {2, 3}});
  auto paths = extract_paths(cfg, {10, 2});
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].block_ids.size() == 2);
  CHECK(paths[0].truncated);
}

TEST_CASE("random DAGs match the brute-force path oracle") {
  const nn::CounterRng rng(7);
  for (uint64_t trial = 0; trial < 60; ++trial) {
    const size_t n = 2 + rng.bits(trial, 0) % 7;  // up to 8 blocks
    std::vector<std::pair<int, int>> edges;
    uint64_t ctr = 1;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        if (rng.uniform(trial, ctr++) < 0.45) {
          edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
      }
    }
    auto cfg = make_cfg(n, edges);
    auto paths = extract_paths(cfg, {100000, 1000});

    std::vector<std::vector<int>> expected;
    std::vector<int> scratch;
    oracle_paths(cfg, cfg.entry, scratch, expected);

    std::vector<std::vector<int>> actual;
    for (const auto& p : paths) actual.push_back(p.block_ids);
    std::sort(actual.begin(), actual.end());
    std::sort(expected.begin(), expected.end());
    CHECK(actual == expected);
  }
}

TEST_CASE("dot and json renderings carry blocks and edges") {
  auto cfg = cfg_of("6004 57 00 5b 00");
  auto dot = to_dot(cfg);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("branch-taken") != std::string::npos);
  auto json = to_json(cfg);
  CHECK(json.find("\"entry\"") != std::string::npos);
  CHECK(json.find("branch-not-taken") != std::string::npos);
}
