// dvdet: dual-view smart contract vulnerability detection
// Copyright 2026 The dvdet Authors.
// SPDX-License-Identifier: Apache-2.0
#include "dvdet/nn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "dvdet/errors.hpp"

namespace dvdet::nn {

namespace {

constexpr char kMagic[4] = {'D', 'V', 'D', 'T'};
constexpr uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

template <typename T>
void write_pod(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T read_pod(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!is) throw CheckpointError("checkpoint truncated");
  return v;
}

struct Header {
  uint32_t dtype_size;
  std::string meta;
  uint64_t count;
};

Header read_header(std::istream& is, const std::filesystem::path& path) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw CheckpointError("not a checkpoint file: " + path.string());
  }
  const auto version = read_pod<uint32_t>(is);
  if (version != kVersion) {
    throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  }
  Header h;
  h.dtype_size = read_pod<uint32_t>(is);
  if (h.dtype_size != sizeof(Real)) {
    throw CheckpointError("checkpoint dtype width " + std::to_string(h.dtype_size) +
                          " does not match build (" + std::to_string(sizeof(Real)) + ")");
  }
  const auto meta_len = read_pod<uint64_t>(is);
  h.meta.resize(meta_len);
  is.read(h.meta.data(), static_cast<std::streamsize>(meta_len));
  if (!is) throw CheckpointError("checkpoint truncated in metadata");
  h.count = read_pod<uint64_t>(is);
  return h;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const ParamStore& store,
                     const std::string& meta_json) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw CheckpointError("cannot open for writing: " + path.string());
  os.write(kMagic, 4);
  write_pod<uint32_t>(os, kVersion);
  write_pod<uint32_t>(os, sizeof(Real));
  write_pod<uint64_t>(os, meta_json.size());
  os.write(meta_json.data(), static_cast<std::streamsize>(meta_json.size()));
  write_pod<uint64_t>(os, store.size());
  for (const auto& [name, e] : store) {
    write_pod<uint32_t>(os, static_cast<uint32_t>(name.size()));
    os.write(name.data(), static_cast<std::streamsize>(name.size()));
    write_pod<uint32_t>(os, static_cast<uint32_t>(e.value.shape().size()));
    for (size_t d : e.value.shape()) write_pod<uint64_t>(os, d);
    os.write(reinterpret_cast<const char*>(e.value.data()),
             static_cast<std::streamsize>(e.value.size() * sizeof(Real)));
  }
  if (!os) throw CheckpointError("write failed: " + path.string());
}

std::string read_checkpoint_meta(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CheckpointError("cannot open checkpoint: " + path.string());
  return read_header(is, path).meta;
}

void load_checkpoint(const std::filesystem::path& path, ParamStore& store) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CheckpointError("cannot open checkpoint: " + path.string());
  const Header h = read_header(is, path);
  if (h.count != store.size()) {
    throw CheckpointError("checkpoint has " + std::to_string(h.count) + " parameters, model has " +
                          std::to_string(store.size()));
  }
  for (uint64_t i = 0; i < h.count; ++i) {
    const auto name_len = read_pod<uint32_t>(is);
    std::string name(name_len, '\0');
    is.read(name.data(), name_len);
    if (!is) throw CheckpointError("checkpoint truncated in parameter name");
    const auto ndims = read_pod<uint32_t>(is);
    std::vector<size_t> shape(ndims);
    for (auto& d : shape) d = read_pod<uint64_t>(is);
    if (!store.contains(name)) {
      throw CheckpointError("checkpoint parameter not in model: " + name);
    }
    Tensor& value = store.value(name);
    if (value.shape() != shape) {
      throw CheckpointError("shape mismatch for " + name);
    }
    is.read(reinterpret_cast<char*>(value.data()),
            static_cast<std::streamsize>(value.size() * sizeof(Real)));
    if (!is) throw CheckpointError("checkpoint truncated in parameter data");
  }
}

}  // namespace dvdet::nn
