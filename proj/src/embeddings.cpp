// Copyright 2026 The Ambient Corpus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ambient/embeddings.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <unordered_set>

#include "ambient/errors.hpp"

namespace ambient {

namespace {

static_assert(std::endian::native == std::endian::little, "embedding I/O assumes a little-endian host");
static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);

constexpr char kMagic[4] = {'E', 'M', 'B', '1'};
constexpr std::size_t kHeaderBytes = 4 + 4 + 8 + 4;

template <typename T>
T read_le(const std::string& bytes, std::size_t offset) {
  T value;
  std::memcpy(&value, bytes.data() + offset, sizeof(T));
  return value;
}

template <typename T>
void write_le(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open embeddings: " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

std::unordered_map<std::string, Eigen::Index> EmbeddingMatrix::index() const {
  std::unordered_map<std::string, Eigen::Index> out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) out.emplace(ids[i], static_cast<Eigen::Index>(i));
  return out;
}

std::string ids_path_for(const std::string& matrix_path) {
  return std::filesystem::path(matrix_path).replace_extension(".ids").string();
}

EmbeddingMatrix parse_embedding_payload(const std::string& bytes) {
  if (bytes.size() < kHeaderBytes) throw LoadError("embedding file truncated: header incomplete");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw LoadError("embedding file has bad magic");
  const auto version = read_le<std::uint32_t>(bytes, 4);
  if (version != kEmbeddingFormatVersion)
    throw LoadError("unsupported embedding format version " + std::to_string(version));
  const auto count = read_le<std::uint64_t>(bytes, 8);
  const auto dim = read_le<std::uint32_t>(bytes, 16);
  if (count > 0 && dim == 0) throw LoadError("embedding dim must be positive");

  const std::size_t payload = bytes.size() - kHeaderBytes;
  if (dim != 0 && count > payload / 4 / dim)
    throw LoadError("embedding file truncated: expected " + std::to_string(count) + "x" + std::to_string(dim) +
                    " floats, found " + std::to_string(payload) + " payload bytes");
  const std::size_t expected = static_cast<std::size_t>(count) * dim * 4;
  if (payload < expected) throw LoadError("embedding file truncated");
  if (payload > expected) throw LoadError("embedding file has trailing bytes");

  EmbeddingMatrix m;
  m.vectors.resize(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(dim));
  if (expected > 0) std::memcpy(m.vectors.data(), bytes.data() + kHeaderBytes, expected);
  for (Eigen::Index r = 0; r < m.vectors.rows(); ++r)
    for (Eigen::Index c = 0; c < m.vectors.cols(); ++c)
      if (!std::isfinite(m.vectors(r, c)))
        throw LoadError("non-finite embedding value at row " + std::to_string(r) + ", col " + std::to_string(c),
                        static_cast<std::size_t>(r) + 1);
  return m;
}

EmbeddingMatrix read_embeddings(const std::string& path) {
  EmbeddingMatrix m = parse_embedding_payload(slurp(path));
  const std::string ids_path = ids_path_for(path);
  std::ifstream in(ids_path);
  if (!in) throw LoadError("cannot open embedding ids file: " + ids_path);
  std::string line;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!seen.insert(line).second) throw LoadError("duplicate id in embedding ids: " + line);
    m.ids.push_back(std::move(line));
  }
  if (m.ids.size() != static_cast<std::size_t>(m.vectors.rows()))
    throw LoadError("embedding ids count " + std::to_string(m.ids.size()) + " does not match matrix rows " +
                    std::to_string(m.vectors.rows()));
  return m;
}

std::string serialize_embedding_payload(const EmbeddingMatrix::Matrix& vectors) {
  std::string out(kMagic, 4);
  write_le<std::uint32_t>(out, kEmbeddingFormatVersion);
  write_le<std::uint64_t>(out, static_cast<std::uint64_t>(vectors.rows()));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(vectors.cols()));
  out.append(reinterpret_cast<const char*>(vectors.data()), static_cast<std::size_t>(vectors.size()) * 4);
  return out;
}

void write_embeddings(const std::string& path, const EmbeddingMatrix& matrix) {
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write embeddings: " + path);
    out << serialize_embedding_payload(matrix.vectors);
  }
  std::ofstream ids(ids_path_for(path), std::ios::trunc);
  for (const auto& id : matrix.ids) ids << id << '\n';
}

}  // namespace ambient
