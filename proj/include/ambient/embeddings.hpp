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

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace ambient {

/// Sentence-embedding vectors, one row per document id.
///
/// On disk: magic `EMB1`, u32 version (1), u64 count, u32 dim, then
/// count*dim little-endian IEEE-754 float32 values row-major. Document ids
/// live in a sibling text file (see ids_path_for), one per line, same order.
struct EmbeddingMatrix {
  using Matrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  std::vector<std::string> ids;
  Matrix vectors;

  Eigen::Index dim() const noexcept { return vectors.cols(); }
  std::size_t size() const noexcept { return ids.size(); }

  /// id -> row index.
  std::unordered_map<std::string, Eigen::Index> index() const;
};

inline constexpr std::uint32_t kEmbeddingFormatVersion = 1;

/// `emb.bin` -> `emb.ids`.
std::string ids_path_for(const std::string& matrix_path);

/// Parses the binary payload alone (ids left empty). Throws LoadError on bad
/// magic or version, truncation, trailing bytes, or a non-finite value.
EmbeddingMatrix parse_embedding_payload(const std::string& bytes);

/// Reads the matrix and its sibling ids file; counts must agree and ids must
/// be unique.
EmbeddingMatrix read_embeddings(const std::string& path);

std::string serialize_embedding_payload(const EmbeddingMatrix::Matrix& vectors);
void write_embeddings(const std::string& path, const EmbeddingMatrix& matrix);

}  // namespace ambient
