#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sgnet/bitmatrix.hpp"
#include "sgnet/conllu.hpp"

namespace sgnet {

// n x n attention-support mask over sequence positions (0-based). Row i
// holds the allowed key positions for query position i: position i itself
// plus all of i's ancestors in the dependency tree. Special positions carry
// a unit row (they attend to themselves alone). The diagonal is always one
// and no row is empty.
class SdoiMask {
 public:
  SdoiMask() = default;
  explicit SdoiMask(std::int64_t n) : bits_(n, n, 0) {
    for (std::int64_t i = 0; i < n; ++i) bits_.set(i, i, true);
  }

  std::int64_t n() const { return bits_.rows; }
  bool operator()(std::int64_t i, std::int64_t j) const { return bits_(i, j); }
  void set(std::int64_t i, std::int64_t j, bool v) { bits_.set(i, j, v); }

  const BitMatrix& bits() const { return bits_; }

  bool operator==(const SdoiMask& o) const { return bits_ == o.bits_; }

 private:
  BitMatrix bits_;
};

// Contiguous word -> subword ranges, 0-based half-open over [0, n_subwords).
// Ranges must be non-overlapping, in word order, and cover every subword.
struct SubwordAlignment {
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  std::int64_t n_subwords = 0;

  static SubwordAlignment identity(std::int64_t n_words);

  std::int64_t n_words() const { return static_cast<std::int64_t>(ranges.size()); }
  std::int64_t word_of(std::int64_t subword) const;
  void validate() const;
};

enum class SubwordMode {
  kSharedRow,        // every subword inherits its word's full mask row and column
  kFirstSubwordHead  // continuation subwords hang off the word's first subword
};

// All 1-based token indices on the head chain from token i's head up to the
// root, exclusive of i; empty for the root. The tree must validate and i
// must be a non-special token.
std::vector<int> ancestors(const DependencyTree& tree, int i);

// Builds the mask for a sequence laid out as: |special_positions| reserved
// slots at the given 0-based positions plus the tree's tokens filling the
// remaining slots in sentence order. Sequence length is tree.size() +
// |special_positions|.
SdoiMask build_sdoi_mask(const DependencyTree& tree, const std::set<std::int64_t>& special_positions);

// Expands a word-level mask to subword level under the given alignment.
SdoiMask project_to_subwords(const SdoiMask& mask, const SubwordAlignment& align,
                             SubwordMode mode = SubwordMode::kSharedRow);

// Stacks masks on the diagonal of one larger mask; no cross-block support.
SdoiMask block_diagonal_merge(const std::vector<SdoiMask>& masks);

// Re-points the heads of round-half-up(p * n) non-root tokens (chosen
// uniformly, capped at the non-root count) to indices sampled uniformly from
// all positions other than the token itself, rejection-resampling anything
// that would create a cycle. The current head may be re-drawn, so a chosen
// link can survive when acyclicity forces it. The result always validates
// and is fully determined by (tree, p, seed).
DependencyTree degrade_tree(const DependencyTree& tree, double p, std::uint64_t seed);

// ---- serialization ---------------------------------------------------------
// JSON object {"n": int, "rows": [[0/1,...],...]} and a compact run-length
// binary sidecar; both round-trip bit-exactly.

std::string mask_to_json(const SdoiMask& mask);
SdoiMask mask_from_json(const std::string& json_text);

std::vector<std::uint8_t> mask_to_rle(const SdoiMask& mask);
SdoiMask mask_from_rle(const std::vector<std::uint8_t>& bytes);

}  // namespace sgnet
