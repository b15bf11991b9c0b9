#include "sgnet/sdoi.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "sgnet/rng.hpp"

namespace sgnet {

SubwordAlignment SubwordAlignment::identity(std::int64_t n_words) {
  SubwordAlignment a;
  a.n_subwords = n_words;
  for (std::int64_t w = 0; w < n_words; ++w) a.ranges.emplace_back(w, w + 1);
  return a;
}

std::int64_t SubwordAlignment::word_of(std::int64_t subword) const {
  for (std::int64_t w = 0; w < n_words(); ++w) {
    if (subword >= ranges[static_cast<std::size_t>(w)].first &&
        subword < ranges[static_cast<std::size_t>(w)].second) {
      return w;
    }
  }
  throw Error("subword " + std::to_string(subword) + " outside alignment");
}

void SubwordAlignment::validate() const {
  std::int64_t expected = 0;
  for (const auto& [b, e] : ranges) {
    detail::check(b == expected && e > b, "alignment ranges must be contiguous and non-empty");
    expected = e;
  }
  detail::check(expected == n_subwords, "alignment ranges must cover all subwords");
}

std::vector<int> ancestors(const DependencyTree& tree, int i) {
  detail::check(i >= 1 && i <= tree.size(), "token index " + std::to_string(i) + " out of range");
  detail::check(!tree.token(i).is_special, "ancestors queried for special token");
  std::vector<int> out;
  int cur = tree.token(i).head;
  while (cur != 0) {
    out.push_back(cur);
    cur = tree.token(cur).head;
  }
  std::sort(out.begin(), out.end());
  return out;
}

SdoiMask build_sdoi_mask(const DependencyTree& tree, const std::set<std::int64_t>& special_positions) {
  if (auto issue = validate_tree(tree)) {
    throw Error("invalid tree: " + issue->message + " at index " + std::to_string(issue->index));
  }
  const std::int64_t n = tree.size() + static_cast<std::int64_t>(special_positions.size());
  for (std::int64_t p : special_positions) {
    detail::check(p >= 0 && p < n, "special position " + std::to_string(p) + " out of range");
  }

  // Tree token t (1-based) sits at the t-th non-special slot of the sequence.
  std::vector<std::int64_t> slot_of_token(static_cast<std::size_t>(tree.size()) + 1, -1);
  std::int64_t next_token = 1;
  for (std::int64_t pos = 0; pos < n; ++pos) {
    if (special_positions.count(pos)) continue;
    slot_of_token[static_cast<std::size_t>(next_token++)] = pos;
  }

  SdoiMask mask(n);
  for (int t = 1; t <= tree.size(); ++t) {
    const std::int64_t row = slot_of_token[static_cast<std::size_t>(t)];
    for (int a : ancestors(tree, t)) {
      mask.set(row, slot_of_token[static_cast<std::size_t>(a)], true);
    }
  }
  return mask;
}

SdoiMask project_to_subwords(const SdoiMask& mask, const SubwordAlignment& align, SubwordMode mode) {
  align.validate();
  detail::check(align.n_words() == mask.n(), "alignment word count does not match mask size");

  SdoiMask out(align.n_subwords);
  for (std::int64_t a = 0; a < align.n_subwords; ++a) {
    const std::int64_t wa = align.word_of(a);
    const bool is_first = a == align.ranges[static_cast<std::size_t>(wa)].first;
    for (std::int64_t wb = 0; wb < mask.n(); ++wb) {
      if (!mask(wa, wb)) continue;
      const auto [b_begin, b_end] = align.ranges[static_cast<std::size_t>(wb)];
      if (mode == SubwordMode::kSharedRow) {
        for (std::int64_t b = b_begin; b < b_end; ++b) out.set(a, b, true);
      } else {
        // Continuations are children of the first subword, so only first
        // subwords can be ancestors; a continuation still sees itself.
        out.set(a, b_begin, true);
      }
    }
    if (mode == SubwordMode::kFirstSubwordHead && !is_first) out.set(a, a, true);
  }
  return out;
}

SdoiMask block_diagonal_merge(const std::vector<SdoiMask>& masks) {
  detail::check(!masks.empty(), "block_diagonal_merge: empty mask list");
  std::int64_t total = 0;
  for (const auto& m : masks) total += m.n();
  SdoiMask out(total);
  std::int64_t offset = 0;
  for (const auto& m : masks) {
    for (std::int64_t i = 0; i < m.n(); ++i) {
      for (std::int64_t j = 0; j < m.n(); ++j) {
        if (m(i, j)) out.set(offset + i, offset + j, true);
      }
    }
    offset += m.n();
  }
  return out;
}

namespace {

// True iff setting head(i) = j would close a cycle under the given head map.
bool creates_cycle(const std::vector<int>& heads, int i, int j) {
  int cur = j;
  while (cur != 0) {
    if (cur == i) return true;
    cur = heads[static_cast<std::size_t>(cur)];
  }
  return false;
}

}  // namespace

DependencyTree degrade_tree(const DependencyTree& tree, double p, std::uint64_t seed) {
  detail::check(p >= 0.0 && p <= 1.0, "degradation fraction must be in [0,1]");
  if (auto issue = validate_tree(tree)) {
    throw Error("invalid tree: " + issue->message + " at index " + std::to_string(issue->index));
  }
  const int n = tree.size();

  std::vector<int> heads(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> non_root;
  for (int i = 1; i <= n; ++i) {
    heads[static_cast<std::size_t>(i)] = tree.token(i).head;
    if (!tree.token(i).is_special && tree.token(i).head != 0) non_root.push_back(i);
  }

  const int want = static_cast<int>(std::floor(p * n + 0.5));  // round half up
  const int k = std::min<int>(want, static_cast<int>(non_root.size()));

  Rng rng = Rng(seed).substream("degrade");
  // Partial Fisher-Yates over the non-root indices picks the victims.
  std::vector<int> pool = non_root;
  std::vector<int> chosen;
  for (int c = 0; c < k; ++c) {
    const std::size_t j = c + static_cast<std::size_t>(rng.uniform(pool.size() - static_cast<std::size_t>(c)));
    std::swap(pool[static_cast<std::size_t>(c)], pool[j]);
    chosen.push_back(pool[static_cast<std::size_t>(c)]);
  }
  std::sort(chosen.begin(), chosen.end());

  for (int i : chosen) {
    while (true) {
      // Any index but the token itself; cycles rejected against the
      // partially rewritten head map.
      int cand = 1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(n - 1)));
      if (cand >= i) ++cand;
      if (tree.token(cand).is_special) continue;
      if (creates_cycle(heads, i, cand)) continue;
      heads[static_cast<std::size_t>(i)] = cand;
      break;
    }
  }

  DependencyTree out = tree;
  for (int i = 1; i <= n; ++i) {
    out.tokens[static_cast<std::size_t>(i - 1)].head = heads[static_cast<std::size_t>(i)];
  }
  return out;
}

std::string mask_to_json(const SdoiMask& mask) {
  nlohmann::ordered_json j;
  j["n"] = mask.n();
  auto rows = nlohmann::ordered_json::array();
  for (std::int64_t i = 0; i < mask.n(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::int64_t jj = 0; jj < mask.n(); ++jj) row.push_back(mask(i, jj) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump();
}

SdoiMask mask_from_json(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  const std::int64_t n = j.at("n").get<std::int64_t>();
  const auto& rows = j.at("rows");
  detail::check(static_cast<std::int64_t>(rows.size()) == n, "mask json: row count != n");
  SdoiMask mask(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    detail::check(static_cast<std::int64_t>(row.size()) == n, "mask json: row length != n");
    for (std::int64_t jj = 0; jj < n; ++jj) {
      mask.set(i, jj, row[static_cast<std::size_t>(jj)].get<int>() != 0);
    }
  }
  return mask;
}

namespace {

constexpr char kRleMagic[8] = {'S', 'D', 'O', 'I', 'R', 'L', 'E', '1'};

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint64_t get_u64(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  detail::check(pos + 8 <= in.size(), "mask rle: truncated input");
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(in[pos++]) << (8 * b);
  return v;
}

}  // namespace

std::vector<std::uint8_t> mask_to_rle(const SdoiMask& mask) {
  const std::int64_t n = mask.n();
  std::vector<std::uint64_t> runs;
  std::uint8_t first_bit = 0;
  std::uint64_t total = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  if (total > 0) {
    first_bit = mask(0, 0) ? 1 : 0;
    std::uint8_t cur = first_bit;
    std::uint64_t run = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      for (std::int64_t j = 0; j < n; ++j) {
        const std::uint8_t bit = mask(i, j) ? 1 : 0;
        if (bit == cur) {
          ++run;
        } else {
          runs.push_back(run);
          cur = bit;
          run = 1;
        }
      }
    }
    runs.push_back(run);
  }

  std::vector<std::uint8_t> out;
  out.insert(out.end(), kRleMagic, kRleMagic + 8);
  put_u64(out, static_cast<std::uint64_t>(n));
  out.push_back(first_bit);
  put_u64(out, runs.size());
  for (std::uint64_t r : runs) put_u64(out, r);
  return out;
}

SdoiMask mask_from_rle(const std::vector<std::uint8_t>& bytes) {
  detail::check(bytes.size() >= 8 && std::equal(kRleMagic, kRleMagic + 8, bytes.begin()),
                "mask rle: bad magic");
  std::size_t pos = 8;
  const std::int64_t n = static_cast<std::int64_t>(get_u64(bytes, pos));
  detail::check(pos < bytes.size(), "mask rle: truncated input");
  std::uint8_t bit = bytes[pos++];
  const std::uint64_t n_runs = get_u64(bytes, pos);

  SdoiMask mask(n);
  std::uint64_t cell = 0;
  const std::uint64_t total = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  for (std::uint64_t r = 0; r < n_runs; ++r) {
    std::uint64_t run = get_u64(bytes, pos);
    for (std::uint64_t c = 0; c < run; ++c, ++cell) {
      detail::check(cell < total, "mask rle: runs exceed n*n");
      mask.set(static_cast<std::int64_t>(cell / static_cast<std::uint64_t>(n)),
               static_cast<std::int64_t>(cell % static_cast<std::uint64_t>(n)), bit != 0);
    }
    bit ^= 1;
  }
  detail::check(cell == total, "mask rle: runs cover " + std::to_string(cell) + " of " +
                                   std::to_string(total) + " cells");
  return mask;
}

}  // namespace sgnet
