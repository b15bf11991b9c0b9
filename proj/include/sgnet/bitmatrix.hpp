#pragma once

#include <cstdint>
#include <vector>

#include "sgnet/error.hpp"

namespace sgnet {

// Dense row-major boolean matrix. Shared between the mask builders and the
// attention kernels so masks never round-trip through floating point.
struct BitMatrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<std::uint8_t> bits;  // row-major, one byte per cell

  BitMatrix() = default;
  BitMatrix(std::int64_t r, std::int64_t c, std::uint8_t fill = 0)
      : rows(r), cols(c), bits(static_cast<std::size_t>(r * c), fill) {}

  static BitMatrix ones(std::int64_t r, std::int64_t c) { return BitMatrix(r, c, 1); }

  static BitMatrix identity(std::int64_t n) {
    BitMatrix m(n, n, 0);
    for (std::int64_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  bool operator()(std::int64_t i, std::int64_t j) const {
    return bits[static_cast<std::size_t>(i * cols + j)] != 0;
  }

  void set(std::int64_t i, std::int64_t j, bool v) {
    bits[static_cast<std::size_t>(i * cols + j)] = v ? 1 : 0;
  }

  bool row_all_zero(std::int64_t i) const {
    for (std::int64_t j = 0; j < cols; ++j) {
      if ((*this)(i, j)) return false;
    }
    return true;
  }

  bool operator==(const BitMatrix& o) const {
    return rows == o.rows && cols == o.cols && bits == o.bits;
  }
};

}  // namespace sgnet
