#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "k3lat/k3lat.hpp"

namespace support {

using k3lat::Int;
using k3lat::IntMatrix;
using k3lat::IntVector;

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                               std::size_t cols, std::int64_t bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

inline IntMatrix random_symmetric(std::mt19937_64& rng, std::size_t n,
                                  std::int64_t bound) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = uniform(rng, -bound, bound);
  return m;
}

/// Product of at most `steps` elementary matrices (row additions with
/// multipliers in [-3, 3], swaps, negations).
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n,
                                   int steps = 10) {
  IntMatrix t = IntMatrix::identity(n);
  if (n == 0) return t;
  int const count = static_cast<int>(uniform(rng, 1, steps));
  for (int s = 0; s < count; ++s) {
    auto const i = static_cast<std::size_t>(uniform(rng, 0, n - 1));
    auto const j = static_cast<std::size_t>(uniform(rng, 0, n - 1));
    switch (uniform(rng, 0, 2)) {
      case 0:
        if (i != j) t.add_row(i, j, Int(uniform(rng, -3, 3)));
        break;
      case 1:
        t.swap_rows(i, j);
        break;
      default:
        t.negate_row(i);
    }
  }
  return t;
}

inline std::vector<std::vector<std::int64_t>> to_rows(IntMatrix const& m) {
  std::vector<std::vector<std::int64_t>> out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = k3lat::to_int64(m(i, j));
  return out;
}

inline bool is_unimodular(IntMatrix const& m) {
  if (!m.is_square()) return false;
  Int const d = k3lat::determinant(m);
  return d == 1 || d == -1;
}

/// Diagonal with d_1 | d_2 | ... among the leading nonzero entries, zeros
/// last, everything nonnegative.
inline bool is_smith_form(IntMatrix const& d) {
  std::size_t const r = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  for (std::size_t i = 0; i < r; ++i) {
    if (d(i, i) < 0) return false;
    if (i + 1 < r) {
      if (d(i, i) == 0 && d(i + 1, i + 1) != 0) return false;
      if (d(i, i) != 0 && d(i + 1, i + 1) % d(i, i) != 0) return false;
    }
  }
  return true;
}

}  // namespace support
