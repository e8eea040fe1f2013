#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "k3lat/integer.hpp"
#include "k3lat/matrix.hpp"

namespace k3lat {

/// U * M * V = D with U, V unimodular and D diagonal with
/// d_1 | d_2 | ... | d_r, all d_i >= 0.  `U_inv` is the exact inverse of U.
struct SmithDecomposition {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  IntMatrix U_inv;

  std::size_t rank() const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
      if (D(i, i) != 0) ++r;
    return r;
  }

  /// Diagonal entries d_1..d_min(rows, cols), zeros included.
  IntVector diagonal() const {
    IntVector d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
      d.push_back(D(i, i));
    return d;
  }
};

enum class PivotStrategy { SmallestMagnitude, FirstNonzero };

namespace detail {

class SmithReducer {
 public:
  explicit SmithReducer(IntMatrix const& m)
      : d_(m),
        u_(IntMatrix::identity(m.rows())),
        v_(IntMatrix::identity(m.cols())),
        u_inv_(IntMatrix::identity(m.rows())) {}

  SmithDecomposition run(PivotStrategy strategy) {
    std::size_t const n = std::min(d_.rows(), d_.cols());
    for (std::size_t t = 0; t < n; ++t) {
      auto pivot = find_pivot(t, strategy);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      for (;;) {
        clear_column(t);
        clear_row(t);
        if (!column_clear(t)) continue;
        auto bad = non_divisible_entry(t);
        if (!bad) break;
        add_row(t, *bad, 1);
      }
      if (d_(t, t) < 0) {
        d_.negate_col(t);
        v_.negate_col(t);
      }
    }
    return {std::move(d_), std::move(u_), std::move(v_), std::move(u_inv_)};
  }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> find_pivot(
      std::size_t t, PivotStrategy strategy) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t j = t; j < d_.cols(); ++j)
      for (std::size_t i = t; i < d_.rows(); ++i) {
        if (d_(i, j) == 0) continue;
        if (strategy == PivotStrategy::FirstNonzero) return std::pair{i, j};
        if (!best || abs(d_(i, j)) < abs(d_(best->first, best->second)))
          best = std::pair{i, j};
      }
    return best;
  }

  bool column_clear(std::size_t t) const {
    for (std::size_t i = t + 1; i < d_.rows(); ++i)
      if (d_(i, t) != 0) return false;
    return true;
  }

  std::optional<std::size_t> non_divisible_entry(std::size_t t) const {
    for (std::size_t i = t + 1; i < d_.rows(); ++i)
      for (std::size_t j = t + 1; j < d_.cols(); ++j)
        if (d_(i, j) % d_(t, t) != 0) return i;
    return std::nullopt;
  }

  // Reduce row i by the pivot row; swap only on a nonzero remainder, so the
  // pivot magnitude strictly drops on every swap.
  void clear_column(std::size_t t) {
    for (std::size_t i = t + 1; i < d_.rows(); ++i) {
      while (d_(i, t) != 0) {
        add_row(i, t, -(d_(i, t) / d_(t, t)));
        if (d_(i, t) != 0) swap_rows(t, i);
      }
    }
  }

  void clear_row(std::size_t t) {
    for (std::size_t j = t + 1; j < d_.cols(); ++j) {
      while (d_(t, j) != 0) {
        add_col(j, t, -(d_(t, j) / d_(t, t)));
        if (d_(t, j) != 0) swap_cols(t, j);
      }
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    d_.swap_rows(a, b);
    u_.swap_rows(a, b);
    u_inv_.swap_cols(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, Int const& f) {
    d_.add_row(dst, src, f);
    u_.add_row(dst, src, f);
    u_inv_.add_col(src, dst, -f);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    d_.swap_cols(a, b);
    v_.swap_cols(a, b);
  }
  void add_col(std::size_t dst, std::size_t src, Int const& f) {
    d_.add_col(dst, src, f);
    v_.add_col(dst, src, f);
  }

  IntMatrix d_;
  IntMatrix u_;
  IntMatrix v_;
  IntMatrix u_inv_;
};

}  // namespace detail

inline SmithDecomposition smith_normal_form(
    IntMatrix const& m,
    PivotStrategy strategy = PivotStrategy::SmallestMagnitude) {
  return detail::SmithReducer(m).run(strategy);
}

/// The nonzero diagonal entries of the Smith form, in divisibility order.
inline IntVector invariant_factors(IntMatrix const& m) {
  IntVector out;
  for (auto const& d : smith_normal_form(m).diagonal())
    if (d != 0) out.push_back(d);
  return out;
}

/// Z-basis (as matrix columns) of the integer kernel {x : M x = 0}.
inline IntMatrix integer_kernel(IntMatrix const& m) {
  auto const snf = smith_normal_form(m);
  std::size_t const r = snf.rank();
  IntMatrix k(m.cols(), m.cols() - r);
  for (std::size_t j = r; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) k(i, j - r) = snf.V(i, j);
  return k;
}

}  // namespace k3lat
