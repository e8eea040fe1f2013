#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "k3lat/integer.hpp"
#include "k3lat/matrix.hpp"

namespace k3lat {

/// An integral lattice given by its symmetric Gram matrix in a fixed basis.
class GramLattice {
 public:
  GramLattice() = default;
  explicit GramLattice(IntMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.is_symmetric())
      throw Error("Gram matrix must be square and symmetric");
  }

  std::size_t rank() const { return gram_.rows(); }
  IntMatrix const& gram() const { return gram_; }

  Int pair(IntVector const& u, IntVector const& v) const {
    return bilinear(gram_, u, v);
  }
  Int square(IntVector const& v) const { return pair(v, v); }

  IntVector basis_vector(std::size_t i) const {
    IntVector e(rank(), 0);
    e.at(i) = 1;
    return e;
  }

  friend bool operator==(GramLattice const&, GramLattice const&) = default;

 private:
  IntMatrix gram_;
};

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  std::size_t rank() const { return positive + negative + zero; }
  bool is_hyperbolic() const { return positive == 1 && zero == 0; }
  friend bool operator==(Signature const&, Signature const&) = default;
};

inline GramLattice direct_sum(GramLattice const& a, GramLattice const& b) {
  return GramLattice(block_diagonal(a.gram(), b.gram()));
}

inline GramLattice direct_sum(std::vector<GramLattice> const& parts) {
  GramLattice out;
  for (auto const& p : parts) out = direct_sum(out, p);
  return out;
}

/// The hyperbolic plane, Gram [[0,1],[1,0]]; e = first, f = second basis vector.
inline GramLattice hyperbolic_plane() {
  return GramLattice(IntMatrix{{0, 1}, {1, 0}});
}

/// <-2>.
inline GramLattice a1_negative() { return GramLattice(IntMatrix{{-2}}); }

/// The rank-one lattice <n>.
inline GramLattice rank_one(Int const& n) {
  return GramLattice(IntMatrix{{n}});
}

inline GramLattice diagonal_lattice(IntVector const& entries) {
  IntMatrix g(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
  return GramLattice(std::move(g));
}

/// Edges of the E8 Dynkin diagram in Bourbaki numbering (0-based):
/// the chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
inline constexpr std::pair<std::size_t, std::size_t> kE8Edges[] = {
    {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};

/// Negated E8 Cartan matrix: -2 on the diagonal, +1 on Dynkin edges.
inline GramLattice e8_negative() {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
  for (auto const& [a, b] : kE8Edges) {
    g(a, b) = 1;
    g(b, a) = 1;
  }
  return GramLattice(std::move(g));
}

/// U+U+U+E8(-1)+E8(-1) in that block order (coordinates 0..21).
inline GramLattice k3_lattice() {
  auto const u = hyperbolic_plane();
  auto const e8 = e8_negative();
  return direct_sum({u, u, u, e8, e8});
}

/// Coordinate offsets of the K3 lattice blocks.
namespace k3_block {
inline constexpr std::size_t kU1 = 0;
inline constexpr std::size_t kU2 = 2;
inline constexpr std::size_t kU3 = 4;
inline constexpr std::size_t kE8First = 6;
inline constexpr std::size_t kE8Second = 14;
inline constexpr std::size_t kRank = 22;
}  // namespace k3_block

/// Accepts "U", "A1(-1)" / "A1_neg", "E8(-1)" / "E8_neg", "K3".
inline GramLattice standard_lattice(std::string_view name) {
  if (name == "U") return hyperbolic_plane();
  if (name == "A1(-1)" || name == "A1_neg") return a1_negative();
  if (name == "E8(-1)" || name == "E8_neg") return e8_negative();
  if (name == "K3") return k3_lattice();
  throw Error("unknown standard lattice: " + std::string(name));
}

inline Int determinant(GramLattice const& l) { return determinant(l.gram()); }

/// Signature by exact congruence diagonalization over the rationals:
/// symmetric row/column operations preserve the inertia.
inline Signature signature(GramLattice const& l) {
  RatMatrix m = to_rational(l.gram());
  std::size_t const n = m.rows();
  Signature sig;
  std::size_t k = 0;
  while (k < n) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, p) == 0) ++p;
      if (p < n) {
        m.swap_rows(k, p);
        m.swap_cols(k, p);
      } else {
        std::size_t q = k + 1;
        while (q < n && m(k, q) == 0) ++q;
        if (q == n) {
          // Row k is zero: a radical direction.
          ++sig.zero;
          ++k;
          continue;
        }
        // e_k <- e_k + e_q makes the pivot 2*m(k,q) != 0.
        m.add_row(k, q, 1);
        m.add_col(k, q, 1);
      }
    }
    Rational const pivot = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rational const f = -m(i, k) / pivot;
      m.add_row(i, k, f);
      m.add_col(i, k, f);
    }
    if (pivot > 0) {
      ++sig.positive;
    } else {
      ++sig.negative;
    }
    ++k;
  }
  return sig;
}

inline bool is_nondegenerate(GramLattice const& l) {
  return determinant(l) != 0;
}

}  // namespace k3lat
