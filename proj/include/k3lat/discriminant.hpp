#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "k3lat/integer.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/matrix.hpp"
#include "k3lat/smith.hpp"

namespace k3lat {

using RatVector = std::vector<Rational>;

/// The finite abelian group L^* / L of a nondegenerate lattice.
///
/// `generator_lifts[i]` is a vector of L (x) Q, in the coordinates of the
/// lattice basis, whose class generates the cyclic factor of order
/// `invariant_factors[i]`.  The decomposition is the one read off from the
/// Smith form U * G * V = D: lifts are the columns of V * D^{-1} with d_i > 1,
/// and `coordinate_map` = V^{-1} turns a dual vector into cyclic coordinates.
struct DiscriminantGroup {
  IntVector invariant_factors;
  std::vector<RatVector> generator_lifts;
  IntMatrix coordinate_map;
  std::vector<std::size_t> factor_positions;

  Int order() const {
    Int o = 1;
    for (auto const& d : invariant_factors) o *= d;
    return o;
  }
  bool is_trivial() const { return invariant_factors.empty(); }

  /// Cyclic coordinates (c_i mod d_i) of a dual vector y (G*y integral).
  IntVector coordinates(RatVector const& y) const {
    IntVector out;
    for (std::size_t k = 0; k < factor_positions.size(); ++k) {
      std::size_t const row = factor_positions[k];
      Rational c = 0;
      for (std::size_t j = 0; j < y.size(); ++j)
        c += Rational(coordinate_map(row, j)) * y[j];
      Rational const scaled = c * Rational(invariant_factors[k]);
      if (boost::multiprecision::denominator(scaled) != 1)
        throw Error("vector is not in the dual lattice");
      out.push_back(mod(boost::multiprecision::numerator(scaled),
                        invariant_factors[k]));
    }
    return out;
  }
};

inline DiscriminantGroup discriminant_group(GramLattice const& l) {
  if (!is_nondegenerate(l))
    throw Error("discriminant group of a degenerate lattice");
  auto const snf = smith_normal_form(l.gram());
  DiscriminantGroup g;
  auto const v_inv = inverse(to_rational(snf.V));
  g.coordinate_map = *to_integer(*v_inv);
  for (std::size_t i = 0; i < l.rank(); ++i) {
    Int const d = snf.D(i, i);
    if (d == 1) continue;
    g.invariant_factors.push_back(d);
    g.factor_positions.push_back(i);
    RatVector lift(l.rank());
    for (std::size_t r = 0; r < l.rank(); ++r)
      lift[r] = Rational(snf.V(r, i), d);
    g.generator_lifts.push_back(std::move(lift));
  }
  return g;
}

/// Checks that `factors` is a chain d_1 | d_2 | ... with every d_i > 1.
inline bool is_divisibility_chain(IntVector const& factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] <= 1) return false;
    if (i > 0 && factors[i] % factors[i - 1] != 0) return false;
  }
  return true;
}

/// |Aut(Z/d_1 + ... + Z/d_k)| for an invariant-factor chain.
///
/// Prime by prime, for the p-part Z/p^{e_1} + ... + Z/p^{e_n} with
/// e_1 <= ... <= e_n, let a_k = max{l : e_l = e_k}, b_k = min{l : e_l = e_k}:
///   |Aut| = prod_k (p^{a_k} - p^{k-1}) * prod_j p^{e_j (n - a_j)}
///           * prod_i p^{(e_i - 1)(n - b_i + 1)}.
inline Int aut_order_finite_abelian(IntVector const& invariant_factors) {
  if (!is_divisibility_chain(invariant_factors))
    throw Error("invariant factors must form a divisibility chain of d > 1");
  std::map<Int, std::vector<unsigned>> exponents;
  for (auto const& d : invariant_factors)
    for (auto const& [p, e] : factorize(d)) exponents[p].push_back(e);

  Int order = 1;
  for (auto& [p, es] : exponents) {
    std::sort(es.begin(), es.end());
    std::size_t const n = es.size();
    auto pow = [&](std::size_t k) {
      Int r = 1;
      for (std::size_t i = 0; i < k; ++i) r *= p;
      return r;
    };
    for (std::size_t k = 1; k <= n; ++k) {
      std::size_t a = k;
      while (a < n && es[a] == es[k - 1]) ++a;
      std::size_t b = k;
      while (b > 1 && es[b - 2] == es[k - 1]) --b;
      std::size_t const e = es[k - 1];
      order *= pow(a) - pow(k - 1);
      order *= pow(e * (n - a));
      order *= pow((e - 1) * (n - b + 1));
    }
  }
  return order;
}

/// Index bound 66 * |Aut(L^*/L)| on Ker(Aut -> O(transcendental)).
inline Int automorphism_index_bound(IntVector const& invariant_factors) {
  return 66 * aut_order_finite_abelian(invariant_factors);
}

}  // namespace k3lat
