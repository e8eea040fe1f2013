#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3lat/discriminant.hpp"
#include "k3lat/integer.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/matrix.hpp"
#include "k3lat/smith.hpp"

namespace k3lat {

/// A sublattice spanned by the columns of `basis`, written in the
/// coordinates of the ambient lattice basis.
class EmbeddedSublattice {
 public:
  EmbeddedSublattice(GramLattice ambient, IntMatrix basis)
      : ambient_(std::move(ambient)), basis_(std::move(basis)) {
    if (basis_.rows() != ambient_.rank())
      throw Error("sublattice basis has wrong coordinate length");
    if (smith_normal_form(basis_).rank() != basis_.cols())
      throw Error("sublattice basis columns are linearly dependent");
  }

  static EmbeddedSublattice from_vectors(GramLattice ambient,
                                         std::vector<IntVector> const& cols) {
    std::size_t const n = ambient.rank();
    return {std::move(ambient), IntMatrix::from_columns(cols, n)};
  }

  GramLattice const& ambient() const { return ambient_; }
  IntMatrix const& basis() const { return basis_; }
  std::size_t rank() const { return basis_.cols(); }
  IntVector vector(std::size_t j) const { return basis_.column(j); }

 private:
  GramLattice ambient_;
  IntMatrix basis_;
};

/// basis^T * G * basis.
inline GramLattice induced_gram(EmbeddedSublattice const& s) {
  return GramLattice(s.basis().transposed() * s.ambient().gram() * s.basis());
}

/// True iff the span equals its rational saturation in the ambient lattice,
/// i.e. every invariant factor of the basis matrix is 1.
inline bool is_primitive(EmbeddedSublattice const& s) {
  for (auto const& d : invariant_factors(s.basis()))
    if (d != 1) return false;
  return true;
}

/// [saturation : span], the product of the basis invariant factors.
inline Int saturation_index(EmbeddedSublattice const& s) {
  Int index = 1;
  for (auto const& d : invariant_factors(s.basis())) index *= d;
  return index;
}

/// Basis of (S (x) Q) cap ambient.  With U*B*V = D, the first rank(S)
/// columns of U^{-1} span the saturation.
inline EmbeddedSublattice primitive_closure(EmbeddedSublattice const& s) {
  auto const snf = smith_normal_form(s.basis());
  IntMatrix closure(s.basis().rows(), s.rank());
  for (std::size_t j = 0; j < s.rank(); ++j)
    for (std::size_t i = 0; i < closure.rows(); ++i)
      closure(i, j) = snf.U_inv(i, j);
  return {s.ambient(), std::move(closure)};
}

/// All ambient vectors orthogonal to S, as the integer kernel of B^T G.
inline EmbeddedSublattice orthogonal_complement(EmbeddedSublattice const& s) {
  if (!is_nondegenerate(s.ambient()))
    throw Error("orthogonal complement requires a nondegenerate ambient");
  IntMatrix const pairing = s.basis().transposed() * s.ambient().gram();
  return {s.ambient(), integer_kernel(pairing)};
}

/// A linear map of a lattice (acting on coordinate columns) preserving the
/// Gram matrix.
class IsometryMap {
 public:
  IsometryMap(GramLattice domain, IntMatrix matrix)
      : domain_(std::move(domain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != domain_.rank() || matrix_.cols() != domain_.rank())
      throw Error("isometry matrix has wrong shape");
    if (matrix_.transposed() * domain_.gram() * matrix_ != domain_.gram())
      throw Error("matrix is not an isometry: g^T G g != G");
  }

  static IsometryMap identity(GramLattice const& domain) {
    return {domain, IntMatrix::identity(domain.rank())};
  }

  GramLattice const& domain() const { return domain_; }
  IntMatrix const& matrix() const { return matrix_; }
  IntVector apply(IntVector const& v) const { return matrix_ * v; }

  IsometryMap compose(IsometryMap const& inner) const {
    return {domain_, matrix_ * inner.matrix_};
  }

 private:
  GramLattice domain_;
  IntMatrix matrix_;
};

/// Reflection x -> x - 2 (x,r)/(r,r) r in a root r of square -2 or 2
/// (for (r,r) = -2 this is x -> x + (x,r) r).
inline IsometryMap reflection(GramLattice const& l, IntVector const& root) {
  Int const rr = l.square(root);
  if (rr != 2 && rr != -2) throw Error("reflection root must have square +-2");
  IntMatrix m = IntMatrix::identity(l.rank());
  IntVector const g_root = l.gram() * root;
  for (std::size_t j = 0; j < l.rank(); ++j) {
    // image of e_j = e_j - (2 (e_j, r) / (r, r)) r
    Int const coeff = -2 * g_root[j] / rr;
    for (std::size_t i = 0; i < l.rank(); ++i) m(i, j) += coeff * root[i];
  }
  return {l, std::move(m)};
}

/// The induced action of an isometry on L^*/L.
struct DiscriminantAction {
  DiscriminantGroup group;
  /// Column i holds the cyclic coordinates of g(generator i).
  std::vector<IntVector> images;
  bool trivial = true;
  std::optional<std::size_t> first_moved;
};

inline DiscriminantAction discriminant_action(IsometryMap const& g) {
  DiscriminantAction out{discriminant_group(g.domain()), {}, true, {}};
  RatMatrix const m = to_rational(g.matrix());
  for (std::size_t i = 0; i < out.group.generator_lifts.size(); ++i) {
    auto const image = m * out.group.generator_lifts[i];
    auto coords = out.group.coordinates(image);
    for (std::size_t k = 0; k < coords.size(); ++k) {
      if (coords[k] != (k == i ? 1 : 0) && out.trivial) {
        out.trivial = false;
        out.first_moved = i;
      }
    }
    out.images.push_back(std::move(coords));
  }
  return out;
}

/// Extends an isometry g of a primitive sublattice S to the ambient lattice
/// by the identity on the orthogonal complement.
///
/// The extension is solved over Q on S + S^perp and accepted only after
/// integrality and isometry are verified on the full ambient basis.
inline IsometryMap extend_by_identity(IsometryMap const& g,
                                      EmbeddedSublattice const& s) {
  if (!(g.domain() == induced_gram(s)))
    throw Error("isometry domain differs from the sublattice's induced Gram");
  if (!is_primitive(s)) throw Error("sublattice is not primitive");
  auto const action = discriminant_action(g);
  if (!action.trivial)
    throw Error("discriminant action is not trivial: generator coset " +
                std::to_string(*action.first_moved) + " of order " +
                action.group.invariant_factors[*action.first_moved].str() +
                " moves");
  auto const complement = orthogonal_complement(s);
  IntMatrix const frame = hconcat(s.basis(), complement.basis());
  auto const frame_inv = inverse(to_rational(frame));
  if (!frame.is_square() || !frame_inv)
    throw Error("sublattice is degenerate: S + S^perp has lower rank");
  IntMatrix const images = hconcat(s.basis() * g.matrix(), complement.basis());
  auto const extended = to_integer(to_rational(images) * *frame_inv);
  if (!extended) throw Error("extension is not integral");
  return {s.ambient(), *extended};
}

}  // namespace k3lat
