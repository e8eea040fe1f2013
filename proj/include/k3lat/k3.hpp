#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3lat/discriminant.hpp"
#include "k3lat/embedding.hpp"
#include "k3lat/integer.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/qform/certificate.hpp"
#include "k3lat/qform/represent.hpp"
#include "k3lat/qform/verify.hpp"

namespace k3lat {

/// A candidate Picard lattice: hyperbolic, with optional known (-2)-classes
/// and an optional polarization of positive square.
class PicardData {
 public:
  explicit PicardData(GramLattice lattice,
                      std::vector<IntVector> known_minus2_classes = {},
                      std::optional<IntVector> polarization = std::nullopt)
      : lattice_(std::move(lattice)),
        minus2_(std::move(known_minus2_classes)),
        polarization_(std::move(polarization)) {
    auto const sig = signature(lattice_);
    if (lattice_.rank() == 0 || !sig.is_hyperbolic())
      throw Error("Picard lattice must be hyperbolic, got signature (" +
                  std::to_string(sig.positive) + "," +
                  std::to_string(sig.negative) + "," +
                  std::to_string(sig.zero) + ")");
    for (auto const& c : minus2_)
      if (c.size() != lattice_.rank() || lattice_.square(c) != -2)
        throw Error("listed (-2)-class does not have square -2");
    if (polarization_ && (polarization_->size() != lattice_.rank() ||
                          lattice_.square(*polarization_) <= 0))
      throw Error("polarization must have positive square");
  }

  GramLattice const& lattice() const { return lattice_; }
  std::size_t rank() const { return lattice_.rank(); }
  std::vector<IntVector> const& known_minus2_classes() const { return minus2_; }
  std::optional<IntVector> const& polarization() const { return polarization_; }

 private:
  GramLattice lattice_;
  std::vector<IntVector> minus2_;
  std::optional<IntVector> polarization_;
};

enum class AutFiniteness { Finite, Infinite, Unknown };
enum class ProofTier { Proven, PaperAsserted, None };

inline std::string to_string(AutFiniteness a) {
  switch (a) {
    case AutFiniteness::Finite:
      return "FINITE";
    case AutFiniteness::Infinite:
      return "INFINITE";
    case AutFiniteness::Unknown:
      return "UNKNOWN";
  }
  return "?";
}

inline std::string to_string(ProofTier t) {
  switch (t) {
    case ProofTier::Proven:
      return "PROVEN";
    case ProofTier::PaperAsserted:
      return "PAPER_ASSERTED";
    case ProofTier::None:
      return "NONE";
  }
  return "?";
}

/// A finiteness fact taken from the literature rather than computed.
struct AutAssertion {
  AutFiniteness value = AutFiniteness::Unknown;
  std::string citation;
};

struct AutVerdict {
  AutFiniteness value = AutFiniteness::Unknown;
  ProofTier tier = ProofTier::None;
  std::string reason;
  std::optional<std::string> citation;
};

struct K3Report {
  std::size_t rank = 0;
  Signature signature;
  Int determinant;
  IntVector discriminant_factors;
  qform::RepresentationVerdict minus2;
  qform::RepresentationVerdict isotropic;
  AutVerdict aut;
};

inline qform::RepresentationVerdict has_minus2_class(
    PicardData const& p, qform::SearchOptions const& options = {}) {
  return qform::represents(p.lattice(), -2, options);
}

inline qform::RepresentationVerdict has_isotropic_class(
    PicardData const& p, qform::SearchOptions const& options = {}) {
  return qform::represents(p.lattice(), 0, options);
}

/// Finiteness of Aut from the two representation verdicts.
///   rank 1: finite.
///   rank 2: infinite iff neither 0 nor -2 is represented.
///   no (-2)-class: the ample cone is the positive cone, infinite.
///   otherwise: only an asserted literature fact can settle it.
inline AutVerdict aut_verdict(std::size_t rank,
                              qform::RepresentationVerdict const& minus2,
                              qform::RepresentationVerdict const& isotropic,
                              std::optional<AutAssertion> const& assertion =
                                  std::nullopt) {
  if (rank == 1)
    return {AutFiniteness::Finite, ProofTier::Proven, "Picard rank 1", {}};
  if (rank == 2) {
    if (minus2.is_no() && isotropic.is_no())
      return {AutFiniteness::Infinite, ProofTier::Proven,
              "rank 2 and represents neither 0 nor -2", {}};
    if (minus2.is_yes() || isotropic.is_yes())
      return {AutFiniteness::Finite, ProofTier::Proven,
              std::string("rank 2 and represents ") +
                  (isotropic.is_yes() ? "0" : "-2"),
              {}};
  } else if (minus2.is_no()) {
    return {AutFiniteness::Infinite, ProofTier::Proven,
            "no (-2)-class: ample cone equals positive cone", {}};
  }
  if (assertion)
    return {assertion->value, ProofTier::PaperAsserted, "literature",
            assertion->citation};
  return {AutFiniteness::Unknown, ProofTier::None,
          rank == 2 ? "a representation verdict is UNDECIDED"
                    : "rank >= 3 with (-2)-classes (or undecided)",
          {}};
}

inline AutVerdict aut_verdict(PicardData const& p,
                              qform::SearchOptions const& options = {},
                              std::optional<AutAssertion> const& assertion =
                                  std::nullopt) {
  if (p.rank() == 1)
    return aut_verdict(1, qform::RepresentationVerdict{},
                       qform::RepresentationVerdict{}, assertion);
  return aut_verdict(p.rank(), has_minus2_class(p, options),
                     has_isotropic_class(p, options), assertion);
}

inline K3Report classify(PicardData const& p,
                         qform::SearchOptions const& options = {},
                         std::optional<AutAssertion> const& assertion =
                             std::nullopt) {
  K3Report r;
  r.rank = p.rank();
  r.signature = signature(p.lattice());
  r.determinant = determinant(p.lattice());
  r.discriminant_factors = discriminant_group(p.lattice()).invariant_factors;
  r.minus2 = has_minus2_class(p, options);
  r.isotropic = has_isotropic_class(p, options);
  r.aut = aut_verdict(r.rank, r.minus2, r.isotropic, assertion);
  return r;
}

/// Re-checks every decided verdict stored in the report.
inline bool revalidate(PicardData const& p, K3Report const& r) {
  auto const q = qform::QuadraticForm::from_lattice(p.lattice());
  return qform::verify_verdict(q, r.minus2) &&
         qform::verify_verdict(q, r.isotropic);
}

inline bool same_positive_cone_component(PicardData const& p,
                                         IntVector const& u,
                                         IntVector const& v) {
  auto const& l = p.lattice();
  if (u.size() != l.rank() || v.size() != l.rank())
    throw Error("vector length differs from lattice rank");
  if (l.square(u) <= 0 || l.square(v) <= 0)
    throw Error("positive cone test needs vectors of positive square");
  return l.pair(u, v) > 0;
}

/// Lattice proxy for g in G_t: trivial action on the discriminant group,
/// g(l) in the positive cone component of l, and (g(l), C) > 0 for every
/// listed (-2)-class C.  Exact for ample-cone membership only when the list
/// contains every (-2)-curve class.
inline bool g_t_membership_proxy(PicardData const& p, IsometryMap const& g) {
  if (!(g.domain() == p.lattice()))
    throw Error("isometry acts on a different lattice");
  if (!p.polarization()) throw Error("membership proxy needs a polarization");
  if (!discriminant_action(g).trivial) return false;
  IntVector const& l = *p.polarization();
  IntVector const gl = g.apply(l);
  if (!same_positive_cone_component(p, gl, l)) return false;
  for (auto const& c : p.known_minus2_classes())
    if (p.lattice().pair(gl, c) <= 0) return false;
  return true;
}

}  // namespace k3lat
