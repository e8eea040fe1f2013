#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3lat/discriminant.hpp"
#include "k3lat/elliptic.hpp"
#include "k3lat/embedding.hpp"
#include "k3lat/integer.hpp"
#include "k3lat/k3.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/qform/represent.hpp"
#include "k3lat/qform/ternary.hpp"
#include "k3lat/qform/verify.hpp"

namespace k3lat {

/// Raised when a computed (PROVEN) verdict disagrees with the catalog.
class CertificationError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------- K3 vectors

namespace k3vec {

inline IntVector zero() { return IntVector(k3_block::kRank); }

/// x e + y f in the U block at `offset`.
inline IntVector u_block(std::size_t offset, Int const& x, Int const& y) {
  IntVector v = zero();
  v[offset] = x;
  v[offset + 1] = y;
  return v;
}

inline IntVector add(IntVector a, IntVector const& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline IntVector scale(Int const& k, IntVector a) {
  for (auto& x : a) x *= k;
  return a;
}

/// Sum of E8(-1) simple roots (0-based Bourbaki indices) in the block at
/// `offset`.
inline IntVector e8_roots(std::size_t offset,
                          std::vector<std::size_t> const& roots) {
  IntVector v = zero();
  for (auto r : roots) v[offset + r] += 1;
  return v;
}

}  // namespace k3vec

/// The first `count` pairwise orthogonal E8 simple roots, chosen greedily in
/// Bourbaki order.
inline std::vector<std::size_t> orthogonal_e8_roots(std::size_t count) {
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < 8 && chosen.size() < count; ++i) {
    bool ok = true;
    for (auto c : chosen)
      for (auto const& [a, b] : kE8Edges)
        if ((a == i && b == c) || (a == c && b == i)) ok = false;
    if (ok) chosen.push_back(i);
  }
  if (chosen.size() < count)
    throw Error("E8 has at most 4 pairwise orthogonal simple roots");
  return chosen;
}

// -------------------------------------------------- (A, B, C) sublattice search

struct Claim3Input {
  Int A, B, C;
};

struct Claim3Candidate {
  Int N, M, n, m;
};

/// n and m for given (N, M): (A N, A M) when A >= 2, (4 N, 4 M) when A = 1.
inline Claim3Candidate claim3_parameters(Claim3Input const& in, Int const& N,
                                         Int const& M) {
  if (in.A < 1) throw Error("claim3: A must be >= 1");
  Int const k = in.A >= 2 ? in.A : Int(4);
  return {N, M, k * N, k * M};
}

/// l = e11 + A e12 and n a + h with a = B e12 + e21 + C e22, h = e31 - m e32.
inline EmbeddedSublattice claim3_sublattice(Claim3Input const& in,
                                            Int const& n, Int const& m) {
  using namespace k3vec;
  IntVector const l = u_block(k3_block::kU1, 1, in.A);
  IntVector const a =
      add(u_block(k3_block::kU1, 0, in.B), u_block(k3_block::kU2, 1, in.C));
  IntVector const h = u_block(k3_block::kU3, 1, -m);
  return EmbeddedSublattice::from_vectors(k3_lattice(), {l, add(scale(n, a), h)});
}

inline IntMatrix claim3_expected_gram(Claim3Input const& in, Int const& n,
                                      Int const& m) {
  return IntMatrix{{2 * in.A, n * in.B}, {n * in.B, 2 * (n * n * in.C - m)}};
}

struct Claim3Result {
  bool found = false;
  Claim3Input input;
  Int bound;
  std::size_t candidates_tried = 0;
  Claim3Candidate chosen;
  std::vector<IntVector> vectors;  // l and n a + h in K3 coordinates
  IntMatrix gram;
  IntVector basis_invariant_factors;
  qform::RepresentationVerdict minus2;
  qform::RepresentationVerdict zero;
};

/// Both verdicts NO, both certificates replay, span primitive, Gram as
/// predicted.
inline bool revalidate(Claim3Result const& r) {
  if (!r.found) return false;
  auto const s = claim3_sublattice(r.input, r.chosen.n, r.chosen.m);
  if (induced_gram(s).gram() != claim3_expected_gram(r.input, r.chosen.n,
                                                     r.chosen.m) ||
      induced_gram(s).gram() != r.gram || !is_primitive(s))
    return false;
  auto const q = qform::QuadraticForm::from_gram(r.gram);
  return r.minus2.is_no() && r.zero.is_no() &&
         qform::verify_verdict(q, r.minus2) && qform::verify_verdict(q, r.zero);
}

/// Scans (N, M) in [1, bound]^2 by increasing N + M, then N, for the first
/// lattice L_{m,n} certified to represent neither 0 nor -2.  Returns
/// found = false when the bound is exhausted.
inline Claim3Result claim3_search(Claim3Input const& in, Int const& bound,
                                  qform::SearchOptions const& options = {}) {
  if (in.A < 1) throw Error("claim3: A must be >= 1");
  if (bound < 1) throw Error("claim3: search bound must be >= 1");
  Claim3Result r;
  r.input = in;
  r.bound = bound;
  for (Int s = 2; s <= 2 * bound; ++s) {
    for (Int N = 1; N < s; ++N) {
      Int const M = s - N;
      if (N > bound || M > bound) continue;
      ++r.candidates_tried;
      auto const c = claim3_parameters(in, N, M);
      IntMatrix const gram = claim3_expected_gram(in, c.n, c.m);
      auto const q = qform::QuadraticForm::from_gram(gram);
      auto zero = qform::represents(q, 0, options);
      if (!zero.is_no()) continue;
      auto minus2 = qform::represents(q, -2, options);
      if (!minus2.is_no()) continue;
      auto const span = claim3_sublattice(in, c.n, c.m);
      if (!is_primitive(span) || induced_gram(span).gram() != gram) continue;
      if (!qform::verify_verdict(q, zero) || !qform::verify_verdict(q, minus2))
        continue;
      r.found = true;
      r.chosen = c;
      r.vectors = {span.vector(0), span.vector(1)};
      r.gram = gram;
      r.basis_invariant_factors = invariant_factors(span.basis());
      r.minus2 = std::move(minus2);
      r.zero = std::move(zero);
      return r;
    }
  }
  return r;
}

// ----------------------------------------------------------------- families

/// A statement from the literature, echoed but never recomputed.
struct CitedFact {
  std::string statement;
  std::string citation;
};

struct ExpectedVerdicts {
  qform::VerdictKind minus2 = qform::VerdictKind::Undecided;
  qform::VerdictKind isotropic = qform::VerdictKind::Undecided;
  AutFiniteness aut = AutFiniteness::Unknown;
  ProofTier aut_tier = ProofTier::None;
};

/// Zero section O, a section P and the fiber class F, in sublattice
/// coordinates, plus the height of P.
struct SectionData {
  IntVector zero_section;
  IntVector section;
  IntVector fiber;
  Int height;
  FibrationData fibration;
};

struct FamilySpec {
  int id = 0;
  std::optional<Int> n;
  std::string description;
  std::vector<IntVector> generators;  // K3 coordinates
  IntMatrix target_gram;
  std::optional<IntVector> polarization;
  ExpectedVerdicts expected;
  std::optional<AutAssertion> aut_assertion;
  std::optional<SectionData> sections;
  std::vector<CitedFact> facts;
};

inline FamilySpec family(int id, std::optional<Int> n = std::nullopt) {
  using namespace k3vec;
  using qform::VerdictKind;
  using k3_block::kE8First;
  using k3_block::kE8Second;
  using k3_block::kU1;
  FamilySpec s;
  s.id = id;
  auto const pair = orthogonal_e8_roots(2);
  switch (id) {
    case 1: {
      Int const k = n.value_or(1);
      if (k < 1) throw Error("family 1 needs n >= 1");
      if (k % 3 == 0) throw Error("family 1 needs n not divisible by 3");
      s.n = k;
      s.description = "<e + 3n f, v11, v21>";
      s.generators = {u_block(kU1, 1, 3 * k), e8_roots(kE8First, {0}),
                      e8_roots(kE8Second, {0})};
      s.target_gram = IntMatrix{{6 * k, 0, 0}, {0, -2, 0}, {0, 0, -2}};
      s.polarization = IntVector{1, 0, 0};
      s.expected = {VerdictKind::Yes, VerdictKind::No, AutFiniteness::Infinite,
                    ProofTier::PaperAsserted};
      s.aut_assertion = AutAssertion{
          AutFiniteness::Infinite,
          "Nikulin (1981-1984): finitely many rank-3 Picard lattices of K3 "
          "surfaces with finite automorphism group; holds for n large"};
      break;
    }
    case 2:
    case 4: {
      if (n) throw Error("family " + std::to_string(id) + " has no parameter");
      Int const k = id == 2 ? 2 : 6;
      s.description = "<e + " + k.str() + " f, v11 + v13, v21 + v23>";
      s.generators = {u_block(kU1, 1, k), e8_roots(kE8First, pair),
                      e8_roots(kE8Second, pair)};
      s.target_gram = IntMatrix{{2 * k, 0, 0}, {0, -4, 0}, {0, 0, -4}};
      s.polarization = IntVector{1, 0, 0};
      s.expected = {VerdictKind::No,
                    id == 2 ? VerdictKind::Yes : VerdictKind::No,
                    AutFiniteness::Infinite, ProofTier::Proven};
      break;
    }
    case 3: {
      if (n) throw Error("family 3 has no parameter");
      s.description = "U + <-8> = <e, f, v11 + v13 + v15 + v17>";
      s.generators = {u_block(kU1, 1, 0), u_block(kU1, 0, 1),
                      e8_roots(kE8First, orthogonal_e8_roots(4))};
      s.target_gram = IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -8}};
      s.polarization = IntVector{1, 1, 0};
      s.expected = {VerdictKind::Yes, VerdictKind::Yes,
                    AutFiniteness::Infinite, ProofTier::PaperAsserted};
      s.aut_assertion = AutAssertion{
          AutFiniteness::Infinite,
          "Shioda (1990), Mordell-Weil lattices: translation by a section of "
          "infinite order is an automorphism of infinite order"};
      // F = f, O = e - f, P = e + 3 f + w with w^2 = -8.
      s.sections = SectionData{{1, -1, 0}, {1, 3, 1}, {0, 1, 0}, 8,
                               FibrationData{3, {}, true}};
      break;
    }
    case 5: {
      if (n) throw Error("family 5 has no parameter");
      s.description = "U + A1(-1) = <e, f, v>";
      s.generators = {u_block(kU1, 1, 0), u_block(kU1, 0, 1),
                      u_block(k3_block::kU2, 1, -1)};
      s.target_gram = IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -2}};
      s.polarization = IntVector{1, 1, 0};
      s.expected = {VerdictKind::Yes, VerdictKind::Yes, AutFiniteness::Finite,
                    ProofTier::PaperAsserted};
      s.aut_assertion = AutAssertion{
          AutFiniteness::Finite,
          "Nikulin (1981-1984): U + A1(-1) is 2-reflective, so Aut is finite"};
      s.facts = {
          {"central fiber S: 24 smooth rational curves",
           "Nikulin (1981); Kondo (1989)"},
          {"central fiber S: Aut(S) isomorphic to S3 x mu2", "Kondo (1989)"},
      };
      break;
    }
    default:
      throw Error("unknown family id " + std::to_string(id) + " (expected 1-5)");
  }
  return s;
}

/// NS(S) = U + E8(-1) + E8(-1) + A1(-1) of the central fiber.
inline GramLattice central_fiber_lattice() {
  auto const e8 = e8_negative();
  return direct_sum({hyperbolic_plane(), e8, e8, a1_negative()});
}

struct CheckRow {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct SectionCheck {
  long mordell_weil_rank = 0;
  Int section_dot_zero;  // from the height
  Int lattice_section_dot_zero;
  Int pencil_square;
  bool is_pencil = false;
};

struct FamilyCertification {
  FamilySpec spec;
  GramLattice gram;
  IntVector basis_invariant_factors;
  Int discriminant_order;
  K3Report report;
  std::optional<std::size_t> primitive_zero_count;  // height 30
  std::optional<SectionCheck> sections;
  std::vector<CheckRow> checks;
};

/// Height used for counting primitive isotropic vectors of a diagonal form.
inline constexpr long kZeroCountHeight = 30;

/// Computes everything the catalog claims about a family and compares the
/// PROVEN parts.  Any mismatch raises CertificationError naming the family.
inline FamilyCertification certify_family(
    FamilySpec const& spec, qform::SearchOptions const& options = {}) {
  std::string const who = "family " + std::to_string(spec.id);
  auto fail = [&](std::string const& what) {
    throw CertificationError(who + ": " + what);
  };
  auto const span = EmbeddedSublattice::from_vectors(k3_lattice(), spec.generators);
  FamilyCertification c{spec, induced_gram(span), invariant_factors(span.basis()),
                        0, {}, {}, {}, {}};
  auto row = [&](std::string name, std::string expected, std::string actual) {
    bool const pass = expected == actual;
    c.checks.push_back({std::move(name), expected, actual, pass});
    if (!pass) fail(c.checks.back().name + " expected " + expected + ", got " + actual);
  };

  row("gram", to_string(spec.target_gram), to_string(c.gram.gram()));
  row("primitive", "true", is_primitive(span) ? "true" : "false");
  c.discriminant_order = discriminant_group(c.gram).order();
  if (spec.id == 1)
    row("discriminant order", Int(24 * *spec.n).str(), c.discriminant_order.str());

  PicardData const picard(c.gram, {}, spec.polarization);
  c.report = classify(picard, options, spec.aut_assertion);
  if (!revalidate(picard, c.report)) fail("stored verdict does not replay");
  row("minus2", qform::to_string(spec.expected.minus2),
      qform::to_string(c.report.minus2.kind));
  row("isotropic", qform::to_string(spec.expected.isotropic),
      qform::to_string(c.report.isotropic.kind));
  row("aut", to_string(spec.expected.aut) + " " + to_string(spec.expected.aut_tier),
      to_string(c.report.aut.value) + " " + to_string(c.report.aut.tier));

  if (spec.id == 2) {
    auto const d = c.gram.gram();
    qform::DiagonalTernaryForm const q{d(0, 0), d(1, 1), d(2, 2)};
    c.primitive_zero_count =
        qform::enumerate_primitive_zeros(q, kZeroCountHeight).size();
    row("primitive zeros (height 30) >= 10", "true",
        *c.primitive_zero_count >= 10 ? "true" : "false");
  }

  if (spec.sections) {
    auto const& sd = *spec.sections;
    GramLattice const& g = c.gram;
    SectionCheck sc;
    sc.mordell_weil_rank = mordell_weil_rank(sd.fibration);
    sc.section_dot_zero = section_intersection_from_height(Rational(sd.height));
    sc.lattice_section_dot_zero = g.pair(sd.section, sd.zero_section);
    auto const pencil = pencil_class_from_sections(
        g.square(sd.zero_section), g.square(sd.section), sc.section_dot_zero);
    sc.pencil_square = pencil.square;
    sc.is_pencil = pencil.is_pencil;
    row("fiber class square", "0", g.square(sd.fiber).str());
    row("O.F and P.F", "1 1",
        g.pair(sd.zero_section, sd.fiber).str() + " " +
            g.pair(sd.section, sd.fiber).str());
    row("Mordell-Weil rank", std::to_string(sd.fibration.rho - 2),
        std::to_string(sc.mordell_weil_rank));
    row("(C0.C1) from height", sc.lattice_section_dot_zero.str(),
        sc.section_dot_zero.str());
    IntVector sum = sd.zero_section;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += sd.section[i];
    row("pencil class square", g.square(sum).str(), sc.pencil_square.str());
    c.sections = sc;
  }

  if (spec.id == 5) {
    auto const ns = central_fiber_lattice();
    auto const sig = signature(ns);
    row("central fiber NS rank", "19", std::to_string(ns.rank()));
    row("central fiber NS det", "2", determinant(ns).str());
    row("central fiber NS signature", "(1,18)",
        "(" + std::to_string(sig.positive) + "," +
            std::to_string(sig.negative) + ")");
  }
  return c;
}

// ------------------------------------------- rank-2 example inside U + A1(-1)

struct Theorem3Example {
  bool found = false;
  Int height_bound;
  Int height;
  std::size_t candidates_tried = 0;
  GramLattice ambient;
  std::vector<IntVector> basis;  // coordinates in U + A1(-1)
  IntMatrix gram;
  qform::RepresentationVerdict minus2;
  qform::RepresentationVerdict zero;
};

/// Searches rank-2 primitive hyperbolic sublattices of U + A1(-1), spanned by
/// pairs of vectors of increasing height, for one that represents neither
/// 0 nor -2.
inline Theorem3Example theorem3_example(
    Int const& height_bound = 10, qform::SearchOptions const& options = {}) {
  if (height_bound < 1) throw Error("height bound must be >= 1");
  Theorem3Example r;
  r.height_bound = height_bound;
  r.ambient = direct_sum(hyperbolic_plane(), a1_negative());
  auto const& g = r.ambient;
  auto height_of = [](IntVector const& v) {
    Int h = 0;
    for (auto const& x : v) h = abs(x) > h ? abs(x) : h;
    return h;
  };
  // Sign-normalized vectors with height exactly h, in lexicographic order.
  auto shell = [&](Int const& h) {
    std::vector<IntVector> out;
    for (Int a = -h; a <= h; ++a)
      for (Int b = -h; b <= h; ++b)
        for (Int c = -h; c <= h; ++c) {
          IntVector v{a, b, c};
          if (height_of(v) > h || is_zero(v) || sign_normalized(v) != v) continue;
          out.push_back(std::move(v));
        }
    return out;
  };
  for (Int h = 1; h <= height_bound; ++h) {
    auto const box = shell(h);
    for (std::size_t i = 0; i < box.size(); ++i)
      for (std::size_t j = i + 1; j < box.size(); ++j) {
        auto const& u = box[i];
        auto const& w = box[j];
        if (height_of(u) < h && height_of(w) < h) continue;
        Int const uu = g.square(u), ww = g.square(w), uw = g.pair(u, w);
        // Cheap rejections: a basis vector of square 0 or -2, or a
        // non-hyperbolic or isotropic Gram.
        if (uu == 0 || uu == -2 || ww == 0 || ww == -2) continue;
        Int const det = uu * ww - uw * uw;
        if (det >= 0 || is_square(-det)) continue;
        ++r.candidates_tried;
        IntMatrix const gram{{uu, uw}, {uw, ww}};
        auto const q = qform::QuadraticForm::from_gram(gram);
        auto minus2 = qform::represents(q, -2, options);
        if (!minus2.is_no()) continue;
        auto const span = EmbeddedSublattice::from_vectors(g, {u, w});
        if (!is_primitive(span)) continue;
        auto zero = qform::represents(q, 0, options);
        if (!zero.is_no()) continue;
        r.found = true;
        r.height = h;
        r.basis = {u, w};
        r.gram = gram;
        r.minus2 = std::move(minus2);
        r.zero = std::move(zero);
        return r;
      }
  }
  return r;
}

}  // namespace k3lat
