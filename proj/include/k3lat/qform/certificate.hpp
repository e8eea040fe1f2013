#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "k3lat/integer.hpp"
#include "k3lat/qform/forms.hpp"

namespace k3lat::qform {

/// No residue tuple modulo `modulus` makes Q congruent to t.
struct SieveCertificate {
  Int modulus;
};

/// `divisor` divides every coefficient (hence every value) but not t.
struct DivisibilityCertificate {
  Int divisor;
};

/// One logged step of the Legendre normalization of a diagonal ternary form.
///   Content:      divide all coefficients by `factor`.
///   SquareFactor: coefficient `index` = factor^2 * (new coefficient).
///   PairGcd:      factor = gcd(d_index, d_other) is removed from both and
///                 multiplied into the third coefficient.
struct LegendreStep {
  enum class Kind { Content, SquareFactor, PairGcd };
  Kind kind = Kind::Content;
  Int factor;
  std::size_t index = 0;
  std::size_t other = 0;
  friend bool operator==(LegendreStep const&, LegendreStep const&) = default;
};

/// After replaying `steps`, the form is a x^2 + b y^2 + c z^2 with a, b, c
/// squarefree and pairwise coprime, and -(product of the other two) is a
/// quadratic non-residue modulo the odd prime `prime` dividing the
/// coefficient at `failed_index`.
struct LegendreCertificate {
  std::vector<LegendreStep> steps;
  IntVector reduced;
  std::size_t failed_index = 0;
  Int prime;
};

/// Binary form with square discriminant root^2: every factorization
/// u * v = product of the linear-factor system was tried and has no integral
/// solution.  For a != 0 the system is (2a x + (b+root) y, 2a x + (b-root) y)
/// = (u, v) with product 4 a t; for a == 0 it is (y, b x + c y) = (u, v) with
/// product t.
struct SquareDiscCertificate {
  Int root;
  Int product;
  std::vector<std::pair<Int, Int>> factor_pairs;
};

/// Binary form whose discriminant is not a perfect square, hence no nonzero
/// zero.
struct NonsquareDiscCertificate {
  Int discriminant;
};

/// Definite form: all nonzero values have sign `sign`, which excludes t = 0
/// and targets of the other sign.
struct DefiniteCertificate {
  int sign = 1;
};

/// Definite form: every solution of |Q(x)| = |t| lies in the box
/// |x_i| <= bounds[i]; the box contains none.
struct DefiniteBoxCertificate {
  IntVector bounds;
};

/// Target t' = t / scale^2 checked against every root beta of
/// beta^2 = D (mod 4|t'|): (t', beta, *) reduces outside the cycle.
struct ReducedCycleEntry {
  Int scale;
  Int target;
  std::vector<std::pair<Int, BinaryForm>> candidates;
};

/// Indefinite binary form with non-square discriminant: t is not
/// represented, because no form (t', beta, *) is properly equivalent to Q.
struct ReducedCycleCertificate {
  std::vector<BinaryForm> cycle;
  std::vector<ReducedCycleEntry> entries;
};

using Certificate =
    std::variant<SieveCertificate, DivisibilityCertificate, LegendreCertificate,
                 SquareDiscCertificate, NonsquareDiscCertificate,
                 DefiniteCertificate, DefiniteBoxCertificate,
                 ReducedCycleCertificate>;

inline std::string certificate_name(Certificate const& c) {
  struct Visitor {
    std::string operator()(SieveCertificate const&) const { return "SIEVE"; }
    std::string operator()(DivisibilityCertificate const&) const {
      return "DIVISIBILITY";
    }
    std::string operator()(LegendreCertificate const&) const {
      return "LEGENDRE";
    }
    std::string operator()(SquareDiscCertificate const&) const {
      return "SQUARE_DISC_EXHAUST";
    }
    std::string operator()(NonsquareDiscCertificate const&) const {
      return "NONSQUARE_DISC";
    }
    std::string operator()(DefiniteCertificate const&) const {
      return "DEFINITE";
    }
    std::string operator()(DefiniteBoxCertificate const&) const {
      return "DEFINITE_BOX";
    }
    std::string operator()(ReducedCycleCertificate const&) const {
      return "REDUCED_CYCLE";
    }
  };
  return std::visit(Visitor{}, c);
}

enum class VerdictKind { Yes, No, Undecided };

inline std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Yes:
      return "YES";
    case VerdictKind::No:
      return "NO";
    case VerdictKind::Undecided:
      return "UNDECIDED";
  }
  return "?";
}

struct SearchBounds {
  Int sieve_max;
  Int search_bound;
  std::string reason;
};

/// Outcome of "does Q represent t".  YES carries a witness with Q(witness) =
/// t (nonzero when t = 0), NO a replayable certificate, UNDECIDED the bounds.
struct RepresentationVerdict {
  VerdictKind kind = VerdictKind::Undecided;
  Int target;
  IntVector witness;
  std::optional<Certificate> certificate;
  std::optional<SearchBounds> bounds;

  static RepresentationVerdict yes(Int t, IntVector w) {
    return {VerdictKind::Yes, std::move(t), sign_normalized(std::move(w)), {},
            {}};
  }
  static RepresentationVerdict no(Int t, Certificate c) {
    return {VerdictKind::No, std::move(t), {}, std::move(c), {}};
  }
  static RepresentationVerdict undecided(Int t, SearchBounds b) {
    return {VerdictKind::Undecided, std::move(t), {}, {}, std::move(b)};
  }

  bool is_yes() const { return kind == VerdictKind::Yes; }
  bool is_no() const { return kind == VerdictKind::No; }
  bool is_undecided() const { return kind == VerdictKind::Undecided; }
};

/// Sieve ladder and witness-search limits.
struct SearchOptions {
  std::vector<Int> sieve_moduli = default_sieve_moduli();
  Int search_bound = 10000;

  static std::vector<Int> default_sieve_moduli() {
    return {3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 64};
  }

  /// Keeps only ladder moduli <= max_modulus.
  SearchOptions& limit_sieve(Int const& max_modulus) {
    std::vector<Int> kept;
    for (auto const& m : sieve_moduli)
      if (m <= max_modulus) kept.push_back(m);
    sieve_moduli = std::move(kept);
    return *this;
  }

  Int sieve_max() const {
    Int m = 0;
    for (auto const& x : sieve_moduli) m = x > m ? x : m;
    return m;
  }

  SearchBounds bounds(std::string reason) const {
    return {sieve_max(), search_bound, std::move(reason)};
  }
};

}  // namespace k3lat::qform
