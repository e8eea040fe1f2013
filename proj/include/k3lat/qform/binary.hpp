#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "k3lat/integer.hpp"
#include "k3lat/matrix.hpp"
#include "k3lat/qform/certificate.hpp"
#include "k3lat/qform/forms.hpp"
#include "k3lat/qform/sieve.hpp"

namespace k3lat::qform {

/// f(p x + q y, r x + s y) for M = [[p, q], [r, s]].
inline BinaryForm transform(BinaryForm const& f, IntMatrix const& m) {
  Int const &p = m(0, 0), &q = m(0, 1), &r = m(1, 0), &s = m(1, 1);
  return {f(p, r), 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s,
          f(q, s)};
}

/// A form together with the SL2(Z) matrix M carrying the original form to it:
/// original o M = form.
struct TransformedForm {
  BinaryForm form;
  IntMatrix matrix = IntMatrix::identity(2);
};

/// Reduction theory of indefinite binary forms with non-square discriminant
/// D > 0.  A form (a, b, c) is reduced when 0 < b < sqrt(D) and
/// sqrt(D) - b < 2|a| < sqrt(D) + b.  All comparisons with sqrt(D) are done
/// through s = floor(sqrt(D)), which is exact because sqrt(D) is irrational.
class IndefiniteReduction {
 public:
  explicit IndefiniteReduction(Int disc) : disc_(std::move(disc)) {
    if (disc_ <= 0 || is_square(disc_))
      throw Error("reduction cycle needs a positive non-square discriminant");
    root_ = isqrt(disc_);
  }

  Int const& disc() const { return disc_; }
  Int const& root_floor() const { return root_; }

  bool is_reduced(BinaryForm const& f) const {
    Int const a2 = 2 * abs(f.a);
    return f.b > 0 && f.b <= root_ && a2 + f.b >= root_ + 1 && a2 - f.b <= root_;
  }

  /// The representative of b mod 2|a| used by the rho step: in (-|a|, |a|]
  /// when |a| > sqrt(D), in (sqrt(D) - 2|a|, sqrt(D)) otherwise.
  Int normal_b(Int const& b, Int const& a) const {
    Int const a_abs = abs(a);
    Int const m = 2 * a_abs;
    if (a_abs > root_) {
      Int r = mod(b, m);
      if (r > a_abs) r -= m;
      return r;
    }
    return root_ - mod(root_ - b, m);
  }

  TransformedForm normalize(TransformedForm const& t) const {
    Int const b = normal_b(t.form.b, t.form.a);
    Int const k = (b - t.form.b) / (2 * t.form.a);
    IntMatrix shift{{1, k}, {0, 1}};
    return {transform(t.form, shift), t.matrix * shift};
  }

  /// (a, b, c) -> (c, b', *) with b' = normal_b(-b, c), via [[0, -1], [1, k]].
  TransformedForm rho(TransformedForm const& t) const {
    Int const b = normal_b(-t.form.b, t.form.c);
    Int const k = (b + t.form.b) / (2 * t.form.c);
    IntMatrix step{{0, -1}, {1, k}};
    return {transform(t.form, step), t.matrix * step};
  }

  TransformedForm reduce(BinaryForm const& f) const {
    check(f);
    TransformedForm t = normalize({f, IntMatrix::identity(2)});
    while (!is_reduced(t.form)) t = rho(t);
    return t;
  }

  /// The rho-cycle through reduce(f); each entry's matrix maps f to it.
  std::vector<TransformedForm> cycle(BinaryForm const& f,
                                     std::size_t max_length = 1000000) const {
    std::vector<TransformedForm> out{reduce(f)};
    for (;;) {
      TransformedForm next = rho(out.back());
      if (next.form == out.front().form) break;
      out.push_back(std::move(next));
      if (out.size() > max_length) throw Error("reduced cycle too long");
    }
    return out;
  }

 private:
  void check(BinaryForm const& f) const {
    if (f.disc() != disc_) throw Error("form has a different discriminant");
  }

  Int disc_;
  Int root_;
};

inline IntMatrix sl2_inverse(IntMatrix const& m) {
  return IntMatrix{{m(1, 1), -m(0, 1)}, {-m(1, 0), m(0, 0)}};
}

/// Small-value criterion: for |t| < sqrt(D)/2, t is properly represented iff
/// it is the first coefficient of a form in the reduced cycle.  Returns the
/// primitive witness read off from the cycle matrix.
inline std::optional<IntVector> cycle_leading_coefficient_witness(
    std::vector<TransformedForm> const& cycle, Int const& t) {
  for (auto const& entry : cycle)
    if (entry.form.a == t) return entry.matrix.column(0);
  return std::nullopt;
}

/// Roots beta in [0, 2|t|) of beta^2 = D (mod 4|t|).
inline IntVector discriminant_roots(Int const& disc, Int const& t) {
  Int const m = 4 * abs(t);
  IntVector roots;
  for (Int beta = 0; beta < 2 * abs(t); ++beta)
    if (mod(beta * beta - disc, m) == 0) roots.push_back(beta);
  return roots;
}

/// Proper representation of t by f through equivalence: f properly
/// represents t iff some (t, beta, (beta^2 - D)/(4t)) lies in f's class.
/// Fills `entry` with the tried candidates and their reduced forms.
inline std::optional<IntVector> proper_representation(
    IndefiniteReduction const& red, std::vector<TransformedForm> const& cycle,
    Int const& t, ReducedCycleEntry* entry = nullptr) {
  for (auto const& beta : discriminant_roots(red.disc(), t)) {
    BinaryForm const candidate{t, beta, (beta * beta - red.disc()) / (4 * t)};
    TransformedForm const reduced = red.reduce(candidate);
    if (entry) entry->candidates.emplace_back(beta, reduced.form);
    for (auto const& c : cycle) {
      if (c.form != reduced.form) continue;
      // f o c.matrix = reduced = candidate o reduced.matrix
      IntMatrix const m = c.matrix * sl2_inverse(reduced.matrix);
      return m.column(0);
    }
  }
  return std::nullopt;
}

namespace detail {

inline IntVector checked(BinaryForm const& f, IntVector w, Int const& t) {
  if (f(w[0], w[1]) != t || (t == 0 && is_zero(w)))
    throw Error("internal error: binary witness does not evaluate to target");
  return w;
}

// Square discriminant root^2, t != 0: solve every factor system.
inline RepresentationVerdict square_disc_decide(BinaryForm const& f,
                                                Int const& root,
                                                Int const& t) {
  SquareDiscCertificate cert{root, f.a != 0 ? 4 * f.a * t : t, {}};
  for (auto const& d : positive_divisors(cert.product)) {
    for (Int const& u : {d, Int(-d)}) {
      Int const v = cert.product / u;
      cert.factor_pairs.emplace_back(u, v);
      if (f.a != 0) {
        // 2a x + (b + r) y = u, 2a x + (b - r) y = v
        Int const diff = u - v;
        if (diff % (2 * root) != 0) continue;
        Int const y = diff / (2 * root);
        Int const num = u - (f.b + root) * y;
        if (num % (2 * f.a) != 0) continue;
        Int const x = num / (2 * f.a);
        return RepresentationVerdict::yes(t, checked(f, {x, y}, t));
      }
      // y (b x + c y) = t with b != 0
      Int const y = u;
      Int const num = v - f.c * y;
      if (num % f.b != 0) continue;
      return RepresentationVerdict::yes(t, checked(f, {num / f.b, y}, t));
    }
  }
  return RepresentationVerdict::no(t, std::move(cert));
}

}  // namespace detail

/// Decides whether f has a nonzero zero.  YES iff the discriminant is a
/// perfect square; otherwise NO(NONSQUARE_DISC).
inline RepresentationVerdict binary_represents_zero(BinaryForm const& f) {
  if (f.is_zero()) throw Error("binary form must be nonzero");
  Int const d = f.disc();
  if (!is_square(d)) return RepresentationVerdict::no(0, NonsquareDiscCertificate{d});
  if (f.a == 0) return RepresentationVerdict::yes(0, {1, 0});
  Int const root = isqrt(d);
  IntVector w = primitive_part({-(f.b + root), 2 * f.a});
  return RepresentationVerdict::yes(0, detail::checked(f, std::move(w), 0));
}

/// Decides whether f represents t != 0 (imprimitive witnesses included).
///
/// Order: content divisibility; square discriminant (factor systems);
/// definite (sign, then bounded box); indefinite non-square discriminant
/// (sieve ladder, then reduced-cycle equivalence for each t / k^2).
inline RepresentationVerdict binary_represents(
    BinaryForm const& f, Int const& t, SearchOptions const& options = {}) {
  if (t == 0) return binary_represents_zero(f);
  Int const d = f.disc();
  if (d == 0) throw Error("binary form is degenerate (discriminant 0)");
  QuadraticForm const q = QuadraticForm::from(f);

  if (auto cert = divisibility_certificate(q, t))
    return RepresentationVerdict::no(t, *cert);

  if (is_square(d)) {
    Int const product = f.a != 0 ? 4 * f.a * t : t;
    if (abs(product) > options.search_bound * options.search_bound *
                           options.search_bound * options.search_bound)
      return RepresentationVerdict::undecided(
          t, options.bounds("factor product exceeds search bound^4"));
    return detail::square_disc_decide(f, isqrt(d), t);
  }

  if (d < 0) {
    if (sign(t) != sign(f.a))
      return RepresentationVerdict::no(t, DefiniteCertificate{sign(f.a)});
    auto bounds = *definite_box_bounds(q, t);
    for (auto const& b : bounds)
      if (b > options.search_bound)
        return RepresentationVerdict::undecided(
            t, options.bounds("definite box exceeds search bound"));
    if (auto w = search_box(q, t, bounds))
      return RepresentationVerdict::yes(t, detail::checked(f, *w, t));
    return RepresentationVerdict::no(t, DefiniteBoxCertificate{bounds});
  }

  if (auto m = find_sieve_modulus(q, t, options))
    return RepresentationVerdict::no(t, SieveCertificate{*m});

  if (2 * abs(t) > 100 * options.search_bound)
    return RepresentationVerdict::undecided(
        t, options.bounds("target too large for root enumeration"));

  IndefiniteReduction const red(d);
  auto const cycle = red.cycle(f);
  ReducedCycleCertificate cert;
  for (auto const& entry : cycle) cert.cycle.push_back(entry.form);

  for (Int k = 1; k * k <= abs(t); ++k) {
    if (t % (k * k) != 0) continue;
    Int const target = t / (k * k);
    ReducedCycleEntry entry{k, target, {}};
    std::optional<IntVector> w;
    if (4 * target * target < d)
      w = cycle_leading_coefficient_witness(cycle, target);
    if (!w) w = proper_representation(red, cycle, target, &entry);
    if (w) {
      IntVector scaled{(*w)[0] * k, (*w)[1] * k};
      return RepresentationVerdict::yes(t, detail::checked(f, scaled, t));
    }
    cert.entries.push_back(std::move(entry));
  }
  return RepresentationVerdict::no(t, std::move(cert));
}

}  // namespace k3lat::qform
