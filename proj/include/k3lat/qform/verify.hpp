#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "k3lat/integer.hpp"
#include "k3lat/qform/binary.hpp"
#include "k3lat/qform/certificate.hpp"
#include "k3lat/qform/forms.hpp"
#include "k3lat/qform/sieve.hpp"
#include "k3lat/qform/ternary.hpp"

namespace k3lat::qform {

namespace detail {

inline bool replay(QuadraticForm const& q, Int const& t,
                   SieveCertificate const& c) {
  return c.modulus >= 2 && sieve_excludes(q, t, c.modulus);
}

inline bool replay(QuadraticForm const& q, Int const& t,
                   DivisibilityCertificate const& c) {
  if (c.divisor < 2 || t % c.divisor == 0) return false;
  return q.content() % c.divisor == 0;
}

inline bool replay(QuadraticForm const& q, Int const& t,
                   LegendreCertificate const& c) {
  auto const f = q.as_diagonal_ternary();
  if (!f || t != 0) return false;
  IntVector d = f->coefficients();
  for (auto const& x : d)
    if (x == 0) return false;
  for (auto const& step : c.steps)
    if (!apply_legendre_step(step, d)) return false;
  if (d != c.reduced || !is_legendre_normal(d)) return false;
  if (c.failed_index > 2 || c.prime < 3 || !is_prime(c.prime)) return false;
  if (d[c.failed_index] % c.prime != 0) return false;
  Int const other = -d[(c.failed_index + 1) % 3] * d[(c.failed_index + 2) % 3];
  return legendre_symbol(other, c.prime) == -1;
}

inline bool solvable(BinaryForm const& f, Int const& root, Int const& u,
                     Int const& v) {
  if (f.a != 0) {
    Int const diff = u - v;
    if (diff % (2 * root) != 0) return false;
    Int const y = diff / (2 * root);
    return (u - (f.b + root) * y) % (2 * f.a) == 0;
  }
  return (v - f.c * u) % f.b == 0;
}

inline bool replay(QuadraticForm const& q, Int const& t,
                   SquareDiscCertificate const& c) {
  auto const f = q.as_binary();
  if (!f || t == 0 || c.root <= 0 || c.root * c.root != f->disc()) return false;
  if (c.product != (f->a != 0 ? 4 * f->a * t : t)) return false;
  std::set<std::pair<Int, Int>> listed;
  for (auto const& [u, v] : c.factor_pairs) {
    if (u * v != c.product) return false;
    if (solvable(*f, c.root, u, v)) return false;
    listed.emplace(u, v);
  }
  // Every factorization of the product has to be covered.
  for (auto const& d : positive_divisors(c.product))
    for (Int const& u : {d, Int(-d)})
      if (!listed.count({u, c.product / u})) return false;
  return true;
}

inline bool replay(QuadraticForm const& q, Int const& t,
                   NonsquareDiscCertificate const& c) {
  auto const f = q.as_binary();
  if (!f || f->is_zero() || t != 0) return false;
  return f->disc() == c.discriminant && !is_square(c.discriminant);
}

inline bool replay(QuadraticForm const& q, Int const& t,
                   DefiniteCertificate const& c) {
  if (q.variables() == 0 || (c.sign != 1 && c.sign != -1)) return false;
  if (q.definiteness() != c.sign) return false;
  return t == 0 || sign(t) != c.sign;
}

inline bool replay(QuadraticForm const& q, Int const& t,
                   DefiniteBoxCertificate const& c) {
  auto const needed = definite_box_bounds(q, t);
  if (!needed || c.bounds.size() != needed->size()) return false;
  for (std::size_t i = 0; i < c.bounds.size(); ++i)
    if (c.bounds[i] < (*needed)[i]) return false;
  if (box_size(c.bounds) > Int(kMaxSieveTuples)) return false;
  return !search_box(q, t, c.bounds).has_value();
}

inline bool replay(QuadraticForm const& q, Int const& t,
                   ReducedCycleCertificate const& c) {
  auto const f = q.as_binary();
  if (!f || t == 0) return false;
  Int const d = f->disc();
  if (d <= 0 || is_square(d) || c.cycle.empty()) return false;
  IndefiniteReduction const red(d);
  for (auto const& g : c.cycle)
    if (g.disc() != d || !red.is_reduced(g)) return false;
  // Closed rho-orbit through the reduction of f.
  for (std::size_t i = 0; i < c.cycle.size(); ++i) {
    auto const next = red.rho({c.cycle[i], IntMatrix::identity(2)}).form;
    if (!(next == c.cycle[(i + 1) % c.cycle.size()])) return false;
  }
  std::set<BinaryForm> const members(c.cycle.begin(), c.cycle.end());
  if (members.size() != c.cycle.size()) return false;
  if (!members.count(red.reduce(*f).form)) return false;

  std::size_t next_entry = 0;
  for (Int k = 1; k * k <= abs(t); ++k) {
    if (t % (k * k) != 0) continue;
    if (next_entry >= c.entries.size()) return false;
    auto const& e = c.entries[next_entry++];
    if (e.scale != k || e.target != t / (k * k)) return false;
    IntVector const roots = discriminant_roots(d, e.target);
    if (roots.size() != e.candidates.size()) return false;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      auto const& [beta, reduced] = e.candidates[i];
      if (beta != roots[i]) return false;
      BinaryForm const cand{e.target, beta,
                            (beta * beta - d) / (4 * e.target)};
      if (!(red.reduce(cand).form == reduced) || members.count(reduced))
        return false;
    }
  }
  return next_entry == c.entries.size();
}

}  // namespace detail

/// Replays a NO certificate for Q(x) = t without searching for witnesses.
/// Malformed or inapplicable certificates give false; never throws.
inline bool verify_certificate(QuadraticForm const& q, Int const& t,
                               Certificate const& cert) {
  try {
    return std::visit([&](auto const& c) { return detail::replay(q, t, c); },
                      cert);
  } catch (...) {
    return false;
  }
}

inline bool verify_certificate(BinaryForm const& f, Int const& t,
                               Certificate const& cert) {
  return verify_certificate(QuadraticForm::from(f), t, cert);
}

inline bool verify_certificate(DiagonalTernaryForm const& f, Int const& t,
                               Certificate const& cert) {
  return verify_certificate(QuadraticForm::from(f), t, cert);
}

/// YES: witness evaluates to the target (and is nonzero for 0).
/// NO: certificate replays.  UNDECIDED: bounds are recorded.
inline bool verify_verdict(QuadraticForm const& q,
                           RepresentationVerdict const& v) {
  try {
    switch (v.kind) {
      case VerdictKind::Yes:
        return v.witness.size() == q.variables() && !is_zero(v.witness) &&
               q(v.witness) == v.target;
      case VerdictKind::No:
        return v.certificate &&
               verify_certificate(q, v.target, *v.certificate);
      case VerdictKind::Undecided:
        return v.bounds.has_value();
    }
  } catch (...) {
  }
  return false;
}

}  // namespace k3lat::qform
