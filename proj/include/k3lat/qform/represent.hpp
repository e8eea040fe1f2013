#pragma once

#include <cmath>
#include <cstddef>
#include <optional>

#include "k3lat/integer.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/qform/binary.hpp"
#include "k3lat/qform/certificate.hpp"
#include "k3lat/qform/forms.hpp"
#include "k3lat/qform/sieve.hpp"
#include "k3lat/qform/ternary.hpp"

namespace k3lat::qform {

/// Form evaluations spent on the generic box search.
inline constexpr double kGenericSearchBudget = 200000;

namespace detail {

// Basis vectors, then e_i +- e_j, then the largest cube within budget.
inline std::optional<IntVector> generic_witness(QuadraticForm const& q,
                                                Int const& t,
                                                Int const& search_bound) {
  std::size_t const n = q.variables();
  for (std::size_t i = 0; i < n; ++i) {
    IntVector x(n);
    x[i] = 1;
    if (q(x) == t) return x;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (int s : {1, -1}) {
        IntVector x(n);
        x[i] = 1;
        x[j] = s;
        if (q(x) == t) return x;
      }
  if (n == 0) return std::nullopt;
  auto radius = static_cast<long>(
      (std::pow(kGenericSearchBudget, 1.0 / static_cast<double>(n)) - 1) / 2);
  Int r = radius;
  if (r > search_bound) r = search_bound;
  if (r < 1) return std::nullopt;
  return search_box(q, t, IntVector(n, r));
}

}  // namespace detail

/// Decides Q(x) = t for any integral form.  Binary and diagonal ternary
/// forms use their complete deciders; other shapes get divisibility, sign,
/// a bounded witness search, the sieve ladder and (definite) box
/// enumeration, and are UNDECIDED past that.
inline RepresentationVerdict represents(QuadraticForm const& q, Int const& t,
                                        SearchOptions const& options = {}) {
  if (auto f = q.as_binary()) {
    if (!f->is_zero() && (t == 0 || f->disc() != 0))
      return binary_represents(*f, t, options);
  }
  if (auto f = q.as_diagonal_ternary()) {
    if (f->d1 != 0 && f->d2 != 0 && f->d3 != 0)
      return ternary_represents(*f, t, options);
  }
  if (q.variables() == 0)
    throw Error("cannot decide representations by the zero-rank form");

  int const def = q.definiteness();
  if (t == 0 && def != 0)
    return RepresentationVerdict::no(t, DefiniteCertificate{def});
  if (t != 0) {
    if (auto cert = divisibility_certificate(q, t))
      return RepresentationVerdict::no(t, *cert);
    if (def != 0 && sign(t) != def)
      return RepresentationVerdict::no(t, DefiniteCertificate{def});
  }
  if (auto w = detail::generic_witness(q, t, options.search_bound))
    return RepresentationVerdict::yes(t, *w);
  if (t != 0) {
    if (auto m = find_sieve_modulus(q, t, options))
      return RepresentationVerdict::no(t, SieveCertificate{*m});
  }
  if (def != 0) {
    auto const bounds = *definite_box_bounds(q, t);
    bool fits = box_size(bounds) <= Int(kMaxSieveTuples);
    for (auto const& b : bounds) fits = fits && b <= options.search_bound;
    if (fits) {
      if (auto w = search_box(q, t, bounds))
        return RepresentationVerdict::yes(t, *w);
      return RepresentationVerdict::no(t, DefiniteBoxCertificate{bounds});
    }
  }
  return RepresentationVerdict::undecided(
      t, options.bounds("general form: no complete decider for rank " +
                        std::to_string(q.variables()) +
                        (q.is_diagonal() ? "" : " non-diagonal")));
}

inline RepresentationVerdict represents(GramLattice const& l, Int const& t,
                                        SearchOptions const& options = {}) {
  return represents(QuadraticForm::from_lattice(l), t, options);
}

}  // namespace k3lat::qform
