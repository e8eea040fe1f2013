#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "k3lat/integer.hpp"
#include "k3lat/matrix.hpp"
#include "k3lat/qform/certificate.hpp"
#include "k3lat/qform/forms.hpp"

namespace k3lat::qform {

/// Largest residue box M^n the sieve will enumerate.
inline constexpr std::uint64_t kMaxSieveTuples = std::uint64_t{1} << 22;

/// True iff Q(x) != t (mod M) for every residue tuple x.  Coefficients are
/// reduced mod M first, so the enumeration runs on machine words exactly.
inline bool sieve_excludes(QuadraticForm const& q, Int const& t,
                           Int const& modulus) {
  if (modulus < 2 || modulus > 1 << 20) return false;
  std::size_t const n = q.variables();
  std::uint64_t const m = modulus.convert_to<std::uint64_t>();
  std::uint64_t tuples = 1;
  for (std::size_t i = 0; i < n; ++i) {
    tuples *= m;
    if (tuples > kMaxSieveTuples) return false;
  }
  std::vector<std::vector<std::uint64_t>> c(n, std::vector<std::uint64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      c[i][j] = mod(q.coefficient(i, j), modulus).convert_to<std::uint64_t>();
  std::uint64_t const target = mod(t, modulus).convert_to<std::uint64_t>();
  std::vector<std::uint64_t> x(n, 0);
  for (std::uint64_t k = 0; k < tuples; ++k) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = i; j < n; ++j)
        v = (v + c[i][j] * x[i] % m * x[j]) % m;
    }
    if (v == target) return false;
    for (std::size_t i = 0; i < n; ++i) {
      if (++x[i] < m) break;
      x[i] = 0;
    }
  }
  return true;
}

/// First ladder modulus whose residues exclude t.
inline std::optional<Int> find_sieve_modulus(QuadraticForm const& q,
                                             Int const& t,
                                             SearchOptions const& options) {
  for (auto const& m : options.sieve_moduli)
    if (sieve_excludes(q, t, m)) return m;
  return std::nullopt;
}

/// DIVISIBILITY applies when the content does not divide t.
inline std::optional<DivisibilityCertificate> divisibility_certificate(
    QuadraticForm const& q, Int const& t) {
  Int const g = q.content();
  if (g > 1 && t % g != 0) return DivisibilityCertificate{g};
  return std::nullopt;
}

/// For a definite form and |t| > 0 of the matching sign: bounds B_i with
/// |x_i| <= B_i whenever Q(x) = t.  With Q(x) = x^T G x, the maximum of x_i^2
/// on {Q = |t|} is |t| (G^{-1})_ii, and G^{-1} = 2 H^{-1}.
inline std::optional<IntVector> definite_box_bounds(QuadraticForm const& q,
                                                    Int const& t) {
  int const def = q.definiteness();
  if (def == 0 || t == 0 || sign(t) != def) return std::nullopt;
  auto const h_inv = inverse(to_rational(q.hessian()));
  IntVector bounds;
  for (std::size_t i = 0; i < q.variables(); ++i) {
    Rational r = Rational(abs(t)) * 2 * (*h_inv)(i, i);
    if (r < 0) r = -r;
    Int const fl = boost::multiprecision::numerator(r) /
                   boost::multiprecision::denominator(r);
    bounds.push_back(isqrt(fl));
  }
  return bounds;
}

inline Int box_size(IntVector const& bounds) {
  Int size = 1;
  for (auto const& b : bounds) size *= 2 * b + 1;
  return size;
}

/// Scans the box |x_i| <= bounds[i] in odometer order for Q(x) = t,
/// skipping x = 0.
inline std::optional<IntVector> search_box(QuadraticForm const& q,
                                           Int const& t,
                                           IntVector const& bounds) {
  std::size_t const n = q.variables();
  IntVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -bounds[i];
  if (n == 0) return std::nullopt;
  for (;;) {
    if (!is_zero(x) && q(x) == t) return x;
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++x[i] <= bounds[i]) break;
      x[i] = -bounds[i];
    }
    if (i == n) return std::nullopt;
  }
}

}  // namespace k3lat::qform
