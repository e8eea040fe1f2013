#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace k3lat {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Int>;

/// Raised for violated preconditions on lattice and form inputs.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Int abs(Int const& x) { return x < 0 ? Int(-x) : x; }

inline int sign(Int const& x) { return x.sign(); }

inline Int gcd(Int const& a, Int const& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

inline Int gcd(IntVector const& values) {
  Int g = 0;
  for (auto const& v : values) g = gcd(g, v);
  return g;
}

/// Floor division and the matching nonnegative remainder for positive m.
inline Int floor_div(Int const& a, Int const& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int mod(Int const& a, Int const& m) {
  Int r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

/// floor(sqrt(n)) for n >= 0.
inline Int isqrt(Int const& n) {
  if (n < 0) throw Error("isqrt of negative number");
  return boost::multiprecision::sqrt(n);
}

inline bool is_square(Int const& n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

inline bool is_prime(Int const& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Int d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// increasing order of prime.
inline std::vector<std::pair<Int, unsigned>> factorize(Int n) {
  std::vector<std::pair<Int, unsigned>> out;
  n = abs(n);
  if (n < 2) return out;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1u);
  return out;
}

/// Positive divisors of n != 0, sorted ascending.
inline IntVector positive_divisors(Int const& n) {
  if (n == 0) throw Error("divisors of zero are unbounded");
  IntVector divs{1};
  for (auto const& [p, e] : factorize(n)) {
    std::size_t const count = divs.size();
    Int pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

/// Largest s with s*s | n, for n != 0.
inline Int square_part_root(Int const& n) {
  Int s = 1;
  for (auto const& [p, e] : factorize(n)) {
    for (unsigned k = 0; k < e / 2; ++k) s *= p;
  }
  return s;
}

inline Int powm(Int const& base, Int const& exp, Int const& m) {
  return boost::multiprecision::powm(mod(base, m), exp, m);
}

/// Legendre symbol (a/p) for an odd prime p, by Euler's criterion.
inline int legendre_symbol(Int const& a, Int const& p) {
  Int r = mod(a, p);
  if (r == 0) return 0;
  Int e = powm(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

inline bool fits_int64(Int const& x) {
  return x >= std::numeric_limits<std::int64_t>::min() &&
         x <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(Int const& x) {
  if (!fits_int64(x)) throw Error("integer does not fit in 64 bits");
  return x.convert_to<std::int64_t>();
}

inline std::string to_string(Int const& x) { return x.str(); }

inline std::string to_string(Rational const& x) {
  auto const num = boost::multiprecision::numerator(x);
  auto const den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Flip the sign of v so that its first nonzero entry is positive.
inline IntVector sign_normalized(IntVector v) {
  for (auto const& x : v) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : v) y = -y;
    }
    break;
  }
  return v;
}

inline IntVector primitive_part(IntVector v) {
  Int g = gcd(v);
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
  return v;
}

inline bool is_zero(IntVector const& v) {
  for (auto const& x : v) {
    if (x != 0) return false;
  }
  return true;
}

}  // namespace k3lat
