#pragma once

#include <string>
#include <vector>

#include "k3lat/integer.hpp"

namespace k3lat {

/// Jacobian elliptic fibration data: Picard number and the component count
/// m_v >= 2 of each reducible fiber.
struct FibrationData {
  long rho = 2;
  std::vector<long> reducible_fiber_component_counts;
  bool has_section = true;
};

/// Shioda's formula rank = rho - 2 - sum (m_v - 1).
inline long mordell_weil_rank(FibrationData const& f) {
  if (!f.has_section) throw Error("Mordell-Weil rank needs a section");
  if (f.rho < 2) throw Error("rho >= 2 violated: rho = " + std::to_string(f.rho));
  long contribution = 0;
  for (long m : f.reducible_fiber_component_counts) {
    if (m < 2)
      throw Error("reducible fiber needs m_v >= 2, got " + std::to_string(m));
    contribution += m - 1;
  }
  if (contribution > f.rho - 2)
    throw Error("sum(m_v - 1) <= rho - 2 violated: " +
                std::to_string(contribution) + " > " +
                std::to_string(f.rho - 2));
  return f.rho - 2 - contribution;
}

/// <P,P> = 4 + 2 (P.O) - correction, the K3 height (chi = 2).
inline Rational height_from_intersection(Int const& p_dot_o,
                                         Rational const& correction = 0) {
  if (p_dot_o < 0) throw Error("(P.O) must be nonnegative");
  return Rational(4 + 2 * p_dot_o) - correction;
}

/// Inverts the height formula.  With correction 0 the height must be an even
/// integer >= 4.
inline Int section_intersection_from_height(Rational const& height,
                                            Rational const& correction = 0) {
  Rational const twice = height + correction - 4;
  if (twice < 0) throw Error("height + correction must be >= 4");
  Rational const d = twice / 2;
  if (boost::multiprecision::denominator(d) != 1)
    throw Error("height + correction must be an even integer");
  return boost::multiprecision::numerator(d);
}

struct PencilClass {
  Int square;
  bool is_pencil = false;
};

/// (C1 + C2)^2 for two (-2)-curves; square 0 is the class of a fiber of
/// type I2 or III (not distinguishable from the lattice).
inline PencilClass pencil_class_from_sections(Int const& c1_sq, Int const& c2_sq,
                                              Int const& c1_dot_c2) {
  if (c1_sq != -2 || c2_sq != -2)
    throw Error("sections on a K3 surface have self-intersection -2");
  Int const sq = c1_sq + c2_sq + 2 * c1_dot_c2;
  return {sq, sq == 0};
}

inline constexpr long max_singular_fibers_bound() { return 24; }

/// Pigeonhole: that many distinct singular fibers C_n + C_{n+1} lie on at
/// least ceil(pairs / 24) distinct pencils.
inline long min_distinct_pencils(long section_pairs) {
  if (section_pairs <= 0) return 0;
  long const b = max_singular_fibers_bound();
  return (section_pairs + b - 1) / b;
}

}  // namespace k3lat
