#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "k3lat/integer.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/matrix.hpp"

namespace k3lat::qform {

/// Binary form a x^2 + b x y + c y^2.
struct BinaryForm {
  Int a = 0;
  Int b = 0;
  Int c = 0;

  Int disc() const { return b * b - 4 * a * c; }
  Int operator()(Int const& x, Int const& y) const {
    return a * x * x + b * x * y + c * y * y;
  }
  bool is_zero() const { return a == 0 && b == 0 && c == 0; }
  friend bool operator==(BinaryForm const&, BinaryForm const&) = default;
  friend bool operator<(BinaryForm const& l, BinaryForm const& r) {
    if (l.a != r.a) return l.a < r.a;
    if (l.b != r.b) return l.b < r.b;
    return l.c < r.c;
  }
};

/// Diagonal ternary form d1 x^2 + d2 y^2 + d3 z^2.
struct DiagonalTernaryForm {
  Int d1 = 0;
  Int d2 = 0;
  Int d3 = 0;

  IntVector coefficients() const { return {d1, d2, d3}; }
  Int operator()(Int const& x, Int const& y, Int const& z) const {
    return d1 * x * x + d2 * y * y + d3 * z * z;
  }
  friend bool operator==(DiagonalTernaryForm const&,
                         DiagonalTernaryForm const&) = default;
};

/// A general integral quadratic form sum_{i<=j} q_ij x_i x_j.  Only the upper
/// triangle of `coeff` is used.
class QuadraticForm {
 public:
  QuadraticForm() = default;
  explicit QuadraticForm(IntMatrix upper) : coeff_(std::move(upper)) {
    if (!coeff_.is_square()) throw Error("quadratic form needs a square array");
    for (std::size_t i = 0; i < coeff_.rows(); ++i)
      for (std::size_t j = 0; j < i; ++j) coeff_(i, j) = 0;
  }

  /// x^T G x for an integral symmetric G.
  static QuadraticForm from_gram(IntMatrix const& gram) {
    if (!gram.is_symmetric()) throw Error("Gram matrix must be symmetric");
    IntMatrix q(gram.rows(), gram.cols());
    for (std::size_t i = 0; i < gram.rows(); ++i) {
      q(i, i) = gram(i, i);
      for (std::size_t j = i + 1; j < gram.cols(); ++j) q(i, j) = 2 * gram(i, j);
    }
    return QuadraticForm(std::move(q));
  }
  static QuadraticForm from_lattice(GramLattice const& l) {
    return from_gram(l.gram());
  }
  static QuadraticForm from(BinaryForm const& f) {
    return QuadraticForm(IntMatrix{{f.a, f.b}, {0, f.c}});
  }
  static QuadraticForm from(DiagonalTernaryForm const& f) {
    return QuadraticForm(
        IntMatrix{{f.d1, 0, 0}, {0, f.d2, 0}, {0, 0, f.d3}});
  }

  std::size_t variables() const { return coeff_.rows(); }
  Int const& coefficient(std::size_t i, std::size_t j) const {
    return coeff_(i, j);
  }
  IntMatrix const& coefficients() const { return coeff_; }

  Int operator()(IntVector const& x) const {
    if (x.size() != variables()) throw Error("argument length mismatch");
    Int v = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = i; j < x.size(); ++j) v += coeff_(i, j) * x[i] * x[j];
    }
    return v;
  }

  /// gcd of all coefficients, which is also the gcd of all values.
  Int content() const {
    Int g = 0;
    for (std::size_t i = 0; i < variables(); ++i)
      for (std::size_t j = i; j < variables(); ++j) g = gcd(g, coeff_(i, j));
    return g;
  }

  /// Symmetric matrix H with x^T H x = 2 Q(x).
  IntMatrix hessian() const {
    std::size_t const n = variables();
    IntMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      h(i, i) = 2 * coeff_(i, i);
      for (std::size_t j = i + 1; j < n; ++j) {
        h(i, j) = coeff_(i, j);
        h(j, i) = coeff_(i, j);
      }
    }
    return h;
  }

  Int disc() const { return determinant(hessian()); }

  bool is_diagonal() const { return coeff_.is_diagonal(); }

  std::optional<BinaryForm> as_binary() const {
    if (variables() != 2) return std::nullopt;
    return BinaryForm{coeff_(0, 0), coeff_(0, 1), coeff_(1, 1)};
  }
  std::optional<DiagonalTernaryForm> as_diagonal_ternary() const {
    if (variables() != 3 || !is_diagonal()) return std::nullopt;
    return DiagonalTernaryForm{coeff_(0, 0), coeff_(1, 1), coeff_(2, 2)};
  }

  /// +1 positive definite, -1 negative definite, 0 otherwise.
  int definiteness() const {
    auto const sig = signature(GramLattice(hessian()));
    if (sig.positive == variables()) return 1;
    if (sig.negative == variables()) return -1;
    return 0;
  }

  friend bool operator==(QuadraticForm const&, QuadraticForm const&) = default;

 private:
  IntMatrix coeff_;
};

}  // namespace k3lat::qform
