#pragma once

#include <random>

#include "supermatrix.hpp"

namespace hcsuper {

/// Seeded source of small exact random values for property checks.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// p/q with |p| <= span, 1 <= q <= den.
  Rational rational(long span = 3, long den = 3) {
    Rational r(integer(-span, span), integer(1, den));
    r.canonicalize();
    return r;
  }

  /// Sparse element of Q(zeta); `real_only` keeps it rational.
  Cyclo cyclo(bool real_only = false) {
    if (real_only) return Cyclo(rational());
    Cyclo c;
    Cyclo::Coeffs k;
    for (auto& x : k) x = coin() ? rational() : Rational(0);
    return Cyclo(k);
  }

  Cyclo gaussian() { return Cyclo(rational(), 0, rational(), 0); }

  /// Random homogeneous Grassmann element; `body` adds a nonzero scalar part when even.
  Grassmann grassmann(int gens, int parity, bool with_body, bool rational_coeffs = true) {
    Grassmann g(gens);
    const Mask full = (gens >= 32) ? ~Mask{0} : ((Mask{1} << gens) - 1);
    for (Mask m = 1; m <= full && m != 0; ++m) {
      if ((std::popcount(m) & 1) != parity) continue;
      if (integer(0, 2) != 0) continue;
      g.add_term(m, rational_coeffs ? Cyclo(rational()) : cyclo());
    }
    if (parity == 0 && with_body) {
      Rational b = rational();
      while (b == 0) b = rational();
      g.add_term(0, Cyclo(b));
    }
    return g;
  }

  /// Even supermatrix; diagonal-block bodies are invertible when `invertible` is set.
  GMatrix even_supermatrix(BlockShape shape, int gens, bool invertible = true) {
    GMatrix a(shape, Grassmann(gens));
    for (;;) {
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
          const int par = (shape.is_odd(i) ? 1 : 0) ^ (shape.is_odd(j) ? 1 : 0);
          a(i, j) = grassmann(gens, par, par == 0 && coin());
        }
      if (!invertible) return a;
      const auto p = body_matrix(a.block(0, 0)), s = body_matrix(a.block(1, 1));
      const bool ok = (p.rows() == 0 || !is_zero(determinant(p))) && (s.rows() == 0 || !is_zero(determinant(s)));
      if (ok) return a;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace hcsuper
