#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace osc {

/// Arithmetic in F_p for an odd prime p >= 5. Elements are canonical
/// representatives 0..p-1; every operation reduces eagerly.
///
/// Construction caches the smallest multiplicative generator, the smallest
/// non-square, the quadratic character table and the p-th roots of unity.
class PrimeField {
 public:
  explicit PrimeField(int p);

  int p() const { return p_; }
  int generator() const { return generator_; }
  int nonsquare() const { return nonsquare_; }

  int reduce(long long x) const {
    int r = static_cast<int>(x % p_);
    return r < 0 ? r + p_ : r;
  }
  int add(int a, int b) const { return reduce(static_cast<long long>(a) + b); }
  int sub(int a, int b) const { return reduce(static_cast<long long>(a) - b); }
  int mul(int a, int b) const { return reduce(static_cast<long long>(a) * b); }
  int neg(int a) const { return reduce(-static_cast<long long>(a)); }
  int pow(int a, long long e) const;
  int inv(int a) const;  // a != 0

  int half() const { return half_; }        // 1/2 = (p+1)/2 mod p
  int quarter() const { return quarter_; }  // 1/4 mod p

  /// Legendre character: +1 for nonzero squares, -1 for non-squares, 0 at 0.
  int legendre(int a) const { return legendre_[reduce(a)]; }

  /// psi(t) = exp(2*pi*i*t/p).
  std::complex<double> psi(long long t) const { return roots_[reduce(t)]; }

 private:
  int p_;
  int generator_;
  int nonsquare_;
  int half_;
  int quarter_;
  std::vector<std::int8_t> legendre_;
  std::vector<std::complex<double>> roots_;
};

/// Element of SL2(F_p), row-major [[a, b], [c, d]] with a*d - b*c = 1.
struct Sl2 {
  int a = 1, b = 0, c = 0, d = 1;
  friend bool operator==(const Sl2&, const Sl2&) = default;
  friend auto operator<=>(const Sl2&, const Sl2&) = default;
};

Sl2 sl2_make(const PrimeField& F, long long a, long long b, long long c,
             long long d);
Sl2 sl2_mul(const PrimeField& F, const Sl2& g1, const Sl2& g2);
Sl2 sl2_inv(const PrimeField& F, const Sl2& g);
Sl2 sl2_pow(const PrimeField& F, const Sl2& g, long long e);
int sl2_order(const PrimeField& F, const Sl2& g);

/// Action on the time-frequency plane: column vector (tau, w) -> g * (tau, w).
std::array<int, 2> sl2_apply(const PrimeField& F, const Sl2& g, int tau, int w);

/// The Weyl element w = [[0, 1], [-1, 0]].
Sl2 weyl_element(const PrimeField& F);

/// All of SL2(F_p) in lexicographic (a, b, c, d) order.
std::vector<Sl2> sl2_elements(const PrimeField& F);

/// Bruhat factorization over the lower-triangular Borel UA, with
/// U = [[1,0],[u,1]] and A = diag(a, a^-1):
///   b == 0 (torus-unipotent):  g = U(u2) * diag(a, a^-1)
///   b != 0 (big cell):         g = U(u2) * diag(a, a^-1) * w * U(u1)
struct BruhatForm {
  bool big_cell = false;
  int u2 = 0;
  int a = 1;
  int u1 = 0;
  friend bool operator==(const BruhatForm&, const BruhatForm&) = default;
};

BruhatForm bruhat_decompose(const PrimeField& F, const Sl2& g);
Sl2 bruhat_recompose(const PrimeField& F, const BruhatForm& form);

}  // namespace osc
