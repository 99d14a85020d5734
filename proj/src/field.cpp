#include "osc/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace osc {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int d = 2; static_cast<long long>(d) * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

PrimeField::PrimeField(int p) : p_(p) {
  if (p < 5 || p % 2 == 0 || !is_prime(p)) {
    throw std::invalid_argument("PrimeField: p must be an odd prime >= 5, got " +
                                std::to_string(p));
  }
  half_ = (p + 1) / 2;
  quarter_ = static_cast<int>((static_cast<long long>(half_) * half_) % p);

  legendre_.assign(p, -1);
  legendre_[0] = 0;
  for (long long x = 1; x < p; ++x) legendre_[(x * x) % p] = 1;

  const auto factors = prime_factors(p - 1);
  generator_ = 0;
  for (int g = 2; g < p; ++g) {
    bool full_order = true;
    for (int f : factors) {
      if (pow(g, (p - 1) / f) == 1) {
        full_order = false;
        break;
      }
    }
    if (full_order) {
      generator_ = g;
      break;
    }
  }

  nonsquare_ = 0;
  for (int a = 2; a < p; ++a) {
    if (legendre_[a] == -1) {
      nonsquare_ = a;
      break;
    }
  }

  roots_.resize(p);
  for (int k = 0; k < p; ++k) {
    roots_[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / p);
  }
}

int PrimeField::pow(int a, long long e) const {
  a = reduce(a);
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  long long base = a, acc = 1;
  while (e > 0) {
    if (e & 1) acc = acc * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<int>(acc);
}

int PrimeField::inv(int a) const {
  a = reduce(a);
  if (a == 0) throw std::invalid_argument("PrimeField::inv: zero element");
  return pow(a, p_ - 2);
}

Sl2 sl2_make(const PrimeField& F, long long a, long long b, long long c,
             long long d) {
  Sl2 g{F.reduce(a), F.reduce(b), F.reduce(c), F.reduce(d)};
  int det = F.sub(F.mul(g.a, g.d), F.mul(g.b, g.c));
  if (det != 1) throw std::invalid_argument("sl2_make: determinant != 1");
  return g;
}

Sl2 sl2_mul(const PrimeField& F, const Sl2& g1, const Sl2& g2) {
  return Sl2{F.add(F.mul(g1.a, g2.a), F.mul(g1.b, g2.c)),
             F.add(F.mul(g1.a, g2.b), F.mul(g1.b, g2.d)),
             F.add(F.mul(g1.c, g2.a), F.mul(g1.d, g2.c)),
             F.add(F.mul(g1.c, g2.b), F.mul(g1.d, g2.d))};
}

Sl2 sl2_inv(const PrimeField& F, const Sl2& g) {
  // Adjugate; det = 1.
  return Sl2{g.d, F.neg(g.b), F.neg(g.c), g.a};
}

Sl2 sl2_pow(const PrimeField& F, const Sl2& g, long long e) {
  Sl2 base = g;
  if (e < 0) {
    base = sl2_inv(F, g);
    e = -e;
  }
  Sl2 acc{};
  while (e > 0) {
    if (e & 1) acc = sl2_mul(F, acc, base);
    base = sl2_mul(F, base, base);
    e >>= 1;
  }
  return acc;
}

int sl2_order(const PrimeField& F, const Sl2& g) {
  Sl2 acc = g;
  const Sl2 id{};
  int n = 1;
  // |SL2(F_p)| = p(p^2-1); element orders are far smaller.
  while (acc != id) {
    acc = sl2_mul(F, acc, g);
    ++n;
  }
  return n;
}

std::array<int, 2> sl2_apply(const PrimeField& F, const Sl2& g, int tau,
                             int w) {
  return {F.add(F.mul(g.a, tau), F.mul(g.b, w)),
          F.add(F.mul(g.c, tau), F.mul(g.d, w))};
}

Sl2 weyl_element(const PrimeField& F) { return Sl2{0, 1, F.neg(1), 0}; }

std::vector<Sl2> sl2_elements(const PrimeField& F) {
  const int p = F.p();
  std::vector<Sl2> out;
  out.reserve(static_cast<size_t>(p) * (p * p - 1));
  for (int a = 0; a < p; ++a) {
    for (int b = 0; b < p; ++b) {
      for (int c = 0; c < p; ++c) {
        if (a != 0) {
          // d determined by ad - bc = 1.
          int d = F.mul(F.inv(a), F.add(1, F.mul(b, c)));
          out.push_back(Sl2{a, b, c, d});
        } else {
          if (F.mul(b, c) != F.reduce(-1)) continue;
          for (int d = 0; d < p; ++d) out.push_back(Sl2{a, b, c, d});
        }
      }
    }
  }
  return out;
}

BruhatForm bruhat_decompose(const PrimeField& F, const Sl2& g) {
  BruhatForm form;
  if (g.b == 0) {
    // Lower triangular: g = U(u2) * diag(a, a^-1) with u2 = c/a.
    form.big_cell = false;
    form.a = g.a;
    form.u2 = F.mul(g.c, F.inv(g.a));
  } else {
    // g = U(d/b) * diag(b, b^-1) * w * U(a/b).
    form.big_cell = true;
    int binv = F.inv(g.b);
    form.u2 = F.mul(g.d, binv);
    form.a = g.b;
    form.u1 = F.mul(g.a, binv);
  }
  return form;
}

Sl2 bruhat_recompose(const PrimeField& F, const BruhatForm& form) {
  Sl2 torus{form.a, 0, 0, F.inv(form.a)};
  Sl2 out = sl2_mul(F, Sl2{1, 0, form.u2, 1}, torus);
  if (form.big_cell) {
    out = sl2_mul(F, out, weyl_element(F));
    out = sl2_mul(F, out, Sl2{1, 0, form.u1, 1});
  }
  return out;
}

}  // namespace osc
