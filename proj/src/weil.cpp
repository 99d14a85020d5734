#include "osc/weil.hpp"

#include <cmath>
#include <string>

namespace osc {

Operator op_scaling(const PrimeField& F, int a) {
  a = F.reduce(a);
  if (a == 0) throw std::invalid_argument("op_scaling: a must be nonzero");
  const int p = F.p();
  const double sign = F.legendre(a);
  const int ainv = F.inv(a);
  Operator op = Operator::Zero(p, p);
  for (int t = 0; t < p; ++t) {
    op(t, F.mul(ainv, t)) = sign;
  }
  return op;
}

Operator op_chirp(const PrimeField& F, int u) {
  const int p = F.p();
  const int uh = F.mul(F.reduce(u), F.half());
  Operator op = Operator::Zero(p, p);
  for (int t = 0; t < p; ++t) {
    op(t, t) = F.psi(F.neg(F.mul(uh, F.mul(t, t))));
  }
  return op;
}

Operator op_fourier(const PrimeField& F) {
  const int p = F.p();
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  Operator op(p, p);
  for (int w = 0; w < p; ++w) {
    for (int t = 0; t < p; ++t) {
      op(w, t) = scale * F.psi(F.mul(w, t));
    }
  }
  return op;
}

Operator operator_phase_normalize(const Operator& U) {
  const double max_abs = U.cwiseAbs().maxCoeff();
  if (max_abs == 0.0) {
    throw std::invalid_argument("operator_phase_normalize: zero operator");
  }
  for (int r = 0; r < U.rows(); ++r) {
    for (int c = 0; c < U.cols(); ++c) {
      if (std::abs(U(r, c)) >= 0.5 * max_abs) {
        return (std::abs(U(r, c)) / U(r, c)) * U;
      }
    }
  }
  return U;  // unreachable
}

WeilOperator weil_bruhat(const PrimeField& F, const Sl2& g) {
  const int p = F.p();
  const BruhatForm form = bruhat_decompose(F, g);
  Operator op;
  if (!form.big_cell) {
    // M_{u2} S_a : signed permutation with chirp phases.
    op = Operator::Zero(p, p);
    const double sign = F.legendre(form.a);
    const int ainv = F.inv(form.a);
    const int u2h = F.mul(form.u2, F.half());
    for (int t = 0; t < p; ++t) {
      op(t, F.mul(ainv, t)) =
          sign * F.psi(F.neg(F.mul(u2h, F.mul(t, t))));
    }
  } else {
    // M_{u2} S_a F M_{u1} : dense entry formula
    // sigma(a)/sqrt(p) * psi(-(u2/2) t^2 + (a^-1 t) s - (u1/2) s^2).
    op.resize(p, p);
    const double scale = F.legendre(form.a) / std::sqrt(static_cast<double>(p));
    const int ainv = F.inv(form.a);
    const int u2h = F.mul(form.u2, F.half());
    const int u1h = F.mul(form.u1, F.half());
    for (int t = 0; t < p; ++t) {
      const int row_quad = F.neg(F.mul(u2h, F.mul(t, t)));
      const int at = F.mul(ainv, t);
      for (int s = 0; s < p; ++s) {
        int e = F.add(row_quad,
                      F.sub(F.mul(at, s), F.mul(u1h, F.mul(s, s))));
        op(t, s) = scale * F.psi(e);
      }
    }
  }
  return WeilOperator{operator_phase_normalize(op), WeilSource::bruhat, g};
}

bool kernel_admissible(const PrimeField& F, const Sl2& g) {
  // det(g - I) = 2 - tr(g).
  return F.sub(2, F.add(g.a, g.d)) != 0;
}

PhaseSpace weil_kernel_function(const PrimeField& F, const Sl2& g) {
  if (!kernel_admissible(F, g)) {
    throw OutsideDomainError("weil_kernel: g - I is singular");
  }
  const int p = F.p();
  // kappa(g) = (g + I)(g - I)^-1.
  const int det = F.sub(2, F.add(g.a, g.d));
  const int dinv = F.inv(det);
  // (g - I)^-1 = adj(g - I) / det.
  const int ka = F.mul(dinv, F.sub(g.d, 1));
  const int kb = F.mul(dinv, F.neg(g.b));
  const int kc = F.mul(dinv, F.neg(g.c));
  const int kd = F.mul(dinv, F.sub(g.a, 1));
  const int ga = F.add(g.a, 1), gd = F.add(g.d, 1);
  const int m11 = F.add(F.mul(ga, ka), F.mul(g.b, kc));
  const int m12 = F.add(F.mul(ga, kb), F.mul(g.b, kd));
  const int m21 = F.add(F.mul(g.c, ka), F.mul(gd, kc));
  const int m22 = F.add(F.mul(g.c, kb), F.mul(gd, kd));

  // mu(g) = sigma(-det(kappa + I)).
  const int kdet =
      F.sub(F.mul(F.add(m11, 1), F.add(m22, 1)), F.mul(m12, m21));
  const double mu = F.legendre(F.neg(kdet));

  PhaseSpace K(p, p);
  const double scale = mu / static_cast<double>(p);
  for (int tau = 0; tau < p; ++tau) {
    for (int w = 0; w < p; ++w) {
      const int kt = F.add(F.mul(m11, tau), F.mul(m12, w));
      const int kw = F.add(F.mul(m21, tau), F.mul(m22, w));
      K(tau, w) = scale * F.psi(F.mul(F.quarter(), omega(F, kt, kw, tau, w)));
    }
  }
  return K;
}

WeilOperator weil_kernel(const PrimeField& F, const Sl2& g) {
  return WeilOperator{weyl_inverse(F, weil_kernel_function(F, g)),
                      WeilSource::kernel, g};
}

double egorov_deviation(const PrimeField& F, const Operator& rho, const Sl2& g,
                        int tau, int w) {
  const auto gv = sl2_apply(F, g, tau, w);
  Operator lhs =
      rho * heisenberg_operator(F, Heis{tau, w, 0}) * rho.adjoint();
  Operator rhs = heisenberg_operator(F, Heis{gv[0], gv[1], 0});
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double egorov_max_deviation(const PrimeField& F, const Operator& rho,
                            const Sl2& g) {
  double worst = 0.0;
  for (int tau = 0; tau < F.p(); ++tau) {
    for (int w = 0; w < F.p(); ++w) {
      worst = std::max(worst, egorov_deviation(F, rho, g, tau, w));
    }
  }
  return worst;
}

}  // namespace osc
