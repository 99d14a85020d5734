#pragma once

#include <stdexcept>

#include "osc/field.hpp"
#include "osc/heisenberg.hpp"
#include "osc/system.hpp"

namespace osc {

/// Thrown by weil_kernel when g - I is singular (g outside the Cayley domain).
struct OutsideDomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Normalized scaling S_a[f](t) = sigma(a) f(a^-1 t), a != 0.
Operator op_scaling(const PrimeField& F, int a);

/// Chirp M_u[f](t) = psi(-(u/2) t^2) f(t).
Operator op_chirp(const PrimeField& F, int u);

/// Unitary DFT F[f](w) = (1/sqrt p) sum_t psi(w t) f(t).
Operator op_fourier(const PrimeField& F);

enum class WeilSource { bruhat, kernel };

struct WeilOperator {
  Operator op;
  WeilSource source = WeilSource::bruhat;
  Sl2 g{};
};

/// Multiply by the unit scalar making the first significant entry (scanning
/// rows, then columns) real positive. Entries below half the max magnitude
/// are not considered significant.
Operator operator_phase_normalize(const Operator& U);

/// rho(g) composed from the Bruhat factors M_{u2} S_a F M_{u1} (or M_u S_a),
/// then phase-normalized. Total on SL2; satisfies the conjugation identity
/// rho(g) pi(v) rho(g)^-1 = pi(g v) exactly, and is multiplicative up to a
/// unit scalar.
WeilOperator weil_bruhat(const PrimeField& F, const Sl2& g);

bool kernel_admissible(const PrimeField& F, const Sl2& g);

/// Phase-space kernel K(g, v) = (1/p) mu(g) psi((1/4) omega(kappa(g) v, v))
/// with kappa(g) = (g+I)(g-I)^-1 and mu(g) = sigma(-det(kappa(g)+I)).
/// Requires g - I invertible.
PhaseSpace weil_kernel_function(const PrimeField& F, const Sl2& g);

/// rho(g) = sum_v K(g, v) pi(v, 0). Exactly multiplicative on the Cayley
/// domain: rho(g) rho(h) = rho(gh) whenever g, h, gh all qualify.
WeilOperator weil_kernel(const PrimeField& F, const Sl2& g);

/// Deviation of the conjugation identity at one plane point:
/// max-entry norm of rho pi(v,0) rho^-1 - pi(g v, 0). rho must be unitary.
double egorov_deviation(const PrimeField& F, const Operator& rho, const Sl2& g,
                        int tau, int w);

/// Max of egorov_deviation over all v in V.
double egorov_max_deviation(const PrimeField& F, const Operator& rho,
                            const Sl2& g);

}  // namespace osc
