#pragma once

#include "osc/field.hpp"
#include "osc/system.hpp"

namespace osc {

/// Element (tau, w, z) of the Heisenberg group H = V x F_p.
struct Heis {
  int tau = 0, w = 0, z = 0;
  friend bool operator==(const Heis&, const Heis&) = default;
};

/// Symplectic form omega((tau,w),(tau',w')) = tau*w' - tau'*w.
inline int omega(const PrimeField& F, int tau1, int w1, int tau2, int w2) {
  return F.sub(F.mul(tau1, w2), F.mul(tau2, w1));
}

/// Group law (v,z)(v',z') = (v+v', z+z'+ (1/2) omega(v,v')).
Heis h_mul(const PrimeField& F, const Heis& h1, const Heis& h2);
Heis h_inv(const PrimeField& F, const Heis& h);

/// Heisenberg representation: [pi(tau,w,z) f](t) = psi(tau*w/2 + z + w*t) f(t+tau).
/// Exactly multiplicative: pi(h1) pi(h2) = pi(h1 h2).
Operator heisenberg_operator(const PrimeField& F, const Heis& h);

/// pi(h) applied to a vector in O(p).
Signal apply_heisenberg(const PrimeField& F, const Heis& h, const Signal& f);

/// Plain distortion M_w L_tau (no central phase): t -> psi(w*t) f(t+tau).
Signal apply_translate(const PrimeField& F, int tau, int w, const Signal& f);

/// Weyl transform W_A(v) = (1/p) Tr(A pi((v,0)^-1)) on the V-grid.
PhaseSpace weyl_transform(const PrimeField& F, const Operator& A);

/// Left inverse Pi(f) = sum_v f(v) pi(v, 0); Pi(W_A) = A.
Operator weyl_inverse(const PrimeField& F, const PhaseSpace& f);

/// Twisted convolution on C(V): intertwines operator composition,
/// W_{A o B} = W_A * W_B.
PhaseSpace twisted_convolution(const PrimeField& F, const PhaseSpace& f,
                               const PhaseSpace& g);

/// The chirp system S_H: one orthonormal basis per line through the origin
/// of V. Line L_m = {(tau, m*tau)} carries the chirps
///   phi_c(t) = psi(-(m/2) t^2 + c t) / sqrt(p),
/// the vertical line W = {(0, w)} carries the delta basis. Each signal is an
/// eigenvector of pi restricted to its line.
SignalSystem heisenberg_system(const PrimeField& F);

}  // namespace osc
