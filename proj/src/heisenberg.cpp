#include "osc/heisenberg.hpp"

#include <cmath>

namespace osc {

Heis h_mul(const PrimeField& F, const Heis& h1, const Heis& h2) {
  int zc = F.mul(F.half(), omega(F, h1.tau, h1.w, h2.tau, h2.w));
  return Heis{F.add(h1.tau, h2.tau), F.add(h1.w, h2.w),
              F.add(F.add(h1.z, h2.z), zc)};
}

Heis h_inv(const PrimeField& F, const Heis& h) {
  return Heis{F.neg(h.tau), F.neg(h.w), F.neg(h.z)};
}

Operator heisenberg_operator(const PrimeField& F, const Heis& h) {
  const int p = F.p();
  Operator op = Operator::Zero(p, p);
  int base = F.add(F.mul(F.half(), F.mul(h.tau, h.w)), h.z);
  for (int t = 0; t < p; ++t) {
    int s = F.add(t, h.tau);
    op(t, s) = F.psi(F.add(base, F.mul(h.w, t)));
  }
  return op;
}

Signal apply_heisenberg(const PrimeField& F, const Heis& h, const Signal& f) {
  const int p = F.p();
  Signal out(p);
  int base = F.add(F.mul(F.half(), F.mul(h.tau, h.w)), h.z);
  for (int t = 0; t < p; ++t) {
    out(t) = F.psi(F.add(base, F.mul(h.w, t))) * f(F.add(t, h.tau));
  }
  return out;
}

Signal apply_translate(const PrimeField& F, int tau, int w, const Signal& f) {
  const int p = F.p();
  Signal out(p);
  for (int t = 0; t < p; ++t) {
    out(t) = F.psi(F.mul(w, t)) * f(F.add(t, tau));
  }
  return out;
}

PhaseSpace weyl_transform(const PrimeField& F, const Operator& A) {
  const int p = F.p();
  // Tr(A pi(-v, 0)) collapses to a lagged diagonal sum followed by a DFT
  // over the frequency coordinate.
  PhaseSpace lagged(p, p);  // lagged(tau, u) = A(u - tau, u)
  for (int tau = 0; tau < p; ++tau) {
    for (int u = 0; u < p; ++u) {
      lagged(tau, u) = A(F.sub(u, tau), u);
    }
  }
  Eigen::MatrixXcd dft(p, p);  // dft(u, w) = psi(-u*w)
  for (int u = 0; u < p; ++u) {
    for (int w = 0; w < p; ++w) {
      dft(u, w) = F.psi(-static_cast<long long>(u) * w);
    }
  }
  PhaseSpace out = lagged * dft;
  for (int tau = 0; tau < p; ++tau) {
    for (int w = 0; w < p; ++w) {
      out(tau, w) *= F.psi(F.mul(F.half(), F.mul(tau, w)));
    }
  }
  out /= static_cast<double>(p);
  return out;
}

Operator weyl_inverse(const PrimeField& F, const PhaseSpace& f) {
  const int p = F.p();
  Eigen::MatrixXcd dft(p, p);  // dft(w, k) = psi(w*k)
  for (int w = 0; w < p; ++w) {
    for (int k = 0; k < p; ++k) {
      dft(w, k) = F.psi(static_cast<long long>(w) * k);
    }
  }
  Eigen::MatrixXcd partial = f * dft;  // partial(tau, k) = sum_w f(tau,w) psi(w*k)
  Operator out = Operator::Zero(p, p);
  for (int tau = 0; tau < p; ++tau) {
    for (int t = 0; t < p; ++t) {
      out(t, F.add(t, tau)) += partial(tau, F.add(t, F.mul(F.half(), tau)));
    }
  }
  return out;
}

PhaseSpace twisted_convolution(const PrimeField& F, const PhaseSpace& f,
                               const PhaseSpace& g) {
  const int p = F.p();
  PhaseSpace out = PhaseSpace::Zero(p, p);
  for (int t1 = 0; t1 < p; ++t1) {
    for (int w1 = 0; w1 < p; ++w1) {
      const std::complex<double> fv = f(t1, w1);
      if (fv == 0.0) continue;
      for (int t2 = 0; t2 < p; ++t2) {
        for (int w2 = 0; w2 < p; ++w2) {
          int phase = F.mul(F.half(), omega(F, t1, w1, t2, w2));
          out(F.add(t1, t2), F.add(w1, w2)) += F.psi(phase) * fv * g(t2, w2);
        }
      }
    }
  }
  return out;
}

SignalSystem heisenberg_system(const PrimeField& F) {
  const int p = F.p();
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  SignalSystem sys;
  sys.p = p;
  sys.kind = SystemKind::heisenberg;
  sys.base_kind = SystemKind::heisenberg;
  sys.groups.reserve(p + 1);
  sys.signals.reserve(static_cast<size_t>(p) * (p + 1));

  for (int m = 0; m < p; ++m) {
    GroupInfo line;
    line.kind = GroupKind::line;
    line.slope = m;
    line.order = p;
    sys.groups.push_back(line);
    for (int c = 0; c < p; ++c) {
      LabeledSignal sig;
      sig.group = m;
      sig.index = c;
      sig.values.resize(p);
      const int mh = F.mul(m, F.half());
      for (int t = 0; t < p; ++t) {
        int e = F.sub(F.mul(c, t), F.mul(mh, F.mul(t, t)));
        sig.values(t) = scale * F.psi(e);
      }
      // Eigenvalue of pi(1, m, 0) on this chirp.
      sig.eigenvalue = F.psi(c);
      sys.signals.push_back(std::move(sig));
    }
  }

  GroupInfo vertical;
  vertical.kind = GroupKind::line;
  vertical.slope = p;
  vertical.order = p;
  sys.groups.push_back(vertical);
  for (int a = 0; a < p; ++a) {
    LabeledSignal sig;
    sig.group = p;
    sig.index = a;
    sig.values = Signal::Zero(p);
    sig.values(a) = 1.0;
    sig.eigenvalue = F.psi(a);  // eigenvalue of pi(0, 1, 0)
    sys.signals.push_back(std::move(sig));
  }
  return sys;
}

}  // namespace osc
