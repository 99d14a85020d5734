#include "osc/oscillator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "osc/weil.hpp"

namespace osc {

namespace {

// Visit SL2(F_p) in lexicographic (a, b, c, d) order; stop when fn returns false.
template <typename Fn>
void for_each_sl2(const PrimeField& F, Fn&& fn) {
  const int p = F.p();
  for (int a = 0; a < p; ++a) {
    for (int b = 0; b < p; ++b) {
      for (int c = 0; c < p; ++c) {
        if (a != 0) {
          int d = F.mul(F.inv(a), F.add(1, F.mul(b, c)));
          if (!fn(Sl2{a, b, c, d})) return;
        } else {
          if (F.mul(b, c) != F.reduce(-1)) continue;
          for (int d = 0; d < p; ++d) {
            if (!fn(Sl2{a, b, c, d})) return;
          }
        }
      }
    }
  }
}

std::vector<int> serialize_torus(const PrimeField& F,
                                 const std::vector<Sl2>& elements,
                                 const Sl2& conj) {
  const Sl2 cinv = sl2_inv(F, conj);
  std::vector<std::array<int, 4>> rows;
  rows.reserve(elements.size());
  for (const auto& e : elements) {
    Sl2 t = sl2_mul(F, conj, sl2_mul(F, e, cinv));
    rows.push_back({t.a, t.b, t.c, t.d});
  }
  std::sort(rows.begin(), rows.end());
  std::vector<int> flat;
  flat.reserve(rows.size() * 4);
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return flat;
}

}  // namespace

EigenDecomposition diagonalize_unitary(const Operator& U, int order,
                                       double tol) {
  const int n = static_cast<int>(U.rows());
  const double unitarity =
      (U * U.adjoint() - Operator::Identity(n, n)).cwiseAbs().maxCoeff();
  if (unitarity > 1e-9) {
    throw std::invalid_argument("diagonalize_unitary: input not unitary (" +
                                std::to_string(unitarity) + ")");
  }

  Eigen::ComplexSchur<Operator> schur(U, /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    throw std::runtime_error("diagonalize_unitary: Schur iteration failed");
  }

  EigenDecomposition dec;
  dec.vectors = schur.matrixU();
  dec.eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) dec.eigenvalues[i] = schur.matrixT()(i, i);

  // Group by argument around the unit circle.
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    return std::arg(dec.eigenvalues[i]) < std::arg(dec.eigenvalues[j]);
  });

  std::vector<std::vector<int>> groups;
  for (int k = 0; k < n; ++k) {
    const int i = idx[k];
    if (!groups.empty() &&
        std::abs(dec.eigenvalues[groups.back().back()] - dec.eigenvalues[i]) <=
            tol) {
      groups.back().push_back(i);
    } else {
      groups.push_back({i});
    }
  }
  // Wraparound: +pi and -pi ends may belong together.
  if (groups.size() >= 2 &&
      std::abs(dec.eigenvalues[groups.back().back()] -
               dec.eigenvalues[groups.front().front()]) <= tol) {
    auto& first = groups.front();
    first.insert(first.begin(), groups.back().begin(), groups.back().end());
    groups.pop_back();
  }

  if (groups.size() >= 2) {
    double gap = 2.0;
    for (std::size_t k = 0; k < groups.size(); ++k) {
      for (std::size_t l = k + 1; l < groups.size(); ++l) {
        for (int i : groups[k]) {
          for (int j : groups[l]) {
            gap = std::min(gap,
                           std::abs(dec.eigenvalues[i] - dec.eigenvalues[j]));
          }
        }
      }
    }
    if (gap < 10.0 * tol) {
      throw ClusterAmbiguityError(
          "diagonalize_unitary: eigenvalue clusters separated by only " +
          std::to_string(gap));
    }
  }

  for (auto& members : groups) {
    std::sort(members.begin(), members.end());
    std::complex<double> mean = 0.0;
    for (int i : members) mean += dec.eigenvalues[i];
    dec.clusters.push_back(EigenCluster{mean / std::abs(mean), members});
  }
  std::sort(dec.clusters.begin(), dec.clusters.end(),
            [](const EigenCluster& x, const EigenCluster& y) {
              return std::arg(x.eigenvalue) < std::arg(y.eigenvalue);
            });

  for (int i = 0; i < n; ++i) {
    double residual =
        (U * dec.vectors.col(i) - dec.eigenvalues[i] * dec.vectors.col(i))
            .norm();
    if (residual > 1e-8) {
      throw std::runtime_error("diagonalize_unitary: eigenresidual " +
                               std::to_string(residual));
    }
  }

  if (order > 0) {
    std::complex<double> common = std::pow(dec.eigenvalues[0], order);
    for (int i = 1; i < n; ++i) {
      if (std::abs(std::pow(dec.eigenvalues[i], order) - common) > 1e-6) {
        throw std::runtime_error(
            "diagonalize_unitary: eigenvalues are not order-" +
            std::to_string(order) + " roots of a common phase");
      }
    }
  }
  return dec;
}

std::vector<Sl2> split_torus_reps(const PrimeField& F) {
  const int p = F.p();
  std::vector<Sl2> reps;
  reps.reserve(static_cast<size_t>(p) * (p + 1) / 2);
  for (int c = 0; c < p; ++c) reps.push_back(Sl2{1, 0, c, 1});
  for (int b = 1; b < p; ++b) {
    for (int c = 0; c < p; ++c) {
      const int pb = F.neg(b);
      const int pc = F.mul(F.add(1, F.mul(b, c)), F.inv(b));
      if (std::pair{b, c} < std::pair{pb, pc}) {
        reps.push_back(Sl2{1, b, c, F.add(1, F.mul(b, c))});
      }
    }
  }
  return reps;
}

Sl2 split_model_generator(const PrimeField& F) {
  return Sl2{F.generator(), 0, 0, F.inv(F.generator())};
}

std::vector<Sl2> nonsplit_model_torus(const PrimeField& F) {
  const int p = F.p();
  const int delta = F.nonsquare();
  std::vector<Sl2> elems;
  for (int a = 0; a < p; ++a) {
    for (int b = 0; b < p; ++b) {
      if (F.sub(F.mul(a, a), F.mul(delta, F.mul(b, b))) == 1) {
        elems.push_back(Sl2{a, F.mul(delta, b), b, a});
      }
    }
  }
  return elems;
}

Sl2 nonsplit_model_generator(const PrimeField& F) {
  const int order = F.p() + 1;
  auto elems = nonsplit_model_torus(F);
  std::sort(elems.begin(), elems.end());
  for (const auto& g : elems) {
    if (sl2_order(F, g) == order) return g;
  }
  throw std::logic_error("nonsplit_model_generator: no generator found");
}

std::vector<GroupInfo> nonsplit_tori(const PrimeField& F, int max_count) {
  const int p = F.p();
  // Conjugates of T_delta deduplicated as subgroups. The normalizer of a
  // non-split torus has order 2(p+1) (it contains the rational inversion
  // [[c, delta*d], [-d, -c]] with c^2 - delta d^2 = -1), so there are
  // |SL2| / 2(p+1) = p(p-1)/2 of them.
  const int total = p * (p - 1) / 2;
  const int target =
      max_count > 0 ? std::min(max_count, total) : total;
  const auto model = nonsplit_model_torus(F);
  const Sl2 model_gen = nonsplit_model_generator(F);

  std::set<std::vector<int>> seen;
  std::vector<GroupInfo> out;
  out.reserve(target);
  auto try_add = [&](const Sl2& g) {
    auto key = serialize_torus(F, model, g);
    if (seen.insert(std::move(key)).second) {
      GroupInfo info;
      info.kind = GroupKind::nonsplit_torus;
      info.conjugator = g;
      info.generator = sl2_mul(F, g, sl2_mul(F, model_gen, sl2_inv(F, g)));
      info.order = p + 1;
      out.push_back(info);
    }
  };

  try_add(Sl2{});  // model torus first
  for_each_sl2(F, [&](const Sl2& g) {
    if (static_cast<int>(out.size()) >= target) return false;
    try_add(g);
    return static_cast<int>(out.size()) < target;
  });
  if (static_cast<int>(out.size()) != target) {
    throw std::logic_error("nonsplit_tori: enumeration found " +
                           std::to_string(out.size()) + " of " +
                           std::to_string(target));
  }
  return out;
}

std::vector<Sl2> torus_elements(const PrimeField& F, const GroupInfo& group) {
  std::vector<Sl2> model;
  if (group.kind == GroupKind::split_torus) {
    for (int a = 1; a < F.p(); ++a) model.push_back(Sl2{a, 0, 0, F.inv(a)});
  } else if (group.kind == GroupKind::nonsplit_torus) {
    model = nonsplit_model_torus(F);
  } else {
    throw std::invalid_argument("torus_elements: group is not a torus");
  }
  const Sl2 cinv = sl2_inv(F, group.conjugator);
  for (auto& e : model) {
    e = sl2_mul(F, group.conjugator, sl2_mul(F, e, cinv));
  }
  return model;
}

Signal phase_normalize(const Signal& s) {
  const double max_abs = s.cwiseAbs().maxCoeff();
  if (max_abs == 0.0) {
    throw std::invalid_argument("phase_normalize: zero signal");
  }
  for (int i = 0; i < s.size(); ++i) {
    if (std::abs(s(i)) >= 0.5 * max_abs) {
      return (std::abs(s(i)) / s(i)) * s;
    }
  }
  return s;  // unreachable
}

namespace {

// Eigenbasis of the model torus operator: phase-normalized columns sorted by
// eigenvalue argument, excluding the quadratic-character cluster for split.
Operator model_basis(const PrimeField& F, SystemKind kind) {
  const int p = F.p();
  const bool split = kind == SystemKind::split;
  const Sl2 gen =
      split ? split_model_generator(F) : nonsplit_model_generator(F);
  const auto dec =
      diagonalize_unitary(weil_bruhat(F, gen).op, split ? p - 1 : p + 1);

  std::vector<int> keep;
  if (split) {
    int doubles = 0;
    for (const auto& cl : dec.clusters) {
      if (cl.members.size() == 2) {
        ++doubles;
      } else if (cl.members.size() == 1) {
        keep.push_back(cl.members.front());
      } else {
        throw std::runtime_error("build_system: unexpected cluster of size " +
                                 std::to_string(cl.members.size()));
      }
    }
    if (doubles != 1 || static_cast<int>(keep.size()) != p - 2) {
      throw std::runtime_error(
          "build_system: split spectrum lacks the expected single "
          "2-dimensional cluster");
    }
  } else {
    for (const auto& cl : dec.clusters) {
      if (cl.members.size() != 1) {
        throw std::runtime_error(
            "build_system: non-split spectrum must be simple");
      }
      keep.push_back(cl.members.front());
    }
  }

  Operator basis(p, static_cast<int>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i) {
    basis.col(static_cast<int>(i)) = phase_normalize(dec.vectors.col(keep[i]));
  }
  return basis;
}

}  // namespace

SignalSystem build_system(const PrimeField& F, SystemKind kind,
                          int max_tori) {
  if (kind == SystemKind::heisenberg || kind == SystemKind::extended) {
    throw std::invalid_argument("build_system: kind must be split or nonsplit");
  }
  const int p = F.p();
  const bool split = kind == SystemKind::split;

  SignalSystem sys;
  sys.p = p;
  sys.kind = kind;
  sys.base_kind = kind;

  if (split) {
    auto reps = split_torus_reps(F);
    if (max_tori > 0 && static_cast<int>(reps.size()) > max_tori) {
      reps.resize(max_tori);
    }
    const Sl2 ga = split_model_generator(F);
    for (const auto& g : reps) {
      GroupInfo info;
      info.kind = GroupKind::split_torus;
      info.conjugator = g;
      info.generator = sl2_mul(F, g, sl2_mul(F, ga, sl2_inv(F, g)));
      info.order = p - 1;
      sys.groups.push_back(info);
    }
  } else {
    sys.groups = nonsplit_tori(F, max_tori);
  }

  const Operator basis = model_basis(F, kind);
  const int per_torus = static_cast<int>(basis.cols());
  sys.signals.reserve(sys.groups.size() * per_torus);

  for (size_t ti = 0; ti < sys.groups.size(); ++ti) {
    const GroupInfo& group = sys.groups[ti];
    const Operator mapped = weil_bruhat(F, group.conjugator).op * basis;
    const Operator gen_op = weil_bruhat(F, group.generator).op;
    const Operator images = gen_op * mapped;
    for (int i = 0; i < per_torus; ++i) {
      LabeledSignal sig;
      sig.group = static_cast<int>(ti);
      sig.index = i;
      sig.values = mapped.col(i);
      sig.eigenvalue = sig.values.dot(images.col(i));
      const double residual =
          (images.col(i) - sig.eigenvalue * sig.values).norm();
      if (residual > 1e-8) {
        throw std::runtime_error("build_system: eigenresidual " +
                                 std::to_string(residual) + " for torus " +
                                 std::to_string(ti));
      }
      sys.signals.push_back(std::move(sig));
    }
  }
  return sys;
}

SignalSystem extended_system(const PrimeField& F, const SignalSystem& base) {
  if (base.kind == SystemKind::extended) {
    throw std::invalid_argument("extended_system: input is already extended");
  }
  const int p = F.p();
  SignalSystem sys;
  sys.p = p;
  sys.kind = SystemKind::extended;
  sys.base_kind = base.kind;
  sys.groups = base.groups;
  sys.signals.reserve(base.signals.size() * p * p);
  for (const auto& sig : base.signals) {
    for (int tau = 0; tau < p; ++tau) {
      for (int w = 0; w < p; ++w) {
        LabeledSignal out;
        out.group = sig.group;
        out.index = sig.index;
        out.tau = tau;
        out.w = w;
        out.eigenvalue = sig.eigenvalue;
        out.values = apply_translate(F, tau, w, sig.values);
        sys.signals.push_back(std::move(out));
      }
    }
  }
  return sys;
}

}  // namespace osc
