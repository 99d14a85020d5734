#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "osc/oscillator.hpp"
#include "osc/weil.hpp"

using namespace osc;

namespace {

std::set<std::vector<int>> element_set(const PrimeField& F,
                                       const std::vector<Sl2>& elems) {
  std::set<std::vector<int>> out;
  for (const auto& e : elems) out.insert({e.a, e.b, e.c, e.d});
  return out;
}

std::vector<Sl2> conjugate_all(const PrimeField& F, const std::vector<Sl2>& t,
                               const Sl2& g) {
  std::vector<Sl2> out;
  const Sl2 ginv = sl2_inv(F, g);
  for (const auto& e : t) out.push_back(sl2_mul(F, g, sl2_mul(F, e, ginv)));
  return out;
}

std::vector<Sl2> diag_torus(const PrimeField& F) {
  std::vector<Sl2> out;
  for (int a = 1; a < F.p(); ++a) out.push_back(Sl2{a, 0, 0, F.inv(a)});
  return out;
}

}  // namespace

TEST_CASE("split torus representatives") {
  PrimeField F(5);
  auto reps = split_torus_reps(F);
  CHECK(reps.size() == 15);  // p(p+1)/2
  CHECK(reps[0] == Sl2{});   // b = 0, c = 0 is the standard torus itself

  // Paired representatives conjugate A to the same element set.
  const auto A = diag_torus(F);
  for (int b = 1; b < 5; ++b) {
    for (int c = 0; c < 5; ++c) {
      const Sl2 g = sl2_make(F, 1, b, c, 1 + b * c);
      const Sl2 partner =
          sl2_make(F, 1, F.neg(b), F.mul(F.add(1, F.mul(b, c)), F.inv(b)),
                   1 + F.neg(b) * F.mul(F.add(1, F.mul(b, c)), F.inv(b)));
      CHECK(element_set(F, conjugate_all(F, A, g)) ==
            element_set(F, conjugate_all(F, A, partner)));
    }
  }

  // Distinct representatives give distinct tori; counts at several p.
  for (int p : {5, 7, 13}) {
    PrimeField Fp(p);
    auto r = split_torus_reps(Fp);
    CHECK(r.size() == static_cast<std::size_t>(p * (p + 1) / 2));
    std::set<std::set<std::vector<int>>> tori;
    const auto Ap = diag_torus(Fp);
    for (const auto& g : r) {
      tori.insert(element_set(Fp, conjugate_all(Fp, Ap, g)));
    }
    CHECK(tori.size() == r.size());
  }
}

TEST_CASE("nonsplit model torus") {
  PrimeField F(5);
  auto t = nonsplit_model_torus(F);
  CHECK(t.size() == 6);  // p + 1
  for (const auto& e : t) {
    CHECK(F.sub(F.mul(e.a, e.d), F.mul(e.b, e.c)) == 1);
    for (const auto& f : t) {
      CHECK(sl2_mul(F, e, f) == sl2_mul(F, f, e));
    }
  }

  // p=7, delta=3: brute-force count of a^2 - 3 b^2 = 1 is 8.
  PrimeField F7(7);
  CHECK(F7.nonsquare() == 3);
  int count = 0;
  for (int a = 0; a < 7; ++a) {
    for (int b = 0; b < 7; ++b) {
      if (F7.sub(F7.mul(a, a), F7.mul(3, F7.mul(b, b))) == 1) ++count;
    }
  }
  CHECK(count == 8);
  CHECK(nonsplit_model_torus(F7).size() == 8);

  const Sl2 gen = nonsplit_model_generator(F7);
  CHECK(sl2_order(F7, gen) == 8);
}

TEST_CASE("nonsplit torus enumeration") {
  // Dedup by element set counts subgroups: |SL2| / |normalizer| with the
  // normalizer of order 2(p+1), giving p(p-1)/2 distinct non-split tori.
  for (int p : {5, 7}) {
    PrimeField F(p);
    auto tori = nonsplit_tori(F);
    CHECK(tori.size() == static_cast<std::size_t>(p * (p - 1) / 2));
    CHECK(tori[0].conjugator == Sl2{});
    std::set<std::set<std::vector<int>>> distinct;
    for (const auto& t : tori) {
      auto elems = torus_elements(F, t);
      CHECK(elems.size() == static_cast<std::size_t>(p + 1));
      distinct.insert(element_set(F, elems));
      CHECK(sl2_order(F, t.generator) == p + 1);
    }
    CHECK(distinct.size() == tori.size());
  }

  // Capped enumeration returns the deterministic prefix.
  PrimeField F(13);
  auto capped = nonsplit_tori(F, 4);
  auto full_prefix = nonsplit_tori(F, 8);
  CHECK(capped.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(capped[i].conjugator == full_prefix[i].conjugator);
  }
}

TEST_CASE("torus generators") {
  PrimeField F(5);
  const Sl2 ga = split_model_generator(F);
  CHECK(ga == Sl2{2, 0, 0, 3});
  CHECK(sl2_order(F, ga) == 4);

  const Sl2 gt = nonsplit_model_generator(F);
  CHECK(sl2_order(F, gt) == 6);
  for (int k = 1; k < 6; ++k) {
    CHECK(sl2_pow(F, gt, k) != Sl2{});
  }

  // Conjugation preserves order.
  const Sl2 g = sl2_make(F, 1, 2, 1, 3);
  CHECK(sl2_order(F, sl2_mul(F, g, sl2_mul(F, ga, sl2_inv(F, g)))) == 4);
}

TEST_CASE("diagonalize_unitary on the scaling operator") {
  PrimeField F(5);
  auto dec = diagonalize_unitary(op_scaling(F, 2), 4);

  // Spectrum {1, i, -i, -1} with -1 of multiplicity 2 (the sigma space).
  REQUIRE(dec.clusters.size() == 4);
  int doubles = 0;
  for (const auto& cl : dec.clusters) {
    if (cl.members.size() == 2) {
      ++doubles;
      CHECK(std::abs(cl.eigenvalue - std::complex<double>(-1.0, 0.0)) < 1e-9);
      for (int m : cl.members) {
        Signal v = dec.vectors.col(m);
        CHECK((op_scaling(F, 2) * v + v).norm() < 1e-8);
      }
    } else {
      CHECK(cl.members.size() == 1);
    }
  }
  CHECK(doubles == 1);

  // Identity: single cluster of multiplicity p.
  auto idec = diagonalize_unitary(Operator::Identity(5, 5), 1);
  CHECK(idec.clusters.size() == 1);
  CHECK(idec.clusters[0].members.size() == 5);

  // Nonsplit generator operator: p simple eigenvalues, all (p+1)-th roots of
  // a common phase.
  auto ndec =
      diagonalize_unitary(weil_bruhat(F, nonsplit_model_generator(F)).op, 6);
  CHECK(ndec.clusters.size() == 5);
  std::complex<double> common = std::pow(ndec.eigenvalues[0], 6);
  for (const auto& lambda : ndec.eigenvalues) {
    CHECK(std::abs(std::pow(lambda, 6) - common) < 1e-9);
  }

  CHECK_THROWS_AS(diagonalize_unitary(Operator::Random(5, 5)),
                  std::invalid_argument);
}

TEST_CASE("clustering ambiguity is a hard error") {
  // Unit-circle diagonal with a 3e-8 gap: beyond merging tolerance but
  // inside the 10x guard band.
  Operator U = Operator::Zero(4, 4);
  U(0, 0) = 1.0;
  U(1, 1) = std::polar(1.0, 3e-8);
  U(2, 2) = std::polar(1.0, 2.0);
  U(3, 3) = std::polar(1.0, 4.0);
  CHECK_THROWS_AS(diagonalize_unitary(U), ClusterAmbiguityError);
}

TEST_CASE("build_system counts and residuals") {
  PrimeField F(5);
  SignalSystem split = build_system(F, SystemKind::split);
  CHECK(split.groups.size() == 15);
  CHECK(split.signals.size() == 45);  // q(q+1)(q-2)/2

  SignalSystem nonsplit = build_system(F, SystemKind::nonsplit);
  CHECK(nonsplit.groups.size() == 10);   // q(q-1)/2 subgroup tori
  CHECK(nonsplit.signals.size() == 50);  // q per torus

  for (const auto* sys : {&split, &nonsplit}) {
    for (const auto& sig : sys->signals) {
      CHECK(std::abs(sig.values.norm() - 1.0) < 1e-10);
      CHECK(std::abs(std::abs(sig.eigenvalue) - 1.0) < 1e-8);
      Operator gen_op = weil_bruhat(F, sys->groups[sig.group].generator).op;
      CHECK((gen_op * sig.values - sig.eigenvalue * sig.values).norm() < 1e-8);
    }
  }

  // Per-torus orthonormality.
  for (int t = 0; t < 15; ++t) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        CHECK(std::abs(split.signals[t * 3 + j].values.dot(
                  split.signals[t * 3 + i].values)) < 1e-9);
      }
    }
  }
}

TEST_CASE("standard torus eigenbasis is the multiplicative character basis") {
  PrimeField F(5);
  SignalSystem sys = build_system(F, SystemKind::split);
  // Torus 0 is A itself; its basis must span the chi-vectors, chi != trivial.
  const double s = 1.0 / 2.0;  // 1/sqrt(p-1)
  int matched = 0;
  for (int k = 1; k < 4; ++k) {  // nontrivial characters chi(g^j) = i^(kj)
    Signal chi = Signal::Zero(5);
    std::complex<double> ik = std::polar(1.0, std::numbers::pi * k / 2.0);
    int t = 1;
    std::complex<double> val = 1.0;
    for (int j = 0; j < 4; ++j) {
      chi(t) = s * val;
      t = F.mul(t, F.generator());
      val *= ik;
    }
    double best = 0.0;
    for (int i = 0; i < 3; ++i) {
      best = std::max(best,
                      std::abs(sys.signals[i].values.dot(chi)));
    }
    if (best > 1.0 - 1e-8) ++matched;
  }
  CHECK(matched == 3);
}

TEST_CASE("conjugation consistency of split bases") {
  PrimeField F(7);
  SignalSystem sys = build_system(F, SystemKind::split);
  std::mt19937_64 eng(5);
  std::uniform_int_distribution<std::size_t> pick(0, sys.groups.size() - 1);
  for (int trial = 0; trial < 3; ++trial) {
    const auto& group = sys.groups[pick(eng)];
    auto direct =
        diagonalize_unitary(weil_bruhat(F, group.generator).op, group.order);
    // Each mapped basis vector spans one of the direct 1-dim eigenspaces.
    int ti = static_cast<int>(&group - sys.groups.data());
    for (int i = 0; i < 5; ++i) {
      const Signal& mapped = sys.signals[ti * 5 + i].values;
      double best = 0.0;
      for (const auto& cl : direct.clusters) {
        if (cl.members.size() != 1) continue;
        best = std::max(best, std::abs(direct.vectors.col(cl.members[0])
                                           .dot(mapped)));
      }
      CHECK(best >= 1.0 - 1e-8);
    }
  }
}

TEST_CASE("extended system") {
  PrimeField F(5);
  SignalSystem base = build_system(F, SystemKind::split);
  SignalSystem ext = extended_system(F, base);
  CHECK(ext.signals.size() == 1125);  // p^2 * 45
  CHECK(ext.kind == SystemKind::extended);
  CHECK(ext.base_kind == SystemKind::split);

  // The (0,0) translate is the original signal.
  CHECK(ext.signals[0].tau == 0);
  CHECK(ext.signals[0].w == 0);
  CHECK((ext.signals[0].values - base.signals[0].values).norm() < 1e-15);

  for (int k = 0; k < 60; ++k) {
    CHECK(std::abs(ext.signals[k * 17 % 1125].values.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("phase normalization") {
  Signal s = Signal::Zero(5);
  s(3) = 1.0;
  CHECK((phase_normalize(s) - s).norm() < 1e-15);

  Signal t(3);
  t << std::complex<double>(0.1, 0.0), std::complex<double>(0.0, 0.8),
      std::complex<double>(0.5, 0.1);
  Signal n1 = phase_normalize(t);
  Signal n2 = phase_normalize(std::polar(1.0, 1.234) * t);
  CHECK((n1 - n2).norm() < 1e-12);
  CHECK((phase_normalize(n1) - n1).norm() < 1e-13);

  CHECK_THROWS_AS(phase_normalize(Signal::Zero(4)), std::invalid_argument);
}
