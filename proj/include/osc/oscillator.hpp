#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "osc/field.hpp"
#include "osc/system.hpp"

namespace osc {

/// Thrown when eigenvalue clusters are too close to separate reliably.
struct ClusterAmbiguityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EigenCluster {
  std::complex<double> eigenvalue;  // cluster representative (unit modulus)
  std::vector<int> members;         // column indices into `vectors`
};

struct EigenDecomposition {
  std::vector<std::complex<double>> eigenvalues;
  Operator vectors;  // orthonormal columns
  std::vector<EigenCluster> clusters;
};

/// Complete eigendecomposition of a unitary matrix. Eigenvalues are grouped
/// into clusters with the given tolerance; two clusters closer than 10x the
/// tolerance raise ClusterAmbiguityError rather than merging silently.
/// If order > 0, eigenvalues are checked to be order-th roots of a common
/// phase. Every pair (lambda, v) satisfies |U v - lambda v| <= 1e-8.
EigenDecomposition diagonalize_unitary(const Operator& U, int order = 0,
                                       double tol = 1e-8);

/// Conjugator representatives g = [[1, b], [c, 1+bc]], one per split torus:
/// exactly p(p+1)/2 of them, each torus T = g A g^-1 hit once. For b != 0
/// the two presentations {(b, c), (-b, (1+bc)/b)} collapse to the
/// lexicographically smaller integer pair.
std::vector<Sl2> split_torus_reps(const PrimeField& F);

/// Generator of the standard split torus A: diag(r, r^-1) with r the field
/// generator.
Sl2 split_model_generator(const PrimeField& F);

/// Elements of the model non-split torus
/// T_delta = {[[a, delta*b], [b, a]] : a^2 - delta b^2 = 1}, order p+1.
std::vector<Sl2> nonsplit_model_torus(const PrimeField& F);

/// Smallest-serialization element of T_delta with exact order p+1.
Sl2 nonsplit_model_generator(const PrimeField& F);

/// All p(p-1)/2 non-split tori (or the first max_count found when
/// max_count > 0), as conjugates of T_delta deduplicated by sorted element
/// set. The model torus comes first.
std::vector<GroupInfo> nonsplit_tori(const PrimeField& F, int max_count = 0);

/// Element set of a torus group (conjugates of the model torus).
std::vector<Sl2> torus_elements(const PrimeField& F, const GroupInfo& group);

/// Multiply by the unit scalar making the lowest-index entry of magnitude
/// >= max/2 real positive. Rejects the zero vector.
Signal phase_normalize(const Signal& s);

/// The oscillator system of the given kind (split or nonsplit):
/// diagonalize rho of the model torus generator once, drop the 2-dimensional
/// quadratic-character cluster in the split case, then map the
/// phase-normalized eigenbasis through rho(g) for every torus conjugator g.
/// max_tori > 0 limits the number of tori (deterministically, enumeration
/// order) for large-p simulation pools.
SignalSystem build_system(const PrimeField& F, SystemKind kind,
                          int max_tori = 0);

/// All translates M_w L_tau phi of the input system's signals; p^2 times as
/// many signals, labeled by (tau, w).
SignalSystem extended_system(const PrimeField& F, const SignalSystem& base);

}  // namespace osc
