#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "osc/field.hpp"

namespace osc {

using Operator = Eigen::MatrixXcd;
using Signal = Eigen::VectorXcd;
/// Function on the time-frequency plane V, indexed grid(tau, w).
using PhaseSpace = Eigen::MatrixXcd;

enum class SystemKind { heisenberg, split, nonsplit, extended };

std::string to_string(SystemKind kind);
SystemKind system_kind_from_string(const std::string& s);

enum class GroupKind { split_torus, nonsplit_torus, line };

/// One signal family of a system: a maximal torus of SL2 (oscillator
/// systems) or a line through the origin of V (Heisenberg system).
struct GroupInfo {
  GroupKind kind = GroupKind::split_torus;
  Sl2 conjugator{};   // T = conjugator * T_model * conjugator^-1
  Sl2 generator{};    // cyclic generator of T
  int order = 0;      // #T
  int slope = -1;     // lines only: 0..p-1 for L_m, p for the vertical line
};

struct LabeledSignal {
  int group = 0;  // index into SignalSystem::groups
  int index = 0;  // character index within the group
  int tau = 0;    // translate label, nonzero only in extended systems
  int w = 0;
  std::complex<double> eigenvalue{0.0, 0.0};
  Signal values;
};

/// Conventions tag embedded in exported files so downstream consumers can
/// detect incompatible phase/form choices.
inline constexpr const char* kConventionsTag =
    "omega=tau*w2-tau2*w;half=(p+1)/2;psi=exp(2pi*i*t/p);"
    "phase=first-significant-entry-real-positive";

struct SignalSystem {
  int p = 0;
  SystemKind kind = SystemKind::split;
  SystemKind base_kind = SystemKind::split;  // meaningful for extended
  std::vector<GroupInfo> groups;
  std::vector<LabeledSignal> signals;
};

}  // namespace osc
