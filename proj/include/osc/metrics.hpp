#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osc/field.hpp"
#include "osc/system.hpp"

namespace osc {

/// Matrix coefficients <phi, M_w L_tau phi2> over the time-frequency plane,
/// grid(tau, w); phi2 defaults to phi (auto-ambiguity).
struct AmbiguityTable {
  int p = 0;
  Eigen::MatrixXcd grid;
  int peak_tau = 0;
  int peak_w = 0;
  double peak_mag = 0.0;
  double max_offcenter = 0.0;  // max |grid| away from (0, 0)
};

AmbiguityTable ambiguity(const PrimeField& F, const Signal& phi,
                         const Signal* phi2 = nullptr);

struct ReportOptions {
  bool report_headline = false;
  int sample_pairs = 1000;      // extended systems: sampled pair count
  std::uint64_t sample_seed = 1;
  int threads = 0;              // 0 = decide from OSC_THREADS / hardware
};

/// Per-signal figures carried by the report (oscillator and heisenberg
/// systems; for heisenberg, auto_offcenter is the line-indicator deviation).
struct SignalFigures {
  std::string label;
  double auto_offcenter = 0.0;
  double supremum = 0.0;
};

/// Verification record for one system. `failures` lists every violated
/// assertion with the offending signal labels; `pass` is their conjunction.
struct BoundReport {
  SystemKind kind = SystemKind::split;
  int p = 0;
  int torus_order = 0;
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<SignalFigures> per_signal;

  // Asserted bounds (proof constants) and observed maxima.
  double auto_bound = 0.0;
  double max_auto_offcenter = 0.0;
  double cross_bound = 0.0;
  double max_cross = 0.0;
  double same_torus_cross_bound = 0.0;
  double max_same_torus_cross = 0.0;
  double sup_bound = 0.0;
  double max_supremum = 0.0;

  // Headline figures (reported, never asserted).
  double headline_auto_bound = 0.0;
  double headline_cross_bound = 0.0;
  bool headline_auto_holds = false;
  bool headline_cross_holds = false;

  long long pairs_checked = 0;

  std::string kv(bool include_headline, bool include_per_signal = false) const;
};

/// Brute-force verification of the per-system correlation/supremum bounds:
/// Heisenberg systems get the line-structure checks, oscillator systems the
/// proof-constant bounds, extended systems a seeded pairwise sample.
BoundReport system_report(const PrimeField& F, const SignalSystem& sys,
                          const ReportOptions& options = {});

struct FourierMatch {
  int signal = 0;          // index into sys.signals
  int matched_signal = -1;
  double overlap = 0.0;
};

struct FourierReport {
  bool pass = true;
  bool bijective = true;
  std::vector<FourierMatch> matches;
  std::vector<std::string> failures;
};

/// Checks Fourier closure of an oscillator system: the DFT of every signal
/// in B_T must match an element of B_{wTw^-1} with overlap >= 1 - 1e-8, and
/// the matching must be a bijection per torus. Requires the full system (all
/// tori present).
FourierReport fourier_invariance_check(const PrimeField& F,
                                       const SignalSystem& sys);

}  // namespace osc
