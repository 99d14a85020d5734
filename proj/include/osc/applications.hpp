#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osc/field.hpp"
#include "osc/system.hpp"

namespace osc {

enum class DistortionMode { sync, async_shift, phase, full };

DistortionMode distortion_mode_from_string(const std::string& s);
std::string to_string(DistortionMode mode);

struct ChannelScenario {
  DistortionMode mode = DistortionMode::full;
  std::optional<double> snr_db;  // empty = noiseless
  std::uint64_t seed = 1;
  int trials = 1000;
  bool known_distortions = false;  // evaluate at the true h_i instead of argmax
  bool log_trials = false;
};

struct SimulationResult {
  double rate = 0.0;     // recovery rate (radar) or bit error rate (cdma)
  long long trials = 0;
  long long events = 0;  // exact recoveries (radar) or bit errors (cdma)
  long long total = 0;   // trials (radar) or decoded bits (cdma)
  std::vector<std::string> log;
};

/// Matched-filter range/velocity estimation: per trial draw (tau0, w0)
/// uniformly, form the echo M_{w0} L_{tau0} phi plus optional white noise,
/// and take the argmax of |<e, M_w L_tau phi>| over the p^2 grid.
/// rate = exact recoveries / trials.
SimulationResult radar_simulate(const PrimeField& F, const Signal& phi,
                                const ChannelScenario& scenario);

/// Multi-user superposition u = sum_i b_i pi(h_i) phi_i with BPSK bits and
/// per-scenario distortions h_i; receiver i evaluates the cross-ambiguity
/// m_{phi_i, u} at the known or estimated distortion and decodes
/// sign(Re). rate = bit errors / (users * trials).
SimulationResult cdma_simulate(const PrimeField& F, const SignalSystem& sys,
                               int users, const ChannelScenario& scenario);

}  // namespace osc
