#include "osc/applications.hpp"

#include <cmath>
#include <stdexcept>

#include "osc/heisenberg.hpp"
#include "osc/metrics.hpp"
#include "osc/rng.hpp"

namespace osc {

DistortionMode distortion_mode_from_string(const std::string& s) {
  if (s == "sync") return DistortionMode::sync;
  if (s == "async") return DistortionMode::async_shift;
  if (s == "phase") return DistortionMode::phase;
  if (s == "full") return DistortionMode::full;
  throw std::invalid_argument("unknown scenario: " + s);
}

std::string to_string(DistortionMode mode) {
  switch (mode) {
    case DistortionMode::sync: return "sync";
    case DistortionMode::async_shift: return "async";
    case DistortionMode::phase: return "phase";
    case DistortionMode::full: return "full";
  }
  return "?";
}

namespace {

std::pair<int, int> draw_distortion(DistortionMode mode, TrialRng& rng, int p) {
  switch (mode) {
    case DistortionMode::sync: return {0, 0};
    case DistortionMode::async_shift: return {rng.uniform_int(p), 0};
    case DistortionMode::phase: return {0, rng.uniform_int(p)};
    case DistortionMode::full:
      return {rng.uniform_int(p), rng.uniform_int(p)};
  }
  return {0, 0};
}

void add_noise(Signal& s, double snr_db, TrialRng& rng) {
  // SNR = 10 log10(1 / (p sigma^2)) for unit-norm signals.
  const double sigma =
      std::sqrt(std::pow(10.0, -snr_db / 10.0) / static_cast<double>(s.size()));
  for (int t = 0; t < s.size(); ++t) {
    s(t) += sigma * rng.gaussian();
  }
}

std::pair<int, int> grid_argmax(const Eigen::MatrixXcd& grid) {
  int bt = 0, bw = 0;
  double best = -1.0;
  for (int tau = 0; tau < grid.rows(); ++tau) {
    for (int w = 0; w < grid.cols(); ++w) {
      double m = std::abs(grid(tau, w));
      if (m > best) {
        best = m;
        bt = tau;
        bw = w;
      }
    }
  }
  return {bt, bw};
}

}  // namespace

SimulationResult radar_simulate(const PrimeField& F, const Signal& phi,
                                const ChannelScenario& scenario) {
  const int p = F.p();
  if (std::abs(phi.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("radar_simulate: signal must be unit norm");
  }
  SimulationResult result;
  result.trials = scenario.trials;
  for (int trial = 0; trial < scenario.trials; ++trial) {
    TrialRng rng(scenario.seed, static_cast<std::uint64_t>(trial));
    const int tau0 = rng.uniform_int(p);
    const int w0 = rng.uniform_int(p);
    Signal echo = apply_translate(F, tau0, w0, phi);
    if (scenario.snr_db) add_noise(echo, *scenario.snr_db, rng);
    const auto table = ambiguity(F, echo, &phi);
    const auto [et, ew] = grid_argmax(table.grid);
    const bool ok = (et == tau0 && ew == w0);
    if (ok) ++result.events;
    if (scenario.log_trials) {
      result.log.push_back("trial=" + std::to_string(trial) + " tau=" +
                           std::to_string(tau0) + " w=" + std::to_string(w0) +
                           " est_tau=" + std::to_string(et) + " est_w=" +
                           std::to_string(ew) + " ok=" + (ok ? "1" : "0"));
    }
  }
  result.total = scenario.trials;
  result.rate = static_cast<double>(result.events) / result.total;
  return result;
}

SimulationResult cdma_simulate(const PrimeField& F, const SignalSystem& sys,
                               int users, const ChannelScenario& scenario) {
  const int p = F.p();
  const int n = static_cast<int>(sys.signals.size());
  if (users < 1 || users > n) {
    throw std::invalid_argument("cdma_simulate: users must be in 1.." +
                                std::to_string(n));
  }
  SimulationResult result;
  result.trials = scenario.trials;

  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;

  for (int trial = 0; trial < scenario.trials; ++trial) {
    TrialRng rng(scenario.seed, static_cast<std::uint64_t>(trial));
    // k distinct signals via partial Fisher-Yates.
    std::vector<int> chosen(pool);
    for (int i = 0; i < users; ++i) {
      int j = i + rng.uniform_int(n - i);
      std::swap(chosen[i], chosen[j]);
    }
    std::vector<int> bits(users);
    std::vector<std::pair<int, int>> dist(users);
    Signal u = Signal::Zero(p);
    for (int i = 0; i < users; ++i) {
      bits[i] = rng.sign();
      dist[i] = draw_distortion(scenario.mode, rng, p);
      u += static_cast<double>(bits[i]) *
           apply_heisenberg(F, Heis{dist[i].first, dist[i].second, 0},
                            sys.signals[chosen[i]].values);
    }
    if (scenario.snr_db) add_noise(u, *scenario.snr_db, rng);

    for (int i = 0; i < users; ++i) {
      const auto table = ambiguity(F, sys.signals[chosen[i]].values, &u);
      int et, ew;
      const bool known =
          scenario.mode == DistortionMode::sync || scenario.known_distortions;
      if (known) {
        // Peak of m_{phi_i, u} sits at h_i^-1.
        et = F.neg(dist[i].first);
        ew = F.neg(dist[i].second);
      } else {
        std::tie(et, ew) = grid_argmax(table.grid);
      }
      // <phi_i, pi(v, 0) u> = psi(-tau w / 2) * grid(tau, w).
      const std::complex<double> stat =
          F.psi(F.neg(F.mul(F.half(), F.mul(et, ew)))) * table.grid(et, ew);
      const int decoded = stat.real() >= 0.0 ? 1 : -1;
      ++result.total;
      if (decoded != bits[i]) ++result.events;
      if (scenario.log_trials) {
        result.log.push_back(
            "trial=" + std::to_string(trial) + " user=" + std::to_string(i) +
            " signal=" + std::to_string(chosen[i]) + " bit=" +
            std::to_string(bits[i]) + " decoded=" + std::to_string(decoded));
      }
    }
  }
  result.rate = static_cast<double>(result.events) / result.total;
  return result;
}

}  // namespace osc
