#include "osc/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "osc/oscillator.hpp"
#include "osc/rng.hpp"
#include "osc/weil.hpp"

namespace osc {

namespace {

// dft(t, w) = psi(-t*w); ambiguity rows are lagged products times this.
Eigen::MatrixXcd conj_dft(const PrimeField& F) {
  const int p = F.p();
  Eigen::MatrixXcd m(p, p);
  for (int t = 0; t < p; ++t) {
    for (int w = 0; w < p; ++w) {
      m(t, w) = F.psi(-static_cast<long long>(t) * w);
    }
  }
  return m;
}

Eigen::MatrixXcd ambiguity_grid(const PrimeField& F,
                                const Eigen::MatrixXcd& dft, const Signal& phi,
                                const Signal& phi2) {
  const int p = F.p();
  Eigen::MatrixXcd lagged(p, p);
  for (int tau = 0; tau < p; ++tau) {
    for (int t = 0; t < p; ++t) {
      lagged(tau, t) = phi(t) * std::conj(phi2(F.add(t, tau)));
    }
  }
  return lagged * dft;
}

int thread_count(int requested, std::size_t work_items) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("OSC_THREADS")) {
      n = std::atoi(env);
    }
  }
  if (n <= 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
  }
  n = std::clamp(n, 1, 16);
  if (work_items < 256) n = 1;
  return n;
}

// Parallel loop over [0, n) with per-thread state merged deterministically
// (only order-insensitive reductions are used by callers).
template <typename Body>
void parallel_for(int threads, std::size_t n, Body&& body) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        body(i, t);
      }
    });
  }
  for (auto& th : pool) th.join();
}

std::string signal_label(const SignalSystem& sys, std::size_t i) {
  const auto& s = sys.signals[i];
  std::string label = std::to_string(s.group) + ":" + std::to_string(s.index);
  if (sys.kind == SystemKind::extended) {
    label += "@" + std::to_string(s.tau) + "," + std::to_string(s.w);
  }
  return label;
}

void heisenberg_report(const PrimeField& F, const SignalSystem& sys,
                       const ReportOptions& options, BoundReport& report) {
  const int p = F.p();
  const double inv_sqrt_p = 1.0 / std::sqrt(static_cast<double>(p));
  const auto dft = conj_dft(F);

  report.auto_bound = 0.0;  // autos are exact 0/1 line indicators
  report.cross_bound = inv_sqrt_p + 1e-9;
  report.sup_bound = inv_sqrt_p + 1e-10;

  // Line structure and unimodularity per signal.
  for (std::size_t i = 0; i < sys.signals.size(); ++i) {
    const auto& sig = sys.signals[i];
    const int slope = sys.groups[sig.group].slope;
    const auto grid = ambiguity_grid(F, dft, sig.values, sig.values);
    double worst = 0.0;
    for (int tau = 0; tau < p; ++tau) {
      for (int w = 0; w < p; ++w) {
        const bool on_line =
            slope == p ? (tau == 0) : (w == F.mul(slope, tau));
        worst = std::max(worst,
                         std::abs(std::abs(grid(tau, w)) - (on_line ? 1 : 0)));
      }
    }
    if (worst > 1e-9) {
      report.failures.push_back("line-indicator signal " +
                                signal_label(sys, i) + " deviation " +
                                std::to_string(worst));
    }
    report.max_auto_offcenter = std::max(report.max_auto_offcenter, worst);

    const double sup = sig.values.cwiseAbs().maxCoeff();
    report.per_signal.push_back({signal_label(sys, i), worst, sup});

    // Unimodularity holds for the chirp bases; the vertical line carries the
    // delta basis, whose members are 0/1-valued.
    if (slope < p) {
      double inf = sig.values.cwiseAbs().minCoeff();
      report.max_supremum = std::max(report.max_supremum, sup);
      if (sup > inv_sqrt_p + 1e-10 || inf < inv_sqrt_p - 1e-10) {
        report.failures.push_back("unimodularity signal " +
                                  signal_label(sys, i));
      }
    }
  }

  // Cross-line bound and per-basis orthonormality.
  for (std::size_t i = 0; i < sys.signals.size(); ++i) {
    for (std::size_t j = i + 1; j < sys.signals.size(); ++j) {
      const auto& a = sys.signals[i];
      const auto& b = sys.signals[j];
      ++report.pairs_checked;
      if (a.group == b.group) {
        double ip = std::abs(b.values.dot(a.values));
        if (ip > 1e-10) {
          report.failures.push_back("orthonormality " + signal_label(sys, i) +
                                    " vs " + signal_label(sys, j));
        }
        continue;
      }
      const auto grid = ambiguity_grid(F, dft, a.values, b.values);
      double m = grid.cwiseAbs().maxCoeff();
      report.max_cross = std::max(report.max_cross, m);
      if (m > report.cross_bound) {
        report.failures.push_back("cross-line bound " + signal_label(sys, i) +
                                  " vs " + signal_label(sys, j) + " |m|=" +
                                  std::to_string(m));
      }
    }
  }
  (void)options;
}

void oscillator_report(const PrimeField& F, const SignalSystem& sys,
                       const ReportOptions& options, BoundReport& report) {
  const int p = F.p();
  const double sqrt_q = std::sqrt(static_cast<double>(p));
  const int torus_order = sys.groups.empty() ? 0 : sys.groups.front().order;
  report.torus_order = torus_order;
  report.auto_bound = 2.0 * sqrt_q / torus_order + 1e-9;
  report.cross_bound = 4.0 * sqrt_q / torus_order + 1e-9;
  report.same_torus_cross_bound = 2.0 * sqrt_q / torus_order + 1e-9;
  report.sup_bound = 2.0 / std::sqrt(static_cast<double>(torus_order)) + 1e-9;
  report.headline_auto_bound = 2.0 / sqrt_q;
  report.headline_cross_bound = 4.0 / sqrt_q;

  const auto dft = conj_dft(F);
  const std::size_t n = sys.signals.size();

  // Per-signal: auto-ambiguity thumbtack and supremum.
  std::mutex mu;
  const int threads = thread_count(options.threads, n);
  std::vector<double> auto_max(n, 0.0), sup(n, 0.0);
  parallel_for(threads, n, [&](std::size_t i, int) {
    const auto& sig = sys.signals[i];
    const auto grid = ambiguity_grid(F, dft, sig.values, sig.values);
    double worst = 0.0;
    for (int tau = 0; tau < p; ++tau) {
      for (int w = 0; w < p; ++w) {
        if (tau == 0 && w == 0) continue;
        worst = std::max(worst, std::abs(grid(tau, w)));
      }
    }
    auto_max[i] = worst;
    sup[i] = sig.values.cwiseAbs().maxCoeff();
    if (std::abs(std::abs(grid(0, 0)) - 1.0) > 1e-10) {
      std::lock_guard<std::mutex> lock(mu);
      report.failures.push_back("ambiguity origin signal " +
                                signal_label(sys, i));
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    report.per_signal.push_back({signal_label(sys, i), auto_max[i], sup[i]});
    report.max_auto_offcenter = std::max(report.max_auto_offcenter, auto_max[i]);
    report.max_supremum = std::max(report.max_supremum, sup[i]);
    if (auto_max[i] > report.auto_bound) {
      report.failures.push_back("auto bound signal " + signal_label(sys, i) +
                                " max=" + std::to_string(auto_max[i]));
    }
    if (sup[i] > report.sup_bound) {
      report.failures.push_back("supremum bound signal " +
                                signal_label(sys, i) + " sup=" +
                                std::to_string(sup[i]));
    }
  }

  // Pairwise: brute force over all p^2 translates for every distinct pair.
  const std::size_t pairs = n * (n - 1) / 2;
  report.pairs_checked = static_cast<long long>(pairs);
  const int pair_threads = thread_count(options.threads, pairs);
  std::vector<double> cross_by_thread(pair_threads, 0.0);
  std::vector<double> same_by_thread(pair_threads, 0.0);
  std::vector<std::vector<std::string>> fail_by_thread(pair_threads);
  parallel_for(pair_threads, n, [&](std::size_t i, int tid) {
    const auto& a = sys.signals[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& b = sys.signals[j];
      const auto grid = ambiguity_grid(F, dft, a.values, b.values);
      const double m = grid.cwiseAbs().maxCoeff();
      const bool same_torus = a.group == b.group;
      cross_by_thread[tid] = std::max(cross_by_thread[tid], m);
      if (same_torus) {
        same_by_thread[tid] = std::max(same_by_thread[tid], m);
      }
      const double bound =
          same_torus ? report.same_torus_cross_bound : report.cross_bound;
      if (m > bound) {
        fail_by_thread[tid].push_back(
            "cross bound " + signal_label(sys, i) + " vs " +
            signal_label(sys, j) + " |m|=" + std::to_string(m));
      }
      if (same_torus && a.index != b.index) {
        if (std::abs(b.values.dot(a.values)) > 1e-9) {
          fail_by_thread[tid].push_back("orthonormality " +
                                        signal_label(sys, i) + " vs " +
                                        signal_label(sys, j));
        }
      }
    }
  });
  for (int t = 0; t < pair_threads; ++t) {
    report.max_cross = std::max(report.max_cross, cross_by_thread[t]);
    report.max_same_torus_cross =
        std::max(report.max_same_torus_cross, same_by_thread[t]);
  }
  std::vector<std::string> pair_failures;
  for (auto& fails : fail_by_thread) {
    pair_failures.insert(pair_failures.end(), fails.begin(), fails.end());
  }
  std::sort(pair_failures.begin(), pair_failures.end());
  report.failures.insert(report.failures.end(), pair_failures.begin(),
                         pair_failures.end());

  report.headline_auto_holds =
      report.max_auto_offcenter <= report.headline_auto_bound + 1e-9;
  report.headline_cross_holds =
      report.max_cross <= report.headline_cross_bound + 1e-9;
}

void extended_report(const PrimeField& F, const SignalSystem& sys,
                     const ReportOptions& options, BoundReport& report) {
  const int p = F.p();
  const double sqrt_q = std::sqrt(static_cast<double>(p));
  const int torus_order = sys.groups.empty() ? 0 : sys.groups.front().order;
  report.torus_order = torus_order;
  report.cross_bound = 4.0 * sqrt_q / torus_order + 1e-9;
  report.headline_cross_bound = 4.0 / sqrt_q;

  const std::size_t n = sys.signals.size();
  TrialRng rng(options.sample_seed, 0);
  for (int k = 0; k < options.sample_pairs; ++k) {
    std::size_t i = rng.uniform_int(static_cast<int>(n));
    std::size_t j = rng.uniform_int(static_cast<int>(n));
    if (i == j) continue;
    ++report.pairs_checked;
    double ip =
        std::abs(sys.signals[j].values.dot(sys.signals[i].values));
    report.max_cross = std::max(report.max_cross, ip);
    if (ip > report.cross_bound) {
      report.failures.push_back("extended pair bound " +
                                signal_label(sys, i) + " vs " +
                                signal_label(sys, j) + " |ip|=" +
                                std::to_string(ip));
    }
  }
  report.headline_cross_holds =
      report.max_cross <= report.headline_cross_bound + 1e-9;
}

}  // namespace

AmbiguityTable ambiguity(const PrimeField& F, const Signal& phi,
                         const Signal* phi2) {
  const int p = F.p();
  AmbiguityTable table;
  table.p = p;
  table.grid = ambiguity_grid(F, conj_dft(F), phi, phi2 ? *phi2 : phi);
  for (int tau = 0; tau < p; ++tau) {
    for (int w = 0; w < p; ++w) {
      double m = std::abs(table.grid(tau, w));
      if (m > table.peak_mag) {
        table.peak_mag = m;
        table.peak_tau = tau;
        table.peak_w = w;
      }
      if (tau != 0 || w != 0) {
        table.max_offcenter = std::max(table.max_offcenter, m);
      }
    }
  }
  return table;
}

BoundReport system_report(const PrimeField& F, const SignalSystem& sys,
                          const ReportOptions& options) {
  BoundReport report;
  report.kind = sys.kind;
  report.p = sys.p;
  if (sys.p != F.p()) {
    throw std::invalid_argument("system_report: field/system mismatch");
  }

  for (std::size_t i = 0; i < sys.signals.size(); ++i) {
    double norm = sys.signals[i].values.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
      report.failures.push_back("unit norm signal " + signal_label(sys, i) +
                                " norm=" + std::to_string(norm));
    }
  }

  switch (sys.kind) {
    case SystemKind::heisenberg:
      heisenberg_report(F, sys, options, report);
      break;
    case SystemKind::split:
    case SystemKind::nonsplit:
      oscillator_report(F, sys, options, report);
      break;
    case SystemKind::extended:
      extended_report(F, sys, options, report);
      break;
  }
  report.pass = report.failures.empty();
  return report;
}

FourierReport fourier_invariance_check(const PrimeField& F,
                                       const SignalSystem& sys) {
  if (sys.kind != SystemKind::split && sys.kind != SystemKind::nonsplit) {
    throw std::invalid_argument(
        "fourier_invariance_check: oscillator systems only");
  }
  FourierReport report;
  const Sl2 w = weyl_element(F);
  const Operator fourier = op_fourier(F);

  // Torus element set -> group index.
  std::map<std::vector<int>, int> torus_index;
  std::vector<std::vector<Sl2>> elements(sys.groups.size());
  for (std::size_t gi = 0; gi < sys.groups.size(); ++gi) {
    elements[gi] = torus_elements(F, sys.groups[gi]);
    std::vector<std::array<int, 4>> rows;
    for (const auto& e : elements[gi]) rows.push_back({e.a, e.b, e.c, e.d});
    std::sort(rows.begin(), rows.end());
    std::vector<int> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    torus_index[flat] = static_cast<int>(gi);
  }

  // Signals grouped by torus.
  std::vector<std::vector<int>> by_group(sys.groups.size());
  for (std::size_t i = 0; i < sys.signals.size(); ++i) {
    by_group[sys.signals[i].group].push_back(static_cast<int>(i));
  }

  const Sl2 winv = sl2_inv(F, w);
  for (std::size_t gi = 0; gi < sys.groups.size(); ++gi) {
    // T' = w T w^-1.
    std::vector<std::array<int, 4>> rows;
    for (const auto& e : elements[gi]) {
      Sl2 t = sl2_mul(F, w, sl2_mul(F, e, winv));
      rows.push_back({t.a, t.b, t.c, t.d});
    }
    std::sort(rows.begin(), rows.end());
    std::vector<int> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    auto it = torus_index.find(flat);
    if (it == torus_index.end()) {
      report.failures.push_back("torus " + std::to_string(gi) +
                                ": image torus missing from system");
      report.pass = false;
      continue;
    }
    const auto& targets = by_group[it->second];
    std::set<int> used;
    for (int si : by_group[gi]) {
      Signal hat = fourier * sys.signals[si].values;
      FourierMatch match;
      match.signal = si;
      for (int ti : targets) {
        double ov = std::abs(sys.signals[ti].values.dot(hat));
        if (ov > match.overlap) {
          match.overlap = ov;
          match.matched_signal = ti;
        }
      }
      if (match.overlap < 1.0 - 1e-8) {
        report.failures.push_back(
            "signal " + signal_label(sys, si) + ": best Fourier overlap " +
            std::to_string(match.overlap));
        report.pass = false;
      }
      if (match.matched_signal >= 0 && !used.insert(match.matched_signal).second) {
        report.bijective = false;
        report.pass = false;
        report.failures.push_back("signal " + signal_label(sys, si) +
                                  ": Fourier match not injective");
      }
      report.matches.push_back(match);
    }
  }
  return report;
}

}  // namespace osc
