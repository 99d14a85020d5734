#include "osc/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "osc/applications.hpp"
#include "osc/heisenberg.hpp"
#include "osc/io.hpp"
#include "osc/metrics.hpp"
#include "osc/oscillator.hpp"

namespace osc {

namespace {

struct SignalLabel {
  int group = 0;
  int index = 0;
  int tau = 0;
  int w = 0;
};

SignalLabel parse_label(const std::string& text) {
  SignalLabel label;
  std::vector<int> parts;
  std::string cur;
  for (char ch : text + ":") {
    if (ch == ':') {
      if (cur.empty()) throw std::invalid_argument("bad signal label " + text);
      parts.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (parts.size() != 2 && parts.size() != 4) {
    throw std::invalid_argument("signal label must be G:I or G:I:TAU:W");
  }
  label.group = parts[0];
  label.index = parts[1];
  if (parts.size() == 4) {
    label.tau = parts[2];
    label.w = parts[3];
  }
  return label;
}

const LabeledSignal& find_signal(const SignalSystem& sys,
                                 const SignalLabel& label) {
  for (const auto& s : sys.signals) {
    if (s.group == label.group && s.index == label.index &&
        s.tau == label.tau && s.w == label.w) {
      return s;
    }
  }
  throw std::invalid_argument("unknown signal label");
}

SignalSystem generate_kind(const PrimeField& F, SystemKind kind,
                           int max_tori) {
  switch (kind) {
    case SystemKind::heisenberg:
      return heisenberg_system(F);
    case SystemKind::extended:
      return extended_system(F, build_system(F, SystemKind::split, max_tori));
    default:
      return build_system(F, kind, max_tori);
  }
}

long long expected_group_count(const SignalSystem& sys) {
  const long long p = sys.p;
  switch (sys.kind == SystemKind::extended ? sys.base_kind : sys.kind) {
    case SystemKind::heisenberg: return p + 1;
    case SystemKind::split: return p * (p + 1) / 2;
    case SystemKind::nonsplit: return p * (p - 1) / 2;
    default: return 0;
  }
}

int run_generate(int p, const std::string& kind_str, const std::string& out,
                 int max_tori) {
  const PrimeField F(p);
  const SystemKind kind = system_kind_from_string(kind_str);
  const SignalSystem sys = generate_kind(F, kind, max_tori);
  save_system(out, sys, F);
  std::cout << "p=" << p << "\n";
  std::cout << "kind=" << to_string(sys.kind) << "\n";
  std::cout << "groups=" << sys.groups.size() << "\n";
  std::cout << "signals=" << sys.signals.size() << "\n";
  std::cout << "out=" << out << "\n";
  return kExitOk;
}

int run_verify(const std::string& in, bool assert_proof, bool report_headline,
               bool per_signal, bool skip_fourier, int sample_pairs,
               std::uint64_t seed) {
  const SignalSystem sys = load_system(in);
  const PrimeField F(sys.p);
  ReportOptions options;
  options.report_headline = report_headline;
  options.sample_pairs = sample_pairs;
  options.sample_seed = seed;
  const BoundReport report = system_report(F, sys, options);
  std::cout << report.kv(report_headline, per_signal);

  bool fourier_ok = true;
  const bool oscillator_kind =
      sys.kind == SystemKind::split || sys.kind == SystemKind::nonsplit;
  if (oscillator_kind && !skip_fourier) {
    if (static_cast<long long>(sys.groups.size()) == expected_group_count(sys)) {
      const FourierReport fr = fourier_invariance_check(F, sys);
      fourier_ok = fr.pass;
      std::cout << "fourier_matches=" << fr.matches.size() << "\n";
      std::cout << "fourier_bijective=" << (fr.bijective ? "1" : "0") << "\n";
      std::cout << "fourier_pass=" << (fr.pass ? "1" : "0") << "\n";
      for (const auto& f : fr.failures) std::cout << "failure=" << f << "\n";
    } else {
      std::cout << "fourier_check=skipped-partial-system\n";
    }
  }

  if (assert_proof && (!report.pass || !fourier_ok)) return kExitBounds;
  return kExitOk;
}

int run_ambiguity(const std::string& in, const std::string& label_str,
                  const std::string& out) {
  const SignalSystem sys = load_system(in);
  const PrimeField F(sys.p);
  const SignalLabel label = parse_label(label_str);
  const LabeledSignal& sig = find_signal(sys, label);
  const AmbiguityTable table = ambiguity(F, sig.values);
  std::ofstream file(out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for writing: " + out);
  file << ambiguity_csv(table);
  std::cout << "signal=" << label_str << "\n";
  std::cout << "peak_tau=" << table.peak_tau << "\n";
  std::cout << "peak_w=" << table.peak_w << "\n";
  std::cout << "peak=" << format_number(table.peak_mag) << "\n";
  std::cout << "max_offcenter=" << format_number(table.max_offcenter) << "\n";
  std::cout << "out=" << out << "\n";
  return kExitOk;
}

int run_radar(int p, const std::string& in, const std::string& kind_str,
              const std::string& label_str, int trials, std::uint64_t seed,
              std::optional<double> snr_db, int max_tori) {
  SignalSystem sys;
  if (!in.empty()) {
    sys = load_system(in);
  } else {
    const PrimeField F(p);
    const SignalLabel label = parse_label(label_str);
    const int need = label.group + 1;
    sys = generate_kind(F, system_kind_from_string(kind_str),
                        max_tori > 0 ? max_tori : need);
  }
  const PrimeField F(sys.p);
  const LabeledSignal& sig = find_signal(sys, parse_label(label_str));

  ChannelScenario scenario;
  scenario.mode = DistortionMode::full;
  scenario.snr_db = snr_db;
  scenario.seed = seed;
  scenario.trials = trials;
  const SimulationResult result = radar_simulate(F, sig.values, scenario);

  std::cout << "p=" << F.p() << "\n";
  std::cout << "kind=" << to_string(sys.kind) << "\n";
  std::cout << "signal=" << label_str << "\n";
  std::cout << "trials=" << result.trials << "\n";
  std::cout << "seed=" << seed << "\n";
  std::cout << "snr_db=" << (snr_db ? format_number(*snr_db) : "none") << "\n";
  std::cout << "noise_model="
            << (snr_db ? "iid-circular-complex-gaussian" : "none") << "\n";
  std::cout << "recovery_rate=" << format_number(result.rate) << "\n";
  return kExitOk;
}

int run_cdma(int p, const std::string& in, const std::string& kind_str,
             int users, const std::string& scenario_str, bool known,
             int trials, std::uint64_t seed, std::optional<double> snr_db,
             int max_tori) {
  SignalSystem sys;
  if (!in.empty()) {
    sys = load_system(in);
  } else {
    const PrimeField F(p);
    sys = generate_kind(F, system_kind_from_string(kind_str), max_tori);
  }
  const PrimeField F(sys.p);

  ChannelScenario scenario;
  scenario.mode = distortion_mode_from_string(scenario_str);
  scenario.snr_db = snr_db;
  scenario.seed = seed;
  scenario.trials = trials;
  scenario.known_distortions = known;
  const SimulationResult result = cdma_simulate(F, sys, users, scenario);

  std::cout << "p=" << F.p() << "\n";
  std::cout << "kind=" << to_string(sys.kind) << "\n";
  std::cout << "pool=" << sys.signals.size() << "\n";
  std::cout << "users=" << users << "\n";
  std::cout << "scenario=" << scenario_str << "\n";
  std::cout << "known_distortions=" << (known ? "1" : "0") << "\n";
  std::cout << "trials=" << result.trials << "\n";
  std::cout << "seed=" << seed << "\n";
  std::cout << "snr_db=" << (snr_db ? format_number(*snr_db) : "none") << "\n";
  std::cout << "noise_model="
            << (snr_db ? "iid-circular-complex-gaussian" : "none") << "\n";
  std::cout << "bits=" << result.total << "\n";
  std::cout << "bit_errors=" << result.events << "\n";
  std::cout << "ber=" << format_number(result.rate) << "\n";
  return kExitOk;
}

}  // namespace

int cli_run(const std::vector<std::string>& args) {
  CLI::App app{"oscillator signal systems on prime fields", "oscsys"};
  app.require_subcommand(1);

  int p = 0;
  std::string kind = "split";
  std::string out_path;
  std::string in_path;
  std::string label = "0:0";
  int max_tori = 0;
  int trials = 0;
  std::uint64_t seed = 1;
  double snr_db_value = 0.0;
  bool noiseless = false;
  int users = 1;
  std::string scenario = "full";
  bool known = false;
  bool assert_proof = true;
  bool report_headline = false;
  bool per_signal = false;
  bool skip_fourier = false;
  int sample_pairs = 1000;

  auto* gen = app.add_subcommand("generate", "construct a signal system");
  gen->add_option("--p", p, "odd prime >= 5")->required();
  gen->add_option("--kind", kind,
                  "split | nonsplit | heisenberg | extended (translates of "
                  "the split system)")
      ->required();
  gen->add_option("--out", out_path, "output signal-set path")->required();
  gen->add_option("--max-tori", max_tori,
                  "limit the number of tori (0 = all)");

  auto* ver = app.add_subcommand("verify", "check correlation/supremum bounds");
  ver->add_option("--in", in_path, "signal-set path")->required();
  ver->add_flag("--assert-proof-bounds,!--no-assert-proof-bounds",
                assert_proof, "exit nonzero on any bound violation (default)");
  ver->add_flag("--report-headline-bounds", report_headline,
                "also report the 2/sqrt(p), 4/sqrt(p) headline figures");
  ver->add_flag("--per-signal", per_signal,
                "also print per-signal auto/supremum figures");
  ver->add_flag("--skip-fourier", skip_fourier,
                "skip the Fourier-closure check");
  ver->add_option("--sample-pairs", sample_pairs,
                  "pair sample size for extended systems");
  ver->add_option("--seed", seed, "seed for sampled checks");

  auto* amb = app.add_subcommand("ambiguity", "export an ambiguity table");
  amb->add_option("--in", in_path, "signal-set path")->required();
  amb->add_option("--signal", label, "label G:I (or G:I:TAU:W)")->required();
  amb->add_option("--out", out_path, "output CSV path")->required();

  auto* rad = app.add_subcommand("radar", "matched-filter recovery simulation");
  rad->add_option("--p", p, "odd prime >= 5 (generate the system on the fly)");
  rad->add_option("--in", in_path, "use signals from this file instead");
  rad->add_option("--kind", kind)->default_val("nonsplit");
  rad->add_option("--signal", label, "label G:I");
  rad->add_option("--trials", trials)->default_val(500);
  rad->add_option("--seed", seed);
  auto* rad_snr = rad->add_option("--snr-db", snr_db_value,
                                  "noise level; omit for noiseless");
  rad->add_flag("--noiseless", noiseless, "force the noiseless channel");
  rad->add_option("--max-tori", max_tori);

  auto* cdm = app.add_subcommand("cdma", "multi-user BER simulation");
  cdm->add_option("--p", p, "odd prime >= 5 (generate the system on the fly)");
  cdm->add_option("--in", in_path, "use signals from this file instead");
  cdm->add_option("--kind", kind)->default_val("split");
  cdm->add_option("--users", users, "number of simultaneous users")
      ->required();
  cdm->add_option("--scenario", scenario, "sync | async | phase | full");
  cdm->add_flag("--known-distortions", known,
                "decode at the true distortions instead of the argmax");
  cdm->add_option("--trials", trials)->default_val(1000);
  cdm->add_option("--seed", seed);
  auto* cdm_snr = cdm->add_option("--snr-db", snr_db_value,
                                  "noise level; omit for noiseless");
  cdm->add_option("--max-tori", max_tori,
                  "tori in the generated pool (0 = default 16)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (gen->parsed()) {
      return run_generate(p, kind, out_path, max_tori);
    }
    if (ver->parsed()) {
      return run_verify(in_path, assert_proof, report_headline, per_signal,
                        skip_fourier, sample_pairs, seed);
    }
    if (amb->parsed()) {
      return run_ambiguity(in_path, label, out_path);
    }
    if (rad->parsed()) {
      if (in_path.empty() && p == 0) {
        throw std::invalid_argument("radar: need --p or --in");
      }
      std::optional<double> snr;
      if (rad_snr->count() && !noiseless) snr = snr_db_value;
      return run_radar(p, in_path, kind, label, trials, seed, snr, max_tori);
    }
    if (cdm->parsed()) {
      if (in_path.empty() && p == 0) {
        throw std::invalid_argument("cdma: need --p or --in");
      }
      std::optional<double> snr;
      if (cdm_snr->count()) snr = snr_db_value;
      if (max_tori == 0) max_tori = 16;
      return run_cdma(p, in_path, kind, users, scenario, known, trials, seed,
                      snr, max_tori);
    }
  } catch (const ClusterAmbiguityError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

int cli_run(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_run(args);
}

}  // namespace osc
