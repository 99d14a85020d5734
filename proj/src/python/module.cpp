#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "osc/applications.hpp"
#include "osc/heisenberg.hpp"
#include "osc/io.hpp"
#include "osc/metrics.hpp"
#include "osc/oscillator.hpp"
#include "osc/weil.hpp"

namespace py = pybind11;
using namespace osc;

namespace {

Sl2 to_sl2(const PrimeField& F, const std::vector<long long>& m) {
  if (m.size() != 4) throw std::invalid_argument("matrix must be [a, b, c, d]");
  return sl2_make(F, m[0], m[1], m[2], m[3]);
}

py::dict report_dict(const BoundReport& r) {
  py::dict d;
  d["kind"] = to_string(r.kind);
  d["p"] = r.p;
  d["pass"] = r.pass;
  d["pairs_checked"] = r.pairs_checked;
  d["auto_bound"] = r.auto_bound;
  d["max_auto_offcenter"] = r.max_auto_offcenter;
  d["cross_bound"] = r.cross_bound;
  d["max_cross"] = r.max_cross;
  d["sup_bound"] = r.sup_bound;
  d["max_supremum"] = r.max_supremum;
  d["headline_auto_bound"] = r.headline_auto_bound;
  d["headline_cross_bound"] = r.headline_cross_bound;
  d["headline_auto_holds"] = r.headline_auto_holds;
  d["headline_cross_holds"] = r.headline_cross_holds;
  d["failures"] = r.failures;
  return d;
}

py::dict result_dict(const SimulationResult& r, const char* rate_key) {
  py::dict d;
  d[rate_key] = r.rate;
  d["trials"] = r.trials;
  d["events"] = r.events;
  d["total"] = r.total;
  return d;
}

ChannelScenario make_scenario(const std::string& mode, int trials,
                              std::uint64_t seed,
                              std::optional<double> snr_db, bool known) {
  ChannelScenario s;
  s.mode = distortion_mode_from_string(mode);
  s.trials = trials;
  s.seed = seed;
  s.snr_db = snr_db;
  s.known_distortions = known;
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Oscillator signal systems on prime fields";

  py::register_exception<ClusterAmbiguityError>(m, "ClusterAmbiguityError");

  py::class_<PrimeField>(m, "PrimeField")
      .def(py::init<int>(), py::arg("p"))
      .def_property_readonly("p", &PrimeField::p)
      .def_property_readonly("generator", &PrimeField::generator)
      .def_property_readonly("nonsquare", &PrimeField::nonsquare)
      .def("legendre", &PrimeField::legendre, py::arg("a"))
      .def("psi", &PrimeField::psi, py::arg("t"));

  py::class_<LabeledSignal>(m, "LabeledSignal")
      .def_readonly("group", &LabeledSignal::group)
      .def_readonly("index", &LabeledSignal::index)
      .def_readonly("tau", &LabeledSignal::tau)
      .def_readonly("w", &LabeledSignal::w)
      .def_readonly("eigenvalue", &LabeledSignal::eigenvalue)
      .def_readonly("values", &LabeledSignal::values);

  py::class_<SignalSystem>(m, "SignalSystem")
      .def_property_readonly("p", [](const SignalSystem& s) { return s.p; })
      .def_property_readonly(
          "kind", [](const SignalSystem& s) { return to_string(s.kind); })
      .def_property_readonly(
          "group_count",
          [](const SignalSystem& s) { return s.groups.size(); })
      .def_readonly("signals", &SignalSystem::signals)
      .def("__len__",
           [](const SignalSystem& s) { return s.signals.size(); });

  m.def(
      "heisenberg_operator",
      [](int p, int tau, int w, int z) {
        return heisenberg_operator(PrimeField(p), Heis{tau, w, z});
      },
      py::arg("p"), py::arg("tau"), py::arg("w"), py::arg("z") = 0);

  m.def(
      "weil_operator",
      [](int p, const std::vector<long long>& g) {
        PrimeField F(p);
        return weil_bruhat(F, to_sl2(F, g)).op;
      },
      py::arg("p"), py::arg("g"),
      "rho(g) for g = [a, b, c, d] in SL2(F_p), Bruhat-factored and "
      "phase-normalized");

  m.def(
      "fourier_operator",
      [](int p) { return op_fourier(PrimeField(p)); }, py::arg("p"));

  m.def(
      "bruhat_decompose",
      [](int p, const std::vector<long long>& g) {
        PrimeField F(p);
        BruhatForm f = bruhat_decompose(F, to_sl2(F, g));
        return py::make_tuple(f.big_cell, f.u2, f.a, f.u1);
      },
      py::arg("p"), py::arg("g"),
      "(big_cell, u2, a, u1) with g = U(u2) diag(a, 1/a) [w U(u1)]");

  m.def(
      "generate_system",
      [](int p, const std::string& kind, int max_tori) {
        PrimeField F(p);
        SystemKind k = system_kind_from_string(kind);
        if (k == SystemKind::heisenberg) return heisenberg_system(F);
        if (k == SystemKind::extended) {
          return extended_system(F,
                                 build_system(F, SystemKind::split, max_tori));
        }
        return build_system(F, k, max_tori);
      },
      py::arg("p"), py::arg("kind"), py::arg("max_tori") = 0);

  m.def(
      "ambiguity",
      [](int p, const Signal& phi, std::optional<Signal> phi2) {
        PrimeField F(p);
        return ambiguity(F, phi, phi2 ? &*phi2 : nullptr).grid;
      },
      py::arg("p"), py::arg("phi"), py::arg("phi2") = std::nullopt,
      "grid of <phi, M_w L_tau phi2> with tau rows, w columns");

  m.def(
      "system_report",
      [](const SignalSystem& sys) {
        PrimeField F(sys.p);
        return report_dict(system_report(F, sys));
      },
      py::arg("system"));

  m.def(
      "fourier_invariance",
      [](const SignalSystem& sys) {
        PrimeField F(sys.p);
        FourierReport r = fourier_invariance_check(F, sys);
        py::dict d;
        d["pass"] = r.pass;
        d["bijective"] = r.bijective;
        d["matches"] = r.matches.size();
        d["failures"] = r.failures;
        return d;
      },
      py::arg("system"));

  m.def(
      "radar_simulate",
      [](const SignalSystem& sys, int signal, int trials, std::uint64_t seed,
         std::optional<double> snr_db) {
        PrimeField F(sys.p);
        auto scenario = make_scenario("full", trials, seed, snr_db, false);
        return result_dict(
            radar_simulate(F, sys.signals.at(signal).values, scenario),
            "recovery_rate");
      },
      py::arg("system"), py::arg("signal") = 0, py::arg("trials") = 500,
      py::arg("seed") = 1, py::arg("snr_db") = std::nullopt);

  m.def(
      "cdma_simulate",
      [](const SignalSystem& sys, int users, const std::string& scenario,
         int trials, std::uint64_t seed, bool known_distortions,
         std::optional<double> snr_db) {
        PrimeField F(sys.p);
        auto s = make_scenario(scenario, trials, seed, snr_db,
                               known_distortions);
        return result_dict(cdma_simulate(F, sys, users, s), "ber");
      },
      py::arg("system"), py::arg("users"), py::arg("scenario") = "full",
      py::arg("trials") = 1000, py::arg("seed") = 1,
      py::arg("known_distortions") = false,
      py::arg("snr_db") = std::nullopt);

  m.def(
      "save_system",
      [](const std::string& path, const SignalSystem& sys) {
        save_system(path, sys, PrimeField(sys.p));
      },
      py::arg("path"), py::arg("system"));

  m.def(
      "load_system", [](const std::string& path) { return load_system(path); },
      py::arg("path"));
}
