#include "osc/io.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "osc/oscillator.hpp"

namespace osc {

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::heisenberg: return "heisenberg";
    case SystemKind::split: return "split";
    case SystemKind::nonsplit: return "nonsplit";
    case SystemKind::extended: return "extended";
  }
  return "?";
}

SystemKind system_kind_from_string(const std::string& s) {
  if (s == "heisenberg") return SystemKind::heisenberg;
  if (s == "split") return SystemKind::split;
  if (s == "nonsplit") return SystemKind::nonsplit;
  if (s == "extended") return SystemKind::extended;
  throw std::invalid_argument("unknown system kind: " + s);
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".einE") == std::string::npos) s += ".0";
  return s;
}

std::string serialize_system(const SignalSystem& sys, const PrimeField& F) {
  std::ostringstream out;
  out << "oscsys-signal-set format 1\n";
  out << "p " << sys.p << "\n";
  out << "kind " << to_string(sys.kind) << "\n";
  out << "base " << to_string(sys.base_kind) << "\n";
  out << "conventions " << kConventionsTag << "\n";
  out << "generator " << F.generator() << "\n";
  out << "nonsquare " << F.nonsquare() << "\n";
  out << "groups " << sys.groups.size() << "\n";
  for (std::size_t i = 0; i < sys.groups.size(); ++i) {
    const auto& g = sys.groups[i];
    out << "group " << i;
    switch (g.kind) {
      case GroupKind::split_torus:
        out << " split-torus conj " << g.conjugator.a << " " << g.conjugator.b
            << " " << g.conjugator.c << " " << g.conjugator.d;
        break;
      case GroupKind::nonsplit_torus:
        out << " nonsplit-torus conj " << g.conjugator.a << " "
            << g.conjugator.b << " " << g.conjugator.c << " "
            << g.conjugator.d;
        break;
      case GroupKind::line:
        out << " line slope " << g.slope;
        break;
    }
    out << " order " << g.order << "\n";
  }
  out << "signals " << sys.signals.size() << "\n";
  for (const auto& s : sys.signals) {
    out << "s " << s.group << " " << s.index << " " << s.tau << " " << s.w
        << " " << format_number(s.eigenvalue.real()) << " "
        << format_number(s.eigenvalue.imag());
    for (int t = 0; t < s.values.size(); ++t) {
      out << " " << format_number(s.values(t).real()) << " "
          << format_number(s.values(t).imag());
    }
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

namespace {

std::string expect_key(std::istringstream& in, const std::string& key) {
  std::string word;
  if (!(in >> word) || word != key) {
    throw ParseError("signal set: expected '" + key + "', got '" + word + "'");
  }
  return word;
}

}  // namespace

SignalSystem parse_system(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "oscsys-signal-set format 1") {
    throw ParseError("signal set: bad header");
  }
  SignalSystem sys;
  std::string word;
  auto next_line = [&]() -> std::istringstream {
    if (!std::getline(in, line)) throw ParseError("signal set: truncated");
    return std::istringstream(line);
  };

  {
    auto l = next_line();
    expect_key(l, "p");
    if (!(l >> sys.p)) throw ParseError("signal set: bad p");
  }
  {
    auto l = next_line();
    expect_key(l, "kind");
    l >> word;
    sys.kind = system_kind_from_string(word);
  }
  {
    auto l = next_line();
    expect_key(l, "base");
    l >> word;
    sys.base_kind = system_kind_from_string(word);
  }
  {
    auto l = next_line();
    expect_key(l, "conventions");
    l >> word;
    if (word != kConventionsTag) {
      throw ParseError("signal set: incompatible conventions tag " + word);
    }
  }
  PrimeField F(sys.p);
  {
    auto l = next_line();
    expect_key(l, "generator");
    int g;
    l >> g;
    if (g != F.generator()) throw ParseError("signal set: generator mismatch");
  }
  {
    auto l = next_line();
    expect_key(l, "nonsquare");
    int d;
    l >> d;
    if (d != F.nonsquare()) throw ParseError("signal set: nonsquare mismatch");
  }

  std::size_t n_groups = 0;
  {
    auto l = next_line();
    expect_key(l, "groups");
    l >> n_groups;
  }
  sys.groups.resize(n_groups);
  std::optional<Sl2> split_gen, nonsplit_gen;
  for (std::size_t i = 0; i < n_groups; ++i) {
    auto l = next_line();
    expect_key(l, "group");
    std::size_t idx;
    l >> idx >> word;
    if (idx != i) throw ParseError("signal set: group index out of order");
    GroupInfo& g = sys.groups[i];
    if (word == "split-torus" || word == "nonsplit-torus") {
      g.kind = word == "split-torus" ? GroupKind::split_torus
                                     : GroupKind::nonsplit_torus;
      expect_key(l, "conj");
      if (!(l >> g.conjugator.a >> g.conjugator.b >> g.conjugator.c >>
            g.conjugator.d)) {
        throw ParseError("signal set: bad conjugator");
      }
      try {
        g.conjugator = sl2_make(F, g.conjugator.a, g.conjugator.b,
                                g.conjugator.c, g.conjugator.d);
      } catch (const std::invalid_argument&) {
        throw ParseError("signal set: conjugator not in SL2");
      }
      Sl2 model;
      if (g.kind == GroupKind::split_torus) {
        if (!split_gen) split_gen = split_model_generator(F);
        model = *split_gen;
      } else {
        if (!nonsplit_gen) nonsplit_gen = nonsplit_model_generator(F);
        model = *nonsplit_gen;
      }
      g.generator =
          sl2_mul(F, g.conjugator, sl2_mul(F, model, sl2_inv(F, g.conjugator)));
    } else if (word == "line") {
      g.kind = GroupKind::line;
      expect_key(l, "slope");
      l >> g.slope;
    } else {
      throw ParseError("signal set: unknown group kind " + word);
    }
    expect_key(l, "order");
    if (!(l >> g.order)) throw ParseError("signal set: bad group order");
  }

  std::size_t n_signals = 0;
  {
    auto l = next_line();
    expect_key(l, "signals");
    l >> n_signals;
  }
  sys.signals.resize(n_signals);
  for (std::size_t i = 0; i < n_signals; ++i) {
    auto l = next_line();
    expect_key(l, "s");
    LabeledSignal& s = sys.signals[i];
    double er, ei;
    if (!(l >> s.group >> s.index >> s.tau >> s.w >> er >> ei)) {
      throw ParseError("signal set: bad signal record " + std::to_string(i));
    }
    if (s.group < 0 || s.group >= static_cast<int>(n_groups)) {
      throw ParseError("signal set: signal group out of range");
    }
    s.eigenvalue = {er, ei};
    s.values.resize(sys.p);
    for (int t = 0; t < sys.p; ++t) {
      double re, im;
      if (!(l >> re >> im)) {
        throw ParseError("signal set: short value row in signal " +
                         std::to_string(i));
      }
      s.values(t) = {re, im};
    }
  }
  {
    auto l = next_line();
    expect_key(l, "end");
  }
  return sys;
}

void save_system(const std::filesystem::path& path, const SignalSystem& sys,
                 const PrimeField& F) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  out << serialize_system(sys, F);
}

SignalSystem load_system(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

std::string ambiguity_csv(const AmbiguityTable& table) {
  std::ostringstream out;
  for (int tau = 0; tau < table.p; ++tau) {
    for (int w = 0; w < table.p; ++w) {
      if (w) out << ",";
      out << format_number(std::abs(table.grid(tau, w)));
    }
    out << "\n";
  }
  return out.str();
}

std::string BoundReport::kv(bool include_headline,
                            bool include_per_signal) const {
  std::ostringstream out;
  out << "kind=" << to_string(kind) << "\n";
  out << "p=" << p << "\n";
  out << "pass=" << (pass ? "1" : "0") << "\n";
  out << "pairs_checked=" << pairs_checked << "\n";
  if (kind == SystemKind::heisenberg) {
    out << "max_line_deviation=" << format_number(max_auto_offcenter) << "\n";
    out << "cross_bound=" << format_number(cross_bound) << "\n";
    out << "max_cross=" << format_number(max_cross) << "\n";
    out << "max_supremum=" << format_number(max_supremum) << "\n";
  } else if (kind == SystemKind::extended) {
    out << "cross_bound=" << format_number(cross_bound) << "\n";
    out << "max_cross=" << format_number(max_cross) << "\n";
  } else {
    out << "torus_order=" << torus_order << "\n";
    out << "auto_bound=" << format_number(auto_bound) << "\n";
    out << "max_auto_offcenter=" << format_number(max_auto_offcenter) << "\n";
    out << "cross_bound=" << format_number(cross_bound) << "\n";
    out << "max_cross=" << format_number(max_cross) << "\n";
    out << "same_torus_cross_bound=" << format_number(same_torus_cross_bound)
        << "\n";
    out << "max_same_torus_cross=" << format_number(max_same_torus_cross)
        << "\n";
    out << "sup_bound=" << format_number(sup_bound) << "\n";
    out << "max_supremum=" << format_number(max_supremum) << "\n";
  }
  if (include_headline &&
      (kind == SystemKind::split || kind == SystemKind::nonsplit ||
       kind == SystemKind::extended)) {
    if (kind != SystemKind::extended) {
      out << "headline_auto_bound=" << format_number(headline_auto_bound)
          << "\n";
      out << "headline_auto_holds=" << (headline_auto_holds ? "1" : "0")
          << "\n";
    }
    out << "headline_cross_bound=" << format_number(headline_cross_bound)
        << "\n";
    out << "headline_cross_holds=" << (headline_cross_holds ? "1" : "0")
        << "\n";
  }
  if (include_per_signal) {
    for (const auto& s : per_signal) {
      out << "signal[" << s.label
          << "] auto_offcenter=" << format_number(s.auto_offcenter)
          << " supremum=" << format_number(s.supremum) << "\n";
    }
  }
  for (const auto& f : failures) out << "failure=" << f << "\n";
  return out.str();
}

}  // namespace osc
