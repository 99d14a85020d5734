#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "osc/cli.hpp"
#include "osc/heisenberg.hpp"
#include "osc/io.hpp"
#include "osc/oscillator.hpp"

using namespace osc;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  int code = cli_run(args);
  std::cout.rdbuf(old);
  return {code, captured.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("oscsys_test_" + name);
}

}  // namespace

TEST_CASE("file round trip is exact") {
  PrimeField F(7);
  for (SystemKind kind : {SystemKind::split, SystemKind::nonsplit}) {
    SignalSystem sys = build_system(F, kind, 5);
    SignalSystem back = parse_system(serialize_system(sys, F));
    REQUIRE(back.signals.size() == sys.signals.size());
    REQUIRE(back.groups.size() == sys.groups.size());
    CHECK(back.kind == sys.kind);
    for (std::size_t i = 0; i < sys.signals.size(); ++i) {
      CHECK(back.signals[i].group == sys.signals[i].group);
      CHECK(back.signals[i].index == sys.signals[i].index);
      CHECK(back.signals[i].eigenvalue == sys.signals[i].eigenvalue);
      for (int t = 0; t < 7; ++t) {
        // Bitwise equality after the decimal round trip.
        CHECK(back.signals[i].values(t) == sys.signals[i].values(t));
      }
    }
    for (std::size_t g = 0; g < sys.groups.size(); ++g) {
      CHECK(back.groups[g].conjugator == sys.groups[g].conjugator);
      CHECK(back.groups[g].generator == sys.groups[g].generator);
      CHECK(back.groups[g].order == sys.groups[g].order);
    }
  }

  SignalSystem heis = heisenberg_system(F);
  SignalSystem back = parse_system(serialize_system(heis, F));
  CHECK(back.kind == SystemKind::heisenberg);
  CHECK(back.groups[7].slope == 7);
  for (std::size_t i = 0; i < heis.signals.size(); ++i) {
    CHECK(back.signals[i].values == heis.signals[i].values);
  }
}

TEST_CASE("parser rejects corrupt input") {
  PrimeField F(5);
  SignalSystem sys = build_system(F, SystemKind::split, 2);
  std::string text = serialize_system(sys, F);

  CHECK_THROWS_AS(parse_system("bogus\n"), ParseError);
  CHECK_THROWS_AS(parse_system(text.substr(0, text.size() / 2)), ParseError);

  std::string tampered = text;
  tampered.replace(tampered.find("generator 2"), 11, "generator 3");
  CHECK_THROWS_AS(parse_system(tampered), ParseError);
}

TEST_CASE("generate and verify round trip through the cli") {
  const fs::path path = temp_file("p5_nonsplit.oss");
  auto gen = run({"generate", "--p", "5", "--kind", "nonsplit", "--out",
                  path.string()});
  CHECK(gen.code == kExitOk);
  CHECK(gen.out.find("signals=50") != std::string::npos);

  auto ver = run({"verify", "--in", path.string()});
  CHECK(ver.code == kExitOk);
  CHECK(ver.out.find("pass=1") != std::string::npos);
  CHECK(ver.out.find("fourier_pass=1") != std::string::npos);

  // Tampering with one entry is caught and the signal is named.
  SignalSystem sys = load_system(path);
  sys.signals[5].values(1) = 0.0;
  save_system(path, sys, PrimeField(5));
  auto bad = run({"verify", "--in", path.string()});
  CHECK(bad.code == kExitBounds);
  CHECK(bad.out.find("failure=unit norm signal 1:0") != std::string::npos);

  fs::remove(path);
}

TEST_CASE("generate rejects invalid primes and paths") {
  auto bad_p = run({"generate", "--p", "4", "--kind", "split", "--out",
                    temp_file("bad.oss").string()});
  CHECK(bad_p.code == kExitInput);

  auto bad_kind = run({"generate", "--p", "5", "--kind", "weird", "--out",
                       temp_file("bad.oss").string()});
  CHECK(bad_kind.code == kExitInput);

  auto bad_path = run({"generate", "--p", "5", "--kind", "split", "--out",
                       "/nonexistent-dir/foo.oss"});
  CHECK(bad_path.code == kExitInput);
}

TEST_CASE("heisenberg generation and verification") {
  const fs::path path = temp_file("p5_heis.oss");
  auto gen = run({"generate", "--p", "5", "--kind", "heisenberg", "--out",
                  path.string()});
  CHECK(gen.code == kExitOk);
  CHECK(gen.out.find("signals=30") != std::string::npos);
  CHECK(gen.out.find("groups=6") != std::string::npos);

  auto ver = run({"verify", "--in", path.string()});
  CHECK(ver.code == kExitOk);
  fs::remove(path);
}

TEST_CASE("ambiguity csv export for the delta signal") {
  const fs::path sys_path = temp_file("p5_heis2.oss");
  const fs::path csv_path = temp_file("delta.csv");
  run({"generate", "--p", "5", "--kind", "heisenberg", "--out",
       sys_path.string()});

  // Group 5 is the vertical line; index 0 is delta_0.
  auto amb = run({"ambiguity", "--in", sys_path.string(), "--signal", "5:0",
                  "--out", csv_path.string()});
  CHECK(amb.code == kExitOk);

  std::ifstream csv(csv_path);
  std::string first_line;
  std::getline(csv, first_line);
  CHECK(first_line == "1.0,1.0,1.0,1.0,1.0");
  int rows = 1;
  std::string line;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(line == "0.0,0.0,0.0,0.0,0.0");
  }
  CHECK(rows == 5);

  auto unknown = run({"ambiguity", "--in", sys_path.string(), "--signal",
                      "9:9", "--out", csv_path.string()});
  CHECK(unknown.code == kExitInput);

  fs::remove(sys_path);
  fs::remove(csv_path);
}

TEST_CASE("extended generation and verification") {
  const fs::path path = temp_file("p5_ext.oss");
  auto gen = run({"generate", "--p", "5", "--kind", "extended", "--out",
                  path.string()});
  CHECK(gen.code == kExitOk);
  CHECK(gen.out.find("signals=1125") != std::string::npos);

  auto ver = run({"verify", "--in", path.string(), "--seed", "7"});
  CHECK(ver.code == kExitOk);
  CHECK(ver.out.find("pass=1") != std::string::npos);

  SignalSystem back = load_system(path);
  CHECK(back.kind == SystemKind::extended);
  CHECK(back.base_kind == SystemKind::split);
  CHECK(back.signals[7].tau == 1);  // translate order is tau-major
  CHECK(back.signals[7].w == 2);
  fs::remove(path);
}

TEST_CASE("radar and cdma cli runs") {
  auto radar = run({"radar", "--p", "13", "--trials", "100", "--seed", "3"});
  CHECK(radar.code == kExitOk);
  CHECK(radar.out.find("recovery_rate=1.0") != std::string::npos);

  auto cdma = run({"cdma", "--p", "13", "--users", "2", "--scenario", "full",
                   "--known-distortions", "--trials", "50", "--seed", "3",
                   "--max-tori", "3", "--kind", "nonsplit"});
  CHECK(cdma.code == kExitOk);
  CHECK(cdma.out.find("ber=0.0") != std::string::npos);
}

TEST_CASE("byte-identical outputs for identical invocations") {
  const fs::path a = temp_file("det_a.oss");
  const fs::path b = temp_file("det_b.oss");
  run({"generate", "--p", "7", "--kind", "split", "--out", a.string()});
  run({"generate", "--p", "7", "--kind", "split", "--out", b.string()});
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
  fs::remove(a);
  fs::remove(b);

  auto r1 = run({"radar", "--p", "7", "--trials", "40", "--seed", "5",
                 "--snr-db", "6"});
  auto r2 = run({"radar", "--p", "7", "--trials", "40", "--seed", "5",
                 "--snr-db", "6"});
  CHECK(r1.out == r2.out);

  auto c1 = run({"cdma", "--p", "7", "--users", "2", "--trials", "25",
                 "--seed", "5", "--snr-db", "8"});
  auto c2 = run({"cdma", "--p", "7", "--users", "2", "--trials", "25",
                 "--seed", "5", "--snr-db", "8"});
  CHECK(c1.out == c2.out);
}
