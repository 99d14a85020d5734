#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "osc/metrics.hpp"
#include "osc/system.hpp"

namespace osc {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// %.17g, with a trailing ".0" for integral values so the text stream is
/// unambiguous about being real-valued. Round-trips doubles exactly.
std::string format_number(double x);

/// Self-describing text format for signal sets. load(save(S)) == S exactly
/// (decimal serialization at 17 significant digits).
std::string serialize_system(const SignalSystem& sys, const PrimeField& F);
SignalSystem parse_system(const std::string& text);

void save_system(const std::filesystem::path& path, const SignalSystem& sys,
                 const PrimeField& F);
SignalSystem load_system(const std::filesystem::path& path);

/// |grid| magnitudes as CSV, tau rows / w columns, no header.
std::string ambiguity_csv(const AmbiguityTable& table);

}  // namespace osc
