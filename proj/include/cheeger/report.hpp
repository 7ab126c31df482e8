#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cheeger/corpus.hpp"
#include "cheeger/domain.hpp"
#include "cheeger/result.hpp"
#include "cheeger/rof.hpp"

namespace cheeger {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunReport {
  std::string command;
  std::string domain_name;
  std::string variant;
  Measures domain;
  std::string method;
  double h = 0.0;
  double r = 0.0;
  Measures set;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> notes;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::optional<CalibrabilityReport> rof;

  bool checks_pass() const;
};

RunReport make_report(std::string command, const DomainSpec& domain, const CheegerResult& result);

// Pretty JSON with sorted keys and every double written with 17 significant
// digits. Timings are left out unless requested so that repeated runs give
// identical bytes.
std::string to_json(const RunReport& report, bool include_timings = false);

// Domain outline, Cheeger set (light grey), inner set (dark grey) and a
// scale bar. Coordinates are printed with fixed precision.
std::string render_svg(const DomainSpec& domain, const CheegerResult& result);

void write_text_file(const std::filesystem::path& path, std::string_view content);

// Domain file schema (all lengths in domain units):
//   {"type": "polygon", "vertices": [[x, y], ...]}
//   {"type": "disks", "disks": [{"c": [x, y], "r": r}, ...]}
//   {"type": "strip", "spine": [[x, y], ...], "halfwidth": w}
//   {"type": "mask", "file": "m.pgm", "spacing": s, "origin": [x, y]}
// with optional "name" and "expected" (object of numbers). A path ending in
// .pgm is read as a mask with spacing 1/resolution and origin (0, 0).
DomainSpec parse_domain(const std::filesystem::path& path, double resolution = 256.0);
DomainSpec parse_domain_text(std::string_view text, const std::string& source,
                             const std::filesystem::path& base_dir = {});

// Plain PGM (P2); values above 127 are inside. The first row is the top.
GridDomain read_pgm(const std::filesystem::path& path, double spacing, Vec2 origin = {});

extern const char* const kDomainSchema;

}  // namespace cheeger
