#include "cheeger/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "cheeger/error.hpp"
#include "cheeger/strips.hpp"

namespace cheeger {

namespace {

using nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // Keep integral doubles recognisable as floating point.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void dump(const json& j, std::ostringstream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out << ",\n";
        first = false;
        out << inner << json(key).dump() << ": ";
        dump(value, out, indent + 1);
      }
      out << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out << ",\n";
        out << inner;
        dump(j[k], out, indent + 1);
      }
      out << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float:
      out << number(j.get<double>());
      return;
    default:
      out << j.dump();
  }
}

json measures_json(const Measures& m) {
  return {{"area", m.area}, {"perimeter", m.perimeter}};
}

// Maps domain coordinates to SVG pixels with y pointing down.
struct Frame {
  Vec2 lo;
  Vec2 hi;
  double scale = 1.0;
  double margin = 20.0;

  double x(double v) const { return margin + (v - lo.x) * scale; }
  double y(double v) const { return margin + (hi.y - v) * scale; }
  double width() const { return 2 * margin + (hi.x - lo.x) * scale; }
  double height() const { return 3 * margin + (hi.y - lo.y) * scale; }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string point(const Frame& f, Vec2 p) {
  return fmt(f.x(p.x)) + " " + fmt(f.y(p.y));
}

std::string region_path(const Frame& f, const RoundedRegion& region) {
  std::string d = "M " + point(f, start_point(region.boundary().front()));
  for (const auto& e : region.boundary()) {
    if (const auto* s = std::get_if<Segment>(&e)) {
      d += " L " + point(f, s->p1);
    } else {
      const auto& a = std::get<Arc>(e);
      // Flipping y turns counter-clockwise into the positive SVG sweep.
      d += " A " + fmt(a.radius * f.scale) + " " + fmt(a.radius * f.scale) + " 0 " +
           (a.sweep() > std::numbers::pi ? "1" : "0") + " " + (a.ccw ? "1" : "0") + " " + point(f, a.last());
    }
  }
  return d + " Z";
}

std::string ring_path(const Frame& f, std::span<const Vec2> ring, double scale = 1.0) {
  std::string d;
  for (std::size_t k = 0; k < ring.size(); ++k) d += (k ? " L " : "M ") + point(f, scale * ring[k]);
  return d + " Z";
}

// Horizontal runs of inside cells as rectangles.
std::string mask_path(const Frame& f, const GridDomain& g, double scale = 1.0) {
  std::string d;
  const double s = g.spacing() * scale;
  const Vec2 o = scale * g.origin();
  for (int j = 0; j < g.height(); ++j) {
    for (int i = 0; i < g.width();) {
      if (!g.inside(i, j)) {
        ++i;
        continue;
      }
      int k = i;
      while (k < g.width() && g.inside(k, j)) ++k;
      const Vec2 p{o.x + i * s, o.y + (j + 1) * s};
      d += (d.empty() ? "M " : " M ") + point(f, p) + " h " + fmt((k - i) * s * f.scale) + " v " +
           fmt(s * f.scale) + " h " + fmt(-(k - i) * s * f.scale) + " Z";
      i = k;
    }
  }
  return d;
}

// Cell edges between inside and outside, merged along rows and columns.
std::string mask_outline(const Frame& f, const GridDomain& g) {
  std::string d;
  const double s = g.spacing();
  const Vec2 o = g.origin();
  for (int j = 0; j <= g.height(); ++j) {
    for (int i = 0; i < g.width();) {
      if (g.inside(i, j) == g.inside(i, j - 1)) {
        ++i;
        continue;
      }
      int k = i;
      while (k < g.width() && g.inside(k, j) != g.inside(k, j - 1)) ++k;
      d += (d.empty() ? "M " : " M ") + point(f, {o.x + i * s, o.y + j * s}) + " L " +
           point(f, {o.x + k * s, o.y + j * s});
      i = k;
    }
  }
  for (int i = 0; i <= g.width(); ++i) {
    for (int j = 0; j < g.height();) {
      if (g.inside(i, j) == g.inside(i - 1, j)) {
        ++j;
        continue;
      }
      int k = j;
      while (k < g.height() && g.inside(i, k) != g.inside(i - 1, k)) ++k;
      d += (d.empty() ? "M " : " M ") + point(f, {o.x + i * s, o.y + j * s}) + " L " +
           point(f, {o.x + i * s, o.y + k * s});
      j = k;
    }
  }
  return d;
}

std::string set_path(const Frame& f, const CheegerSet& set, double strip_scale) {
  if (const auto* r = std::get_if<RoundedRegion>(&set)) return region_path(f, *r);
  if (const auto* g = std::get_if<GridDomain>(&set)) return mask_path(f, *g, strip_scale);
  if (const auto* s = std::get_if<StripSet>(&set)) return mask_path(f, s->mask, strip_scale);
  return {};
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::parse_error, where + ": missing field \"" + key + "\"");
  return j.at(key);
}

double real(const json& j, const std::string& where) {
  if (!j.is_number()) throw Error(Errc::parse_error, where + ": expected a number");
  return j.get<double>();
}

Vec2 vec2(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw Error(Errc::parse_error, where + ": expected [x, y]");
  return {real(j[0], where + "[0]"), real(j[1], where + "[1]")};
}

std::vector<Vec2> points(const json& j, const std::string& where) {
  if (!j.is_array()) throw Error(Errc::parse_error, where + ": expected an array of points");
  std::vector<Vec2> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(vec2(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

const char* const kDomainSchema = R"(Domain file schema (JSON, lengths in domain units):
  {"type": "polygon", "vertices": [[x, y], ...]}
  {"type": "disks", "disks": [{"c": [x, y], "r": r}, ...]}
  {"type": "strip", "spine": [[x, y], ...], "halfwidth": w}
  {"type": "mask", "file": "mask.pgm", "spacing": s, "origin": [x, y]}
Optional keys: "name" (string), "expected" (object of numbers).
A .pgm path (plain P2, value > 127 inside) is read as a mask with spacing 1/resolution.
)";

bool RunReport::checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

RunReport make_report(std::string command, const DomainSpec& domain, const CheegerResult& result) {
  RunReport report;
  report.command = std::move(command);
  report.domain_name = domain.name;
  report.variant = variant_name(domain);
  report.domain = domain_measures(domain);
  report.method = to_string(result.method);
  report.h = result.h;
  report.r = result.r;
  report.set = {result.set_area, result.set_perimeter};
  report.diagnostics = result.diagnostics;
  report.notes = result.notes;
  return report;
}

std::string to_json(const RunReport& report, bool include_timings) {
  json j;
  j["tool"] = "cheeger";
  j["version"] = kToolVersion;
  j["units"] = "dimensionless domain units";
  j["command"] = report.command;
  j["domain"] = {{"name", report.domain_name}, {"variant", report.variant},
                 {"area", report.domain.area}, {"perimeter", report.domain.perimeter}};
  if (!report.rof) {
    j["method"] = report.method;
    j["h"] = report.h;
    j["r"] = report.r;
    j["set"] = measures_json(report.set);
    j["diagnostics"] = report.diagnostics;
  } else {
    json entries = json::array();
    for (const auto& e : report.rof->entries) {
      entries.push_back({{"lambda", e.lambda}, {"predicted", e.predicted}, {"fitted", e.fitted},
                         {"residual", e.residual}, {"deviation", e.deviation}, {"sup_norm", e.sup_norm},
                         {"min_value", e.min_value}, {"iterations", e.iterations},
                         {"solver_residual", e.solver_residual}, {"converged", e.converged}});
    }
    j["rof"] = {{"ratio", report.rof->ratio}, {"entries", entries}, {"consistent", report.rof->consistent}};
  }
  j["notes"] = report.notes;
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"threshold", c.threshold},
                      {"slack", c.slack}});
  }
  j["checks"] = checks;
  if (include_timings) {
    json t = json::object();
    for (const auto& [stage, ms] : report.timings_ms) t[stage] = ms;
    j["timings_ms"] = t;
  }
  std::ostringstream out;
  dump(j, out, 0);
  out << "\n";
  return out.str();
}

std::string render_svg(const DomainSpec& domain, const CheegerResult& result) {
  const BoundingBox box = bounding_box(domain);
  Frame f;
  f.lo = box.min;
  f.hi = box.max;
  f.scale = 480.0 / std::max(box.max.x - box.min.x, box.max.y - box.min.y);
  double strip_scale = 1.0;
  if (const auto* s = std::get_if<StripShape>(&domain.shape)) strip_scale = s->halfwidth;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(f.width()) << "\" height=\""
      << fmt(f.height()) << "\" viewBox=\"0 0 " << fmt(f.width()) << " " << fmt(f.height()) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<path class=\"cheeger-set\" fill=\"#d3d3d3\" stroke=\"none\" d=\"" << set_path(f, result.set, strip_scale)
      << "\"/>\n";
  if (result.inner_set) {
    svg << "<path class=\"inner-set\" fill=\"#696969\" stroke=\"none\" d=\""
        << set_path(f, *result.inner_set, strip_scale) << "\"/>\n";
  }

  const std::string stroke = "fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"";
  std::visit(overloaded{[&](const PolygonShape& p) {
                          svg << "<path class=\"domain\" " << stroke << " d=\"" << ring_path(f, p.vertices)
                              << "\"/>\n";
                        },
                        [&](const DisksShape& d) {
                          for (const auto& disk : d.disks) {
                            svg << "<circle class=\"domain\" " << stroke << " cx=\"" << fmt(f.x(disk.center.x))
                                << "\" cy=\"" << fmt(f.y(disk.center.y)) << "\" r=\"" << fmt(disk.radius * f.scale)
                                << "\"/>\n";
                          }
                        },
                        [&](const StripShape& s) {
                          const Strip strip = build_strip(s.spine, s.halfwidth);
                          svg << "<path class=\"domain\" " << stroke << " d=\""
                              << ring_path(f, strip.outline(), strip.scale()) << "\"/>\n";
                        },
                        [&](const MaskShape& m) {
                          svg << "<path class=\"domain\" " << stroke << " d=\"" << mask_outline(f, m.grid)
                              << "\"/>\n";
                        }},
             domain.shape);

  // Scale bar: the largest power of ten not exceeding a quarter of the width.
  const double bar = std::pow(10.0, std::floor(std::log10(0.25 * (box.max.x - box.min.x))));
  const double y = f.height() - f.margin;
  svg << "<g class=\"scale-bar\"><line x1=\"" << fmt(f.margin) << "\" y1=\"" << fmt(y) << "\" x2=\""
      << fmt(f.margin + bar * f.scale) << "\" y2=\"" << fmt(y) << "\" stroke=\"black\" stroke-width=\"2\"/>"
      << "<text x=\"" << fmt(f.margin) << "\" y=\"" << fmt(y + 14) << "\" font-family=\"sans-serif\" font-size=\"12\">"
      << number(bar) << "</text></g>\n";
  svg << "</svg>\n";
  return svg.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(Errc::io_error, "write failed for " + path.string());
}

DomainSpec parse_domain_text(std::string_view text, const std::string& source, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t at = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at), '\n');
    throw Error(Errc::parse_error, source + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  const json& type = field(j, "type", source);
  if (!type.is_string()) throw Error(Errc::parse_error, source + ": \"type\" must be a string");
  const std::string kind = type.get<std::string>();

  DomainSpec spec;
  spec.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>()
                                                          : std::filesystem::path(source).stem().string();
  if (kind == "polygon") {
    spec.shape = PolygonShape{points(field(j, "vertices", source), source + ": vertices")};
  } else if (kind == "disks") {
    const json& list = field(j, "disks", source);
    if (!list.is_array()) throw Error(Errc::parse_error, source + ": disks must be an array");
    DisksShape disks;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string where = source + ": disks[" + std::to_string(k) + "]";
      disks.disks.push_back({vec2(field(list[k], "c", where), where + ".c"), real(field(list[k], "r", where), where + ".r")});
    }
    spec.shape = std::move(disks);
  } else if (kind == "strip") {
    spec.shape = StripShape{points(field(j, "spine", source), source + ": spine"),
                            j.contains("halfwidth") ? real(j["halfwidth"], source + ": halfwidth") : 1.0};
  } else if (kind == "mask") {
    const json& file = field(j, "file", source);
    if (!file.is_string()) throw Error(Errc::parse_error, source + ": file must be a string");
    const double spacing = real(field(j, "spacing", source), source + ": spacing");
    const Vec2 origin = j.contains("origin") ? vec2(j["origin"], source + ": origin") : Vec2{};
    const auto path = base_dir / file.get<std::string>();
    spec.shape = MaskShape{read_pgm(path, spacing, origin), path.string()};
  } else {
    throw Error(Errc::parse_error, source + ": unknown type \"" + kind + "\"");
  }
  if (j.contains("expected")) {
    const json& e = j["expected"];
    if (!e.is_object()) throw Error(Errc::parse_error, source + ": expected must be an object");
    for (const auto& [key, value] : e.items()) spec.expected[key] = real(value, source + ": expected." + key);
  }
  try {
    validate(spec);
  } catch (const Error& e) {
    const std::string what = e.what();
    throw Error(e.code(), source + ": " + what.substr(std::string(to_string(e.code())).size() + 2));
  }
  return spec;
}

DomainSpec parse_domain(const std::filesystem::path& path, double resolution) {
  if (path.extension() == ".pgm") {
    if (!(resolution > 0.0)) throw Error(Errc::resolution_too_coarse, "resolution must be positive");
    DomainSpec spec{path.stem().string(), MaskShape{read_pgm(path, 1.0 / resolution), path.string()}, {}};
    return spec;
  }
  return parse_domain_text(read_file(path), path.string(), path.parent_path());
}

GridDomain read_pgm(const std::filesystem::path& path, double spacing, Vec2 origin) {
  const std::string text = read_file(path);
  // Strip comments, then read whitespace-separated tokens.
  std::string clean;
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text[k] == '#') {
      while (k < text.size() && text[k] != '\n') ++k;
    }
    if (k < text.size()) clean += text[k];
  }
  std::istringstream in(clean);
  std::string magic;
  int width = 0, height = 0, maxval = 0;
  in >> magic >> width >> height >> maxval;
  if (magic != "P2" || !in || width <= 0 || height <= 0 || maxval <= 0) {
    throw Error(Errc::parse_error, path.string() + ": not a plain PGM (P2) header");
  }
  if (!(spacing > 0.0)) throw Error(Errc::parse_error, path.string() + ": spacing must be positive");
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(width) * height, 0);
  for (int row = 0; row < height; ++row) {
    for (int i = 0; i < width; ++i) {
      int v = 0;
      if (!(in >> v)) {
        throw Error(Errc::parse_error, path.string() + ": pixel data ends at row " + std::to_string(row + 1));
      }
      mask[static_cast<std::size_t>(height - 1 - row) * width + i] = v > 127 ? 1 : 0;
    }
  }
  if (std::none_of(mask.begin(), mask.end(), [](std::uint8_t c) { return c != 0; })) {
    throw Error(Errc::invalid_body, path.string() + ": mask has no inside cell");
  }
  return GridDomain(width, height, spacing, origin, std::move(mask));
}

}  // namespace cheeger
