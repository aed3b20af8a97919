#include "hypertess/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "hypertess/errors.hpp"

namespace hypertess {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string Provenance::line() const {
  std::string s = std::string("hypertess ") + kVersion + " " + command;
  for (const auto& [k, v] : flags) s += " " + k + "=" + v;
  s += " seed=" + std::to_string(seed);
  return s;
}

void write_provenance(std::ostream& out, const Provenance& p, OutputFormat format) {
  switch (format) {
    case OutputFormat::text:
    case OutputFormat::csv:
      out << "# " << p.line() << "\n";
      break;
    case OutputFormat::jsonl: {
      nlohmann::ordered_json j;
      j["provenance"] = p.line();
      out << j.dump() << "\n";
      break;
    }
    case OutputFormat::svg:
      // the xml declaration must come first, so the comment follows it
      out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!-- " << p.line() << " -->\n";
      break;
  }
}

void write_sample(std::ostream& out, const ProcessSample& sample) {
  out << sample.d << " " << format_double(sample.gamma) << " " << format_double(sample.window_radius) << " "
      << sample.seed << " " << sample.hyperplanes.size() << "\n";
  for (const Hyperplane& H : sample.hyperplanes) {
    for (int i = 0; i < sample.d; ++i) out << format_double(H.normal()[i]) << " ";
    out << format_double(H.offset()) << "\n";
  }
}

namespace {

bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

ProcessSample read_sample(std::istream& in) {
  std::string line;
  if (!next_data_line(in, line)) throw UsageError("sample file: missing header");
  ProcessSample s;
  std::size_t count = 0;
  {
    std::istringstream hs(line);
    if (!(hs >> s.d >> s.gamma >> s.window_radius >> s.seed >> count))
      throw UsageError("sample file: bad header, expected 'd gamma R seed count'");
  }
  if (s.d < 2) throw UsageError("sample file: d must be >= 2");
  if (!(s.window_radius > 0.0)) throw UsageError("sample file: R must be positive");
  for (std::size_t k = 0; k < count; ++k) {
    if (!next_data_line(in, line)) throw UsageError("sample file: fewer hyperplanes than declared");
    std::istringstream ls(line);
    Vector u(s.d);
    double t;
    for (int i = 0; i < s.d; ++i)
      if (!(ls >> u[i])) throw UsageError("sample file: short hyperplane line " + std::to_string(k + 1));
    if (!(ls >> t)) throw UsageError("sample file: missing offset on line " + std::to_string(k + 1));
    s.hyperplanes.emplace_back(u, t);
  }
  return s;
}

ProcessSample read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return read_sample(in);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_field(fields[i]);
  out << "\n";
}

void write_sweep_csv(std::ostream& out, const SweepResult& sw) {
  write_csv_row(out, {"gamma", "p_hat", "se", "n", "R", "h", "indeterminate_fraction"});
  for (std::size_t i = 0; i < sw.gammas.size(); ++i) {
    double frac = sw.n > 0 ? static_cast<double>(sw.indeterminate[i]) / sw.n : 0.0;
    write_csv_row(out, {format_double(sw.gammas[i]), format_double(sw.p_hat[i]), format_double(sw.se[i]),
                        std::to_string(sw.n), format_double(sw.R), format_double(sw.h), format_double(frac)});
  }
}

void write_report_jsonl(std::ostream& out, const EstimateReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["params"] = params;
  j["estimate"] = r.estimate;
  j["se"] = r.standard_error;
  j["target"] = r.target ? nlohmann::ordered_json(*r.target) : nlohmann::ordered_json(nullptr);
  j["n"] = r.n;
  j["seed"] = r.seed;
  if (r.target) j["z"] = r.z_score();
  nlohmann::ordered_json extras = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.extras) extras[k] = v;
  j["extras"] = extras;
  out << j.dump() << "\n";
}

void write_mixing_csv(std::ostream& out, const std::vector<MixingPoint>& points, int d, double r, double gamma) {
  write_csv_row(out, {"separation", "mu_joint", "p_disjoint", "d", "r", "gamma"});
  for (const MixingPoint& p : points)
    write_csv_row(out, {format_double(p.separation), format_double(p.mu_joint), format_double(p.p_disjoint),
                        std::to_string(d), format_double(r), format_double(gamma)});
}

void write_polygon_text(std::ostream& out, const CellPolygon2d& cell) {
  // rho full_disc count, then "x y arc_after" per vertex
  out << format_double(cell.rho) << " " << (cell.full_disc ? 1 : 0) << " " << cell.vertices.size() << "\n";
  for (std::size_t i = 0; i < cell.vertices.size(); ++i)
    out << format_double(cell.vertices[i][0]) << " " << format_double(cell.vertices[i][1]) << " "
        << (cell.arc_after[i] ? 1 : 0) << "\n";
}

void write_forest_csv(std::ostream& out, const std::vector<std::pair<int, int>>& edges,
                      const std::vector<KleinPoint>& points) {
  write_csv_row(out, {"i", "j", "distance"});
  for (const auto& [i, j] : edges)
    write_csv_row(out, {std::to_string(i), std::to_string(j), format_double(dist(points[i], points[j]))});
}

}  // namespace hypertess
