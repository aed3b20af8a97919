#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hypertess/encounter.hpp"
#include "hypertess/estimate.hpp"
#include "hypertess/estimators.hpp"
#include "hypertess/measure.hpp"
#include "hypertess/percolation.hpp"
#include "hypertess/polygon2d.hpp"

namespace hypertess {

inline constexpr const char* kVersion = "0.1.0";

// shortest text that round-trips the double
std::string format_double(double x);

// "hypertess <version> <command> key=value ... seed=<seed>"
struct Provenance {
  std::string command;
  std::vector<std::pair<std::string, std::string>> flags;  // full resolved flag set
  std::uint64_t seed = 0;

  std::string line() const;
};

enum class OutputFormat { text, csv, jsonl, svg };

void write_provenance(std::ostream& out, const Provenance& p, OutputFormat format);

// header "d gamma R seed count", then one "u1 ... ud t" line per hyperplane;
// lines starting with '#' are skipped on read
void write_sample(std::ostream& out, const ProcessSample& sample);
ProcessSample read_sample(std::istream& in);
ProcessSample read_sample_file(const std::string& path);

std::string csv_field(const std::string& s);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

void write_sweep_csv(std::ostream& out, const SweepResult& sweep);
void write_report_jsonl(std::ostream& out, const EstimateReport& report);
void write_mixing_csv(std::ostream& out, const std::vector<MixingPoint>& points, int d, double r, double gamma);
void write_polygon_text(std::ostream& out, const CellPolygon2d& cell);
void write_forest_csv(std::ostream& out, const std::vector<std::pair<int, int>>& edges,
                      const std::vector<KleinPoint>& points);

}  // namespace hypertess
