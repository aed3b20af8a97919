#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "hypertess/encounter.hpp"
#include "hypertess/errors.hpp"
#include "hypertess/estimators.hpp"
#include "hypertess/io.hpp"
#include "hypertess/percolation.hpp"
#include "hypertess/render.hpp"
#include "hypertess/sections.hpp"
#include "hypertess/tessellation.hpp"

using namespace hypertess;

namespace {

const std::vector<std::string> kCommands = {"sample",   "crossing", "sweep",     "twopoint", "vertexint", "cells2d",
                                            "sections", "mixing",   "encounter", "render",   "selftest"};

// flat key=value file, '#' comments
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      auto p = s.find_first_not_of(" \t\r");
      auto q = s.find_last_not_of(" \t\r");
      return p == std::string::npos ? std::string() : s.substr(p, q - p + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

// config values become flags placed before the command line ones, so later
// command line occurrences win
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty() || rest.empty()) return rest;
  std::vector<std::string> out{rest.front()};
  std::map<std::string, bool> given;
  for (std::size_t i = 1; i < rest.size(); ++i)
    if (rest[i].rfind("--", 0) == 0) given[rest[i].substr(2, rest[i].find('=') - 2)] = true;
  for (const auto& [k, v] : read_config(path)) {
    if (given.count(k)) continue;
    out.push_back("--" + k);
    out.push_back(v);
  }
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

struct Common {
  std::uint64_t seed = 1;
  int jobs = 0;
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "base seed")->envname("HYPERTESS_SEED");
  sub->add_option("--jobs", c.jobs, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  sub->add_option("--out", c.out, "output file (default stdout)");
}

Provenance provenance_of(const CLI::App* sub, const Common& c) {
  Provenance p;
  p.command = sub->get_name();
  p.seed = c.seed;
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "seed" || name == "out") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const std::string& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = opt->get_default_str();
    }
    if (opt->get_type_size() == 0) value = opt->count() > 0 ? "true" : "false";
    p.flags.emplace_back(name, value);
  }
  return p;
}

// stdout or a file; the file is only replaced after a successful run
class Sink {
 public:
  explicit Sink(const std::string& path) : path_(path) {}
  std::ostream& stream() { return path_.empty() ? std::cout : buf_; }
  void commit() {
    if (path_.empty()) return;
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path_);
    f << buf_.str();
  }

 private:
  std::string path_;
  std::ostringstream buf_;
};

EstimateReport crossing_report(const CrossingEstimate& e) {
  EstimateReport r;
  r.name = "crossing_probability";
  r.parameters = {{"d", e.d}, {"gamma", e.gamma}, {"R", e.R}, {"h", e.h}};
  r.estimate = e.p_hat;
  r.standard_error = e.se;
  r.n = e.n;
  r.seed = e.seed;
  r.extras = {{"hits", static_cast<double>(e.hits)},
              {"indeterminate", static_cast<double>(e.indeterminate)},
              {"gamma_crit", gamma_crit(e.d)}};
  return r;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::logic_error&) {
      throw UsageError("bad number in list: '" + item + "'");
    }
    if (used != item.size()) throw UsageError("bad number in list: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

std::vector<Check> selftest_checks() {
  std::vector<Check> out;
  auto add = [&](std::string name, bool ok, std::string detail = "") {
    out.push_back({std::move(name), ok, std::move(detail)});
  };
  add("gamma_crit(2) = pi", std::fabs(gamma_crit(2) - std::numbers::pi) <= 4 * std::numeric_limits<double>::epsilon(),
      format_double(gamma_crit(2)));
  add("gamma_crit(3) = 8", std::fabs(gamma_crit(3) - 8.0) <= 1e-10, format_double(gamma_crit(3)));
  double worst_face = 0.0, worst_sec = 0.0;
  for (int d = 3; d <= 8; ++d)
    for (int k = 2; k < d; ++k)
      worst_face = std::max(worst_face, std::fabs(gamma_crit_face(d, k) * section_constant(d, k) - gamma_crit(k)));
  for (int d = 2; d <= 8; ++d)
    for (int k = 1; k < d; ++k)
      worst_sec = std::max(worst_sec, std::fabs(section_constant(d, k) - section_constant_gamma_form(d, k)));
  add("gamma_crit_face(d,k) c(d,k) = gamma_crit(k)", worst_face <= 1e-10, format_double(worst_face));
  add("section constant forms agree", worst_sec <= 1e-12, format_double(worst_sec));
  add("c(3,2) = pi/4", std::fabs(section_constant(3, 2) - std::numbers::pi / 4) <= 1e-12);

  // isometries preserve distance and the Lorentz form
  Rng rng(12345);
  double worst_dist = 0.0, worst_form = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    int d = 2 + rep % 3;
    Isometry g = random_isometry(d, 2.0, rng);
    KleinPoint x = random_ball_point(d, 2.0, rng), y = random_ball_point(d, 2.0, rng);
    worst_dist = std::max(worst_dist, std::fabs(dist(g.apply(x), g.apply(y)) - dist(x, y)));
    worst_form = std::max(worst_form, g.form_defect());
  }
  add("isometries preserve distance", worst_dist <= 1e-9, format_double(worst_dist));
  add("isometries preserve the form", worst_form <= 1e-10, format_double(worst_form));

  // disc area against 2 pi (cosh r - 1)
  CellPolygon2d disc;
  disc.rho = std::tanh(1.5);
  disc.full_disc = true;
  double area = hyperbolic_area(disc);
  add("window disc area", std::fabs(area - 2 * std::numbers::pi * (std::cosh(1.5) - 1)) <= 1e-10, format_double(area));
  add("mu_hit_ball(2, r) = 2 sinh r", std::fabs(mu_hit_ball(2, 1.0) - 2 * std::sinh(1.0)) <= 1e-12);

  // default encounter configuration is valid and its walls pass both predicates
  EncounterConfig cfg;
  bool valid = true;
  try {
    validate(2, cfg);
  } catch (const ConfigError&) {
    valid = false;
  }
  add("default encounter config valid", valid);
  if (valid) {
    auto walls = build_walls(2, cfg, 7);
    add("walls cover G", walls_cover_G(walls, 2, cfg.r, cfg.epsilon));
    add("walls miss caps", walls_miss_caps(walls, 2, cfg.epsilon));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson hyperplane tessellations of hyperbolic space in the Klein model", "hypertess"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.option_defaults()->always_capture_default();

  Common c;
  int d = 2;
  int k = 2;
  double gamma = 1.0, R = 6.0, h = 0.01, s = 1.0, r = 1.0, margin = 1.0, max_shift = 0.0;
  double R_count = 2.0, R_window = 2.25;
  long n = 1000;
  std::string gammas = "2.0:4.4:0.4", separations = "0,2,4,8,16,20", sample_in, forest_out, polygon_out;
  bool points_flag = false;
  EncounterConfig ec;

  std::map<std::string, CLI::App*> subs;
  auto make = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, c);
    subs[name] = sub;
    return sub;
  };

  auto* s_sample = make("sample", "sample the process in B(o,R) and write it as text");
  s_sample->add_option("--d", d)->check(CLI::Range(2, 64));
  s_sample->add_option("--gamma", gamma)->check(CLI::NonNegativeNumber);
  s_sample->add_option("--R", R)->check(CLI::PositiveNumber);

  auto* s_cross = make("crossing", "probability that the zero cell reaches the window sphere");
  s_cross->add_option("--d", d)->check(CLI::Range(2, 64));
  s_cross->add_option("--gamma", gamma)->check(CLI::NonNegativeNumber);
  s_cross->add_option("--R", R)->check(CLI::PositiveNumber);
  s_cross->add_option("--h", h)->check(CLI::PositiveNumber);
  s_cross->add_option("--n", n)->check(CLI::PositiveNumber);

  auto* s_sweep = make("sweep", "coupled crossing sweep over an intensity grid");
  s_sweep->add_option("--d", d)->check(CLI::Range(2, 64));
  s_sweep->add_option("--R", R)->check(CLI::PositiveNumber);
  s_sweep->add_option("--h", h)->check(CLI::PositiveNumber);
  s_sweep->add_option("--gammas", gammas, "grid a:b:step");
  s_sweep->add_option("--n", n)->check(CLI::PositiveNumber);

  auto* s_two = make("twopoint", "same-cell frequency of two points at distance s");
  s_two->add_option("--d", d)->check(CLI::Range(2, 64));
  s_two->add_option("--gamma", gamma)->check(CLI::NonNegativeNumber);
  s_two->add_option("--s", s)->check(CLI::PositiveNumber);
  s_two->add_option("--n", n)->check(CLI::Range(2L, 1L << 40));
  s_two->add_option("--max-shift", max_shift, "place the pair by a random isometry")->check(CLI::NonNegativeNumber);

  auto* s_vert = make("vertexint", "planar vertex intensity");
  s_vert->add_option("--gamma", gamma)->check(CLI::NonNegativeNumber);
  s_vert->add_option("--R-count", R_count)->check(CLI::PositiveNumber);
  s_vert->add_option("--R-window", R_window)->check(CLI::PositiveNumber);
  s_vert->add_option("--n", n)->check(CLI::Range(2L, 1L << 40));

  auto* s_cells = make("cells2d", "planar face intensity and mean bounded cell area");
  s_cells->add_option("--gamma", gamma)->check(CLI::NonNegativeNumber);
  s_cells->add_option("--R", R)->check(CLI::PositiveNumber);
  s_cells->add_option("--margin", margin)->check(CLI::PositiveNumber);
  s_cells->add_option("--n", n)->check(CLI::Range(2L, 1L << 40));

  auto* s_sec = make("sections", "induced process on a k-plane");
  s_sec->add_option("--d", d)->check(CLI::Range(3, 64));
  s_sec->add_option("--k", k)->check(CLI::Range(2, 63));
  s_sec->add_option("--gamma", gamma)->check(CLI::NonNegativeNumber);
  s_sec->add_option("--r", r)->check(CLI::PositiveNumber);
  s_sec->add_option("--n", n)->check(CLI::Range(2L, 1L << 40));

  auto* s_mix = make("mixing", "measure of hyperplanes hitting two balls, by separation");
  s_mix->add_option("--d", d)->check(CLI::Range(2, 64));
  s_mix->add_option("--r", r)->check(CLI::PositiveNumber);
  s_mix->add_option("--gamma", gamma)->check(CLI::NonNegativeNumber);
  s_mix->add_option("--separations", separations, "comma separated");

  auto* s_enc = make("encounter", "r-encounter point detection rate");
  s_enc->add_option("--d", d)->check(CLI::Range(2, 64));
  s_enc->add_option("--gamma", gamma)->check(CLI::NonNegativeNumber);
  s_enc->add_option("--R", ec.R)->check(CLI::PositiveNumber);
  s_enc->add_option("--r", ec.r)->check(CLI::PositiveNumber);
  s_enc->add_option("--point-intensity", ec.point_intensity)->check(CLI::PositiveNumber);
  s_enc->add_option("--n", n)->check(CLI::Range(2L, 1L << 40));
  s_enc->add_option("--forest-out", forest_out, "forest edges of the first window as CSV");

  auto* s_render = make("render", "SVG of a planar sample with its zero cell");
  s_render->add_option("--sample", sample_in, "sample text file (otherwise sampled from gamma, R, seed)");
  s_render->add_option("--gamma", gamma)->check(CLI::NonNegativeNumber);
  s_render->add_option("--R", R)->check(CLI::PositiveNumber);
  s_render->add_flag("--points", points_flag, "overlay a point process and mark encounter points");
  s_render->add_option("--r", ec.r, "encounter radius for --points")->check(CLI::PositiveNumber);
  s_render->add_option("--point-intensity", ec.point_intensity)->check(CLI::PositiveNumber);
  s_render->add_option("--polygon-out", polygon_out, "zero cell in the text polygon format");

  make("selftest", "closed-form identities and deterministic checks");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = merge_config(args);
  } catch (const Error& e) {
    std::cerr << "hypertess: " << e.what() << "\n";
    return 2;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = nullptr;
  for (const std::string& name : kCommands)
    if (subs[name]->parsed()) sub = subs[name];
  set_jobs(c.jobs);
  Sink sink(c.out);
  std::ostream& out = sink.stream();
  const Provenance prov = provenance_of(sub, c);

  try {
    const std::string cmd = sub->get_name();
    if (cmd == "sample") {
      write_provenance(out, prov, OutputFormat::text);
      write_sample(out, sample_process(d, gamma, R, c.seed));
    } else if (cmd == "crossing") {
      write_provenance(out, prov, OutputFormat::jsonl);
      write_report_jsonl(out, crossing_report(crossing_probability(d, gamma, R, h, n, c.seed)));
    } else if (cmd == "sweep") {
      SweepResult sw = sweep(d, R, h, parse_grid(gammas), n, c.seed);
      write_provenance(out, prov, OutputFormat::csv);
      write_sweep_csv(out, sw);
      try {
        ThresholdInterval t = estimate_threshold(sw);
        std::cerr << "0.5-crossing at R = " << t.R << ": " << t.center << " in [" << t.lo << ", " << t.hi << "]\n";
      } catch (const NumericError& e) {
        std::cerr << e.what() << "\n";
      }
    } else if (cmd == "twopoint") {
      EstimateReport rep = max_shift > 0.0 ? two_point_placed(d, gamma, s, max_shift, n, c.seed)
                                           : two_point(d, gamma, s, n, c.seed);
      write_provenance(out, prov, OutputFormat::jsonl);
      write_report_jsonl(out, rep);
    } else if (cmd == "vertexint") {
      EstimateReport rep = vertex_intensity_2d(gamma, R_count, std::max(R_window, R_count), n, c.seed);
      write_provenance(out, prov, OutputFormat::jsonl);
      write_report_jsonl(out, rep);
    } else if (cmd == "cells2d") {
      CellStats st = cell_stats_2d(gamma, R, margin, n, c.seed);
      write_provenance(out, prov, OutputFormat::jsonl);
      write_report_jsonl(out, st.face_intensity);
      write_report_jsonl(out, st.mean_area);
    } else if (cmd == "sections") {
      if (k >= d) throw UsageError("sections: need k < d");
      write_provenance(out, prov, OutputFormat::jsonl);
      write_report_jsonl(out, verify_section_intensity(d, k, gamma, r, n, c.seed));
    } else if (cmd == "mixing") {
      auto pts = mixing_decay(d, r, gamma, parse_list(separations));
      write_provenance(out, prov, OutputFormat::csv);
      write_mixing_csv(out, pts, d, r, gamma);
    } else if (cmd == "encounter") {
      EncounterRate er = encounter_rate(d, gamma, ec, n, c.seed);
      write_provenance(out, prov, OutputFormat::jsonl);
      write_report_jsonl(out, er.rate);
      if (!forest_out.empty()) {
        std::uint64_t sub0 = derive_seed(c.seed, 0);
        ProcessSample smp = sample_process(d, gamma, ec.R, sub0);
        Rng rng(derive_seed(sub0, 0x7e11));
        const double RY = ec.R - ec.r - 1e-9;
        std::poisson_distribution<long> cnt(ec.point_intensity * ball_volume(d, RY));
        long m = cnt(rng);
        std::vector<KleinPoint> pts;
        for (long i = 0; i < m; ++i) pts.push_back(random_ball_point(d, RY, rng));
        std::vector<double> labels(pts.size());
        for (double& l : labels) l = uniform01(rng);
        DetectionResult det = detect_encounter_points(smp, pts, ec.r);
        Sink fs(forest_out);
        write_provenance(fs.stream(), prov, OutputFormat::csv);
        write_forest_csv(fs.stream(), build_forest(smp, det.encounter, pts, labels, ec.r), pts);
        fs.commit();
      }
    } else if (cmd == "render") {
      Scene2d scene;
      scene.sample = sample_in.empty() ? sample_process(2, gamma, R, c.seed) : read_sample_file(sample_in);
      if (scene.sample.d != 2) throw UsageError("render: planar samples only");
      try {
        scene.zero_cell = zero_cell_polygon(scene.sample).polygon;
      } catch (const DegenerateError& e) {
        std::cerr << "render: " << e.what() << "; zero cell not drawn\n";
      }
      if (points_flag) {
        Rng rng(derive_seed(c.seed, 0x7e11));
        const double RY = scene.sample.window_radius - ec.r - 1e-9;
        if (!(RY > 0.0)) throw UsageError("render: --points needs R > r");
        std::poisson_distribution<long> cnt(ec.point_intensity * ball_volume(2, RY));
        long m = cnt(rng);
        for (long i = 0; i < m; ++i) scene.points.push_back(random_ball_point(2, RY, rng));
        std::vector<double> labels(scene.points.size());
        for (double& l : labels) l = uniform01(rng);
        DetectionResult det = detect_encounter_points(scene.sample, scene.points, ec.r);
        scene.highlighted = det.encounter;
        scene.edges = build_forest(scene.sample, det.encounter, scene.points, labels, ec.r);
      }
      write_svg(out, scene, prov);
      if (!polygon_out.empty() && scene.zero_cell) {
        Sink ps(polygon_out);
        write_provenance(ps.stream(), prov, OutputFormat::text);
        write_polygon_text(ps.stream(), *scene.zero_cell);
        ps.commit();
      }
    } else if (cmd == "selftest") {
      bool all = true;
      for (const Check& ch : selftest_checks()) {
        all = all && ch.ok;
        out << (ch.ok ? "ok   " : "FAIL ") << ch.name << (ch.detail.empty() ? "" : "  (" + ch.detail + ")") << "\n";
      }
      sink.commit();
      return all ? 0 : 1;
    }
    sink.commit();
  } catch (const UsageError& e) {
    std::cerr << "hypertess " << sub->get_name() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "hypertess " << sub->get_name() << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
