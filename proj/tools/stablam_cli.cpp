// Command-line front end: sampling, rendering, convergence diagnostics,
// dimension estimates and the exact self-test.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "selftest.hpp"
#include "stablam/experiments.hpp"
#include "stablam/io.hpp"

namespace fs = std::filesystem;
using namespace stablam;

namespace {

enum Exit : int { kOk = 0, kCheckFailed = 1, kConfig = 2, kBudget = 3, kIo = 4 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Overflow:
    case ErrorKind::RetryBudgetExhausted:
    case ErrorKind::BudgetExceeded:
    case ErrorKind::ExcursionNotClosed:
      return kBudget;
    case ErrorKind::Io:
      return kIo;
    default:
      return kConfig;
  }
}

struct Options {
  std::uint64_t seed = 1;
  std::string preset;
  int p = 3;
  std::string weights;
  std::optional<double> theta;
  std::optional<std::int64_t> n;
  std::optional<double> grid;
  std::optional<double> eps;
  std::optional<int> trials;
  std::string out = ".";
  std::string scales = "4:9";
  std::string arc_scales = "5:12";
  int raster = 512;
  double min_gap = 0.0;
  std::int64_t depth = 1;
  std::vector<std::int64_t> ladder{100, 1000, 10000};
  std::string input, svg, pgm;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--seed", o.seed, "64-bit seed");
  app->add_option("--preset", o.preset, "uniform-dissection | p-angulation | stable-tail");
  app->add_option("--p", o.p, "face degree for the p-angulation preset");
  app->add_option("--weights", o.weights, "weight file {\"mu\": {\"2\": ...}, \"theta\": ...}");
  app->add_option("--theta", o.theta, "stable index in (1, 2]");
  app->add_option("--n", o.n, "number of leaves");
  app->add_option("--grid", o.grid, "grid cells per unit time (stable excursions keep at least this many)");
  app->add_option("--eps", o.eps, "jump threshold for the height process");
  app->add_option("--trials", o.trials, "trials (or seeds)");
  app->add_option("--out", o.out, "output directory");
  app->add_option("--min-gap", o.min_gap, "smallest chord span kept (circle fraction)");
  app->add_option("--depth", o.depth, "closure depth in grid cells");
}

WeightFamily resolve_family(const Options& o) {
  if (!o.weights.empty()) {
    WeightSpec spec = io::weights_from_json(io::parse(io::read_file(o.weights)));
    if (!spec.theta && o.theta) spec.theta = o.theta;
    return validate_weights(spec);
  }
  WeightSpec spec;
  spec.preset = o.preset == "uniform" ? "uniform-dissection" : o.preset;
  spec.p = o.p;
  spec.theta = o.theta;
  if (spec.preset.empty()) spec.preset = o.theta && *o.theta < 2.0 ? "stable-tail" : "uniform-dissection";
  return validate_weights(spec);
}

std::vector<double> parse_scales(const std::string& s) {
  int lo = 0, hi = 0;
  char colon = 0;
  if (std::sscanf(s.c_str(), "%d%c%d", &lo, &colon, &hi) != 3 || colon != ':' || lo < 0 || hi < lo || hi > 20)
    throw Error(ErrorKind::InvalidArgument, "scales must look like KMIN:KMAX (deltas 2^-KMIN .. 2^-KMAX)");
  return dyadic_scales(lo, hi);
}

std::int64_t grid_cells(double g) {
  if (!(g >= 1000.0 && g <= 1e8)) throw Error(ErrorKind::InvalidArgument, "--grid must lie in [1e3, 1e8]");
  return static_cast<std::int64_t>(std::llround(g));
}

void write(const fs::path& p, const std::string& content) { io::write_file(p, content); }

int cmd_sample(const Options& o) {
  const fs::path out(o.out);
  if (o.grid) {
    const double theta = o.theta.value_or(2.0);
    const std::int64_t cells = grid_cells(*o.grid);
    Rng rng = experiments::trial_rng(o.seed, "sample/excursion", 0);
    const GridPath x = theta == 2.0 ? brownian_excursion(1.0 / static_cast<double>(cells), rng)
                                    : normalized_excursion(theta, 1.0 / static_cast<double>(cells), rng,
                                                           experiments::grid_excursion_options(cells));
    const Lamination l = theta == 2.0 ? chords_from_brownian(x, o.min_gap)
                                      : chords_from_excursion(x, ExcursionMode::closed(o.depth));
    write(out / "excursion.csv", io::path_csv(x));
    write(out / "excursion_jumps.json", io::dump(io::jump_sidecar(x)));
    write(out / "lamination.json", io::dump(io::to_json(l)));
    if (o.eps && theta < 2.0) write(out / "height.csv", io::path_csv(approx_height_process(x, *o.eps)));
    std::cout << "cells=" << x.cells() << " jumps=" << x.jumps.size() << " chords=" << l.chords.size()
              << " max=" << *std::max_element(x.values.begin(), x.values.end()) << '\n';
    return kOk;
  }
  const WeightFamily w = resolve_family(o);
  const std::int64_t n = o.n.value_or(10);
  Rng rng = experiments::trial_rng(o.seed, "sample/tree", 0);
  const OrderedTree t = sample_gw_tree_with_n_leaves(w, n, rng);
  const GridPath x = discrete_excursion_from_tree(t, w.theta());
  write(out / "tree.json", io::dump(io::to_json(t)));
  write(out / "path.csv", io::path_csv(x));
  write(out / "path_jumps.json", io::dump(io::jump_sidecar(x)));
  std::size_t chords = 0;
  std::int64_t max_face = 0;
  // a single leaf codes no polygon
  if (n >= 2) {
    const Dissection d = dissection_from_path(lukasiewicz(t));
    const Lamination l = lamination_from_dissection(d);
    write(out / "dissection.json", io::dump(io::to_json(d)));
    write(out / "lamination.json", io::dump(io::to_json(l)));
    chords = l.chords.size();
    for (const Face& f : faces(d)) max_face = std::max(max_face, f.degree());
  }
  std::cout << "zeta=" << t.size() << " leaves=" << t.leaf_count() << " chords=" << chords
            << " max_face_degree=" << max_face << '\n';
  return kOk;
}

int cmd_render(const Options& o) {
  if (o.input.empty() || o.svg.empty()) throw Error(ErrorKind::InvalidArgument, "render needs --in and --svg");
  const Lamination l = io::lamination_from_document(io::parse(io::read_file(o.input)));
  write(o.svg, io::render_svg(l));
  if (!o.pgm.empty()) write(o.pgm, io::pgm(rasterize(l, o.raster)));
  std::cout << "chords=" << l.chords.size() << '\n';
  return kOk;
}

io::Json summary_json(const experiments::Summary& s) {
  return io::Json{{"median", s.median}, {"q1", s.q1}, {"q3", s.q3}};
}

int cmd_converge_leaves(const Options& o) {
  const WeightFamily w = resolve_family(o);
  const auto r = experiments::converge_leaves(w, o.ladder, o.trials.value_or(50), o.seed);
  io::Json rungs = io::Json::array();
  for (const auto& rung : r.rungs) {
    rungs.push_back({{"n", rung.n}, {"sup_deviation", summary_json(rung.summary)}, {"trials", rung.deviations}});
    std::cout << "n=" << rung.n << " median=" << rung.summary.median << " q1=" << rung.summary.q1
              << " q3=" << rung.summary.q3 << '\n';
  }
  io::Json report{{"family", w.name()},       {"seed", o.seed},          {"rungs", rungs},
                  {"asserted", r.asserted},   {"decreasing", r.decreasing}, {"final_below", r.final_below},
                  {"threshold", r.threshold}, {"pass", r.pass()}};
  write(fs::path(o.out) / "converge_leaves.json", io::dump(report));
  std::cout << (r.pass() ? "PASS" : "FAIL") << (r.asserted ? "" : " (report only)") << '\n';
  return r.pass() ? kOk : kCheckFailed;
}

int cmd_converge_lamination(const Options& o) {
  const double theta = o.theta.value_or(2.0);
  const std::int64_t n = o.n.value_or(2500);
  const int trials = o.trials.value_or(200);
  experiments::Pipeline small{experiments::PipelineKind::Tree, resolve_family(o), n};
  experiments::Pipeline large = small;
  large.size = 4 * n;
  experiments::LaminationReport r;
  r.asserted = trials >= 2;
  r.comparisons.push_back(experiments::compare(small, large, trials, o.seed));
  if (theta == 2.0) {
    const experiments::Pipeline brownian{experiments::PipelineKind::BrownianGrid, std::nullopt,
                                         grid_cells(o.grid.value_or(1e5))};
    r.comparisons.push_back(experiments::compare(large, brownian, trials, o.seed));
  }
  io::Json cmps = io::Json::array();
  for (const auto& c : r.comparisons) {
    cmps.push_back({{"a", c.a},
                    {"b", c.b},
                    {"longest_chord", {{"ks", c.longest.statistic}, {"p", c.longest.p_value}}},
                    {"chords_over_0.1", {{"ks", c.count.statistic}, {"p", c.count.p_value}}},
                    {"longest_a", c.longest_a},
                    {"longest_b", c.longest_b}});
    std::cout << c.a << " vs " << c.b << ": longest-chord KS p=" << c.longest.p_value
              << " (chords>0.1 p=" << c.count.p_value << ")\n";
  }
  io::Json report{{"theta", theta}, {"seed", o.seed}, {"trials", trials}, {"comparisons", cmps},
                  {"alpha", r.alpha}, {"asserted", r.asserted}, {"pass", r.pass()}};
  write(fs::path(o.out) / "converge_lamination.json", io::dump(report));
  std::cout << (r.pass() ? "PASS" : "FAIL") << (r.asserted ? "" : " (report only)") << '\n';
  return r.pass() ? kOk : kCheckFailed;
}

int cmd_dimension(const Options& o) {
  FractalOptions fo;
  fo.box_scales = parse_scales(o.scales);
  fo.arc_scales = parse_scales(o.arc_scales);
  experiments::Pipeline p;
  if (o.grid) {
    p.kind = o.theta.value_or(2.0) == 2.0 ? experiments::PipelineKind::BrownianGrid : experiments::PipelineKind::StableGrid;
    p.size = grid_cells(*o.grid);
    p.theta = o.theta.value_or(2.0);
    p.depth = o.depth;
  } else {
    p.family = resolve_family(o);
    p.size = o.n.value_or(131072);
  }
  const auto r = experiments::run_dimension(p, o.trials.value_or(5), o.seed, fo);
  const fs::path out(o.out);
  io::Json seeds = io::Json::array();
  auto opt = [](const std::optional<DimensionEstimate>& e) { return e ? io::to_json(*e) : io::Json(nullptr); };
  for (const auto& s : r.seeds) {
    seeds.push_back({{"trial", s.trial}, {"lamination", opt(s.lamination)}, {"endpoints", opt(s.endpoints)},
                     {"face", opt(s.face)}});
    if (s.lamination)
      write(out / ("dimension_seed" + std::to_string(s.trial) + "_boxes.csv"), io::scales_csv(*s.lamination));
  }
  auto med = [](const std::optional<double>& v) { return v ? io::Json(*v) : io::Json(nullptr); };
  io::Json report{{"pipeline", r.pipeline},
                  {"seed", o.seed},
                  {"median", {{"lamination", med(r.lamination)}, {"endpoints", med(r.endpoints)}, {"face", med(r.face)}}},
                  {"seeds", seeds}};
  write(out / "dimension.json", io::dump(report));
  auto show = [](const char* name, const std::optional<double>& v) {
    std::cout << name << '=' << (v ? std::to_string(*v) : std::string("n/a")) << ' ';
  };
  show("lamination", r.lamination);
  show("endpoints", r.endpoints);
  show("face", r.face);
  std::cout << '\n';
  return kOk;
}

int cmd_selftest(const Options& o) {
  std::optional<WeightSpec> extra;
  if (!o.weights.empty()) {
    extra = io::weights_from_json(io::parse(io::read_file(o.weights)));
    if (!extra->theta && o.theta) extra->theta = o.theta;
  }
  bool ok = true;
  for (const auto& c : cli::run_selftest(extra, o.seed)) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
    ok = ok && c.pass;
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random stable laminations: sampling, rendering and diagnostics"};
  app.require_subcommand(1);
  Options o;
  auto* sample = app.add_subcommand("sample", "sample a tree/dissection or an excursion lamination");
  auto* render = app.add_subcommand("render", "render a lamination or dissection JSON as SVG");
  auto* leaves = app.add_subcommand("converge-leaves", "leaf-count process against the identity");
  auto* lam = app.add_subcommand("converge-lamination", "KS comparison of lamination functionals");
  auto* dim = app.add_subcommand("dimension", "box-counting dimension estimates");
  auto* self = app.add_subcommand("selftest", "exact oracles and sampler-law checks");
  for (auto* s : {sample, render, leaves, lam, dim, self}) add_common(s, o);
  render->add_option("--in", o.input, "lamination or dissection JSON");
  render->add_option("--svg", o.svg, "SVG output file");
  render->add_option("--pgm", o.pgm, "optional raster output (PGM)");
  render->add_option("--raster", o.raster, "raster size for --pgm");
  leaves->add_option("--ladder", o.ladder, "leaf counts")->delimiter(',');
  dim->add_option("--scales", o.scales, "box scales KMIN:KMAX");
  dim->add_option("--arc-scales", o.arc_scales, "arc scales KMIN:KMAX");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }
  try {
    if (*sample) return cmd_sample(o);
    if (*render) return cmd_render(o);
    if (*leaves) return cmd_converge_leaves(o);
    if (*lam) return cmd_converge_lamination(o);
    if (*dim) return cmd_dimension(o);
    return cmd_selftest(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
}
