#include "stablam/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace stablam::experiments {

Rng trial_rng(std::uint64_t seed, std::string_view tag, std::uint64_t trial) {
  // FNV-1a of the tag, mixed with the trial number
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  std::uint64_t state = h ^ (trial * 0x9e3779b97f4a7c15ULL);
  return Rng::stream(seed, splitmix64(state));
}

double sup_leaf_deviation(const OrderedTree& t) {
  const auto lambda = leaf_count_process(t);
  const auto zeta = static_cast<double>(t.size());
  const auto n = static_cast<double>(t.leaf_count());
  double worst = 0.0;
  // on [k / zeta, (k + 1) / zeta) the path is Lambda(k) / n - t
  for (std::size_t k = 0; k + 1 < lambda.size(); ++k) {
    const double y = static_cast<double>(lambda[k]) / n;
    worst = std::max({worst, std::abs(y - static_cast<double>(k) / zeta), std::abs(y - static_cast<double>(k + 1) / zeta)});
  }
  return worst;
}

Summary summarize(const std::vector<double>& xs) {
  return {stats::quantile(xs, 0.5), stats::quantile(xs, 0.25), stats::quantile(xs, 0.75)};
}

LeafReport converge_leaves(const WeightFamily& w, const std::vector<std::int64_t>& ladder, int trials,
                           std::uint64_t seed) {
  if (ladder.empty() || trials < 1) throw Error(ErrorKind::InvalidArgument, "need a ladder and at least one trial");
  LeafReport r;
  for (std::int64_t n : ladder) {
    LeafRung rung;
    rung.n = n;
    const std::string tag = "leaves/" + w.name() + "/" + std::to_string(n);
    for (int i = 0; i < trials; ++i) {
      Rng rng = trial_rng(seed, tag, static_cast<std::uint64_t>(i));
      rung.deviations.push_back(sup_leaf_deviation(sample_gw_tree_with_n_leaves(w, n, rng)));
    }
    rung.summary = summarize(rung.deviations);
    r.rungs.push_back(std::move(rung));
  }
  r.asserted = r.rungs.size() >= 2;
  for (std::size_t i = 1; i < r.rungs.size(); ++i)
    r.decreasing = r.decreasing && r.rungs[i].summary.median < r.rungs[i - 1].summary.median;
  r.final_below = r.rungs.back().summary.median < r.threshold;
  return r;
}

std::string Pipeline::label() const {
  switch (kind) {
    case PipelineKind::Tree: return "tree:" + (family ? family->name() : std::string("?")) + ":n=" + std::to_string(size);
    case PipelineKind::BrownianGrid: return "brownian:grid=" + std::to_string(size);
    case PipelineKind::StableGrid: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "stable:theta=%g:grid=%lld", theta, static_cast<long long>(size));
      return buf;
    }
  }
  return "?";
}

ExcursionOptions grid_excursion_options(std::int64_t cells) {
  ExcursionOptions o;
  o.min_cells = cells;
  o.budget = 64 * cells;
  o.resample_unclosed = true;
  return o;
}

GridPath sample_path(const Pipeline& p, Rng& rng) {
  switch (p.kind) {
    case PipelineKind::Tree:
      if (!p.family) throw Error(ErrorKind::InvalidArgument, "tree pipeline needs a weight family");
      return discrete_excursion_from_tree(*p.family, p.size, rng);
    case PipelineKind::BrownianGrid: return brownian_excursion(1.0 / static_cast<double>(p.size), rng);
    case PipelineKind::StableGrid: return normalized_excursion(p.theta, 1.0 / static_cast<double>(p.size), rng,
                                                               grid_excursion_options(p.size));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown pipeline");
}

Lamination lamination_of(const Pipeline& p, const GridPath& x) {
  switch (p.kind) {
    case PipelineKind::Tree: return chords_from_excursion(x, ExcursionMode::closed(0));
    case PipelineKind::BrownianGrid: return chords_from_brownian(x, 0.0);
    case PipelineKind::StableGrid: return chords_from_excursion(x, ExcursionMode::closed(p.depth));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown pipeline");
}

Functionals functionals(const Lamination& l, double threshold) {
  Functionals f;
  for (const Chord& c : l.chords) {
    const double len = chord_length(c);
    f.longest = std::max(f.longest, len);
    if (len > threshold) ++f.long_chords;
  }
  return f;
}

Comparison compare(const Pipeline& a, const Pipeline& b, int trials, std::uint64_t seed) {
  Comparison c;
  c.a = a.label();
  c.b = b.label();
  auto run = [&](const Pipeline& p, const std::string& tag, std::vector<double>& longest, std::vector<double>& count) {
    for (int i = 0; i < trials; ++i) {
      Rng rng = trial_rng(seed, tag, static_cast<std::uint64_t>(i));
      const Functionals f = functionals(lamination_of(p, sample_path(p, rng)));
      longest.push_back(f.longest);
      count.push_back(static_cast<double>(f.long_chords));
    }
  };
  // distinct tags keep the two arms independent even for equal pipelines
  run(a, "compare/a/" + c.a, c.longest_a, c.count_a);
  run(b, "compare/b/" + c.b, c.longest_b, c.count_b);
  c.longest = stats::ks_two_sample(c.longest_a, c.longest_b);
  c.count = stats::ks_two_sample(c.count_a, c.count_b);
  return c;
}

bool LaminationReport::pass() const {
  if (!asserted) return true;
  return std::all_of(comparisons.begin(), comparisons.end(),
                     [&](const Comparison& c) { return c.longest.p_value > alpha; });
}

DimensionReport run_dimension(const Pipeline& p, int seeds, std::uint64_t seed, const FractalOptions& opts) {
  if (seeds < 1) throw Error(ErrorKind::InvalidArgument, "need at least one seed");
  DimensionReport r;
  r.pipeline = p.label();
  std::vector<double> lam, end, face;
  for (int i = 0; i < seeds; ++i) {
    Rng rng = trial_rng(seed, "dimension/" + r.pipeline, static_cast<std::uint64_t>(i));
    const GridPath x = sample_path(p, rng);
    const Lamination l = lamination_of(p, x);
    DimensionSeed s;
    s.trial = static_cast<std::uint64_t>(i);
    // estimates that the sample cannot support (too few scales) stay empty
    auto attempt = [](auto&& f) -> std::optional<DimensionEstimate> {
      try {
        return f();
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::DegenerateWindow || e.kind() == ErrorKind::EmptyInput) return std::nullopt;
        throw;
      }
    };
    s.lamination = attempt([&] { return estimate_lamination_dimension(l, opts); });
    s.endpoints = attempt([&] { return estimate_endpoint_dimension(l, opts); });
    if (p.kind != PipelineKind::BrownianGrid) {
      const auto faces = faces_of_lamination(x, l);
      s.face = attempt([&] { return estimate_face_boundary_dimension(largest_face(faces), l.resolution, opts); });
    }
    if (s.lamination) lam.push_back(s.lamination->slope);
    if (s.endpoints) end.push_back(s.endpoints->slope);
    if (s.face) face.push_back(s.face->slope);
    r.seeds.push_back(std::move(s));
  }
  if (!lam.empty()) r.lamination = stats::median(lam);
  if (!end.empty()) r.endpoints = stats::median(end);
  if (!face.empty()) r.face = stats::median(face);
  return r;
}

double macroscopic_face_fraction(const std::vector<FaceRecord>& faces, double eps) {
  std::int64_t big = 0, candidates = 0;
  for (const FaceRecord& f : faces) {
    std::vector<double> pts = f.boundary;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) continue;
    int long_sides = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double a = pts[i], b = i + 1 < pts.size() ? pts[i + 1] : pts[0] + 1.0;
      if (2.0 * std::sin(std::numbers::pi * (b - a)) > eps) ++long_sides;
    }
    if (long_sides >= 3) ++candidates;
    if (long_sides >= 4) ++big;
  }
  return candidates == 0 ? 0.0 : static_cast<double>(big) / static_cast<double>(candidates);
}

}  // namespace stablam::experiments
