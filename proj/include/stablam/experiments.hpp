#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stablam/fractal.hpp"
#include "stablam/stats.hpp"

namespace stablam::experiments {

/// Independent stream for trial `trial` of the experiment named `tag`.
Rng trial_rng(std::uint64_t seed, std::string_view tag, std::uint64_t trial);

/// sup over t in [0, 1] of |Lambda(floor(zeta t)) / n - t|, exact on the steps.
double sup_leaf_deviation(const OrderedTree& t);

struct Summary {
  double median = 0.0, q1 = 0.0, q3 = 0.0;
};
Summary summarize(const std::vector<double>& xs);

struct LeafRung {
  std::int64_t n = 0;
  std::vector<double> deviations;
  Summary summary;
};

struct LeafReport {
  std::vector<LeafRung> rungs;
  double threshold = 0.1;
  bool asserted = false;  // only ladders with two or more rungs are judged
  bool decreasing = true;
  bool final_below = true;
  bool pass() const { return !asserted || (decreasing && final_below); }
};

LeafReport converge_leaves(const WeightFamily& w, const std::vector<std::int64_t>& ladder, int trials,
                           std::uint64_t seed);

enum class PipelineKind {
  Tree,          // conditioned tree, coded dissection
  BrownianGrid,  // Vervaat excursion, Brownian triangulation chords
  StableGrid,    // normalized stable excursion, jump chords with closure
};

struct Pipeline {
  PipelineKind kind = PipelineKind::Tree;
  std::optional<WeightFamily> family;  // Tree only
  std::int64_t size = 0;               // leaves, or grid cells per unit time
  double theta = 2.0;                  // StableGrid only
  std::int64_t depth = 1;              // StableGrid closure depth

  std::string label() const;
};

/// Stable excursions with at least `cells` cells, redrawn when they do not
/// close within 64 time units.
ExcursionOptions grid_excursion_options(std::int64_t cells);

/// Path that the pipeline reads its chords from.
GridPath sample_path(const Pipeline& p, Rng& rng);
Lamination lamination_of(const Pipeline& p, const GridPath& x);

struct Functionals {
  double longest = 0.0;         // longest chord length
  std::int64_t long_chords = 0;  // chords longer than the threshold
};
Functionals functionals(const Lamination& l, double threshold = 0.1);

struct Comparison {
  std::string a, b;
  std::vector<double> longest_a, longest_b, count_a, count_b;
  stats::KsResult longest, count;
};

Comparison compare(const Pipeline& a, const Pipeline& b, int trials, std::uint64_t seed);

struct LaminationReport {
  std::vector<Comparison> comparisons;
  double alpha = 1e-3;
  bool asserted = false;
  /// Judged on the longest-chord functional only.
  bool pass() const;
};

struct DimensionSeed {
  std::uint64_t trial = 0;
  std::optional<DimensionEstimate> lamination, endpoints, face;
};

struct DimensionReport {
  std::string pipeline;
  std::vector<DimensionSeed> seeds;
  std::optional<double> lamination, endpoints, face;  // medians over seeds
};

DimensionReport run_dimension(const Pipeline& p, int seeds, std::uint64_t seed, const FractalOptions& opts = {});

/// Among faces with at least 3 boundary sides longer than eps, the share
/// with at least 4 such sides.
double macroscopic_face_fraction(const std::vector<FaceRecord>& faces, double eps);

}  // namespace stablam::experiments
