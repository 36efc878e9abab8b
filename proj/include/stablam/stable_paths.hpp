#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stablam/gw_trees.hpp"
#include "stablam/rng.hpp"

namespace stablam {

enum class PathKind { Levy, Excursion, Height, DiscreteTree, DiscreteHeight };

/// Increment values[index] -> values[index + 1] flagged as a jump.
struct Jump {
  std::int64_t index = 0;
  double size = 0.0;

  friend bool operator==(const Jump&, const Jump&) = default;
};

/// Real path sampled on the grid 0, h, 2h, ... (cadlag step function).
///
/// `jump_eps` is the threshold the jump list was built with; nullopt means
/// the path was never annotated. Discrete kinds hold integer values: a
/// Lukasiewicz path (DiscreteTree, zeta + 1 values) or a height sequence
/// (DiscreteHeight, zeta values), both with h = 1 / zeta.
struct GridPath {
  PathKind kind = PathKind::Levy;
  double theta = 2.0;
  double h = 1.0;
  std::vector<double> values;
  std::vector<Jump> jumps;
  std::optional<double> jump_eps;

  std::int64_t cells() const { return static_cast<std::int64_t>(values.size()) - 1; }
  double time(std::int64_t i) const { return static_cast<double>(i) * h; }
  bool is_discrete() const { return kind == PathKind::DiscreteTree || kind == PathKind::DiscreteHeight; }
};

/// One draw of X_t with E[exp(-lambda X_t)] = exp(t lambda^theta).
double sample_stable_increment(double theta, double t, Rng& rng);

/// Default jump threshold 5 h^{1/theta}: a few typical h-increments.
double default_jump_eps(double theta, double h);

inline constexpr std::int64_t kDefaultCellBudget = 100'000'000;

GridPath sample_levy_grid(double theta, double horizon, double h, Rng& rng,
                          std::int64_t budget = kDefaultCellBudget);

struct ExcursionOptions {
  std::int64_t budget = kDefaultCellBudget;
  /// Resample until the excursion spans at least this many cells. The shape
  /// of the normalized excursion is independent of its length, so this
  /// conditioning leaves its law unchanged.
  std::int64_t min_cells = 0;
  /// Draw again instead of throwing ExcursionNotClosed when the budget runs
  /// out. Exact for the same reason as min_cells.
  bool resample_unclosed = false;
};

/// Normalized excursion from the excursion of X - I straddling time 1.
GridPath normalized_excursion(double theta, double h, Rng& rng, const ExcursionOptions& opts = {});

/// Brownian excursion (theta = 2 normalization, e = sqrt(2) x standard) by
/// Vervaat rotation of a Gaussian random-walk bridge with round(1/h) steps.
GridPath brownian_excursion(double h, Rng& rng);

/// Cells whose increment exceeds eps.
std::vector<Jump> detect_jumps(const GridPath& p, double eps);

/// beta_eps = theta / (Gamma(2 - theta) eps^{theta - 1}).
double height_normalizer(double theta, double eps);

/// H_t = #{jumps u <= t of size > eps with X_{u-} < inf_{[u,t]} X} / beta_eps.
/// For theta = 2 the excursion itself is returned (as a Height path).
GridPath approx_height_process(const GridPath& x, double eps);

/// Lukasiewicz path of t on [0, 1] (zeta equal cells); every up-step is a jump.
GridPath discrete_excursion_from_tree(const OrderedTree& t, double theta = 2.0);
GridPath discrete_excursion_from_tree(const WeightFamily& w, std::int64_t n, Rng& rng,
                                      const ConditionedOptions& opts = {});

/// Height sequence of t as a DiscreteHeight path.
GridPath discrete_height_path(const OrderedTree& t);

/// Vertical rescaling; jump sizes and threshold scale with the values.
GridPath scaled(const GridPath& p, double c);

/// Time reversal t -> 1 - t of a continuous path (jumps dropped).
GridPath reversed(const GridPath& p);

}  // namespace stablam
