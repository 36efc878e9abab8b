#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stablam/error.hpp"
#include "stablam/rng.hpp"

namespace stablam {

/// Rooted ordered tree stored as the child counts of its vertices in
/// depth-first (lexicographic) order.
struct OrderedTree {
  std::vector<int> degrees;

  std::int64_t size() const { return static_cast<std::int64_t>(degrees.size()); }
  std::int64_t leaf_count() const;
  bool has_unary() const;

  friend bool operator==(const OrderedTree&, const OrderedTree&) = default;
  friend auto operator<=>(const OrderedTree&, const OrderedTree&) = default;
};

/// True iff the degree sequence is the DFS encoding of exactly one tree.
bool is_valid_tree(const OrderedTree& t);

/// Throws InvalidArgument unless is_valid_tree(t).
void require_valid_tree(const OrderedTree& t);

using LukasiewiczPath = std::vector<std::int64_t>;
using HeightSequence = std::vector<std::int64_t>;

enum class TailKind { FiniteVariance, HeavyTail };

/// Offspring law (mu_j) with mu_1 = 0 and mu_0 = 1 - sum_{j>=2} mu_j.
///
/// Three shapes are supported:
///  - uniform-dissection: mu_i = c^{i-1}, c = (2 - sqrt 2) / 2, for i >= 2;
///  - p-angulation: mu_{p-1} = 1/(p-1), so every face has degree p;
///  - stable-tail(theta): P(k >= j) = q (j-1)^{-theta} for j >= 2 with
///    q = 1 / (1 + zeta(theta)); heavy tail in the domain of attraction of
///    the spectrally positive theta-stable law;
///  - an explicit finite list.
class WeightFamily {
 public:
  enum class Shape { UniformDissection, PAngulation, StableTail, List };

  static WeightFamily uniform_dissection();
  static WeightFamily p_angulation(int p);
  static WeightFamily stable_tail(double theta);
  /// weights[j] = mu_j for j >= 1 (key 1 must map to 0).
  static WeightFamily from_list(const std::map<int, double>& weights,
                                std::optional<double> declared_theta = std::nullopt);

  Shape shape() const { return shape_; }
  const std::string& name() const { return name_; }
  double theta() const { return theta_; }
  TailKind tail_kind() const { return tail_; }
  int p() const { return p_; }

  double mu(std::int64_t j) const;
  double mu0() const { return mu0_; }
  /// sum_{j>=2} j mu_j, evaluated in closed form for presets.
  double mean() const { return mean_; }
  /// Largest j with mu_j > 0, or -1 for infinite support.
  std::int64_t max_degree() const;

  /// One offspring draw. Finite support: inverse CDF over a cumulative table.
  /// Presets with infinite support: closed-form inversion.
  int sample_degree(Rng& rng) const;

  /// P_mu[lambda = n] > 0 (support arithmetic on the internal degrees).
  bool leaf_count_reachable(std::int64_t n) const;

 private:
  Shape shape_ = Shape::List;
  std::string name_;
  double theta_ = 2.0;
  TailKind tail_ = TailKind::FiniteVariance;
  int p_ = 0;
  double mu0_ = 0.0;
  double mean_ = 0.0;
  double ratio_ = 0.0;     // uniform-dissection geometric ratio c
  double log_ratio_ = 0.0;
  double q_ = 0.0;         // stable-tail mass of {k >= 2}
  std::vector<double> mu_;  // explicit table, index = degree
  std::vector<double> cdf_;
};

struct WeightSpec {
  std::string preset;  // "uniform-dissection" | "p-angulation" | "stable-tail" | "" for list
  int p = 3;
  std::optional<double> theta;
  std::map<int, double> weights;
};

/// Builds and checks a weight family: nonnegativity, mu_1 = 0, criticality
/// (1e-12 for presets, 1e-9 for lists) and mu_0 in (0, 1).
WeightFamily validate_weights(const WeightSpec& spec);

LukasiewiczPath lukasiewicz(const OrderedTree& t);
HeightSequence height(const OrderedTree& t);

/// Indices of the children of vertex n, read off the Lukasiewicz path:
/// s_i = inf{l >= n+1 : W_l = W_{n+1} - (i-1)}.
std::vector<std::int64_t> children_positions(const LukasiewiczPath& w, std::int64_t n);

/// Lambda(l) = number of leaves among the first l vertices, l = 0..zeta.
std::vector<std::int64_t> leaf_count_process(const OrderedTree& t);

/// Leaf-count process read from a Lukasiewicz path (-1 steps are leaves).
std::vector<std::int64_t> leaf_count_process(const LukasiewiczPath& w);

double tree_probability(const WeightFamily& w, const OrderedTree& t);
double log_tree_probability(const WeightFamily& w, const OrderedTree& t);

inline constexpr std::int64_t kDefaultVertexCap = 100'000'000;

/// Grows a tree in DFS order from a stream of degree draws. Returns nullopt
/// when the cap is hit before the walk reaches -1.
std::optional<OrderedTree> grow_tree(const std::function<int()>& draw_degree,
                                     std::int64_t cap = kDefaultVertexCap);

/// Unconditioned GW tree; throws Overflow past `cap` vertices.
OrderedTree sample_gw_tree(const WeightFamily& w, Rng& rng, std::int64_t cap = kDefaultVertexCap);

enum class ConditionedMethod { Rejection, Cycle };

struct ConditionedOptions {
  ConditionedMethod method = ConditionedMethod::Cycle;
  std::int64_t cap = kDefaultVertexCap;
  /// 0 means unlimited.
  std::int64_t max_attempts = 0;
  /// Progress line to std::clog every this many attempts (0 disables).
  std::int64_t log_every = 0;
};

/// Exact draw from P_mu[ . | lambda = n].
OrderedTree sample_gw_tree_with_n_leaves(const WeightFamily& w, std::int64_t n, Rng& rng,
                                         const ConditionedOptions& opts = {});

/// All trees with n leaves and no unary vertex, in lexicographic order of
/// their degree sequences. n <= 10.
std::vector<OrderedTree> enumerate_trees_with_n_leaves(int n, bool no_unary = true);

}  // namespace stablam
