#include "selftest.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "stablam/dissections.hpp"
#include "stablam/laminations.hpp"
#include "stablam/stats.hpp"

namespace stablam::cli {

namespace {

CheckResult check(const std::string& name, const std::function<std::string()>& body) {
  try {
    const std::string failure = body();
    return {name, failure.empty(), failure};
  } catch (const std::exception& e) {
    return {name, false, e.what()};
  }
}

std::string enumeration_counts() {
  const std::map<int, std::size_t> expected{{2, 1}, {3, 3}, {4, 11}, {5, 45}};
  for (const auto& [n, count] : expected) {
    const auto trees = enumerate_trees_with_n_leaves(n).size();
    const auto dissections = enumerate_dissections(n).size();
    if (trees != count || dissections != count)
      return "n=" + std::to_string(n) + ": " + std::to_string(trees) + " trees, " + std::to_string(dissections) +
             " dissections, expected " + std::to_string(count);
  }
  return {};
}

std::string round_trips() {
  for (int n = 2; n <= 6; ++n) {
    for (const Dissection& d : enumerate_dissections(n))
      if (dissection_from_path(lukasiewicz(dual_tree(d))) != d) return "dissection round trip fails at n=" + std::to_string(n);
    for (const OrderedTree& t : enumerate_trees_with_n_leaves(n))
      if (dual_tree(dissection_from_path(lukasiewicz(t))) != t) return "tree round trip fails at n=" + std::to_string(n);
  }
  return {};
}

std::string weight_identity(const WeightFamily& w) {
  for (int n = 2; n <= 6; ++n) {
    for (const OrderedTree& t : enumerate_trees_with_n_leaves(n)) {
      const double lhs = tree_probability(w, t);
      const double rhs = std::pow(w.mu0(), n) * boltzmann_weight(w, dissection_from_path(lukasiewicz(t)));
      if (std::abs(lhs - rhs) > 1e-12) return "identity off by " + std::to_string(lhs - rhs) + " at n=" + std::to_string(n);
    }
  }
  return {};
}

std::string discrete_routes() {
  for (int n = 2; n <= 6; ++n) {
    for (const OrderedTree& t : enumerate_trees_with_n_leaves(n)) {
      const Lamination jumps = chords_from_excursion(discrete_excursion_from_tree(t), ExcursionMode::closed(0));
      const Lamination heights = chords_from_height(discrete_height_path(t), 0.0);
      const Lamination coded = lamination_from_dissection(dissection_from_path(lukasiewicz(t)));
      if (jumps.chords != heights.chords || jumps.chords != coded.chords)
        return "chord sets differ at n=" + std::to_string(n);
    }
  }
  return {};
}

std::string sampler_law(const WeightFamily& w, ConditionedMethod method, std::uint64_t seed) {
  constexpr int n = 4;
  const auto trees = enumerate_trees_with_n_leaves(n);
  std::vector<double> probs;
  double total = 0.0;
  for (const OrderedTree& t : trees) total += tree_probability(w, t);
  for (const OrderedTree& t : trees) probs.push_back(tree_probability(w, t) / total);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < trees.size(); ++i) index[trees[i].degrees] = i;
  std::vector<std::int64_t> counts(trees.size(), 0);
  Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(method));
  ConditionedOptions opts;
  opts.method = method;
  for (int k = 0; k < 20000; ++k) {
    const auto it = index.find(sample_gw_tree_with_n_leaves(w, n, rng, opts).degrees);
    if (it == index.end()) return "sampled a tree outside the support";
    ++counts[it->second];
  }
  const auto r = stats::chi_square(counts, probs);
  if (r.p_value <= 1e-3) return "chi-square p = " + std::to_string(r.p_value);
  return {};
}

}  // namespace

std::vector<CheckResult> run_selftest(const std::optional<WeightSpec>& extra, std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::vector<WeightFamily> families{WeightFamily::uniform_dissection(), WeightFamily::p_angulation(3),
                                     WeightFamily::p_angulation(4)};
  if (extra) {
    try {
      families.push_back(validate_weights(*extra));
      out.push_back({"weights", true, families.back().name()});
    } catch (const Error& e) {
      out.push_back({"weights", false, e.what()});
    }
  }
  out.push_back(check("enumeration", enumeration_counts));
  out.push_back(check("round-trips", round_trips));
  for (const WeightFamily& w : families)
    out.push_back(check("weight-identity/" + w.name(), [&] { return weight_identity(w); }));
  out.push_back(check("discrete-chord-routes", discrete_routes));
  for (const WeightFamily& w : families) {
    if (!w.leaf_count_reachable(4)) continue;
    out.push_back(check("law-cycle/" + w.name(), [&] { return sampler_law(w, ConditionedMethod::Cycle, seed); }));
    out.push_back(check("law-rejection/" + w.name(), [&] { return sampler_law(w, ConditionedMethod::Rejection, seed); }));
  }
  return out;
}

}  // namespace stablam::cli
