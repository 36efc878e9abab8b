#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stablam/gw_trees.hpp"

namespace stablam {

/// Dissection of the regular (n+1)-gon. Vertex v sits at exp(-2 pi i v/(n+1)),
/// so vertex 0 is the point 1 and indices run clockwise. Sides are implicit;
/// `diagonals` holds the remaining chords as sorted pairs (a, b), a < b.
struct Dissection {
  std::int64_t n = 2;
  std::vector<std::pair<std::int64_t, std::int64_t>> diagonals;

  std::int64_t vertex_count() const { return n + 1; }
  bool is_side(std::int64_t a, std::int64_t b) const;
  /// Sides followed by diagonals, each as (a, b) with a < b.
  std::vector<std::pair<std::int64_t, std::int64_t>> chords() const;

  friend bool operator==(const Dissection&, const Dissection&) = default;
};

struct Face {
  std::vector<std::int64_t> boundary;  // vertex indices in increasing order
  std::int64_t degree() const { return static_cast<std::int64_t>(boundary.size()); }
};

/// Sorts/deduplicates the diagonals, drops sides, and checks index range and
/// the noncrossing property. Throws InvalidArgument on failure.
Dissection make_dissection(std::int64_t n, std::vector<std::pair<std::int64_t, std::int64_t>> chords);

bool is_valid_dissection(const Dissection& d);

/// Dual tree, rooted at the face adjacent to the side {0, n}.
OrderedTree dual_tree(const Dissection& d);

/// Dissection coded by a Lukasiewicz-type path (no 0 increments).
Dissection dissection_from_path(const LukasiewiczPath& z);

/// Faces by walking the planar chord arrangement; independent of dual_tree.
std::vector<Face> faces(const Dissection& d);

/// pi(omega) = prod over faces of mu_{deg(f) - 1}.
double boltzmann_weight(const WeightFamily& w, const Dissection& d);

/// Z_n = sum of Boltzmann weights over all dissections of P_{n+1}; n <= 8.
double partition_function(const WeightFamily& w, std::int64_t n);

/// All dissections of P_{n+1} via noncrossing subsets of diagonals; n <= 8.
std::vector<Dissection> enumerate_dissections(std::int64_t n);

/// conditioned tree -> Lukasiewicz path -> coded dissection.
Dissection sample_boltzmann_dissection(const WeightFamily& w, std::int64_t n, Rng& rng,
                                       const ConditionedOptions& opts = {});

}  // namespace stablam
