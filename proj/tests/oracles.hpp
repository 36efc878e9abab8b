#pragma once

// Independent reference implementations used as test oracles. They avoid
// the library's algorithms on purpose: trees are built explicitly with
// parent/child links, enumerations are brute force.

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Pair = std::pair<std::int64_t, std::int64_t>;

struct Node {
  int degree = 0;
  int parent = -1;
  int depth = 0;
  std::vector<int> children;
  std::int64_t leaves_before = 0;  // leaves strictly earlier in DFS order
  std::int64_t subtree_leaves = 0;
};

// Explicit tree from a DFS degree sequence.
inline std::vector<Node> build(const std::vector<int>& degrees) {
  std::vector<Node> nodes(degrees.size());
  std::vector<int> open;  // vertices still waiting for children
  std::int64_t leaves = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    Node& v = nodes[i];
    v.degree = degrees[i];
    v.leaves_before = leaves;
    if (!open.empty()) {
      const int p = open.back();
      v.parent = p;
      v.depth = nodes[static_cast<std::size_t>(p)].depth + 1;
      nodes[static_cast<std::size_t>(p)].children.push_back(static_cast<int>(i));
      if (static_cast<int>(nodes[static_cast<std::size_t>(p)].children.size()) == nodes[static_cast<std::size_t>(p)].degree)
        open.pop_back();
    }
    if (v.degree > 0) open.push_back(static_cast<int>(i));
    else ++leaves;
  }
  for (std::size_t i = degrees.size(); i-- > 0;) {
    Node& v = nodes[i];
    if (v.degree == 0) v.subtree_leaves = 1;
    for (int c : v.children) v.subtree_leaves += nodes[static_cast<std::size_t>(c)].subtree_leaves;
  }
  return nodes;
}

// Every DFS degree sequence with n leaves and no unary vertex, by brute
// force over sequences whose walk stays nonnegative.
inline void extend(int n, int leaves, int walk, std::vector<int>& seq, std::vector<std::vector<int>>& out) {
  if (walk == -1) {
    if (leaves == n) out.push_back(seq);
    return;
  }
  if (leaves + walk + 1 > n) return;  // each open slot needs at least one more leaf
  for (int d = 0; d <= n; ++d) {
    if (d == 1) continue;
    seq.push_back(d);
    extend(n, leaves + (d == 0), walk + d - 1, seq, out);
    seq.pop_back();
  }
}

inline std::vector<std::vector<int>> all_trees(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> seq;
  extend(n, 0, 0, seq, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool crosses(Pair x, Pair y) {
  return (x.first < y.first && y.first < x.second && x.second < y.second) ||
         (y.first < x.first && x.first < y.second && y.second < x.second);
}

// All noncrossing diagonal sets of the (n+1)-gon, by brute force over subsets.
inline std::vector<std::set<Pair>> all_dissections(int n) {
  std::vector<Pair> diag;
  for (int a = 0; a <= n; ++a)
    for (int b = a + 2; b <= n; ++b)
      if (!(a == 0 && b == n)) diag.emplace_back(a, b);
  std::vector<std::set<Pair>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << diag.size()); ++mask) {
    std::vector<Pair> pick;
    for (std::size_t i = 0; i < diag.size(); ++i)
      if (mask >> i & 1) pick.push_back(diag[i]);
    bool ok = true;
    for (std::size_t i = 0; i < pick.size() && ok; ++i)
      for (std::size_t j = i + 1; j < pick.size() && ok; ++j) ok = !crosses(pick[i], pick[j]);
    if (ok) out.emplace_back(pick.begin(), pick.end());
  }
  return out;
}

// Chords (sides included) of the dissection dual to the tree: an internal
// vertex u with children c_1..c_k spans the polygon vertices
// L(c_1) < ... < L(c_k) < L(u) + leaves(u), where L counts earlier leaves.
inline std::set<Pair> coded_chords(const std::vector<int>& degrees) {
  const auto nodes = build(degrees);
  std::set<Pair> out;
  for (const Node& u : nodes) {
    if (u.degree == 0) continue;
    std::vector<std::int64_t> pts;
    for (int c : u.children) pts.push_back(nodes[static_cast<std::size_t>(c)].leaves_before);
    pts.push_back(u.leaves_before + u.subtree_leaves);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) out.emplace(pts[i], pts[i + 1]);
    out.emplace(pts.front(), pts.back());
  }
  return out;
}

// Face degrees of the coded dissection: k_u + 1 for each internal u.
inline std::multiset<std::int64_t> face_degrees(const std::vector<int>& degrees) {
  std::multiset<std::int64_t> out;
  for (int d : degrees)
    if (d > 0) out.insert(d + 1);
  return out;
}

}  // namespace oracle
