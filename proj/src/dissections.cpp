#include "stablam/dissections.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace stablam {

namespace {

using Chord = std::pair<std::int64_t, std::int64_t>;

bool chords_cross(const Chord& x, const Chord& y) {
  return (x.first < y.first && y.first < x.second && x.second < y.second) ||
         (y.first < x.first && x.first < y.second && y.second < x.second);
}

// Laminar-family check over sorted chords: true iff no two strictly cross.
bool noncrossing_sorted(std::vector<Chord> cs) {
  std::sort(cs.begin(), cs.end(), [](const Chord& a, const Chord& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  });
  std::vector<Chord> open;
  for (const auto& c : cs) {
    while (!open.empty() && open.back().second <= c.first) open.pop_back();
    if (!open.empty() && c.second > open.back().second) return false;
    open.push_back(c);
  }
  return true;
}

}  // namespace

bool Dissection::is_side(std::int64_t a, std::int64_t b) const {
  if (a > b) std::swap(a, b);
  return b - a == 1 || (a == 0 && b == n);
}

std::vector<std::pair<std::int64_t, std::int64_t>> Dissection::chords() const {
  std::vector<Chord> out;
  out.reserve(static_cast<std::size_t>(n + 1) + diagonals.size());
  for (std::int64_t v = 0; v < n; ++v) out.emplace_back(v, v + 1);
  out.emplace_back(0, n);
  out.insert(out.end(), diagonals.begin(), diagonals.end());
  return out;
}

Dissection make_dissection(std::int64_t n, std::vector<Chord> chords) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "dissections need n >= 2");
  Dissection d;
  d.n = n;
  for (auto [a, b] : chords) {
    if (a > b) std::swap(a, b);
    if (a < 0 || b > n || a == b)
      throw Error(ErrorKind::InvalidArgument, "chord {" + std::to_string(a) + "," + std::to_string(b) + "} out of range");
    if (!d.is_side(a, b)) d.diagonals.emplace_back(a, b);
  }
  std::sort(d.diagonals.begin(), d.diagonals.end());
  d.diagonals.erase(std::unique(d.diagonals.begin(), d.diagonals.end()), d.diagonals.end());
  if (!noncrossing_sorted(d.diagonals)) throw Error(ErrorKind::InvalidArgument, "diagonals cross");
  return d;
}

bool is_valid_dissection(const Dissection& d) {
  if (d.n < 2) return false;
  for (std::size_t i = 0; i < d.diagonals.size(); ++i) {
    auto [a, b] = d.diagonals[i];
    if (a < 0 || b > d.n || a >= b || d.is_side(a, b)) return false;
    if (i > 0 && !(d.diagonals[i - 1] < d.diagonals[i])) return false;
  }
  return noncrossing_sorted(d.diagonals);
}

OrderedTree dual_tree(const Dissection& d) {
  if (!is_valid_dissection(d)) throw Error(ErrorKind::InvalidArgument, "invalid dissection");
  // far[a] lists the vertices b > a joined to a, sorted descending
  std::vector<std::vector<std::int64_t>> far(static_cast<std::size_t>(d.n + 1));
  for (auto [a, b] : d.chords()) far[static_cast<std::size_t>(a)].push_back(b);
  for (auto& v : far) std::sort(v.begin(), v.end(), std::greater<>());

  // The face inside chord (a, b) has vertices a = v_0 < ... < v_k = b where
  // v_{j+1} is the farthest neighbour of v_j not beyond b. Its children are
  // the chords (v_j, v_{j+1}) in order; sides are leaves.
  OrderedTree t;
  t.degrees.reserve(static_cast<std::size_t>(2 * d.n));
  std::vector<Chord> stack{{0, d.n}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    if (b - a == 1) {
      t.degrees.push_back(0);
      continue;
    }
    std::vector<std::int64_t> verts{a};
    std::int64_t v = a;
    while (v != b) {
      const auto& nb = far[static_cast<std::size_t>(v)];
      auto it = std::find_if(nb.begin(), nb.end(), [&](std::int64_t x) { return x < b || (x == b && v != a); });
      v = *it;
      verts.push_back(v);
    }
    t.degrees.push_back(static_cast<int>(verts.size()) - 1);
    for (std::size_t j = verts.size() - 1; j-- > 0;) stack.emplace_back(verts[j], verts[j + 1]);
  }
  return t;
}

Dissection dissection_from_path(const LukasiewiczPath& z) {
  const auto zeta = static_cast<std::int64_t>(z.size()) - 1;
  if (zeta < 2 || z.front() != 0 || z.back() != -1) throw Error(ErrorKind::InvalidPath, "path must run from 0 to -1");
  std::int64_t top = 0;
  for (std::int64_t k = 0; k < zeta; ++k) {
    const std::int64_t x = z[static_cast<std::size_t>(k + 1)] - z[static_cast<std::size_t>(k)];
    if (z[static_cast<std::size_t>(k)] < 0) throw Error(ErrorKind::InvalidPath, "path negative before the end");
    if (x == 0 || x < -1) throw Error(ErrorKind::InvalidPath, "increment " + std::to_string(x) + " not allowed");
    top = std::max(top, z[static_cast<std::size_t>(k)]);
  }
  const auto lam = leaf_count_process(z);
  const std::int64_t n = lam.back();
  if (n < 2) throw Error(ErrorKind::InvalidPath, "path codes fewer than 2 leaves");

  // first_at[level + 1] = smallest l >= current index with z_l = level,
  // maintained by a backward sweep
  std::vector<std::int64_t> first_at(static_cast<std::size_t>(top + 2), -1);
  std::vector<Chord> chords;
  std::vector<std::int64_t> s;
  for (std::int64_t i = zeta - 1; i >= 0; --i) {
    first_at[static_cast<std::size_t>(z[static_cast<std::size_t>(i + 1)] + 1)] = i + 1;
    const std::int64_t x = z[static_cast<std::size_t>(i + 1)] - z[static_cast<std::size_t>(i)];
    if (x < 1) continue;
    const std::int64_t k = x + 1;
    s.assign(1, i + 1);
    for (std::int64_t m = 1; m <= k; ++m)
      s.push_back(first_at[static_cast<std::size_t>(z[static_cast<std::size_t>(i + 1)] - m + 1)]);
    s.push_back(i + 1);
    for (std::size_t j = 0; j + 1 < s.size(); ++j) {
      const std::int64_t a = lam[static_cast<std::size_t>(s[j])];
      const std::int64_t b = lam[static_cast<std::size_t>(s[j + 1])];
      if (a != b) chords.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  return make_dissection(n, std::move(chords));
}

std::vector<Face> faces(const Dissection& d) {
  if (!is_valid_dissection(d)) throw Error(ErrorKind::InvalidArgument, "invalid dissection");
  const std::int64_t nv = d.n + 1;
  // neighbours of v sorted by clockwise offset (x - v) mod (n+1)
  std::vector<std::vector<std::int64_t>> nbrs(static_cast<std::size_t>(nv));
  for (auto [a, b] : d.chords()) {
    nbrs[static_cast<std::size_t>(a)].push_back(b);
    nbrs[static_cast<std::size_t>(b)].push_back(a);
  }
  auto offset = [nv](std::int64_t from, std::int64_t to) { return ((to - from) % nv + nv) % nv; };
  for (std::int64_t v = 0; v < nv; ++v) {
    auto& nb = nbrs[static_cast<std::size_t>(v)];
    std::sort(nb.begin(), nb.end(), [&](std::int64_t x, std::int64_t y) { return offset(v, x) < offset(v, y); });
  }
  // Interior faces are traced with increasing vertex order: arriving at v
  // from u, leave towards the neighbour with the largest offset below u's.
  auto next_vertex = [&](std::int64_t u, std::int64_t v) {
    const auto& nb = nbrs[static_cast<std::size_t>(v)];
    const std::int64_t ou = offset(v, u);
    auto it = std::lower_bound(nb.begin(), nb.end(), ou, [&](std::int64_t x, std::int64_t o) { return offset(v, x) < o; });
    return it == nb.begin() ? nb.back() : *std::prev(it);
  };
  std::set<Chord> used;  // directed edges already traversed
  std::vector<Face> out;
  for (std::int64_t v = 0; v < nv; ++v) {
    for (std::int64_t w : nbrs[static_cast<std::size_t>(v)]) {
      // the outer face is the only one walking sides backwards
      if (used.count({v, w}) || (d.is_side(v, w) && offset(v, w) != 1)) continue;
      Face f;
      std::int64_t a = v, b = w;
      while (!used.count({a, b})) {
        used.insert({a, b});
        f.boundary.push_back(a);
        const std::int64_t c = next_vertex(a, b);
        a = b;
        b = c;
      }
      std::sort(f.boundary.begin(), f.boundary.end());
      out.push_back(std::move(f));
    }
  }
  std::sort(out.begin(), out.end(), [](const Face& x, const Face& y) { return x.boundary < y.boundary; });
  return out;
}

double boltzmann_weight(const WeightFamily& w, const Dissection& d) {
  double p = 1.0;
  for (const auto& f : faces(d)) p *= w.mu(f.degree() - 1);
  return p;
}

std::vector<Dissection> enumerate_dissections(std::int64_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "dissections need n >= 2");
  if (n > 8) throw Error(ErrorKind::TooLarge, "enumeration limited to n <= 8");
  std::vector<Chord> diag;
  for (std::int64_t a = 0; a <= n; ++a)
    for (std::int64_t b = a + 2; b <= n; ++b)
      if (!(a == 0 && b == n)) diag.emplace_back(a, b);

  std::vector<Dissection> out;
  std::vector<Chord> chosen;
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == diag.size()) {
      out.push_back(Dissection{n, chosen});
      return;
    }
    self(self, idx + 1);
    const Chord c = diag[idx];
    if (std::none_of(chosen.begin(), chosen.end(), [&](const Chord& x) { return chords_cross(x, c); })) {
      chosen.push_back(c);
      self(self, idx + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const Dissection& x, const Dissection& y) { return x.diagonals < y.diagonals; });
  return out;
}

double partition_function(const WeightFamily& w, std::int64_t n) {
  double z = 0.0;
  for (const auto& d : enumerate_dissections(n)) z += boltzmann_weight(w, d);
  return z;
}

Dissection sample_boltzmann_dissection(const WeightFamily& w, std::int64_t n, Rng& rng,
                                       const ConditionedOptions& opts) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "dissections need n >= 2");
  return dissection_from_path(lukasiewicz(sample_gw_tree_with_n_leaves(w, n, rng, opts)));
}

}  // namespace stablam
