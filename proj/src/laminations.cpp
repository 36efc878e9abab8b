#include "stablam/laminations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "stablam/stats.hpp"

namespace stablam {

bool Lamination::contains(const Chord& c) const { return std::binary_search(chords.begin(), chords.end(), c); }

double chord_length(const Chord& c) { return 2.0 * std::sin(std::numbers::pi * (c.t - c.s)); }

bool is_noncrossing(const Lamination& l) {
  std::vector<Chord> cs = l.chords;
  std::sort(cs.begin(), cs.end(), [](const Chord& x, const Chord& y) { return x.s != y.s ? x.s < y.s : x.t > y.t; });
  std::vector<double> open;  // right ends of chords enclosing the current point
  for (const Chord& c : cs) {
    if (!(0.0 <= c.s && c.s < c.t && c.t < 1.0)) return false;
    while (!open.empty() && open.back() <= c.s) open.pop_back();
    if (!open.empty() && c.t > open.back()) return false;
    open.push_back(c.t);
  }
  return true;
}

void normalize(Lamination& l) {
  std::erase_if(l.chords, [](const Chord& c) { return !(c.s < c.t); });
  std::sort(l.chords.begin(), l.chords.end());
  l.chords.erase(std::unique(l.chords.begin(), l.chords.end()), l.chords.end());
}

namespace {

// Converts grid indices to circle coordinates. Discrete paths go through the
// leaf-count process, so index i becomes polygon vertex lambda[i].
class IndexMap {
 public:
  explicit IndexMap(const GridPath& p) : h_(p.h) {
    if (p.kind == PathKind::DiscreteTree) {
      const std::size_t zeta = p.values.size() - 1;
      lambda_.assign(zeta + 1, 0);
      for (std::size_t l = 0; l < zeta; ++l)
        lambda_[l + 1] = lambda_[l] + (p.values[l + 1] - p.values[l] == -1.0 ? 1 : 0);
    } else if (p.kind == PathKind::DiscreteHeight) {
      const std::size_t zeta = p.values.size();
      lambda_.assign(zeta + 1, 0);
      for (std::size_t l = 0; l < zeta; ++l)
        lambda_[l + 1] = lambda_[l] + (l + 1 == zeta || p.values[l + 1] <= p.values[l] ? 1 : 0);
    }
    if (!lambda_.empty()) denominator_ = lambda_.back() + 1;
  }

  std::int64_t denominator() const { return denominator_; }
  std::int64_t leaves() const { return denominator_ - 1; }

  Chord at(std::int64_t i, std::int64_t j) const {
    if (denominator_ > 0) {
      const std::int64_t a = lambda_[static_cast<std::size_t>(i)], b = lambda_[static_cast<std::size_t>(j)];
      return exact(std::min(a, b), std::max(a, b));
    }
    return at_time(static_cast<double>(i) * h_, static_cast<double>(j) * h_);
  }

  Chord exact(std::int64_t a, std::int64_t b) const {
    const auto d = static_cast<double>(denominator_);
    return {static_cast<double>(a) / d, static_cast<double>(b) / d, a, b};
  }

  // times in [0, 1]; time 1 is the same circle point as time 0
  static Chord at_time(double u, double v) {
    if (u > v) std::swap(u, v);
    if (v >= 1.0) return {0.0, u >= 1.0 ? 0.0 : u};
    return {u, v};
  }

 private:
  double h_;
  std::vector<std::int64_t> lambda_;
  std::int64_t denominator_ = 0;
};

// Min segment tree answering "first index >= p with value <= level".
class MinTree {
 public:
  explicit MinTree(const std::vector<double>& v) {
    n_ = 1;
    while (n_ < v.size()) n_ <<= 1;
    t_.assign(2 * n_, std::numeric_limits<double>::infinity());
    std::copy(v.begin(), v.end(), t_.begin() + static_cast<std::ptrdiff_t>(n_));
    for (std::size_t i = n_ - 1; i >= 1; --i) t_[i] = std::min(t_[2 * i], t_[2 * i + 1]);
  }

  // strict: value < level instead of <=; -1 when absent
  std::int64_t first_at_most(std::int64_t p, double level, bool strict) const {
    return find(1, 0, n_, static_cast<std::size_t>(std::max<std::int64_t>(p, 0)), level, strict);
  }

 private:
  std::int64_t find(std::size_t node, std::size_t lo, std::size_t hi, std::size_t p, double level,
                    bool strict) const {
    if (hi <= p) return -1;
    const double m = t_[node];
    if (strict ? !(m < level) : !(m <= level)) return -1;
    if (hi - lo == 1) return static_cast<std::int64_t>(lo);
    const std::size_t mid = (lo + hi) / 2;
    const std::int64_t left = find(2 * node, lo, mid, p, level, strict);
    return left >= 0 ? left : find(2 * node + 1, mid, hi, p, level, strict);
  }

  std::size_t n_ = 1;
  std::vector<double> t_;
};

struct RawFace {
  std::int64_t jump = 0;  // index of the jump cell
  std::int64_t s = 0, t = 0;
  std::vector<std::int64_t> ladder;
};

// Faces generated by the annotated jumps: (s, t) and the ladder of running
// infima of X over [s, t]. Discrete paths use strict comparisons.
std::vector<RawFace> raw_faces(const GridPath& x, bool with_ladder) {
  if (x.kind != PathKind::Excursion && x.kind != PathKind::DiscreteTree)
    throw Error(ErrorKind::InvalidArgument, "chords need an excursion path");
  if (!x.jump_eps) throw Error(ErrorKind::MissingJumps, "excursion carries no jump annotations");
  const bool strict = x.kind == PathKind::DiscreteTree;
  const MinTree tree(x.values);
  std::vector<RawFace> out;
  out.reserve(x.jumps.size());
  for (const Jump& j : x.jumps) {
    RawFace f;
    f.jump = j.index;
    f.s = j.index + 1;
    f.t = tree.first_at_most(f.s + 1, x.values[static_cast<std::size_t>(j.index)], strict);
    if (f.t < 0) continue;
    if (with_ladder) {
      f.ladder.push_back(f.s);
      while (f.ladder.back() < f.t) {
        const std::int64_t r = f.ladder.back();
        f.ladder.push_back(tree.first_at_most(r + 1, x.values[static_cast<std::size_t>(r)], strict));
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

Lamination make_lamination(const GridPath& p, const IndexMap& map, SourceKind kind, double eps) {
  Lamination l;
  l.source.kind = kind;
  l.source.theta = p.theta;
  l.source.eps = eps;
  l.denominator = map.denominator();
  l.resolution = p.h;
  if (l.is_discrete()) {
    l.source.n = map.leaves();
    l.resolution = 1.0 / static_cast<double>(l.denominator);
  }
  return l;
}

}  // namespace

Lamination chords_from_excursion(const GridPath& x, ExcursionMode mode) {
  const auto faces = raw_faces(x, mode.closure);
  const IndexMap map(x);
  Lamination l = make_lamination(x, map, SourceKind::Excursion, x.jump_eps.value_or(0.0));
  for (const RawFace& f : faces) {
    l.chords.push_back(map.at(f.s, f.t));
    for (std::size_t a = 0; a + 1 < f.ladder.size(); ++a)
      if (f.ladder[a + 1] - f.ladder[a] > mode.depth) l.chords.push_back(map.at(f.ladder[a], f.ladder[a + 1]));
  }
  normalize(l);
  return l;
}

Lamination chords_from_brownian(const GridPath& e, double min_gap) {
  if (e.is_discrete()) throw Error(ErrorKind::InvalidArgument, "Brownian chords need a continuous path");
  const auto& v = e.values;
  const auto n = static_cast<std::int64_t>(v.size());
  Lamination l;
  l.source.kind = SourceKind::Brownian;
  l.source.theta = 2.0;
  l.resolution = e.h;
  if (n < 3) return l;

  // left[k] / right[k]: interpolated time where the path last / next sits at
  // level v[k] before / after k, or NaN if that happens in a neighbouring cell.
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> left(static_cast<std::size_t>(n), nan), right(static_cast<std::size_t>(n), nan);
  std::vector<std::int64_t> stack;
  for (std::int64_t k = 0; k < n; ++k) {
    const double y = v[static_cast<std::size_t>(k)];
    while (!stack.empty() && v[static_cast<std::size_t>(stack.back())] > y) stack.pop_back();
    if (!stack.empty() && stack.back() + 1 < k) {
      const std::int64_t u = stack.back();
      const double lo = v[static_cast<std::size_t>(u)], hi = v[static_cast<std::size_t>(u + 1)];
      left[static_cast<std::size_t>(k)] = static_cast<double>(u) + (y - lo) / (hi - lo);
    }
    stack.push_back(k);
  }
  stack.clear();
  for (std::int64_t k = n - 1; k >= 0; --k) {
    const double y = v[static_cast<std::size_t>(k)];
    while (!stack.empty() && v[static_cast<std::size_t>(stack.back())] > y) stack.pop_back();
    if (!stack.empty() && stack.back() - 1 > k) {
      const std::int64_t w = stack.back();
      const double hi = v[static_cast<std::size_t>(w - 1)], lo = v[static_cast<std::size_t>(w)];
      right[static_cast<std::size_t>(k)] = static_cast<double>(w - 1) + (hi - y) / (hi - lo);
    }
    stack.push_back(k);
  }
  auto emit = [&](double a, double b) {
    if (std::isnan(a) || std::isnan(b) || (b - a) * e.h < min_gap) return;
    l.chords.push_back(IndexMap::at_time(a * e.h, b * e.h));
  };
  for (std::int64_t k = 0; k < n; ++k) {
    const double a = left[static_cast<std::size_t>(k)], b = right[static_cast<std::size_t>(k)];
    emit(a, static_cast<double>(k));
    emit(static_cast<double>(k), b);
    emit(a, b);
  }
  normalize(l);
  return l;
}

Lamination chords_from_height(const GridPath& hp, double min_gap, double tol) {
  const auto& v = hp.values;
  const IndexMap map(hp);
  Lamination l = make_lamination(hp, map, SourceKind::Height, 0.0);
  if (v.empty()) return l;
  if (tol < 0.0) {
    if (hp.kind == PathKind::DiscreteHeight || hp.kind == PathKind::Height || hp.kind == PathKind::DiscreteTree) {
      double scale = 1.0;
      for (double y : v) scale = std::max(scale, std::abs(y));
      tol = 1e-9 * scale;
    } else {
      std::vector<double> inc;
      inc.reserve(v.size());
      for (std::size_t k = 0; k + 1 < v.size(); ++k) inc.push_back(std::abs(v[k + 1] - v[k]));
      tol = inc.empty() ? 0.0 : 2.0 * stats::median(inc);
    }
  }
  // Discrete heights stop at the last vertex; index zeta closes every class.
  const auto end = static_cast<std::int64_t>(hp.kind == PathKind::DiscreteHeight ? v.size() : v.size() - 1);

  auto emit = [&](std::int64_t i, std::int64_t j) {
    const Chord c = map.at(i, j);
    if (c.s < c.t && c.t - c.s >= min_gap) l.chords.push_back(c);
  };
  struct Class {
    double level;
    std::int64_t first, last;
  };
  std::vector<Class> open;
  auto close_above = [&](double level, std::int64_t r) {
    while (!open.empty() && open.back().level > level) {
      const Class c = open.back();
      open.pop_back();
      emit(c.first, r);
      if (c.last != c.first) emit(c.last, r);
    }
  };
  // on continuous paths a flat run is a single point of the tree
  const bool plateaus = !hp.is_discrete();
  for (std::int64_t r = 0; r <= end && r < static_cast<std::int64_t>(v.size()); ++r) {
    const double y = v[static_cast<std::size_t>(r)];
    close_above(y + tol, r);
    if (!open.empty() && open.back().level >= y - tol) {
      if (!(plateaus && open.back().last + 1 == r)) emit(open.back().last, r);
      open.back().last = r;
    } else {
      open.push_back({y, r, r});
    }
  }
  close_above(-std::numeric_limits<double>::infinity(), end);
  normalize(l);
  return l;
}

Lamination lamination_from_dissection(const Dissection& d) {
  Lamination l;
  l.source.kind = SourceKind::Dissection;
  l.source.n = d.n;
  l.denominator = d.n + 1;
  l.resolution = 1.0 / static_cast<double>(l.denominator);
  const auto den = static_cast<double>(l.denominator);
  for (const auto& [a, b] : d.chords())
    l.chords.push_back({static_cast<double>(a) / den, static_cast<double>(b) / den, a, b});
  normalize(l);
  return l;
}

std::vector<FaceRecord> faces_of_lamination(const GridPath& x, const Lamination& l) {
  if (l.source.kind != SourceKind::Excursion && l.source.kind != SourceKind::Dissection)
    throw Error(ErrorKind::SourceMismatch, "lamination was not built from an excursion");
  const IndexMap map(x);
  if (map.denominator() != l.denominator)
    throw Error(ErrorKind::SourceMismatch, "coordinate systems of path and lamination differ");
  std::vector<FaceRecord> out;
  for (const RawFace& f : raw_faces(x, true)) {
    FaceRecord r;
    r.jump_index = f.s;
    r.jump_size = x.values[static_cast<std::size_t>(f.s)] - x.values[static_cast<std::size_t>(f.jump)];
    r.close_index = f.t;
    r.chord = map.at(f.s, f.t);
    if (r.chord.s < r.chord.t && !l.contains(r.chord))
      throw Error(ErrorKind::SourceMismatch, "face chord missing from the lamination");
    r.boundary_index = f.ladder;
    for (std::int64_t i : f.ladder) {
      const Chord c = map.at(0, i);
      r.boundary.push_back(i == 0 ? 0.0 : c.t);
    }
    for (std::size_t a = 0; a + 1 < f.ladder.size(); ++a) {
      const Chord c = map.at(f.ladder[a], f.ladder[a + 1]);
      if (c.s < c.t) r.sub_chords.push_back(c);
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

void mark_segment(Raster& r, double x0, double y0, double x1, double y1) {
  const double w = r.pixel_width();
  const double len = std::hypot(x1 - x0, y1 - y0);
  const auto steps = static_cast<std::int64_t>(std::ceil(len / (0.25 * w))) + 1;
  for (std::int64_t k = 0; k <= steps; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(steps);
    const auto px = static_cast<int>(std::floor((x0 + f * (x1 - x0) + 1.05) / w));
    const auto py = static_cast<int>(std::floor((1.05 - (y0 + f * (y1 - y0))) / w));
    if (px >= 0 && px < r.size && py >= 0 && py < r.size)
      r.pixels[static_cast<std::size_t>(py) * static_cast<std::size_t>(r.size) + static_cast<std::size_t>(px)] = 1;
  }
}

constexpr double kFar = 1e20;

// 1D squared distance transform (Felzenszwalb-Huttenlocher lower envelope).
void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<std::size_t>& v,
            std::vector<double>& z) {
  const std::size_t n = f.size();
  std::size_t k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  auto sq = [](std::size_t q) { return static_cast<double>(q) * static_cast<double>(q); };
  for (std::size_t q = 1; q < n; ++q) {
    auto cross = [&](std::size_t p) { return ((f[q] + sq(q)) - (f[p] + sq(p))) / (2.0 * static_cast<double>(q - p)); };
    double s = cross(v[k]);
    while (s <= z[k]) s = cross(v[--k]);  // z[0] = -inf stops the descent
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    while (z[k + 1] < static_cast<double>(q)) ++k;
    const double dq = static_cast<double>(q) - static_cast<double>(v[k]);
    d[q] = dq * dq + f[v[k]];
  }
}

// Squared pixel distance to the nearest set pixel.
std::vector<double> distance_transform(const Raster& r) {
  const auto n = static_cast<std::size_t>(r.size);
  std::vector<double> g(n * n);
  for (std::size_t i = 0; i < n * n; ++i) g[i] = r.pixels[i] ? 0.0 : kFar;
  std::vector<double> f(n), d(n), z(n + 1);
  std::vector<std::size_t> v(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) f[y] = g[y * n + x];
    edt_1d(f, d, v, z);
    for (std::size_t y = 0; y < n; ++y) g[y * n + x] = d[y];
  }
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t x = 0; x < n; ++x) f[x] = g[y * n + x];
    edt_1d(f, d, v, z);
    for (std::size_t x = 0; x < n; ++x) g[y * n + x] = d[x];
  }
  return g;
}

}  // namespace

Raster rasterize(const Lamination& l, int raster) {
  if (raster < 64) throw Error(ErrorKind::InvalidArgument, "raster must be at least 64");
  Raster r;
  r.size = raster;
  r.pixels.assign(static_cast<std::size_t>(raster) * static_cast<std::size_t>(raster), 0);
  const int sides = 8 * raster;
  for (int k = 0; k < sides; ++k) {
    const double a0 = 2.0 * std::numbers::pi * k / sides, a1 = 2.0 * std::numbers::pi * (k + 1) / sides;
    mark_segment(r, std::cos(a0), std::sin(a0), std::cos(a1), std::sin(a1));
  }
  for (const Chord& c : l.chords) {
    const double as = -2.0 * std::numbers::pi * c.s, at = -2.0 * std::numbers::pi * c.t;
    mark_segment(r, std::cos(as), std::sin(as), std::cos(at), std::sin(at));
  }
  return r;
}

double hausdorff_distance(const Lamination& a, const Lamination& b, int raster) {
  const Raster ra = rasterize(a, raster), rb = rasterize(b, raster);
  const auto da = distance_transform(ra), db = distance_transform(rb);
  double worst = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) {
    if (ra.pixels[i]) worst = std::max(worst, db[i]);
    if (rb.pixels[i]) worst = std::max(worst, da[i]);
  }
  return std::sqrt(worst) * ra.pixel_width();
}

}  // namespace stablam
