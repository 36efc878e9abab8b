#include "stablam/fractal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace stablam {

std::vector<double> dyadic_scales(int k_min, int k_max) {
  std::vector<double> out;
  for (int k = k_min; k <= k_max; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

namespace {

void check_scales(const std::vector<double>& scales) {
  for (std::size_t i = 0; i < scales.size(); ++i) {
    int e = 0;
    if (!(scales[i] > 0.0) || std::frexp(scales[i], &e) != 0.5 || scales[i] > 2.0)
      throw Error(ErrorKind::InvalidArgument, "scales must be dyadic");
    if (i > 0 && !(scales[i] < scales[i - 1])) throw Error(ErrorKind::InvalidArgument, "scales must descend");
  }
}

// Occupancy grid of side-delta boxes covering [-1, 1]^2.
class BoxGrid {
 public:
  explicit BoxGrid(double delta)
      : delta_(delta), n_(static_cast<std::int64_t>(std::llround(2.0 / delta))),
        bits_((static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_) + 63) / 64, 0) {}

  std::int64_t size() const { return n_; }
  std::int64_t cell(double x) const {
    return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((x + 1.0) / delta_)), 0, n_ - 1);
  }
  void mark(std::int64_t i, std::int64_t j) {
    const auto k = static_cast<std::size_t>(i * n_ + j);
    bits_[k / 64] |= std::uint64_t{1} << (k % 64);
  }
  std::int64_t count() const {
    std::int64_t c = 0;
    for (std::uint64_t w : bits_) c += std::popcount(w);
    return c;
  }

  // Amanatides-Woo walk through every cell the segment meets.
  void segment(double x0, double y0, double x1, double y1) {
    std::int64_t i = cell(x0), j = cell(y0);
    const std::int64_t ie = cell(x1), je = cell(y1);
    const double dx = x1 - x0, dy = y1 - y0;
    const int si = dx > 0 ? 1 : -1, sj = dy > 0 ? 1 : -1;
    const double inf = std::numeric_limits<double>::infinity();
    const double tdx = dx != 0.0 ? delta_ / std::abs(dx) : inf, tdy = dy != 0.0 ? delta_ / std::abs(dy) : inf;
    auto first = [&](double p, std::int64_t c, int s, double d) {
      if (d == 0.0) return inf;
      const double edge = -1.0 + static_cast<double>(c + (s > 0 ? 1 : 0)) * delta_;
      return (edge - p) / d;
    };
    double tx = first(x0, i, si, dx), ty = first(y0, j, sj, dy);
    mark(i, j);
    const std::int64_t steps = std::abs(ie - i) + std::abs(je - j);
    for (std::int64_t k = 0; k < steps; ++k) {
      if (tx < ty) {
        i += si;
        tx += tdx;
      } else {
        j += sj;
        ty += tdy;
      }
      mark(std::clamp<std::int64_t>(i, 0, n_ - 1), std::clamp<std::int64_t>(j, 0, n_ - 1));
    }
  }

  // Unit circle: in each column the upper and lower arcs are monotone on
  // either side of x = 0, so their y-range over the column is exact.
  void circle() {
    for (std::int64_t i = 0; i < n_; ++i) {
      const double xa = -1.0 + static_cast<double>(i) * delta_, xb = xa + delta_;
      const double ya = std::sqrt(std::max(0.0, 1.0 - xa * xa)), yb = std::sqrt(std::max(0.0, 1.0 - xb * xb));
      const double top = (xa <= 0.0 && xb >= 0.0) ? 1.0 : std::max(ya, yb);
      const double bottom = std::min(ya, yb);
      for (std::int64_t j = cell(bottom); j <= cell(top); ++j) mark(i, j);
      for (std::int64_t j = cell(-top); j <= cell(-bottom); ++j) mark(i, j);
    }
  }

 private:
  double delta_;
  std::int64_t n_;
  std::vector<std::uint64_t> bits_;
};

std::pair<double, double> circle_point(double s) {
  const double a = 2.0 * std::numbers::pi * s;
  return {std::cos(a), -std::sin(a)};
}

}  // namespace

std::vector<std::int64_t> box_count(const Lamination& l, const std::vector<double>& scales) {
  check_scales(scales);
  std::vector<std::int64_t> out;
  for (double delta : scales) {
    BoxGrid g(delta);
    g.circle();
    for (const Chord& c : l.chords) {
      const auto [x0, y0] = circle_point(c.s);
      const auto [x1, y1] = circle_point(c.t);
      g.segment(x0, y0, x1, y1);
    }
    out.push_back(g.count());
  }
  return out;
}

std::vector<std::int64_t> box_count_points(const std::vector<std::pair<double, double>>& pts,
                                           const std::vector<double>& scales) {
  if (pts.empty()) throw Error(ErrorKind::EmptyInput, "no points to cover");
  check_scales(scales);
  std::vector<std::int64_t> out;
  for (double delta : scales) {
    BoxGrid g(delta);
    for (const auto& [x, y] : pts) g.mark(g.cell(x), g.cell(y));
    out.push_back(g.count());
  }
  return out;
}

std::vector<std::int64_t> arc_count(const std::vector<double>& coords, const std::vector<double>& scales) {
  if (coords.empty()) throw Error(ErrorKind::EmptyInput, "no points to cover");
  check_scales(scales);
  std::vector<std::int64_t> out;
  std::vector<std::int64_t> cells(coords.size());
  for (double delta : scales) {
    const auto n = static_cast<std::int64_t>(std::llround(1.0 / delta));
    for (std::size_t i = 0; i < coords.size(); ++i)
      cells[i] = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(coords[i] / delta)), 0, n - 1);
    std::sort(cells.begin(), cells.end());
    out.push_back(std::unique(cells.begin(), cells.end()) - cells.begin());
  }
  return out;
}

DimensionEstimate fit_dimension(const std::vector<double>& scales, const std::vector<std::int64_t>& counts,
                                std::optional<std::pair<double, double>> window) {
  if (scales.size() != counts.size()) throw Error(ErrorKind::InvalidArgument, "scales and counts differ in length");
  DimensionEstimate est;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (window && (scales[i] < window->first || scales[i] > window->second)) continue;
    if (counts[i] <= 0) throw Error(ErrorKind::InvalidArgument, "counts must be positive");
    est.scales.push_back(scales[i]);
    est.counts.push_back(counts[i]);
  }
  const std::size_t m = est.scales.size();
  if (m < 4) throw Error(ErrorKind::DegenerateWindow, "fewer than 4 scales in the window");
  est.window = {*std::min_element(est.scales.begin(), est.scales.end()),
                *std::max_element(est.scales.begin(), est.scales.end())};
  double mx = 0.0, my = 0.0;
  std::vector<double> xs(m), ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    xs[i] = -std::log(est.scales[i]);
    ys[i] = std::log(static_cast<double>(est.counts[i]));
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::DegenerateWindow, "scales in the window coincide");
  est.slope = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ys[i] - my - est.slope * (xs[i] - mx);
    ssr += r * r;
  }
  est.stderr_ = std::sqrt(ssr / static_cast<double>(m - 2) / sxx);
  return est;
}

namespace {

std::vector<double> resolved(const std::vector<double>& scales, double floor) {
  std::vector<double> out;
  for (double d : scales)
    if (d >= floor) out.push_back(d);
  return out;
}

}  // namespace

DimensionEstimate estimate_lamination_dimension(const Lamination& l, const FractalOptions& opts) {
  // chord lengths resolve at 2 pi resolution in the plane
  const auto scales = resolved(opts.box_scales, opts.saturation * 2.0 * std::numbers::pi * l.resolution);
  if (scales.size() < 4) throw Error(ErrorKind::DegenerateWindow, "lamination too coarse for the scale window");
  return fit_dimension(scales, box_count(l, scales));
}

DimensionEstimate estimate_endpoint_dimension(const Lamination& l, const FractalOptions& opts) {
  std::vector<double> pts;
  for (const Chord& c : l.chords) {
    if (std::min(c.t - c.s, 1.0 - (c.t - c.s)) < opts.min_arc) continue;
    pts.push_back(c.s);
    pts.push_back(c.t);
  }
  if (pts.empty()) throw Error(ErrorKind::EmptyInput, "no chord spans the minimum arc");
  const auto scales = resolved(opts.arc_scales, opts.saturation * l.resolution);
  if (scales.size() < 4) throw Error(ErrorKind::DegenerateWindow, "lamination too coarse for the scale window");
  return fit_dimension(scales, arc_count(pts, scales));
}

DimensionEstimate estimate_face_boundary_dimension(const FaceRecord& f, double resolution,
                                                   const FractalOptions& opts) {
  if (f.boundary.empty()) throw Error(ErrorKind::EmptyInput, "face has no boundary sample");
  const double lo = f.chord.s, span = f.chord.t - f.chord.s;
  std::vector<double> pts;
  pts.reserve(f.boundary.size());
  for (double r : f.boundary) {
    // the closing point may sit at coordinate 0 (time 1)
    const double x = r < lo ? r + 1.0 : r;
    pts.push_back(span > 0.0 ? std::clamp((x - lo) / span, 0.0, 1.0) : 0.0);
  }
  const double floor = span > 0.0 ? opts.saturation * resolution / span : 0.0;
  const auto scales = resolved(opts.arc_scales, floor);
  if (scales.size() < 4) throw Error(ErrorKind::DegenerateWindow, "face too small for the scale window");
  return fit_dimension(scales, arc_count(pts, scales));
}

const FaceRecord& largest_face(const std::vector<FaceRecord>& faces) {
  if (faces.empty()) throw Error(ErrorKind::EmptyInput, "no faces");
  return *std::max_element(faces.begin(), faces.end(), [](const FaceRecord& a, const FaceRecord& b) {
    return a.boundary.size() < b.boundary.size();
  });
}

Lamination rotated(const Lamination& l, double shift) {
  Lamination out = l;
  out.denominator = 0;
  for (Chord& c : out.chords) {
    double s = std::fmod(c.s + shift, 1.0), t = std::fmod(c.t + shift, 1.0);
    if (s < 0) s += 1.0;
    if (t < 0) t += 1.0;
    c = {std::min(s, t), std::max(s, t)};
  }
  normalize(out);
  return out;
}

}  // namespace stablam
