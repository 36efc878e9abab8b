#include "stablam/stable_paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace stablam {

namespace {

void check_theta(double theta) {
  if (!(theta > 1.0 && theta <= 2.0)) throw Error(ErrorKind::BadTheta, "theta must lie in (1,2]");
}

// Unit-time spectrally positive stable draw with Laplace exponent lambda^a.
//
// Chambers-Mallows-Stuck for S_a(sigma, beta = 1, 0):
//   B = atan(tan(pi a / 2)) / a,  S = (1 + tan^2(pi a / 2))^{1/(2a)},
//   X = sigma S sin(a(V + B)) / cos(V)^{1/a} * (cos(V - a(V + B)) / W)^{(1-a)/a}
// with V ~ U(-pi/2, pi/2), W ~ Exp(1). For beta = 1 and 1 < a < 2,
// E exp(-lambda X) = exp(-sigma^a lambda^a / cos(pi a / 2)), so the target
// transform needs sigma^a = |cos(pi a / 2)|, i.e. sigma = 1 / S.
struct StableDraw {
  double a;
  double ab;  // a * B
  explicit StableDraw(double alpha)
      : a(alpha), ab(std::atan(std::tan(std::numbers::pi * alpha / 2.0))) {}

  double operator()(Rng& rng) const {
    const double v = std::numbers::pi * (rng.uniform_pos() - 0.5);
    const double w = rng.exponential();
    const double avb = a * v + ab;
    return std::sin(avb) / std::pow(std::cos(v), 1.0 / a) * std::pow(std::cos(v - avb) / w, (1.0 - a) / a);
  }
};

}  // namespace

double sample_stable_increment(double theta, double t, Rng& rng) {
  check_theta(theta);
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be positive");
  if (theta == 2.0) return std::sqrt(2.0 * t) * rng.normal();
  return std::pow(t, 1.0 / theta) * StableDraw(theta)(rng);
}

double default_jump_eps(double theta, double h) { return 5.0 * std::pow(h, 1.0 / theta); }

namespace {

// Increment generator shared by the grid samplers.
class IncrementStream {
 public:
  IncrementStream(double theta, double h)
      : theta_(theta), scale_(theta == 2.0 ? std::sqrt(2.0 * h) : std::pow(h, 1.0 / theta)), draw_(theta) {}
  double operator()(Rng& rng) const { return theta_ == 2.0 ? scale_ * rng.normal() : scale_ * draw_(rng); }

 private:
  double theta_;
  double scale_;
  StableDraw draw_;
};

void annotate(GridPath& p) {
  if (p.theta == 2.0) {
    p.jumps.clear();
    p.jump_eps = std::numeric_limits<double>::infinity();
  } else {
    p.jump_eps = default_jump_eps(p.theta, p.h);
    p.jumps = detect_jumps(p, *p.jump_eps);
  }
}

}  // namespace

GridPath sample_levy_grid(double theta, double horizon, double h, Rng& rng, std::int64_t budget) {
  check_theta(theta);
  if (!(horizon > 0.0) || !(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "T and h must be positive");
  const double ratio = horizon / h;
  if (ratio > static_cast<double>(budget))
    throw Error(ErrorKind::BudgetExceeded, "T/h = " + std::to_string(ratio) + " exceeds the cell budget");
  const auto cells = std::max<std::int64_t>(1, std::llround(ratio));
  GridPath p;
  p.kind = PathKind::Levy;
  p.theta = theta;
  p.h = h;
  p.values.resize(static_cast<std::size_t>(cells) + 1);
  p.values[0] = 0.0;
  const IncrementStream inc(theta, h);
  for (std::int64_t k = 0; k < cells; ++k)
    p.values[static_cast<std::size_t>(k + 1)] = p.values[static_cast<std::size_t>(k)] + inc(rng);
  annotate(p);
  return p;
}

GridPath normalized_excursion(double theta, double h, Rng& rng, const ExcursionOptions& opts) {
  check_theta(theta);
  if (!(h > 0.0) || h > 1e-3) throw Error(ErrorKind::InvalidArgument, "excursion grid needs 0 < h <= 1e-3");
  const IncrementStream inc(theta, h);
  const std::int64_t unit = std::llround(1.0 / h);
  std::vector<double> x;
  while (true) {
    x.assign(1, 0.0);
    x.reserve(static_cast<std::size_t>(2 * unit) + 1);
    // g: last grid index <= unit where X attains its running infimum
    std::int64_t g = 0;
    double inf = 0.0;
    for (std::int64_t k = 1; k <= unit; ++k) {
      x.push_back(x.back() + inc(rng));
      if (x.back() <= inf) {
        inf = x.back();
        g = k;
      }
    }
    // d: first index after `unit` where X comes back to I = X_g
    const double level = x[static_cast<std::size_t>(g)];
    std::int64_t k = unit;
    while (x.back() > level && k < opts.budget) {
      ++k;
      x.push_back(x.back() + inc(rng));
    }
    if (x.back() > level) {
      if (opts.resample_unclosed) continue;
      throw Error(ErrorKind::ExcursionNotClosed, "cell budget exhausted before closure");
    }
    const std::int64_t m = k - g;
    if (m < std::max<std::int64_t>(opts.min_cells, 2)) continue;

    const double length = static_cast<double>(m) * h;
    const double vscale = std::pow(length, -1.0 / theta);
    GridPath p;
    p.kind = PathKind::Excursion;
    p.theta = theta;
    p.h = 1.0 / static_cast<double>(m);
    p.values.resize(static_cast<std::size_t>(m) + 1);
    for (std::int64_t j = 0; j <= m; ++j)
      p.values[static_cast<std::size_t>(j)] = (x[static_cast<std::size_t>(g + j)] - level) * vscale;
    // the grid overshoots below the running infimum at the closing step
    p.values.back() = 0.0;
    if (theta == 2.0) {
      p.jump_eps = std::numeric_limits<double>::infinity();
    } else {
      p.jump_eps = default_jump_eps(theta, h) * vscale;
      p.jumps = detect_jumps(p, *p.jump_eps);
    }
    return p;
  }
}

GridPath brownian_excursion(double h, Rng& rng) {
  if (!(h > 0.0) || h > 1e-3) throw Error(ErrorKind::InvalidArgument, "excursion grid needs 0 < h <= 1e-3");
  const std::int64_t n = std::llround(1.0 / h);
  const double step = std::sqrt(2.0 / static_cast<double>(n));
  std::vector<double> walk(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::int64_t k = 0; k < n; ++k)
    walk[static_cast<std::size_t>(k + 1)] = walk[static_cast<std::size_t>(k)] + step * rng.normal();
  const double end = walk.back();
  std::int64_t argmin = 0;
  for (std::int64_t k = 0; k <= n; ++k) {
    walk[static_cast<std::size_t>(k)] -= end * static_cast<double>(k) / static_cast<double>(n);
    if (k < n && walk[static_cast<std::size_t>(k)] < walk[static_cast<std::size_t>(argmin)]) argmin = k;
  }
  GridPath p;
  p.kind = PathKind::Excursion;
  p.theta = 2.0;
  p.h = 1.0 / static_cast<double>(n);
  p.values.resize(static_cast<std::size_t>(n) + 1);
  const double base = walk[static_cast<std::size_t>(argmin)];
  for (std::int64_t j = 0; j <= n; ++j)
    p.values[static_cast<std::size_t>(j)] = walk[static_cast<std::size_t>((argmin + j) % n)] - base;
  p.values.back() = 0.0;
  p.jump_eps = std::numeric_limits<double>::infinity();
  return p;
}

std::vector<Jump> detect_jumps(const GridPath& p, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::BadEps, "jump threshold must be positive");
  std::vector<Jump> out;
  for (std::size_t k = 0; k + 1 < p.values.size(); ++k) {
    const double d = p.values[k + 1] - p.values[k];
    if (d > eps) out.push_back({static_cast<std::int64_t>(k), d});
  }
  return out;
}

double height_normalizer(double theta, double eps) {
  return theta / (std::tgamma(2.0 - theta) * std::pow(eps, theta - 1.0));
}

GridPath approx_height_process(const GridPath& x, double eps) {
  if (x.kind != PathKind::Excursion && x.kind != PathKind::DiscreteTree)
    throw Error(ErrorKind::InvalidArgument, "height needs an excursion path");
  GridPath out;
  out.kind = PathKind::Height;
  out.theta = x.theta;
  out.h = x.h;
  if (x.theta == 2.0) {
    out.values = x.values;
    return out;
  }
  if (!x.jump_eps) throw Error(ErrorKind::MissingJumps, "excursion carries no jump annotations");
  if (!(eps > 0.0) || eps < *x.jump_eps)
    throw Error(ErrorKind::BadEps, "eps below the annotation threshold " + std::to_string(*x.jump_eps));
  const double beta = height_normalizer(x.theta, eps);
  out.values.assign(x.values.size(), 0.0);
  // pre-jump levels of the jumps still below every later value; increasing
  std::vector<double> open;
  std::size_t next = 0;
  for (std::size_t t = 0; t < x.values.size(); ++t) {
    while (!open.empty() && open.back() >= x.values[t]) open.pop_back();
    // a jump in cell j happens at time j + 1
    while (next < x.jumps.size() && static_cast<std::size_t>(x.jumps[next].index) + 1 == t) {
      const Jump& j = x.jumps[next++];
      if (j.size > eps) open.push_back(x.values[static_cast<std::size_t>(j.index)]);
    }
    out.values[t] = static_cast<double>(open.size()) / beta;
  }
  return out;
}

GridPath discrete_excursion_from_tree(const OrderedTree& t, double theta) {
  const auto w = lukasiewicz(t);
  GridPath p;
  p.kind = PathKind::DiscreteTree;
  p.theta = theta;
  p.h = 1.0 / static_cast<double>(t.size());
  p.values.assign(w.begin(), w.end());
  p.jump_eps = 0.5;
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (w[k + 1] - w[k] >= 1) p.jumps.push_back({static_cast<std::int64_t>(k), static_cast<double>(w[k + 1] - w[k])});
  return p;
}

GridPath discrete_excursion_from_tree(const WeightFamily& w, std::int64_t n, Rng& rng,
                                      const ConditionedOptions& opts) {
  return discrete_excursion_from_tree(sample_gw_tree_with_n_leaves(w, n, rng, opts), w.theta());
}

GridPath discrete_height_path(const OrderedTree& t) {
  const auto hs = height(t);
  GridPath p;
  p.kind = PathKind::DiscreteHeight;
  p.h = 1.0 / static_cast<double>(t.size());
  p.values.assign(hs.begin(), hs.end());
  return p;
}

GridPath scaled(const GridPath& p, double c) {
  if (!(c > 0.0)) throw Error(ErrorKind::InvalidArgument, "scale factor must be positive");
  GridPath q = p;
  for (double& v : q.values) v *= c;
  for (Jump& j : q.jumps) j.size *= c;
  if (q.jump_eps) q.jump_eps = *q.jump_eps * c;
  return q;
}

GridPath reversed(const GridPath& p) {
  GridPath q = p;
  std::reverse(q.values.begin(), q.values.end());
  q.jumps.clear();
  q.jump_eps.reset();
  return q;
}

}  // namespace stablam
