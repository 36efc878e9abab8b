#include "stablam/gw_trees.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include <boost/math/special_functions/zeta.hpp>

namespace stablam {

std::int64_t OrderedTree::leaf_count() const {
  return std::count(degrees.begin(), degrees.end(), 0);
}

bool OrderedTree::has_unary() const {
  return std::find(degrees.begin(), degrees.end(), 1) != degrees.end();
}

bool is_valid_tree(const OrderedTree& t) {
  if (t.degrees.empty()) return false;
  std::int64_t s = 0;
  for (std::size_t m = 0; m < t.degrees.size(); ++m) {
    if (t.degrees[m] < 0) return false;
    if (s < 0) return false;
    s += t.degrees[m] - 1;
  }
  return s == -1;
}

void require_valid_tree(const OrderedTree& t) {
  if (!is_valid_tree(t)) throw Error(ErrorKind::InvalidArgument, "degree sequence is not a tree");
}

// ---------------------------------------------------------------------------
// Weight families

WeightFamily WeightFamily::uniform_dissection() {
  WeightFamily w;
  w.shape_ = Shape::UniformDissection;
  w.name_ = "uniform-dissection";
  w.ratio_ = (2.0 - std::sqrt(2.0)) / 2.0;
  w.log_ratio_ = std::log(w.ratio_);
  w.mu0_ = 2.0 - std::sqrt(2.0);
  // sum_{i>=2} i c^{i-1} = 1/(1-c)^2 - 1
  w.mean_ = 1.0 / ((1.0 - w.ratio_) * (1.0 - w.ratio_)) - 1.0;
  return w;
}

WeightFamily WeightFamily::p_angulation(int p) {
  if (p < 3) throw Error(ErrorKind::InvalidArgument, "p-angulation needs p >= 3");
  WeightFamily w;
  w.shape_ = Shape::PAngulation;
  w.name_ = "p-angulation-" + std::to_string(p);
  w.p_ = p;
  w.mu_.assign(static_cast<std::size_t>(p), 0.0);
  w.mu_[static_cast<std::size_t>(p - 1)] = 1.0 / (p - 1);
  w.mu0_ = static_cast<double>(p - 2) / (p - 1);
  w.mu_[0] = w.mu0_;
  w.mean_ = (p - 1) * w.mu_[static_cast<std::size_t>(p - 1)];
  w.cdf_.resize(w.mu_.size());
  std::partial_sum(w.mu_.begin(), w.mu_.end(), w.cdf_.begin());
  return w;
}

WeightFamily WeightFamily::stable_tail(double theta) {
  if (!(theta > 1.0 && theta < 2.0))
    throw Error(ErrorKind::BadTheta, "stable-tail preset needs theta in (1,2)");
  WeightFamily w;
  w.shape_ = Shape::StableTail;
  w.theta_ = theta;
  {
    std::ostringstream os;
    os << "stable-tail-" << theta;
    w.name_ = os.str();
  }
  w.tail_ = TailKind::HeavyTail;
  const double z = boost::math::zeta(theta);
  w.q_ = 1.0 / (1.0 + z);
  w.mu0_ = 1.0 - w.q_;
  // E[k] = sum_{j>=1} P(k >= j) = q + q * zeta(theta)
  w.mean_ = w.q_ * (1.0 + z);
  return w;
}

WeightFamily WeightFamily::from_list(const std::map<int, double>& weights,
                                     std::optional<double> declared_theta) {
  if (weights.empty()) throw Error(ErrorKind::InvalidArgument, "empty weight list");
  WeightFamily w;
  w.shape_ = Shape::List;
  w.name_ = "list";
  int max_j = 0;
  for (const auto& [j, m] : weights) {
    if (j < 1) throw Error(ErrorKind::InvalidArgument, "weights are given for j >= 1 (mu_0 is derived)");
    if (!(m >= 0.0)) throw Error(ErrorKind::NegativeWeight, "mu_" + std::to_string(j) + " < 0");
    if (j == 1 && m != 0.0) throw Error(ErrorKind::Mu1Nonzero, "mu_1 must be 0");
    max_j = std::max(max_j, j);
  }
  w.mu_.assign(static_cast<std::size_t>(max_j) + 1, 0.0);
  double mass = 0.0;
  double mean = 0.0;
  for (const auto& [j, m] : weights) {
    if (j < 2) continue;
    w.mu_[static_cast<std::size_t>(j)] = m;
    mass += m;
    mean += j * m;
  }
  w.mu0_ = 1.0 - mass;
  w.mu_[0] = w.mu0_;
  w.mean_ = mean;
  if (declared_theta) {
    if (!(*declared_theta > 1.0 && *declared_theta <= 2.0))
      throw Error(ErrorKind::BadTheta, "declared theta must be in (1,2]");
    w.theta_ = *declared_theta;
    w.tail_ = *declared_theta < 2.0 ? TailKind::HeavyTail : TailKind::FiniteVariance;
  }
  w.cdf_.resize(w.mu_.size());
  std::partial_sum(w.mu_.begin(), w.mu_.end(), w.cdf_.begin());
  return w;
}

double WeightFamily::mu(std::int64_t j) const {
  if (j < 0 || j == 1) return 0.0;
  if (j == 0) return mu0_;
  switch (shape_) {
    case Shape::UniformDissection:
      return std::pow(ratio_, static_cast<double>(j - 1));
    case Shape::StableTail: {
      const double jm1 = static_cast<double>(j - 1);
      // q * ((j-1)^-theta - j^-theta), written to avoid cancellation
      return q_ * std::pow(jm1, -theta_) * -std::expm1(theta_ * std::log1p(-1.0 / static_cast<double>(j)));
    }
    case Shape::PAngulation:
    case Shape::List:
      return j < static_cast<std::int64_t>(mu_.size()) ? mu_[static_cast<std::size_t>(j)] : 0.0;
  }
  return 0.0;
}

std::int64_t WeightFamily::max_degree() const {
  switch (shape_) {
    case Shape::UniformDissection:
    case Shape::StableTail:
      return -1;
    case Shape::PAngulation:
    case Shape::List: {
      for (std::int64_t j = static_cast<std::int64_t>(mu_.size()) - 1; j >= 2; --j)
        if (mu_[static_cast<std::size_t>(j)] > 0.0) return j;
      return 0;
    }
  }
  return 0;
}

int WeightFamily::sample_degree(Rng& rng) const {
  switch (shape_) {
    case Shape::UniformDissection: {
      if (rng.uniform() < mu0_) return 0;
      const double k = std::floor(std::log(rng.uniform_pos()) / log_ratio_);
      return k > INT_MAX - 2 ? INT_MAX : 2 + static_cast<int>(k);
    }
    case Shape::StableTail: {
      if (rng.uniform() < mu0_) return 0;
      const double m = std::floor(std::pow(rng.uniform_pos(), -1.0 / theta_));
      return m > INT_MAX - 1 ? INT_MAX : 1 + static_cast<int>(m);
    }
    case Shape::PAngulation:
    case Shape::List: {
      const double u = rng.uniform() * cdf_.back();
      auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
      if (it == cdf_.end()) --it;
      return static_cast<int>(it - cdf_.begin());
    }
  }
  return 0;
}

bool WeightFamily::leaf_count_reachable(std::int64_t n) const {
  if (n < 1) return false;
  if (n == 1) return true;
  switch (shape_) {
    case Shape::UniformDissection:
    case Shape::StableTail:
      return true;
    case Shape::PAngulation:
      return (n - 1) % (p_ - 2) == 0;
    case Shape::List: {
      // n - 1 = sum over internal vertices of (k_u - 1)
      std::vector<char> ok(static_cast<std::size_t>(n), 0);
      ok[0] = 1;
      for (std::int64_t v = 1; v < n; ++v)
        for (std::size_t j = 2; j < mu_.size(); ++j)
          if (mu_[j] > 0.0 && static_cast<std::int64_t>(j) - 1 <= v && ok[static_cast<std::size_t>(v - static_cast<std::int64_t>(j) + 1)]) {
            ok[static_cast<std::size_t>(v)] = 1;
            break;
          }
      return ok[static_cast<std::size_t>(n - 1)] != 0;
    }
  }
  return false;
}

WeightFamily validate_weights(const WeightSpec& spec) {
  WeightFamily w;
  double tol = 1e-12;
  if (spec.preset == "uniform-dissection") {
    w = WeightFamily::uniform_dissection();
  } else if (spec.preset == "p-angulation") {
    w = WeightFamily::p_angulation(spec.p);
  } else if (spec.preset == "stable-tail") {
    if (!spec.theta) throw Error(ErrorKind::BadTheta, "stable-tail preset requires theta");
    w = WeightFamily::stable_tail(*spec.theta);
  } else if (spec.preset.empty()) {
    w = WeightFamily::from_list(spec.weights, spec.theta);
    tol = 1e-9;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown preset '" + spec.preset + "'");
  }
  if (std::abs(w.mean() - 1.0) > tol)
    throw Error(ErrorKind::NonCritical, "sum j mu_j = " + std::to_string(w.mean()) + " != 1");
  if (!(w.mu0() > 0.0 && w.mu0() < 1.0))
    throw Error(ErrorKind::NonCritical, "mu_0 = " + std::to_string(w.mu0()) + " outside (0,1)");
  return w;
}

// ---------------------------------------------------------------------------
// Codings

LukasiewiczPath lukasiewicz(const OrderedTree& t) {
  require_valid_tree(t);
  LukasiewiczPath w(t.degrees.size() + 1);
  w[0] = 0;
  for (std::size_t i = 0; i < t.degrees.size(); ++i) w[i + 1] = w[i] + t.degrees[i] - 1;
  return w;
}

HeightSequence height(const OrderedTree& t) {
  require_valid_tree(t);
  HeightSequence h(t.degrees.size());
  // pending[d] = children still to visit for the open vertex at depth d
  std::vector<std::int64_t> pending;
  for (std::size_t i = 0; i < t.degrees.size(); ++i) {
    while (!pending.empty() && pending.back() == 0) pending.pop_back();
    h[i] = static_cast<std::int64_t>(pending.size());
    if (!pending.empty()) --pending.back();
    pending.push_back(t.degrees[i]);
  }
  return h;
}

std::vector<std::int64_t> children_positions(const LukasiewiczPath& w, std::int64_t n) {
  const auto zeta = static_cast<std::int64_t>(w.size()) - 1;
  if (n < 0 || n >= zeta) throw Error(ErrorKind::InvalidArgument, "vertex index out of range");
  const std::int64_t k = w[static_cast<std::size_t>(n + 1)] - w[static_cast<std::size_t>(n)] + 1;
  if (k <= 0) throw Error(ErrorKind::NotInternal, "vertex " + std::to_string(n) + " is a leaf");
  std::vector<std::int64_t> s;
  s.reserve(static_cast<std::size_t>(k));
  const std::int64_t top = w[static_cast<std::size_t>(n + 1)];
  for (std::int64_t l = n + 1; l <= zeta && static_cast<std::int64_t>(s.size()) < k; ++l) {
    if (w[static_cast<std::size_t>(l)] == top - static_cast<std::int64_t>(s.size())) s.push_back(l);
  }
  if (static_cast<std::int64_t>(s.size()) != k) throw Error(ErrorKind::InvalidPath, "path ends before all children");
  return s;
}

std::vector<std::int64_t> leaf_count_process(const OrderedTree& t) {
  std::vector<std::int64_t> lam(t.degrees.size() + 1, 0);
  for (std::size_t j = 0; j < t.degrees.size(); ++j) lam[j + 1] = lam[j] + (t.degrees[j] == 0 ? 1 : 0);
  return lam;
}

std::vector<std::int64_t> leaf_count_process(const LukasiewiczPath& w) {
  std::vector<std::int64_t> lam(w.size(), 0);
  for (std::size_t j = 0; j + 1 < w.size(); ++j) lam[j + 1] = lam[j] + (w[j + 1] - w[j] == -1 ? 1 : 0);
  return lam;
}

double tree_probability(const WeightFamily& w, const OrderedTree& t) {
  double p = 1.0;
  for (int d : t.degrees) p *= w.mu(d);
  return p;
}

double log_tree_probability(const WeightFamily& w, const OrderedTree& t) {
  double lp = 0.0;
  for (int d : t.degrees) lp += std::log(w.mu(d));
  return lp;
}

// ---------------------------------------------------------------------------
// Sampling

std::optional<OrderedTree> grow_tree(const std::function<int()>& draw_degree, std::int64_t cap) {
  if (cap < 1) throw Error(ErrorKind::InvalidArgument, "cap must be >= 1");
  OrderedTree t;
  std::int64_t s = 0;
  while (true) {
    if (t.size() >= cap) return std::nullopt;
    const int d = draw_degree();
    t.degrees.push_back(d);
    s += d - 1;
    if (s == -1) return t;
  }
}

OrderedTree sample_gw_tree(const WeightFamily& w, Rng& rng, std::int64_t cap) {
  auto t = grow_tree([&] { return w.sample_degree(rng); }, cap);
  if (!t) throw Error(ErrorKind::Overflow, "tree exceeded " + std::to_string(cap) + " vertices");
  return *std::move(t);
}

namespace {

// One rejection attempt: grow a GW tree, abandoning it as soon as it has
// more than n leaves (such a tree is rejected anyway).
bool rejection_attempt(const WeightFamily& w, std::int64_t n, Rng& rng, std::int64_t cap, OrderedTree& out) {
  out.degrees.clear();
  std::int64_t s = 0;
  std::int64_t leaves = 0;
  while (true) {
    if (out.size() >= cap) return false;
    const int d = w.sample_degree(rng);
    out.degrees.push_back(d);
    if (d == 0 && ++leaves > n) return false;
    s += d - 1;
    if (s == -1) return leaves == n;
  }
}

// Unbiased integer in [0, m) (Lemire's multiply-shift with rejection).
std::uint64_t uniform_below(Rng& rng, std::uint64_t m) {
  const std::uint64_t threshold = (0 - m) % m;
  while (true) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(rng.next()) * m;
    if (static_cast<std::uint64_t>(prod) >= threshold) return static_cast<std::uint64_t>(prod >> 64);
  }
}

// log P[I = m] for I negative binomial: failures before the n-th success.
double log_nb_pmf(std::int64_t n, double p, std::int64_t m) {
  const auto nn = static_cast<double>(n), mm = static_cast<double>(m);
  return std::lgamma(nn + mm) - std::lgamma(nn) - std::lgamma(mm + 1.0) + nn * std::log(p) + mm * std::log1p(-p);
}

// Drawing k - 1 i.i.d. until the n-th leaf gives a negative binomial number I
// of internal vertices, i.i.d. internal degrees, and a uniform interleaving of
// the I internal and first n - 1 leaf draws. The sequence codes a tree after
// rotation iff the internal excesses k - 1 sum to n - 1. This draws (I, the
// internal degrees) conditioned on that event; false means "try again".
bool internal_degrees(const WeightFamily& w, std::int64_t n, std::int64_t cap, Rng& rng, std::vector<int>& out) {
  out.clear();
  const std::int64_t target = n - 1;
  switch (w.shape()) {
    case WeightFamily::Shape::PAngulation: {
      std::negative_binomial_distribution<std::int64_t> internal_count(n, w.mu0());
      const std::int64_t count = internal_count(rng);
      if (count * (w.p() - 2) != target || count + n > cap) return false;
      out.assign(static_cast<std::size_t>(count), w.p() - 1);
      return true;
    }
    case WeightFamily::Shape::UniformDissection: {
      // k - 1 is geometric on {1, 2, ...} with ratio c: the sum of the
      // excesses over 1 is negative binomial, and given the total the parts
      // form a uniform composition of `target` into `count` parts.
      std::negative_binomial_distribution<std::int64_t> internal_count(n, w.mu0());
      const std::int64_t count = internal_count(rng);
      if (count > target || (count == 0) != (target == 0) || count + n > cap) return false;
      if (count == 0) return true;
      const double c = w.mu(3) / w.mu(2);
      std::negative_binomial_distribution<std::int64_t> extra(count, 1.0 - c);
      if (count + extra(rng) != target) return false;
      std::int64_t need = count - 1, last = 0;
      for (std::int64_t j = 1; j < target && need > 0; ++j) {
        if (static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(target - j))) < need) {
          out.push_back(static_cast<int>(j - last + 1));
          last = j;
          --need;
        }
      }
      out.push_back(static_cast<int>(target - last + 1));
      return true;
    }
    case WeightFamily::Shape::StableTail:
    case WeightFamily::Shape::List: {
      // The excess partial sums increase strictly, so at most one count m
      // hits the target. Drawing excesses until the sum reaches the target
      // and keeping m with probability P[I = m] / max P[I = .] yields the
      // conditioned pair.
      std::int64_t sum = 0;
      while (sum < target) {
        if (static_cast<std::int64_t>(out.size()) + n >= cap) return false;
        int d = 0;
        while ((d = w.sample_degree(rng)) == 0) {
        }
        out.push_back(d);
        sum += d - 1;
      }
      if (sum != target) return false;
      const double p = w.mu0();
      const auto mode = static_cast<std::int64_t>(std::floor(static_cast<double>(n - 1) * (1.0 - p) / p));
      const double log_max = std::max(log_nb_pmf(n, p, mode), log_nb_pmf(n, p, mode + 1));
      const auto m = static_cast<std::int64_t>(out.size());
      return rng.uniform() < std::exp(log_nb_pmf(n, p, m) - log_max);
    }
  }
  return false;
}

// One cycle-lemma attempt: conditioned internal degrees, uniform interleaving
// with n - 1 leaves, a final leaf, then rotation to start just after the
// first minimum of the partial sums. Each tree with n leaves has exactly n
// rotations ending in a leaf, all distinct, so the accepted law is
// P_mu[ . | lambda = n].
bool cycle_attempt(const WeightFamily& w, std::int64_t n, Rng& rng, std::int64_t cap, std::vector<int>& internal,
                   OrderedTree& out) {
  if (!internal_degrees(w, n, cap, rng, internal)) return false;
  std::vector<int>& seq = out.degrees;
  seq.assign(internal.begin(), internal.end());
  seq.resize(internal.size() + static_cast<std::size_t>(n), 0);
  for (std::size_t i = seq.size() - 1; i > 1; --i)
    std::swap(seq[i - 1], seq[uniform_below(rng, i)]);
  std::int64_t s = 0, min_sum = 1;
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    s += seq[i] - 1;
    if (s < min_sum) {
      min_sum = s;
      argmin = i + 1;
    }
  }
  std::rotate(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(argmin % seq.size()), seq.end());
  return true;
}

}  // namespace

OrderedTree sample_gw_tree_with_n_leaves(const WeightFamily& w, std::int64_t n, Rng& rng,
                                         const ConditionedOptions& opts) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  if (!w.leaf_count_reachable(n))
    throw Error(ErrorKind::UnreachableLeafCount, "P[lambda = " + std::to_string(n) + "] = 0 for " + w.name());
  OrderedTree out;
  std::vector<int> buf;
  for (std::int64_t attempt = 1;; ++attempt) {
    const bool ok = opts.method == ConditionedMethod::Rejection
                        ? rejection_attempt(w, n, rng, opts.cap, out)
                        : cycle_attempt(w, n, rng, opts.cap, buf, out);
    if (ok) return out;
    if (opts.max_attempts > 0 && attempt >= opts.max_attempts)
      throw Error(ErrorKind::RetryBudgetExhausted, std::to_string(attempt) + " attempts without success");
    if (opts.log_every > 0 && attempt % opts.log_every == 0)
      std::clog << "conditioned sampler: " << attempt << " attempts for n=" << n << '\n';
  }
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

void append_products(const std::vector<std::vector<std::vector<int>>>& by_leaves, int remaining, int parts_left,
                     std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (parts_left == 0) {
    if (remaining == 0) out.push_back(prefix);
    return;
  }
  for (int first = 1; first <= remaining - (parts_left - 1); ++first) {
    for (const auto& sub : by_leaves[static_cast<std::size_t>(first)]) {
      const std::size_t mark = prefix.size();
      prefix.insert(prefix.end(), sub.begin(), sub.end());
      append_products(by_leaves, remaining - first, parts_left - 1, prefix, out);
      prefix.resize(mark);
    }
  }
}

}  // namespace

std::vector<OrderedTree> enumerate_trees_with_n_leaves(int n, bool no_unary) {
  if (!no_unary) throw Error(ErrorKind::InvalidArgument, "trees with unary vertices and n leaves form an infinite set");
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  if (n > 10) throw Error(ErrorKind::TooLarge, "enumeration limited to n <= 10");
  std::vector<std::vector<std::vector<int>>> by_leaves(static_cast<std::size_t>(n) + 1);
  by_leaves[1] = {{0}};
  for (int m = 2; m <= n; ++m) {
    auto& bucket = by_leaves[static_cast<std::size_t>(m)];
    for (int k = 2; k <= m; ++k) {
      std::vector<int> prefix{k};
      append_products(by_leaves, m, k, prefix, bucket);
    }
  }
  std::vector<OrderedTree> trees;
  trees.reserve(by_leaves[static_cast<std::size_t>(n)].size());
  for (auto& d : by_leaves[static_cast<std::size_t>(n)]) trees.push_back(OrderedTree{std::move(d)});
  std::sort(trees.begin(), trees.end());
  return trees;
}

}  // namespace stablam
