#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "stablam/experiments.hpp"
#include "stablam/laminations.hpp"
#include "stablam/stats.hpp"

using namespace stablam;

namespace {

// Excursions that close within 64 time units; longer ones are redrawn.
ExcursionOptions bounded(double h, std::int64_t min_cells = 0) {
  ExcursionOptions o;
  o.budget = static_cast<std::int64_t>(64.0 / h);
  o.min_cells = min_cells;
  o.resample_unclosed = true;
  return o;
}

using Pairs = std::set<oracle::Pair>;

Pairs exact_pairs(const Lamination& l) {
  Pairs out;
  for (const Chord& c : l.chords) out.emplace(c.a, c.b);
  return out;
}

std::set<std::pair<double, double>> coords(const Lamination& l) {
  std::set<std::pair<double, double>> out;
  for (const Chord& c : l.chords) out.emplace(c.s, c.t);
  return out;
}

bool includes(const Lamination& big, const Lamination& small) {
  return std::includes(big.chords.begin(), big.chords.end(), small.chords.begin(), small.chords.end());
}

// Independent crossing check over all pairs.
bool pairwise_noncrossing(const Lamination& l) {
  for (std::size_t i = 0; i < l.chords.size(); ++i)
    for (std::size_t j = i + 1; j < l.chords.size(); ++j) {
      const Chord &x = l.chords[i], &y = l.chords[j];
      if ((x.s < y.s && y.s < x.t && x.t < y.t) || (y.s < x.s && x.s < y.t && y.t < x.t)) return false;
    }
  return true;
}

GridPath continuous(std::vector<double> v) {
  GridPath p;
  p.kind = PathKind::Excursion;
  p.h = 1.0 / static_cast<double>(v.size() - 1);
  p.values = std::move(v);
  return p;
}

}  // namespace

TEST_CASE("noncrossing check") {
  Lamination l;
  l.chords = {{0.1, 0.5}, {0.2, 0.4}, {0.5, 0.9}};
  CHECK(is_noncrossing(l));
  l.chords.push_back({0.3, 0.6});
  CHECK_FALSE(is_noncrossing(l));
  CHECK(chord_length({0.0, 0.5}) == doctest::Approx(2.0));
  CHECK(chord_length({0.25, 0.5}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("laminations of dissections") {
  const auto empty = lamination_from_dissection(make_dissection(3, {}));
  CHECK(empty.chords.size() == 4);
  CHECK(empty.denominator == 4);
  const auto diag = lamination_from_dissection(make_dissection(3, {{0, 2}}));
  CHECK(diag.chords.size() == 5);
  CHECK(diag.contains({0.0, 0.5}));
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto d = sample_boltzmann_dissection(WeightFamily::uniform_dissection(), 30, rng);
    const auto l = lamination_from_dissection(d);
    CHECK(l.chords.size() == d.chords().size());
    CHECK(is_noncrossing(l));
  }
}

TEST_CASE("excursion chords of a small tree") {
  const auto x = discrete_excursion_from_tree(OrderedTree{{2, 2, 0, 0, 0}});
  const auto e1 = chords_from_excursion(x, ExcursionMode::e1());
  CHECK(e1.denominator == 4);
  CHECK(exact_pairs(e1).count({0, 2}) == 1);
  CHECK(exact_pairs(e1) == Pairs{{0, 2}, {0, 3}});
  const auto closed = chords_from_excursion(x, ExcursionMode::closed(0));
  CHECK(exact_pairs(closed) == exact_pairs(lamination_from_dissection(make_dissection(3, {{0, 2}}))));

  GridPath flat = continuous({0.0, 0.5, 0.7, 0.4, 0.0});
  flat.jump_eps = 1.0;
  CHECK(chords_from_excursion(flat, ExcursionMode::closed(0)).chords.empty());
  flat.jump_eps.reset();
  CHECK_THROWS_WITH_AS(chords_from_excursion(flat, ExcursionMode::e1()), doctest::Contains("MissingJumps"), Error);
}

TEST_CASE("discrete routes agree exactly") {
  auto check_tree = [](const OrderedTree& t) {
    const auto by_dz = exact_pairs(lamination_from_dissection(dissection_from_path(lukasiewicz(t))));
    const auto by_jumps = exact_pairs(chords_from_excursion(discrete_excursion_from_tree(t), ExcursionMode::closed(0)));
    const auto by_height = exact_pairs(chords_from_height(discrete_height_path(t), 0.0));
    return by_dz == by_jumps && by_dz == by_height && by_dz == oracle::coded_chords(t.degrees);
  };
  for (int n = 2; n <= 6; ++n)
    for (const auto& t : enumerate_trees_with_n_leaves(n)) CHECK(check_tree(t));
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto& w = i % 2 ? WeightFamily::uniform_dissection() : WeightFamily::stable_tail(1.5);
    CHECK(check_tree(sample_gw_tree_with_n_leaves(w, 1000, rng)));
  }
}

TEST_CASE("height chords of a small tree") {
  const auto l = chords_from_height(discrete_height_path(OrderedTree{{2, 2, 0, 0, 0}}), 0.0);
  CHECK(exact_pairs(l).count({0, 1}) == 1);  // level-2 pair: indices 2 and 3
  CHECK(exact_pairs(l).count({0, 2}) == 1);  // level-1 pair: indices 1 and 4
  GridPath zero;
  zero.kind = PathKind::Height;
  zero.h = 0.1;
  zero.values.assign(11, 0.0);
  CHECK(chords_from_height(zero, 0.0).chords.empty());
}

TEST_CASE("Brownian chords") {
  // small tent: the only level pair spans two cells
  CHECK(chords_from_brownian(continuous({0, 1, 2, 1, 0}), 2.5 / 4).chords.empty());
  // a wider tent pairs every level symmetrically, giving parallel chords
  const auto tent = chords_from_brownian(continuous({0, 1, 2, 3, 4, 3, 2, 1, 0}), 2.5 / 8);
  CHECK(tent.chords.size() == 2);
  for (const Chord& c : tent.chords) CHECK(c.s + c.t == doctest::Approx(1.0));

  // two peaks around a valley at level 1: the level-1 times are 0.5 and 3.5 cells
  const auto two = chords_from_brownian(continuous({0, 2, 1, 2, 0}), 2 * 0.25);
  REQUIRE(two.chords.size() == 1);
  CHECK(two.chords[0].s == doctest::Approx(0.125));
  CHECK(two.chords[0].t == doctest::Approx(0.875));

  Rng rng(3);
  for (int i = 0; i < 5; ++i) {
    const auto e = brownian_excursion(1e-4, rng);
    std::size_t last = 0;
    for (double gap : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const auto l = chords_from_brownian(e, gap);
      CHECK(is_noncrossing(l));
      CHECK(l.chords.size() >= last);
      last = l.chords.size();
      for (const Chord& c : l.chords) CHECK(c.t - c.s >= gap - 1e-12);
    }
  }
  const auto small = chords_from_brownian(brownian_excursion(1e-3, rng), 1e-3);
  CHECK(pairwise_noncrossing(small));
}

TEST_CASE("stable excursion chords") {
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const auto x = normalized_excursion(1.5, 1e-4, rng, bounded(1e-4));
    const auto e1 = chords_from_excursion(x, ExcursionMode::e1());
    const auto c1 = chords_from_excursion(x, ExcursionMode::closed(1));
    const auto c4 = chords_from_excursion(x, ExcursionMode::closed(4));
    const auto c16 = chords_from_excursion(x, ExcursionMode::closed(16));
    CHECK(is_noncrossing(c1));
    CHECK(includes(c1, e1));
    CHECK(includes(c1, c4));
    CHECK(includes(c4, c16));
    CHECK(includes(c16, e1));
    // the relation only compares values by order
    for (double c : {0.01, 7.5}) CHECK(coords(chords_from_excursion(scaled(x, c), ExcursionMode::closed(1))) == coords(c1));
  }
  const auto x = normalized_excursion(1.3, 1e-3, rng, bounded(1e-3));
  CHECK(pairwise_noncrossing(chords_from_excursion(x, ExcursionMode::closed(0))));
}

TEST_CASE("faces") {
  const auto x = discrete_excursion_from_tree(OrderedTree{{3, 0, 0, 0}});
  const auto l = chords_from_excursion(x, ExcursionMode::closed(0));
  const auto fs = faces_of_lamination(x, l);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].boundary == std::vector<double>{0.0, 0.25, 0.5, 0.75});
  CHECK(fs[0].jump_size == 2.0);

  Rng rng(5);
  const auto y = normalized_excursion(1.5, 1e-4, rng, bounded(1e-4));
  const auto ly = chords_from_excursion(y, ExcursionMode::closed(0));
  const auto fy = faces_of_lamination(y, ly);
  CHECK(fy.size() == y.jumps.size());
  for (const auto& f : fy) {
    CHECK(f.jump_index < f.close_index);
    CHECK(f.boundary_index.front() == f.jump_index);
    CHECK(f.boundary_index.back() == f.close_index);
    CHECK(std::is_sorted(f.boundary_index.begin(), f.boundary_index.end()));
    Lamination sub;
    sub.chords = f.sub_chords;
    normalize(sub);
    CHECK(is_noncrossing(sub));
    for (const Chord& c : f.sub_chords) {
      CHECK(c.s >= f.chord.s);
      CHECK(c.t <= f.chord.t);
      CHECK(ly.contains(c));
    }
    // boundary times sit on the running infimum from s
    double inf = y.values[static_cast<std::size_t>(f.jump_index)];
    for (std::int64_t r : f.boundary_index) {
      CHECK(y.values[static_cast<std::size_t>(r)] <= inf);
      inf = y.values[static_cast<std::size_t>(r)];
    }
  }
  // distinct faces share at most the endpoints of a sub-chord
  for (std::size_t i = 0; i < fy.size() && i < 60; ++i)
    for (std::size_t j = i + 1; j < fy.size() && j < 60; ++j) {
      std::vector<std::int64_t> common;
      std::set_intersection(fy[i].boundary_index.begin(), fy[i].boundary_index.end(), fy[j].boundary_index.begin(),
                            fy[j].boundary_index.end(), std::back_inserter(common));
      CHECK(common.size() <= 2);
    }

  const auto brown = chords_from_brownian(brownian_excursion(1e-3, rng), 0.0);
  CHECK_THROWS_WITH_AS(faces_of_lamination(x, brown), doctest::Contains("SourceMismatch"), Error);
  CHECK_THROWS_WITH_AS(faces_of_lamination(y, l), doctest::Contains("SourceMismatch"), Error);
}

TEST_CASE("Hausdorff distance") {
  Lamination circle, diameter;
  diameter.chords = {{0.0, 0.5}};
  CHECK(hausdorff_distance(circle, circle) == 0.0);
  CHECK(hausdorff_distance(diameter, diameter, 256) == 0.0);
  // pixel centres sit up to half a diagonal off each set, so allow two pixels
  const double w = 2.1 / 512;
  CHECK(std::abs(hausdorff_distance(circle, diameter) - 1.0) <= 2 * w);
  CHECK(std::abs(hausdorff_distance(circle, diameter, 1024) - 1.0) <= 2 * 2.1 / 1024);
  CHECK(hausdorff_distance(circle, diameter) == hausdorff_distance(diameter, circle));

  Rng rng(6);
  for (int i = 0; i < 5; ++i) {
    const auto a = lamination_from_dissection(sample_boltzmann_dissection(WeightFamily::uniform_dissection(), 40, rng));
    const auto b = lamination_from_dissection(sample_boltzmann_dissection(WeightFamily::uniform_dissection(), 40, rng));
    const double ab = hausdorff_distance(a, b, 256);
    CHECK(ab == hausdorff_distance(b, a, 256));
    CHECK(ab > 0.0);
    CHECK(ab <= 2.0);
  }
  CHECK_THROWS_AS(rasterize(circle, 32), Error);
  const auto r = rasterize(diameter, 64);
  CHECK(r.pixels.size() == 64u * 64u);
  CHECK(r.pixels[32 * 64 + 32] == 1);
  CHECK(r.pixels[10 * 64 + 32] == 0);
}

TEST_CASE("excursion and height routes give close laminations") {
  std::vector<double> d;
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng = experiments::trial_rng(7, "xh", static_cast<std::uint64_t>(seed));
    const auto x = normalized_excursion(1.5, 1e-5, rng, bounded(1e-5));
    const double eps = *x.jump_eps;
    const auto a = chords_from_excursion(x, ExcursionMode::closed(1));
    const auto b = chords_from_height(approx_height_process(x, eps), 0.0);
    CHECK(is_noncrossing(b));
    d.push_back(hausdorff_distance(a, b));
  }
  MESSAGE("median d_H = " << stats::median(d));
  CHECK(stats::median(d) <= 0.1);
}

TEST_CASE("macroscopic faces") {
  // triangles dominate the finite-variance pipeline, large faces the heavy-tailed one
  auto fraction = [](const WeightFamily& w, std::int64_t n, std::uint64_t seed) {
    std::vector<double> fr;
    for (std::uint64_t i = 0; i < 10; ++i) {
      Rng rng = experiments::trial_rng(seed, "faces", i);
      const auto x = discrete_excursion_from_tree(w, n, rng);
      const auto l = chords_from_excursion(x, ExcursionMode::closed(0));
      fr.push_back(experiments::macroscopic_face_fraction(faces_of_lamination(x, l), 0.05));
    }
    return stats::median(fr);
  };
  const double small2 = fraction(WeightFamily::uniform_dissection(), 1000, 1);
  const double large2 = fraction(WeightFamily::uniform_dissection(), 64000, 2);
  const double heavy = fraction(WeightFamily::stable_tail(1.5), 64000, 3);
  MESSAGE("theta=2: " << small2 << " -> " << large2 << ", theta=1.5: " << heavy);
  CHECK(large2 <= small2);
  CHECK(large2 < 0.1);
  CHECK(heavy > 0.2);
  CHECK(heavy > 5 * large2);
}
