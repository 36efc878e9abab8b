#pragma once

#include <cstdint>
#include <vector>

#include "stablam/dissections.hpp"
#include "stablam/stable_paths.hpp"

namespace stablam {

/// Chord between circle points s < t in [0, 1) (point s sits at exp(-2 pi i s)).
/// Discrete sources also keep the exact numerators a, b with s = a / denominator.
struct Chord {
  double s = 0.0;
  double t = 0.0;
  std::int64_t a = -1;
  std::int64_t b = -1;

  friend bool operator==(const Chord& x, const Chord& y) { return x.s == y.s && x.t == y.t; }
  friend auto operator<=>(const Chord& x, const Chord& y) {
    return x.s != y.s ? x.s <=> y.s : x.t <=> y.t;
  }
};

enum class SourceKind { Dissection, Excursion, Height, Brownian };

struct LaminationSource {
  SourceKind kind = SourceKind::Dissection;
  std::int64_t n = 0;  // polygon has n + 1 vertices (discrete sources)
  double theta = 2.0;
  double eps = 0.0;

  friend bool operator==(const LaminationSource&, const LaminationSource&) = default;
};

/// Finite chord system; the unit circle is always implicitly part of it.
struct Lamination {
  LaminationSource source;
  std::int64_t denominator = 0;  // n + 1 for exact discrete coordinates, else 0
  double resolution = 0.0;       // smallest meaningful circle arc (1 / (n + 1) or grid step)
  std::vector<Chord> chords;     // sorted, distinct

  bool is_discrete() const { return denominator > 0; }
  bool contains(const Chord& c) const;

  friend bool operator==(const Lamination& x, const Lamination& y) {
    return x.source == y.source && x.denominator == y.denominator && x.resolution == y.resolution &&
           x.chords == y.chords;
  }
};

/// Euclidean length 2 sin(pi (t - s)).
double chord_length(const Chord& c);

bool is_noncrossing(const Lamination& l);

/// Sorts, drops degenerate chords and duplicates.
void normalize(Lamination& l);

struct ExcursionMode {
  bool closure = false;
  std::int64_t depth = 0;  // sub-chords must span more than this many cells

  static ExcursionMode e1() { return {}; }
  static ExcursionMode closed(std::int64_t depth) { return {true, depth}; }
};

/// One chord per annotated jump (and the face sub-chords in closure mode).
/// Discrete paths map indices through the leaf-count process.
Lamination chords_from_excursion(const GridPath& x, ExcursionMode mode);

/// Pairs u < v with e(u) = e(v) = min over [u, v] for the linear interpolant.
Lamination chords_from_brownian(const GridPath& e, double min_gap);

/// Equal-height pairing. Negative tol selects the default: exact (relative
/// 1e-9) for step-valued heights, 2 median |increment| otherwise.
Lamination chords_from_height(const GridPath& h, double min_gap, double tol = -1.0);

Lamination lamination_from_dissection(const Dissection& d);

struct FaceRecord {
  std::int64_t jump_index = 0;  // grid index s (time just after the jump)
  double jump_size = 0.0;
  std::int64_t close_index = 0;  // first return t below the pre-jump level
  Chord chord;                   // (s, t) on the circle
  std::vector<Chord> sub_chords;
  std::vector<std::int64_t> boundary_index;  // ladder times r in [s, t]
  std::vector<double> boundary;              // their circle coordinates
};

/// One record per annotated jump of x; l must come from x.
std::vector<FaceRecord> faces_of_lamination(const GridPath& x, const Lamination& l);

/// Binary raster of chords and circle over [-1.05, 1.05]^2, row-major.
struct Raster {
  int size = 0;
  std::vector<std::uint8_t> pixels;
  double pixel_width() const { return 2.1 / size; }
};

Raster rasterize(const Lamination& l, int raster);

double hausdorff_distance(const Lamination& a, const Lamination& b, int raster = 512);

}  // namespace stablam
