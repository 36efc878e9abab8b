#include "stablam/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace stablam::io {

namespace {

const char* kind_name(PathKind k) {
  switch (k) {
    case PathKind::Levy: return "levy";
    case PathKind::Excursion: return "excursion";
    case PathKind::Height: return "height";
    case PathKind::DiscreteTree: return "discrete-tree";
    case PathKind::DiscreteHeight: return "discrete-height";
  }
  return "levy";
}

PathKind path_kind(const std::string& s) {
  for (PathKind k : {PathKind::Levy, PathKind::Excursion, PathKind::Height, PathKind::DiscreteTree,
                     PathKind::DiscreteHeight})
    if (s == kind_name(k)) return k;
  throw Error(ErrorKind::BadInput, "unknown path kind '" + s + "'");
}

const char* source_name(SourceKind k) {
  switch (k) {
    case SourceKind::Dissection: return "dissection";
    case SourceKind::Excursion: return "excursion";
    case SourceKind::Height: return "height";
    case SourceKind::Brownian: return "brownian";
  }
  return "dissection";
}

SourceKind source_kind(const std::string& s) {
  for (SourceKind k : {SourceKind::Dissection, SourceKind::Excursion, SourceKind::Height, SourceKind::Brownian})
    if (s == source_name(k)) return k;
  throw Error(ErrorKind::BadInput, "unknown lamination source '" + s + "'");
}

// Runs a parser and turns library-level JSON errors into BadInput.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadInput, e.what());
  }
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  // avoid "-0.000000"
  return std::string(buf) == "-0.000000" ? "0.000000" : std::string(buf);
}

}  // namespace

Json to_json(const OrderedTree& t) { return Json{{"degrees", t.degrees}}; }

OrderedTree tree_from_json(const Json& j) {
  return guarded([&] {
    OrderedTree t{j.at("degrees").get<std::vector<int>>()};
    if (!is_valid_tree(t)) throw Error(ErrorKind::BadInput, "degree sequence is not a tree");
    return t;
  });
}

Json to_json(const Dissection& d) {
  Json diag = Json::array();
  for (const auto& [a, b] : d.diagonals) diag.push_back({a, b});
  return Json{{"n", d.n}, {"diagonals", diag}};
}

Dissection dissection_from_json(const Json& j) {
  return guarded([&] {
    std::vector<std::pair<std::int64_t, std::int64_t>> chords;
    for (const auto& c : j.at("diagonals")) chords.emplace_back(c.at(0).get<std::int64_t>(), c.at(1).get<std::int64_t>());
    try {
      return make_dissection(j.at("n").get<std::int64_t>(), std::move(chords));
    } catch (const Error& e) {
      throw Error(ErrorKind::BadInput, e.what());
    }
  });
}

Json to_json(const GridPath& p) {
  Json jumps = Json::array();
  for (const Jump& jp : p.jumps) jumps.push_back({jp.index, jp.size});
  Json eps = nullptr;
  if (p.jump_eps) eps = std::isinf(*p.jump_eps) ? Json("inf") : Json(*p.jump_eps);
  return Json{{"kind", kind_name(p.kind)}, {"theta", p.theta}, {"h", p.h},
              {"jump_eps", eps},          {"values", p.values}, {"jumps", jumps}};
}

GridPath path_from_json(const Json& j) {
  return guarded([&] {
    GridPath p;
    p.kind = path_kind(j.at("kind").get<std::string>());
    p.theta = j.at("theta").get<double>();
    p.h = j.at("h").get<double>();
    p.values = j.at("values").get<std::vector<double>>();
    for (const auto& jp : j.at("jumps")) p.jumps.push_back({jp.at(0).get<std::int64_t>(), jp.at(1).get<double>()});
    const Json& eps = j.at("jump_eps");
    if (eps.is_string()) {
      if (eps.get<std::string>() != "inf") throw Error(ErrorKind::BadInput, "bad jump_eps");
      p.jump_eps = std::numeric_limits<double>::infinity();
    } else if (!eps.is_null()) {
      p.jump_eps = eps.get<double>();
    }
    if (!(p.h > 0.0) || p.values.empty()) throw Error(ErrorKind::BadInput, "path needs h > 0 and values");
    return p;
  });
}

Json to_json(const Lamination& l) {
  Json chords = Json::array();
  for (const Chord& c : l.chords) chords.push_back({c.s, c.t});
  return Json{{"source",
               {{"kind", source_name(l.source.kind)},
                {"n", l.source.n},
                {"theta", l.source.theta},
                {"eps", l.source.eps}}},
              {"denominator", l.denominator},
              {"resolution", l.resolution},
              {"chords", chords}};
}

Lamination lamination_from_json(const Json& j) {
  return guarded([&] {
    Lamination l;
    const Json& src = j.at("source");
    l.source.kind = source_kind(src.at("kind").get<std::string>());
    l.source.n = src.value("n", std::int64_t{0});
    l.source.theta = src.value("theta", 2.0);
    l.source.eps = src.value("eps", 0.0);
    l.denominator = j.value("denominator", std::int64_t{0});
    l.resolution = j.value("resolution", 0.0);
    for (const auto& c : j.at("chords")) {
      Chord ch{c.at(0).get<double>(), c.at(1).get<double>()};
      if (l.denominator > 0) {
        const auto d = static_cast<double>(l.denominator);
        ch.a = std::llround(ch.s * d);
        ch.b = std::llround(ch.t * d);
      }
      l.chords.push_back(ch);
    }
    const std::size_t before = l.chords.size();
    normalize(l);
    if (l.chords.size() != before || !is_noncrossing(l))
      throw Error(ErrorKind::BadInput, "chords must be distinct, nondegenerate and noncrossing in [0,1)");
    return l;
  });
}

Lamination lamination_from_document(const Json& j) {
  if (j.is_object() && j.contains("chords")) return lamination_from_json(j);
  if (j.is_object() && j.contains("diagonals")) return lamination_from_dissection(dissection_from_json(j));
  throw Error(ErrorKind::BadInput, "expected a lamination or dissection document");
}

Json to_json(const DimensionEstimate& e) {
  return Json{{"slope", e.slope},
              {"stderr", e.stderr_},
              {"window", {e.window.first, e.window.second}},
              {"scales", e.scales},
              {"counts", e.counts}};
}

DimensionEstimate estimate_from_json(const Json& j) {
  return guarded([&] {
    DimensionEstimate e;
    e.slope = j.at("slope").get<double>();
    e.stderr_ = j.at("stderr").get<double>();
    e.window = {j.at("window").at(0).get<double>(), j.at("window").at(1).get<double>()};
    e.scales = j.at("scales").get<std::vector<double>>();
    e.counts = j.at("counts").get<std::vector<std::int64_t>>();
    return e;
  });
}

WeightSpec weights_from_json(const Json& j) {
  return guarded([&] {
    WeightSpec spec;
    for (const auto& [key, value] : j.at("mu").items()) {
      std::size_t used = 0;
      int k = 0;
      try {
        k = std::stoi(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size() || k < 1) throw Error(ErrorKind::BadInput, "weight keys must be integers >= 1");
      spec.weights[k] = value.get<double>();
    }
    if (j.contains("theta") && !j.at("theta").is_null()) spec.theta = j.at("theta").get<double>();
    return spec;
  });
}

std::string path_csv(const GridPath& p) {
  std::ostringstream os;
  os.precision(17);
  os << "time,value\n";
  for (std::size_t i = 0; i < p.values.size(); ++i)
    os << p.time(static_cast<std::int64_t>(i)) << ',' << p.values[i] << '\n';
  return os.str();
}

Json jump_sidecar(const GridPath& p) {
  Json jumps = Json::array();
  for (const Jump& jp : p.jumps) jumps.push_back({jp.index, jp.size});
  return Json{{"jumps", jumps}, {"h", p.h}, {"theta", p.theta}};
}

std::string scales_csv(const DimensionEstimate& e) {
  std::ostringstream os;
  os.precision(17);
  os << "delta,count\n";
  for (std::size_t i = 0; i < e.scales.size(); ++i) os << e.scales[i] << ',' << e.counts[i] << '\n';
  return os.str();
}

std::string render_svg(const Lamination& l) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" "
        "viewBox=\"-1.05 -1.05 2.1 2.1\">\n"
     << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>\n"
     << "<g stroke=\"black\" stroke-width=\"0.002\">\n";
  // circle point s is exp(-2 pi i s); SVG's y axis points down
  for (const Chord& c : l.chords) {
    const double as = 2.0 * std::numbers::pi * c.s, at = 2.0 * std::numbers::pi * c.t;
    os << "<line x1=\"" << fixed(std::cos(as)) << "\" y1=\"" << fixed(std::sin(as)) << "\" x2=\""
       << fixed(std::cos(at)) << "\" y2=\"" << fixed(std::sin(at)) << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string pgm(const Raster& r) {
  std::string out = "P5\n" + std::to_string(r.size) + " " + std::to_string(r.size) + "\n255\n";
  out.reserve(out.size() + r.pixels.size());
  for (std::uint8_t p : r.pixels) out.push_back(static_cast<char>(p ? 0 : 255));
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadInput, e.what());
  }
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary);
  if (!out || !(out << content)) throw Error(ErrorKind::Io, "cannot write " + p.string());
}

}  // namespace stablam::io
