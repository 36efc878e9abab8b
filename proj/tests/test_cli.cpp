#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <set>
#include <string>

#include "stablam/io.hpp"

namespace fs = std::filesystem;
using namespace stablam;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(STABLAM_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("stablam_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("exit codes") {
  const auto d = fresh_dir("codes");
  CHECK(run("sample --preset uniform --n 3 --seed 1 --out " + d.string()) == 0);
  CHECK(run("sample --preset p-angulation --p 4 --n 4 --out " + d.string()) == 2);
  CHECK(run("sample --no-such-flag") == 2);
  CHECK(run("") == 2);
  io::write_file(d / "bad.json", R"({"mu": {"2": 0.6}})");
  CHECK(run("sample --preset uniform --n 5 --out " + (d / "bad.json" / "sub").string()) == 4);
  CHECK(run("sample --weights " + (d / "bad.json").string() + " --n 3 --out " + d.string()) == 2);
  CHECK(run("selftest --weights " + (d / "bad.json").string()) == 1);
  io::write_file(d / "garbage.json", "{{{");
  CHECK(run("render --in " + (d / "garbage.json").string() + " --svg " + (d / "x.svg").string()) == 2);
  CHECK(run("render --in " + (d / "none.json").string() + " --svg " + (d / "x.svg").string()) == 4);
  CHECK(run("converge-leaves --preset uniform --ladder 100 --trials 3 --out " + d.string()) == 0);
  fs::remove_all(d);
}

TEST_CASE("sample outputs") {
  const auto d = fresh_dir("sample");
  REQUIRE(run("sample --preset uniform --n 3 --seed 1 --out " + d.string()) == 0);
  const auto dis = io::dissection_from_json(io::parse(io::read_file(d / "dissection.json")));
  const std::set<std::vector<std::pair<std::int64_t, std::int64_t>>> support{{}, {{0, 2}}, {{1, 3}}};
  CHECK(support.count(dis.diagonals) == 1);
  CHECK(fs::exists(d / "tree.json"));
  CHECK(fs::exists(d / "path.csv"));
  CHECK(fs::exists(d / "path_jumps.json"));
  CHECK(fs::exists(d / "lamination.json"));

  REQUIRE(run("sample --n 1 --out " + d.string()) == 0);
  CHECK(io::tree_from_json(io::parse(io::read_file(d / "tree.json"))).degrees == std::vector<int>{0});

  REQUIRE(run("sample --theta 1.5 --grid 1e5 --eps 0.05 --seed 3 --out " + d.string()) == 0);
  const auto csv = io::read_file(d / "excursion.csv");
  std::size_t pos = csv.find('\n') + 1;
  bool nonneg = true;
  while (pos < csv.size()) {
    const auto comma = csv.find(',', pos), end = csv.find('\n', pos);
    nonneg = nonneg && std::stod(csv.substr(comma + 1, end - comma - 1)) >= 0.0;
    pos = end + 1;
  }
  CHECK(nonneg);
  CHECK(fs::exists(d / "height.csv"));
  const auto l = io::lamination_from_json(io::parse(io::read_file(d / "lamination.json")));
  CHECK(is_noncrossing(l));
  fs::remove_all(d);
}

TEST_CASE("byte-identical reruns") {
  const auto a = fresh_dir("repro_a"), b = fresh_dir("repro_b");
  for (const auto& dir : {a, b}) {
    REQUIRE(run("sample --preset stable-tail --theta 1.5 --n 500 --seed 9 --out " + dir.string()) == 0);
    REQUIRE(run("render --in " + (dir / "lamination.json").string() + " --svg " + (dir / "l.svg").string()) == 0);
  }
  for (const char* f : {"tree.json", "path.csv", "path_jumps.json", "dissection.json", "lamination.json", "l.svg"})
    CHECK(io::read_file(a / f) == io::read_file(b / f));

  // the rendered dissection matches the library renderer
  const auto l = io::lamination_from_document(io::parse(io::read_file(a / "dissection.json")));
  CHECK(io::read_file(a / "l.svg") == io::render_svg(l));

  const auto c = fresh_dir("repro_c");
  REQUIRE(run("sample --preset stable-tail --theta 1.5 --n 500 --seed 10 --out " + c.string()) == 0);
  CHECK(io::read_file(a / "tree.json") != io::read_file(c / "tree.json"));
  for (const auto& dir : {a, b, c}) fs::remove_all(dir);
}

TEST_CASE("render") {
  const auto d = fresh_dir("render");
  io::write_file(d / "empty.json", R"({"source": {"kind": "brownian"}, "chords": []})");
  REQUIRE(run("render --in " + (d / "empty.json").string() + " --svg " + (d / "e.svg").string()) == 0);
  const auto svg = io::read_file(d / "e.svg");
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK(svg.find("<line") == std::string::npos);
  io::write_file(d / "sq.json", R"({"n": 3, "diagonals": [[0, 2]]})");
  REQUIRE(run("render --in " + (d / "sq.json").string() + " --svg " + (d / "s.svg").string() + " --pgm " +
              (d / "s.pgm").string() + " --raster 128") == 0);
  const auto s = io::read_file(d / "s.svg");
  std::size_t lines = 0;
  for (auto p = s.find("<line"); p != std::string::npos; p = s.find("<line", p + 1)) ++lines;
  CHECK(lines == 5);
  CHECK(io::read_file(d / "s.pgm").size() == 15 + 128 * 128);
  fs::remove_all(d);
}

TEST_CASE("selftest") {
  CHECK(run("selftest") == 0);
}

TEST_CASE("diagnostic subcommands") {
  const auto d = fresh_dir("diag");
  const std::string out = " --out " + d.string();
  REQUIRE(run("converge-leaves --preset p-angulation --p 3 --ladder 100,1000,10000 --trials 30 --seed 2" + out) == 0);
  const auto leaves = io::parse(io::read_file(d / "converge_leaves.json"));
  CHECK(leaves.at("asserted").get<bool>());
  CHECK(leaves.at("pass").get<bool>());
  CHECK(leaves.at("rungs").size() == 3);

  REQUIRE(run("converge-lamination --preset uniform --n 300 --grid 1e4 --trials 40 --seed 2" + out) == 0);
  const auto lam = io::parse(io::read_file(d / "converge_lamination.json"));
  CHECK(lam.at("comparisons").size() == 2);
  CHECK(lam.at("comparisons")[0].at("longest_a").size() == 40);

  REQUIRE(run("converge-lamination --preset stable-tail --theta 1.5 --n 300 --trials 1" + out) == 0);
  const auto single = io::parse(io::read_file(d / "converge_lamination.json"));
  CHECK_FALSE(single.at("asserted").get<bool>());
  CHECK(single.at("comparisons").size() == 1);

  REQUIRE(run("dimension --preset stable-tail --theta 1.5 --n 32768 --trials 2 --seed 5" + out) == 0);
  const auto dim = io::parse(io::read_file(d / "dimension.json"));
  CHECK(dim.at("seeds").size() == 2);
  CHECK(dim.at("median").at("lamination").is_number());
  CHECK(fs::exists(d / "dimension_seed0_boxes.csv"));
  CHECK(run("dimension --preset uniform --n 1000 --scales 9:4" + out) == 2);
  fs::remove_all(d);
}
