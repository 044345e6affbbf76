#include "lfs/cli.hpp"
#include "lfs/generators.hpp"
#include "lfs/polyline_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lfs;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args)
{
  args.insert(args.begin(), "lfs");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir()
{
  const fs::path dir = fs::temp_directory_path() / "lfs_io_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text)
{
  const fs::path p = scratch_dir() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

std::string slurp(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("csv round trip is exact")
{
  Rng rng(67);
  const Polyline L = random_walk(rng, 500);
  const ParsedPolyline back = parse_polyline(to_csv(L));
  CHECK(back.format == Format::Csv);
  REQUIRE(back.vertices.size() == L.size());
  for (std::size_t k = 0; k < L.size(); ++k)
    CHECK(back.vertices[k] == L[k]);
  CHECK(parse_polyline(to_wkt(L)).vertices == L);
}

TEST_CASE("parsing")
{
  const auto csv = parse_polyline("# header\n0,0\n\n 1.5 , -2 # trailing\n+3,4e2\n");
  CHECK(csv.vertices == Polyline{{0, 0}, {1.5, -2}, {3, 400}});
  const auto wkt = parse_polyline("  linestring (0 0, 1 2,3 4)\n");
  CHECK(wkt.format == Format::Wkt);
  CHECK(wkt.vertices == Polyline{{0, 0}, {1, 2}, {3, 4}});

  CHECK_THROWS_AS(parse_polyline("0,0\n1\n"), ParseError);
  CHECK_THROWS_AS(parse_polyline("0,0\nx,1\n"), ParseError);
  CHECK_THROWS_AS(parse_polyline("0,0,0\n"), ParseError);
  CHECK_THROWS_AS(parse_polyline("LINESTRING (0 0, 1)"), ParseError);
  CHECK_THROWS_AS(parse_polyline("LINESTRING 0 0, 1 1"), ParseError);
  CHECK_THROWS_AS(read_polyline((scratch_dir() / "missing.csv").string()), ParseError);
}

TEST_CASE("cli simplify")
{
  const std::string in = write_file("zigzag.csv", "0,0\n1,1\n2,0\n3,1\n4,0\n");
  const std::string out = (scratch_dir() / "zigzag_out.csv").string();
  const Run r = run({"simplify", "--input", in, "--output", out, "--delta", "1"});
  REQUIRE(r.code == kExitOk);
  const auto summary = nlohmann::json::parse(r.out);
  CHECK(summary["n"] == 5);
  CHECK(summary["kept"] == 2);
  CHECK(summary["linkCount"] == 1);
  CHECK(slurp(out) == "0,0\n4,0\n");

  const std::string wkt = write_file("zigzag.wkt", "LINESTRING (0 0, 1 1, 2 0, 3 1, 4 0)");
  const std::string wkt_out = (scratch_dir() / "zigzag_out.wkt").string();
  CHECK(run({"simplify", "--input", wkt, "--output", wkt_out, "--delta", "0.4", "--metric",
             "linf"})
            .code == kExitOk);
  CHECK(parse_polyline(slurp(wkt_out)).format == Format::Wkt);
  CHECK(parse_polyline(slurp(wkt_out)).vertices.size() == 5);

  const fs::path svg = scratch_dir() / "frames";
  fs::remove_all(svg);
  CHECK(run({"simplify", "--input", in, "--delta", "1", "--svg-debug-dir", svg.string()}).code ==
        kExitOk);
  CHECK(fs::exists(svg / "frame_0_1.svg"));
}

TEST_CASE("cli exit codes")
{
  const std::string good = write_file("good.csv", "0,0\n1,1\n2,0\n");
  CHECK(run({}).code == kExitConfig);
  CHECK(run({"frobnicate"}).code == kExitConfig);
  CHECK(run({"simplify", "--input", good, "--delta", "-1"}).code == kExitConfig);
  CHECK(run({"simplify", "--input", good, "--delta", "1", "--metric", "l3"}).code == kExitConfig);
  CHECK(run({"simplify", "--input", good}).code == kExitConfig);
  CHECK(run({"simplify", "--input", (scratch_dir() / "none.csv").string(), "--delta", "1"}).code ==
        kExitParse);
  CHECK(run({"simplify", "--input", write_file("bad.csv", "0,0\nabc\n"), "--delta", "1"}).code ==
        kExitParse);
  CHECK(run({"simplify", "--input", write_file("one.csv", "0,0\n"), "--delta", "1"}).code ==
        kExitParse);
  CHECK(run({"simplify", "--input", good, "--delta", "1"}).code == kExitOk);
}

TEST_CASE("cli verify")
{
  const Run ok = run({"verify", "--count", "100", "--seed", "5"});
  CHECK(ok.code == kExitOk);
  const auto report = nlohmann::json::parse(ok.out);
  CHECK(report["result"] == "ok");
  CHECK(report.contains("l1"));
  CHECK(report.contains("l2"));
  CHECK(report.contains("linf"));

  const std::string dump = (scratch_dir() / "counterexample.csv").string();
  fs::remove(dump);
  const Run bad = run({"verify", "--count", "1000", "--metric", "l2", "--inject-fault",
                       "skip-near-apex-narrowing", "--output", dump});
  CHECK(bad.code == kExitMismatch);
  CHECK(bad.out.find("mismatch") != std::string::npos);
  CHECK(fs::exists(dump));
}

TEST_CASE("cli stats and bench")
{
  const Run a = run({"stats", "--delta", "1", "--seed", "9", "--max-n", "80"});
  const Run b = run({"stats", "--delta", "1", "--seed", "9", "--max-n", "80"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  const auto report = nlohmann::json::parse(a.out);
  CHECK(report["n"] == 80);
  CHECK(report["sweepWavefrontSize"].size() >= 1);
  CHECK(report["maxWavefrontSize"].get<std::size_t>() <=
        report["maxVerticesInDeltaBall"].get<std::size_t>());

  const Run bench = run({"bench", "--max-n", "250", "--metric", "linf"});
  REQUIRE(bench.code == kExitOk);
  CHECK(bench.out.rfind("n,algo,metric,millis,maxWavefrontSize\n", 0) == 0);
  CHECK(bench.out.find("250,baseline,linf,") != std::string::npos);
  CHECK(bench.out.find("250,wavefront,linf,") != std::string::npos);
  CHECK(bench.out.find("# fit wavefront linf") != std::string::npos);
}
