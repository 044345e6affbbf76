#include "lfs/cli.hpp"

#include "lfs/frechet_oracle.hpp"
#include "lfs/generators.hpp"
#include "lfs/polyline_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

namespace lfs {

using nlohmann::json;

namespace {

std::vector<Metric> metrics_of(const RunConfig& c)
{
  if (c.metric)
    return {*c.metric};
  return {Metric::L2, Metric::L1, Metric::LInf};
}

json index_list(const std::vector<std::size_t>& v) { return json(v); }

SvgSink svg_sink(const std::string& dir, const std::vector<std::size_t>& original_index)
{
  if (dir.empty())
    return {};
  std::filesystem::create_directories(dir);
  return [dir, original_index](std::size_t i, std::size_t j, const std::string& svg) {
    const std::string name = "frame_" + std::to_string(original_index[i]) + "_" +
                             std::to_string(original_index[j]) + ".svg";
    std::ofstream(std::filesystem::path(dir) / name, std::ios::binary) << svg;
  };
}

} // namespace

int cli_simplify(const RunConfig& config, std::ostream& out, std::ostream& err)
{
  if (!(config.delta > 0) || !std::isfinite(config.delta)) {
    err << "error: --delta must be positive\n";
    return kExitConfig;
  }
  ParsedPolyline input;
  try {
    input = read_polyline(config.input);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
  const Polyline& L = input.vertices;
  if (L.size() < 2) {
    err << "error: input needs at least two vertices\n";
    return kExitParse;
  }

  const Metric m = config.metric.value_or(Metric::L2);
  SimplifyOptions options;
  options.threads = std::max(1u, config.threads);
  options.sweep.fault = config.fault;
  options.sweep.svg = svg_sink(config.svg_debug_dir, prepare(L).original_index);

  const auto t0 = std::chrono::steady_clock::now();
  const SimplificationResult r = simplify(L, config.delta, m, config.algo, options);
  const double millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  Polyline kept;
  for (std::size_t k : r.indices)
    kept.push_back(L[k]);
  if (!config.output.empty()) {
    try {
      write_polyline(config.output, kept, input.format);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitConfig;
    }
  }

  json summary;
  summary["n"] = L.size();
  summary["kept"] = kept.size();
  summary["linkCount"] = r.link_count;
  summary["maxWavefrontSize"] = r.stats.max_wavefront_size;
  summary["millis"] = millis;
  out << summary.dump() << "\n";
  return kExitOk;
}

int cli_verify(const RunConfig& config, std::ostream& out, std::ostream& err)
{
  const std::size_t max_n = config.max_n ? config.max_n : 30;
  json report;
  report["count"] = config.count;
  report["maxN"] = max_n;
  report["seed"] = config.seed;

  for (Metric m : metrics_of(config)) {
    Rng rng(config.seed);
    std::size_t max_size = 0;
    std::size_t shortcuts = 0;
    auto mismatch = [&](std::size_t t, const Instance& inst, json detail) {
      detail["result"] = "mismatch";
      detail["metric"] = to_string(m);
      detail["instance"] = t;
      detail["delta"] = format_number(inst.delta);
      detail["polyline"] = to_csv(inst.vertices);
      out << detail.dump(2) << "\n";
      if (!config.output.empty())
        write_polyline(config.output, inst.vertices, Format::Csv);
      err << "verify: mismatch on instance " << t << " (" << to_string(m) << ")\n";
      return kExitMismatch;
    };

    for (std::size_t t = 0; t < config.count; ++t) {
      const Instance inst = uniform_instance(rng, max_n, m);
      const Polyline& L = inst.vertices;
      SweepOptions options;
      options.check_invariants = true;
      options.fault = config.fault;
      try {
        for (std::size_t i = 0; i + 1 < L.size(); ++i) {
          const SweepResult r = shortcut_targets(L, i, inst.delta, m, Algorithm::Wavefront, options);
          const auto expected = oracle_shortcuts_from(L, i, inst.delta, m);
          max_size = std::max(max_size, r.stats.max_arc_count);
          shortcuts += expected.size();
          if (r.targets != expected)
            return mismatch(t, inst,
                            json{{"start", i},
                                 {"wavefront", index_list(r.targets)},
                                 {"oracle", index_list(expected)}});
          if (m != Metric::L2 && r.stats.max_arc_count > 2)
            return mismatch(t, inst, json{{"start", i}, {"segments", r.stats.max_arc_count}});
        }
      } catch (const InvariantViolation& e) {
        return mismatch(t, inst, json{{"invariant", e.what()}});
      }

      SimplifyOptions simplify_options;
      simplify_options.sweep.fault = config.fault;
      const auto fast = simplify(L, inst.delta, m, Algorithm::Wavefront, simplify_options);
      const auto slow = simplify(L, inst.delta, m, Algorithm::Baseline);
      if (fast.link_count != slow.link_count)
        return mismatch(t, inst,
                        json{{"wavefrontLinks", fast.link_count},
                             {"baselineLinks", slow.link_count}});
      for (std::size_t k = 0; k + 1 < fast.indices.size(); ++k)
        if (!shortcut_is_valid_oracle(L, fast.indices[k], fast.indices[k + 1], inst.delta, m))
          return mismatch(t, inst, json{{"invalidLink", {fast.indices[k], fast.indices[k + 1]}}});
    }
    report[std::string(to_string(m))] = {{"instances", config.count},
                                         {"shortcuts", shortcuts},
                                         {"maxWavefrontSize", max_size}};
  }
  report["result"] = "ok";
  out << report.dump() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

std::vector<BenchRow> run_benchmark(std::uint64_t seed, const std::vector<std::size_t>& sizes,
                                    const std::vector<Metric>& metrics,
                                    const std::vector<Algorithm>& algos, int repetitions)
{
  using Clock = std::chrono::steady_clock;
  // one walk at the finest resolution, subsampled for the smaller sizes, so
  // that every size traces the same curve
  const std::size_t finest = *std::max_element(sizes.begin(), sizes.end());
  Rng rng(seed);
  const Polyline walk = random_walk(rng, finest);
  std::vector<Polyline> inputs;
  for (std::size_t n : sizes) {
    Polyline L(n);
    for (std::size_t k = 0; k < n; ++k)
      L[k] = walk[k * finest / n];
    inputs.push_back(std::move(L));
  }
  std::vector<BenchRow> rows;
  for (Algorithm algo : algos) {
    for (Metric m : metrics) {
      std::vector<BenchRow> group;
      for (std::size_t n : sizes)
        group.push_back(BenchRow{n, algo, m, std::numeric_limits<double>::infinity(), 0});
      std::vector<double> spent(sizes.size(), 0.0);
      std::vector<int> reps(sizes.size(), 0);
      // sizes take turns, so a slow stretch of the machine does not land on
      // one size only; short runs repeat until they fill a small time budget
      for (bool more = true; more;) {
        more = false;
        for (std::size_t s = 0; s < sizes.size(); ++s) {
          const bool wanted = reps[s] < std::max(1, repetitions) || spent[s] < 250.0;
          if (!wanted || spent[s] > 3000.0)
            continue;
          const auto t0 = Clock::now();
          const SimplificationResult r = simplify(inputs[s], 1.0, m, algo);
          const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
          group[s].millis = std::min(group[s].millis, ms);
          group[s].max_wavefront_size = r.stats.max_wavefront_size;
          spent[s] += ms;
          ++reps[s];
          more = true;
        }
      }
      rows.insert(rows.end(), group.begin(), group.end());
    }
  }
  return rows;
}

double fit_exponent(const std::vector<BenchRow>& rows)
{
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = double(rows.size());
  for (const BenchRow& r : rows) {
    const double x = std::log(double(r.n));
    const double y = std::log(std::max(r.millis, 1e-6));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

std::vector<double> doubling_ratios(const std::vector<BenchRow>& rows)
{
  std::vector<double> out;
  for (std::size_t k = 1; k < rows.size(); ++k)
    out.push_back(rows[k].millis / std::max(rows[k - 1].millis, 1e-6));
  return out;
}

int cli_bench(const RunConfig& config, std::ostream& out, std::ostream&)
{
  const std::size_t max_n = config.max_n ? config.max_n : 2000;
  std::vector<std::size_t> sizes;
  for (std::size_t n : {250, 500, 1000, 2000})
    if (n <= max_n)
      sizes.push_back(n);
  if (sizes.empty())
    sizes.push_back(std::max<std::size_t>(max_n, 2));

  const std::vector<Algorithm> algos{Algorithm::Baseline, Algorithm::Wavefront};
  const auto rows = run_benchmark(config.seed, sizes, metrics_of(config), algos, 3);
  out << "n,algo,metric,millis,maxWavefrontSize\n";
  for (const BenchRow& r : rows)
    out << r.n << "," << to_string(r.algo) << "," << to_string(r.metric) << ","
        << format_number(r.millis) << "," << r.max_wavefront_size << "\n";

  std::map<std::pair<int, int>, std::vector<BenchRow>> groups;
  for (const BenchRow& r : rows)
    groups[{int(r.algo), int(r.metric)}].push_back(r);
  for (const auto& [key, group] : groups) {
    out << "# fit " << to_string(group.front().algo) << " " << to_string(group.front().metric)
        << " exponent " << format_number(fit_exponent(group)) << " doubling";
    for (double ratio : doubling_ratios(group))
      out << " " << format_number(ratio);
    out << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// stats

int cli_stats(const RunConfig& config, std::ostream& out, std::ostream& err)
{
  if (!(config.delta > 0) || !std::isfinite(config.delta)) {
    err << "error: --delta must be positive\n";
    return kExitConfig;
  }
  Polyline L;
  if (config.input.empty()) {
    Rng rng(config.seed);
    L = lattice_walk(rng, config.max_n ? config.max_n : 200, config.delta);
  } else {
    try {
      L = read_polyline(config.input).vertices;
    } catch (const ParseError& e) {
      err << "error: " << e.what() << "\n";
      return kExitParse;
    }
  }
  if (L.size() < 2) {
    err << "error: input needs at least two vertices\n";
    return kExitParse;
  }
  const Metric m = config.metric.value_or(Metric::L2);
  SimplifyOptions options;
  options.threads = std::max(1u, config.threads);
  options.sweep.fault = config.fault;
  const SimplificationResult r = simplify(L, config.delta, m, Algorithm::Wavefront, options);
  const NuDiagnostics nu = nu_diagnostics(L, config.delta, m);

  json report;
  report["n"] = L.size();
  report["metric"] = to_string(m);
  report["maxVerticesInDeltaBall"] = nu.max_vertices_in_delta_ball;
  report["nuEstimate"] = nu.nu_estimate;
  report["impliedWavefrontBound"] = nu.implied_wavefront_bound;
  report["maxWavefrontSize"] = r.stats.max_wavefront_size;
  report["sweepWavefrontSize"] = r.stats.sweep_wavefront_size;
  out << report.dump() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// argument parsing

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Minimum-link polyline simplification under the local Frechet distance", "lfs"};
  app.require_subcommand(1);

  RunConfig config;
  std::string metric;
  std::string algo = "wavefront";
  std::string fault = "none";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--metric", metric, "l1, l2 or linf")
        ->check(CLI::IsMember({"l1", "l2", "linf"}));
    sub->add_option("--seed", config.seed, "generator seed");
    sub->add_option("--threads", config.threads, "sweep threads")->check(CLI::PositiveNumber);
    sub->add_option("--inject-fault", fault)
        ->group("")
        ->check(CLI::IsMember({"none", "skip-near-apex-narrowing"}));
  };

  auto* simplify_cmd = app.add_subcommand("simplify", "simplify a polyline file");
  common(simplify_cmd);
  simplify_cmd->add_option("--input", config.input, "CSV or WKT polyline")->required();
  simplify_cmd->add_option("--output", config.output, "simplified polyline");
  simplify_cmd->add_option("--delta", config.delta, "distance bound")->required();
  simplify_cmd->add_option("--algo", algo, "wavefront or baseline")
      ->check(CLI::IsMember({"wavefront", "baseline"}));
  simplify_cmd->add_option("--svg-debug-dir", config.svg_debug_dir, "write one SVG per sweep step");

  auto* verify_cmd = app.add_subcommand("verify", "cross-check sweeps against the oracle");
  common(verify_cmd);
  verify_cmd->add_option("--count", config.count, "instances per metric");
  verify_cmd->add_option("--max-n", config.max_n, "largest polyline");
  verify_cmd->add_option("--output", config.output, "where to write a counterexample");

  auto* bench_cmd = app.add_subcommand("bench", "time both algorithms on random walks");
  common(bench_cmd);
  bench_cmd->add_option("--max-n", config.max_n, "largest size (sizes double from 250)");

  auto* stats_cmd = app.add_subcommand("stats", "wavefront sizes and density diagnostics");
  common(stats_cmd);
  stats_cmd->add_option("--input", config.input, "polyline file (default: generated)");
  stats_cmd->add_option("--delta", config.delta, "distance bound")->required();
  stats_cmd->add_option("--max-n", config.max_n, "size of the generated polyline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (!metric.empty())
    config.metric = parse_metric(metric);
  config.algo = *parse_algorithm(algo);
  config.fault = fault == "none" ? Fault::None : Fault::SkipNearApexNarrowing;

  try {
    if (simplify_cmd->parsed())
      return cli_simplify(config, out, err);
    if (verify_cmd->parsed())
      return cli_verify(config, out, err);
    if (bench_cmd->parsed())
      return cli_bench(config, out, err);
    return cli_stats(config, out, err);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitMismatch;
  }
}

} // namespace lfs
