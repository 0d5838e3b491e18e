// goldnet: build Goldbach prime networks, sweep ensembles, emit figure data.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "goldnet/baseline.hpp"
#include "goldnet/ensemble.hpp"
#include "goldnet/figures.hpp"
#include "goldnet/manifest.hpp"
#include "goldnet/netbuild.hpp"
#include "goldnet/report_io.hpp"

namespace fs = std::filesystem;
using namespace goldnet;

namespace {

constexpr int kExitFlagError = 2;
constexpr int kExitRuntimeError = 3;

// Thrown for flag combinations CLI11 cannot express; maps to exit code 2.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::uint64_t seed = 0;
  std::string out = "out";
  std::string format = "csv";
  std::string clustering = "standard";
  std::string distance_scope = "reachable";
  std::uint64_t max_even_cap = 1'000'000;
};

struct Output {
  fs::path dir;
  RunManifest manifest;

  void write(const fs::path& rel, const std::string& bytes) {
    const fs::path full = dir / rel;
    fs::create_directories(full.parent_path());
    std::ofstream os(full, std::ios::binary | std::ios::trunc);
    os << bytes;
    os.close();
    if (!os) throw Error("failed writing " + full.string());
    manifest.add_artifact(dir, rel);
  }

  void write_csv_file(const fs::path& rel, const CsvTable& t) {
    std::ostringstream os;
    write_csv(os, t);
    write(rel, os.str());
  }

  void write_json_file(const fs::path& rel, const nlohmann::ordered_json& j) { write(rel, j.dump(2) + "\n"); }

  void finish(std::chrono::steady_clock::time_point start) {
    manifest.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fs::create_directories(dir);
    std::ofstream os(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    os << manifest.to_json().dump(2) << "\n";
  }
};

std::vector<AlphaParam> parse_alphas(const std::vector<std::string>& raw, const std::string& flag) {
  std::vector<AlphaParam> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      try {
        out.push_back(AlphaParam::parse(part));
      } catch (const InvalidConfig& e) {
        throw FlagError(flag + ": " + e.what());
      }
    }
  }
  return out;
}

std::vector<std::size_t> parse_sizes(const std::vector<std::string>& raw, const std::string& flag) {
  std::vector<std::size_t> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      std::size_t v = 0;
      auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
      if (ec != std::errc{} || ptr != part.data() + part.size()) {
        throw FlagError(flag + ": '" + part + "' is not a natural number");
      }
      out.push_back(v);
    }
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw FlagError(flag + ": values must be strictly increasing");
  }
  return out;
}

const CLI::Validator kEvenAtLeast8 = CLI::Validator(
    [](std::string& s) -> std::string {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size() || v < 8 || v % 2 != 0) {
        return "must be an even number >= 8, got " + s;
      }
      return {};
    },
    "EVEN>=8");

void add_common(CLI::App* cmd, CommonOptions& o, bool with_format) {
  cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  cmd->add_option("--out", o.out, "output directory")->capture_default_str();
  if (with_format) {
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  }
  cmd->add_option("--clustering", o.clustering, "standard: k(k-1)/2 possible links, paper: k(k+1)/2")
      ->check(CLI::IsMember({"standard", "paper"}))
      ->capture_default_str();
  cmd->add_option("--distance-scope", o.distance_scope, "pairs averaged into d")
      ->check(CLI::IsMember({"reachable"}))
      ->capture_default_str();
  cmd->add_option("--max-even-cap", o.max_even_cap, "largest even number the sieve supports")
      ->check(kEvenAtLeast8)
      ->capture_default_str();
}

std::string summary_line(const MetricsReport& r) {
  return "N=" + std::to_string(r.N) + " M=" + std::to_string(r.M) + " d=" + format_double(r.d) +
         " C=" + format_double(r.C) + " r=" + (r.r ? format_double(*r.r) : std::string("undefined"));
}

void write_report(Output& out, const std::string& stem, const MetricsReport& r, const std::string& format) {
  if (format == "json") {
    out.write_json_file(stem + ".json", to_json(r));
    return;
  }
  out.write_csv_file(stem + ".csv", report_rows(std::span(&r, 1)));
  out.write_csv_file(stem + "_p_of_j.csv", distribution_table(r.p_of_j, "j", "p"));
  out.write_csv_file(stem + "_P_of_k.csv", distribution_table(r.P_of_k, "k", "P"));
  out.write_csv_file(stem + "_C_by_degree.csv", distribution_table(r.C_by_degree, "k", "C"));
}

nlohmann::ordered_json common_json(const CommonOptions& o) {
  return {{"seed", o.seed},
          {"out", o.out},
          {"format", o.format},
          {"clustering", o.clustering},
          {"distance_scope", o.distance_scope},
          {"max_even_cap", o.max_even_cap}};
}

// CLI11 reads "-inf" or "-2.5" after an option as a new flag; glue such
// values to the option that expects them.
std::vector<std::string> normalize_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    const bool takes_alpha = a == "--alpha" || a == "--alphas";
    if (takes_alpha && i + 1 < args.size() && args[i + 1].starts_with('-') && args[i + 1].size() > 1 &&
        !args[i + 1].starts_with("--")) {
      out.push_back(a + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(a);
    }
  }
  std::reverse(out.begin(), out.end());  // CLI11 consumes a reversed vector
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goldbach prime network: construction, metrics and ensemble datasets"};
  app.require_subcommand(1);

  // build
  CommonOptions build_opts;
  std::string build_alpha = "0";
  std::optional<std::uint64_t> max_even;
  std::optional<std::size_t> target_nodes;
  bool build_baseline = false;
  auto* build_cmd = app.add_subcommand("build", "build one network, export its edge list and metrics");
  build_cmd->add_option("--alpha", build_alpha, "selection exponent: number, +inf or -inf")->capture_default_str();
  auto* max_even_opt = build_cmd->add_option("--max-even", max_even, "process even numbers 8..N_e")->check(kEvenAtLeast8);
  auto* target_opt =
      build_cmd->add_option("--target-nodes", target_nodes, "stop once the network has this many nodes")
          ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  max_even_opt->excludes(target_opt);
  build_cmd->add_flag("--baseline", build_baseline, "also sample and export the matched G(N, M) graph");
  add_common(build_cmd, build_opts, true);

  // shared by sweep and figure
  std::vector<std::string> alpha_args;
  std::vector<std::string> snapshot_args;
  std::size_t realizations = 20;
  unsigned threads = 0;
  bool no_baseline = false;

  CommonOptions sweep_opts;
  sweep_opts.format = "json";
  auto* sweep_cmd = app.add_subcommand("sweep", "ensemble sweep over alphas and node-count snapshots");
  sweep_cmd->add_option("--alpha,--alphas", alpha_args, "alphas, repeatable or comma-separated")->required();
  sweep_cmd->add_option("--snapshots", snapshot_args, "ascending node counts, comma-separated")->required();
  sweep_cmd->add_option("--realizations", realizations, "realizations per alpha")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--threads", threads, "worker threads, 0 = all cores");
  sweep_cmd->add_flag("--no-baseline", no_baseline, "skip the matched random graphs");
  add_common(sweep_cmd, sweep_opts, true);

  CommonOptions fig_opts;
  int figure_id = 0;
  std::optional<std::size_t> fig_realizations;
  auto* fig_cmd = app.add_subcommand("figure", "emit the dataset behind one figure (1..10)");
  fig_cmd->add_option("figure", figure_id, "figure number")->required()->check(CLI::Range(1, kFigureCount));
  fig_cmd->add_option("--alpha,--alphas", alpha_args, "override the figure's alphas");
  fig_cmd->add_option("--snapshots", snapshot_args, "override the figure's node counts");
  fig_cmd->add_option("--realizations", fig_realizations, "override realizations (default 20)")
      ->check(CLI::PositiveNumber);
  fig_cmd->add_option("--threads", threads, "worker threads, 0 = all cores");
  add_common(fig_cmd, fig_opts, false);

  const auto start = std::chrono::steady_clock::now();
  try {
    app.parse(normalize_args(argc, argv));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFlagError;
  }

  const std::vector<std::string> command_line(argv, argv + argc);
  auto progress = [](const std::string& msg) { std::cerr << "[goldnet] " << msg << "\n"; };

  try {
    if (*build_cmd) {
      AlphaParam alpha = AlphaParam::finite(0.0);
      try {
        alpha = AlphaParam::parse(build_alpha);
      } catch (const InvalidConfig& e) {
        throw FlagError(std::string("--alpha: ") + e.what());
      }
      if (!max_even && !target_nodes) throw FlagError("--max-even or --target-nodes is required");
      BuildConfig cfg;
      cfg.alpha = alpha;
      cfg.seed = build_opts.seed;
      cfg.stop = max_even ? StopRule{MaxEven{*max_even}} : StopRule{TargetNodes{*target_nodes}};
      const std::uint64_t sieve_even = max_even ? *max_even : build_opts.max_even_cap;
      const PrimeTable table(static_cast<std::uint32_t>(sieve_even - 2));
      const PrimeGraph g = build(cfg, table);

      Output out{build_opts.out, {}};
      out.manifest.command_line = command_line;
      auto config = common_json(build_opts);
      config["command"] = "build";
      config["alpha"] = alpha.repr();
      config["stop"] = max_even ? nlohmann::ordered_json{{"max_even", *max_even}}
                                : nlohmann::ordered_json{{"target_nodes", *target_nodes}};
      config["baseline"] = build_baseline;
      out.manifest.config = config;
      out.manifest.master_seed = build_opts.seed;
      out.manifest.seed_rule = kSeedDerivationRule;

      std::ostringstream edges;
      write_edge_list(edges, g);
      out.write("edges/goldbach-net.txt", edges.str());
      const auto conv = parse_clustering(build_opts.clustering);
      const SimpleGraph sg = g.to_simple_graph();
      const auto report = compute_report(sg, conv);
      write_report(out, "report", report, build_opts.format);
      std::cout << summary_line(report) << "\n";

      if (build_baseline) {
        const NullModelConfig nm{g.num_nodes(), g.num_edges(), derive_seed(build_opts.seed, 1)};
        const auto null_edges = sample_gnm_edges(nm);
        std::ostringstream ne;
        write_gnm_edge_list(ne, nm, null_edges);
        out.write("edges/gnm.txt", ne.str());
        const auto null_report = compute_report(SimpleGraph(nm.n_nodes, null_edges), conv);
        write_report(out, "baseline_report", null_report, build_opts.format);
        std::cout << "baseline " << summary_line(null_report) << "\n";
      }
      out.finish(start);
      return 0;
    }

    if (*sweep_cmd) {
      SweepSpec spec;
      spec.alphas = parse_alphas(alpha_args, "--alphas");
      spec.snapshot_nodes = parse_sizes(snapshot_args, "--snapshots");
      if (spec.alphas.empty()) throw FlagError("--alphas: at least one alpha required");
      if (spec.snapshot_nodes.empty()) throw FlagError("--snapshots: at least one node count required");
      if (spec.snapshot_nodes.front() < 2) throw FlagError("--snapshots: node counts must be >= 2");
      spec.realizations = realizations;
      spec.master_seed = sweep_opts.seed;
      spec.max_even_cap = sweep_opts.max_even_cap;
      spec.clustering = parse_clustering(sweep_opts.clustering);
      spec.with_baseline = !no_baseline;
      spec.threads = threads;
      const auto result = run_sweep(spec, progress);

      Output out{sweep_opts.out, {}};
      out.manifest.command_line = command_line;
      auto config = to_json(spec);
      config["command"] = "sweep";
      config["format"] = sweep_opts.format;
      out.manifest.config = config;
      out.manifest.master_seed = spec.master_seed;
      out.manifest.seed_rule = result.seed_rule;
      if (sweep_opts.format == "json") {
        out.write_json_file("sweep.json", to_json(result));
      } else {
        out.write_csv_file("sweep.csv", cells_table(result));
      }
      for (const auto& s : result.series) {
        for (const auto& d : s.diagnostics) std::cerr << "warning: " << d << "\n";
      }
      out.finish(start);
      return 0;
    }

    if (*fig_cmd) {
      SweepSpec spec = figure_spec(figure_id);
      if (!alpha_args.empty()) spec.alphas = parse_alphas(alpha_args, "--alphas");
      if (!snapshot_args.empty()) spec.snapshot_nodes = parse_sizes(snapshot_args, "--snapshots");
      if (spec.snapshot_nodes.empty() || spec.snapshot_nodes.front() < 2) {
        throw FlagError("--snapshots: node counts must be >= 2");
      }
      if (fig_realizations) spec.realizations = *fig_realizations;
      spec.master_seed = fig_opts.seed;
      spec.max_even_cap = fig_opts.max_even_cap;
      spec.clustering = parse_clustering(fig_opts.clustering);
      spec.threads = threads;
      const auto result = run_sweep(spec, progress);

      Output out{fig_opts.out, {}};
      out.manifest.command_line = command_line;
      auto config = to_json(spec);
      config["command"] = "figure";
      config["figure"] = figure_id;
      out.manifest.config = config;
      out.manifest.master_seed = spec.master_seed;
      out.manifest.seed_rule = result.seed_rule;
      const fs::path fig_dir = "fig" + std::to_string(figure_id);
      for (const auto& series : figure_series(figure_id, result)) {
        out.write_csv_file(fig_dir / (series.name + ".csv"), series.table);
      }
      for (const auto& s : result.series) {
        for (const auto& c : s.cells) {
          if (!c.network) {
            std::cerr << "warning: alpha=" << s.alpha.repr() << " snapshot N=" << c.snapshot
                      << " unreached, cells left empty\n";
          }
        }
        for (const auto& d : s.diagnostics) std::cerr << "warning: " << d << "\n";
      }
      out.finish(start);
      return 0;
    }
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFlagError;
  } catch (const InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFlagError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return 0;
}
