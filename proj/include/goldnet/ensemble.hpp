#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "goldnet/baseline.hpp"
#include "goldnet/csv.hpp"
#include "goldnet/metrics.hpp"
#include "goldnet/netbuild.hpp"
#include "goldnet/primes.hpp"
#include "goldnet/rng.hpp"

namespace goldnet {

struct SweepSpec {
  std::vector<AlphaParam> alphas;
  std::vector<std::size_t> snapshot_nodes;
  std::size_t realizations = 20;
  std::uint64_t master_seed = 0;
  std::uint64_t max_even_cap = 1'000'000;
  ClusteringConvention clustering = ClusteringConvention::standard;
  bool with_baseline = true;
  // false: only build and record growth, no per-snapshot metrics
  bool compute_metrics = true;
  unsigned threads = 0;  // 0 = hardware concurrency; never affects results

  void validate() const {
    if (alphas.empty()) throw InvalidConfig("sweep needs at least one alpha");
    if (realizations < 1) throw InvalidConfig("realizations must be >= 1");
    if (snapshot_nodes.empty()) throw InvalidConfig("sweep needs at least one snapshot node count");
    if (snapshot_nodes.front() < 2) throw InvalidConfig("snapshot node counts must be >= 2");
    for (std::size_t i = 1; i < snapshot_nodes.size(); ++i) {
      if (snapshot_nodes[i] <= snapshot_nodes[i - 1]) {
        throw InvalidConfig("snapshot node counts must be strictly increasing");
      }
    }
    if (max_even_cap < 8 || max_even_cap % 2 != 0) throw InvalidConfig("max_even_cap must be an even number >= 8");
    if (max_even_cap > 4'000'000'000ULL) throw InvalidConfig("max_even_cap too large for a 32-bit sieve");
  }
};

struct ScalarStat {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single value
  std::size_t count = 0;
};

// One distribution bin over the realizations that contain it.
struct BinStat {
  double mean = 0.0;
  double std = 0.0;
  std::size_t count = 0;
};

struct CellStats {
  std::size_t realizations = 0;
  std::map<std::string, ScalarStat> scalars;
  std::map<std::string, std::map<std::size_t, BinStat>> distributions;

  const ScalarStat& scalar(const std::string& name) const { return scalars.at(name); }
  double mean(const std::string& name) const { return scalar(name).mean; }
  double std(const std::string& name) const { return scalar(name).std; }

  // Bin mean with realizations lacking the bin counted as 0, so that a
  // probability distribution still sums to 1.
  std::map<std::size_t, double> zero_filled(const std::string& name) const {
    std::map<std::size_t, double> out;
    for (const auto& [x, b] : distributions.at(name)) {
      out[x] = b.mean * static_cast<double>(b.count) / static_cast<double>(realizations);
    }
    return out;
  }
};

struct GrowthStat {
  std::size_t links = 0;
  double mean_nodes = 0.0;
  double std_nodes = 0.0;
  std::size_t count = 0;
};

struct CellResult {
  std::size_t snapshot = 0;
  std::optional<CellStats> network;   // absent when no realization got there
  std::optional<CellStats> baseline;  // matched G(N, M) per realization
};

struct AlphaSeries {
  AlphaParam alpha = AlphaParam::finite(0.0);
  std::vector<CellResult> cells;  // parallel to snapshot_nodes
  std::vector<GrowthStat> growth;
  std::size_t builds = 0;
  std::size_t exhausted = 0;
  std::vector<std::string> diagnostics;

  const CellResult& cell_at(std::size_t snapshot) const {
    for (const auto& c : cells) {
      if (c.snapshot == snapshot) return c;
    }
    throw InvalidConfig("no snapshot " + std::to_string(snapshot) + " in series");
  }
};

struct EnsembleResult {
  SweepSpec spec;
  std::string seed_rule;
  std::vector<AlphaSeries> series;

  const AlphaSeries& at(const AlphaParam& alpha) const {
    for (const auto& s : series) {
      if (s.alpha == alpha) return s;
    }
    throw InvalidConfig("alpha " + alpha.repr() + " not in sweep");
  }
  const AlphaSeries& at(double alpha) const { return at(AlphaParam::finite(alpha)); }
};

namespace detail {

inline ScalarStat summarize(std::span<const double> xs) {
  ScalarStat s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

struct ScalarField {
  const char* name;
  std::optional<double> (*get)(const MetricsReport&);
};

inline std::span<const ScalarField> scalar_fields() {
  static const ScalarField fields[] = {
      {"N", [](const MetricsReport& r) -> std::optional<double> { return double(r.N); }},
      {"M", [](const MetricsReport& r) -> std::optional<double> { return double(r.M); }},
      {"d", [](const MetricsReport& r) -> std::optional<double> { return r.d; }},
      {"reachable_fraction", [](const MetricsReport& r) -> std::optional<double> { return r.reachable_fraction; }},
      {"giant_component_size",
       [](const MetricsReport& r) -> std::optional<double> { return double(r.giant_component_size); }},
      {"C", [](const MetricsReport& r) -> std::optional<double> { return r.C; }},
      {"mean_k", [](const MetricsReport& r) -> std::optional<double> { return r.mean_k; }},
      {"f_k", [](const MetricsReport& r) -> std::optional<double> { return r.f_k; }},
      {"k_max", [](const MetricsReport& r) -> std::optional<double> { return double(r.k_max); }},
      {"r", [](const MetricsReport& r) -> std::optional<double> { return r.r; }},
  };
  return fields;
}

template <typename Map>
void collect_bins(std::map<std::size_t, std::vector<double>>& bins, const Map& m) {
  for (const auto& [x, v] : m) bins[x].push_back(v);
}

inline std::map<std::size_t, BinStat> summarize_bins(const std::map<std::size_t, std::vector<double>>& bins) {
  std::map<std::size_t, BinStat> out;
  for (const auto& [x, vs] : bins) {
    const auto s = summarize(vs);
    out[x] = BinStat{s.mean, s.std, s.count};
  }
  return out;
}

// Runs fn(0..count-1) on a bounded pool. The first failure by index is
// rethrown after all workers finish.
template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline std::vector<GrowthStat> aggregate_growth(std::span<const BuildOutcome> outcomes) {
  std::size_t longest = 0;
  for (const auto& o : outcomes) longest = std::max(longest, o.graph.num_edges());
  std::vector<GrowthStat> out;
  out.reserve(longest);
  std::vector<double> xs;
  for (std::size_t m = 0; m < longest; ++m) {
    xs.clear();
    for (const auto& o : outcomes) {
      const auto counts = o.graph.node_counts();
      if (m < counts.size()) xs.push_back(counts[m]);
    }
    const auto s = summarize(xs);
    out.push_back({m + 1, s.mean, s.std, s.count});
  }
  return out;
}

}  // namespace detail

// Per-field mean and sample standard deviation over reports, in input
// order. Distribution bins are averaged over the reports containing them.
inline CellStats aggregate(std::span<const MetricsReport> reports) {
  if (reports.empty()) throw InvalidConfig("aggregate needs at least one report");
  CellStats out;
  out.realizations = reports.size();
  std::vector<double> xs;
  for (const auto& f : detail::scalar_fields()) {
    xs.clear();
    for (const auto& r : reports) {
      if (auto v = f.get(r)) xs.push_back(*v);
    }
    out.scalars[f.name] = detail::summarize(xs);
  }
  std::map<std::size_t, std::vector<double>> pj, pk, ck;
  for (const auto& r : reports) {
    detail::collect_bins(pj, r.p_of_j);
    detail::collect_bins(pk, r.P_of_k);
    detail::collect_bins(ck, r.C_by_degree);
  }
  out.distributions["p_of_j"] = detail::summarize_bins(pj);
  out.distributions["P_of_k"] = detail::summarize_bins(pk);
  out.distributions["C_by_degree"] = detail::summarize_bins(ck);
  return out;
}

using ProgressFn = std::function<void(const std::string&)>;

// Seed of the matched null graph for one (alpha, realization, snapshot).
inline std::uint64_t baseline_seed(std::uint64_t realization_seed, std::size_t alpha_index,
                                   std::size_t snapshot_index) {
  return derive_seed(derive_seed(realization_seed, alpha_index + 1), snapshot_index);
}

inline std::string sweep_seed_rule() {
  return std::string(kSeedDerivationRule) +
         "; realization i of every alpha uses seed_i = derive(master, i); matched null graph uses "
         "derive(derive(seed_i, alpha_index + 1), snapshot_index)";
}

// Builds `realizations` networks per alpha, snapshots them, computes the
// metrics and matched baselines, and folds everything in (alpha, snapshot,
// realization) order. The result depends only on the sweep settings, never on the
// thread count or completion order.
inline EnsembleResult run_sweep(const SweepSpec& spec, const ProgressFn& progress = {}) {
  spec.validate();
  std::mutex progress_mutex;
  auto report = [&](const std::string& msg) {
    if (!progress) return;
    std::lock_guard lock(progress_mutex);
    progress(msg);
  };

  const PrimeTable table(static_cast<std::uint32_t>(spec.max_even_cap - 2));
  EnsembleResult result;
  result.spec = spec;
  result.seed_rule = sweep_seed_rule();
  const std::size_t n_snap = spec.snapshot_nodes.size();

  for (std::size_t a = 0; a < spec.alphas.size(); ++a) {
    const AlphaParam alpha = spec.alphas[a];
    std::vector<BuildConfig> cfgs(spec.realizations);
    for (std::size_t i = 0; i < spec.realizations; ++i) {
      cfgs[i].alpha = alpha;
      cfgs[i].stop = TargetNodes{spec.snapshot_nodes.back()};
      cfgs[i].seed = derive_seed(spec.master_seed, i);
      cfgs[i].snapshot_nodes = spec.snapshot_nodes;
    }
    report("alpha=" + alpha.repr() + ": building " + std::to_string(spec.realizations) + " realizations");
    const auto outcomes = build_many(cfgs, table);

    AlphaSeries series;
    series.alpha = alpha;
    series.builds = outcomes.size();
    for (const auto& o : outcomes) {
      if (!o.completed) {
        ++series.exhausted;
        series.diagnostics.push_back(o.diagnostic);
      }
    }
    series.growth = detail::aggregate_growth(outcomes);

    if (spec.compute_metrics) {
      std::vector<std::optional<MetricsReport>> net(spec.realizations * n_snap), null(spec.realizations * n_snap);
      detail::parallel_for(spec.realizations * n_snap, spec.threads, [&](std::size_t unit) {
        const std::size_t i = unit / n_snap;
        const std::size_t s = unit % n_snap;
        const std::size_t checkpoint = spec.snapshot_nodes[s];
        auto snap = std::move(snapshots(outcomes[i].graph, std::span(&checkpoint, 1)).front());
        if (!snap) return;
        net[unit] = compute_report(snap->graph, spec.clustering);
        if (spec.with_baseline) {
          const NullModelConfig nm{snap->nodes, snap->links, baseline_seed(cfgs[i].seed, a, s)};
          null[unit] = baseline_report(nm, spec.clustering);
        }
      });
      for (std::size_t s = 0; s < n_snap; ++s) {
        std::vector<MetricsReport> net_cell, null_cell;
        for (std::size_t i = 0; i < spec.realizations; ++i) {
          if (net[i * n_snap + s]) net_cell.push_back(std::move(*net[i * n_snap + s]));
          if (null[i * n_snap + s]) null_cell.push_back(std::move(*null[i * n_snap + s]));
        }
        CellResult cell;
        cell.snapshot = spec.snapshot_nodes[s];
        if (!net_cell.empty()) cell.network = aggregate(net_cell);
        if (!null_cell.empty()) cell.baseline = aggregate(null_cell);
        if (!cell.network) report("alpha=" + alpha.repr() + ": snapshot N=" + std::to_string(cell.snapshot) +
                                  " not reached by any realization");
        series.cells.push_back(std::move(cell));
      }
    }
    report("alpha=" + alpha.repr() + ": done");
    result.series.push_back(std::move(series));
  }
  return result;
}

inline nlohmann::ordered_json to_json(const CellStats& c) {
  nlohmann::ordered_json j;
  j["realizations"] = c.realizations;
  auto& sc = j["scalars"];
  for (const auto& [name, s] : c.scalars) sc[name] = {{"mean", s.mean}, {"std", s.std}, {"count", s.count}};
  auto& ds = j["distributions"];
  for (const auto& [name, bins] : c.distributions) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [x, b] : bins) arr.push_back({x, b.mean, b.std, b.count});
    ds[name] = std::move(arr);
  }
  return j;
}

inline nlohmann::ordered_json to_json(const SweepSpec& s) {
  nlohmann::ordered_json j;
  auto alphas = nlohmann::ordered_json::array();
  for (const auto& a : s.alphas) alphas.push_back(a.repr());
  j["alphas"] = std::move(alphas);
  j["snapshot_nodes"] = s.snapshot_nodes;
  j["realizations"] = s.realizations;
  j["master_seed"] = s.master_seed;
  j["max_even_cap"] = s.max_even_cap;
  j["clustering"] = std::string(to_string(s.clustering));
  j["distance_scope"] = "reachable";
  j["with_baseline"] = s.with_baseline;
  j["compute_metrics"] = s.compute_metrics;
  return j;
}

// Distribution bins as [x, mean, std, count]; growth as [M, mean N, std N,
// count].
inline nlohmann::ordered_json to_json(const EnsembleResult& r) {
  nlohmann::ordered_json j;
  j["spec"] = to_json(r.spec);
  j["seed_rule"] = r.seed_rule;
  auto series = nlohmann::ordered_json::array();
  for (const auto& s : r.series) {
    nlohmann::ordered_json js;
    js["alpha"] = s.alpha.repr();
    js["builds"] = s.builds;
    js["exhausted"] = s.exhausted;
    js["diagnostics"] = s.diagnostics;
    auto cells = nlohmann::ordered_json::array();
    for (const auto& c : s.cells) {
      nlohmann::ordered_json jc;
      jc["snapshot"] = c.snapshot;
      jc["network"] = c.network ? to_json(*c.network) : nlohmann::ordered_json(nullptr);
      jc["baseline"] = c.baseline ? to_json(*c.baseline) : nlohmann::ordered_json(nullptr);
      cells.push_back(std::move(jc));
    }
    js["cells"] = std::move(cells);
    auto growth = nlohmann::ordered_json::array();
    for (const auto& g : s.growth) growth.push_back({g.links, g.mean_nodes, g.std_nodes, g.count});
    js["growth"] = std::move(growth);
    series.push_back(std::move(js));
  }
  j["series"] = std::move(series);
  return j;
}

// One row per (alpha, snapshot): mean and std of every scalar, for the
// network and its matched baseline. Missing cells leave their columns empty.
inline CsvTable cells_table(const EnsembleResult& r) {
  CsvTable t;
  t.header = {"alpha", "snapshot", "realizations", "baseline_realizations"};
  for (const auto& f : detail::scalar_fields()) {
    t.header.push_back(std::string(f.name) + "_mean");
    t.header.push_back(std::string(f.name) + "_std");
  }
  for (const auto& f : detail::scalar_fields()) {
    t.header.push_back("baseline_" + std::string(f.name) + "_mean");
    t.header.push_back("baseline_" + std::string(f.name) + "_std");
  }
  auto append = [](std::vector<std::string>& row, const std::optional<CellStats>& c) {
    for (const auto& f : detail::scalar_fields()) {
      if (c && c->scalars.at(f.name).count > 0) {
        row.push_back(cell(c->scalars.at(f.name).mean));
        row.push_back(cell(c->scalars.at(f.name).std));
      } else {
        row.emplace_back();
        row.emplace_back();
      }
    }
  };
  for (const auto& s : r.series) {
    for (const auto& c : s.cells) {
      std::vector<std::string> row{s.alpha.repr(), cell(c.snapshot),
                                   cell(c.network ? c.network->realizations : std::size_t{0}),
                                   cell(c.baseline ? c.baseline->realizations : std::size_t{0})};
      append(row, c.network);
      append(row, c.baseline);
      t.add_row(std::move(row));
    }
  }
  return t;
}

}  // namespace goldnet
