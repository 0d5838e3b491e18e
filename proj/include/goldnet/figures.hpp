#pragma once

#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "goldnet/csv.hpp"
#include "goldnet/ensemble.hpp"

namespace goldnet {

struct FigureSeries {
  std::string name;  // written as fig<k>/<name>.csv
  CsvTable table;
};

namespace detail {

inline std::vector<AlphaParam> alpha_list(std::initializer_list<double> values) {
  std::vector<AlphaParam> out;
  for (double v : values) out.push_back(AlphaParam::finite(v));
  return out;
}

inline const std::vector<std::size_t>& size_ladder() {
  static const std::vector<std::size_t> ns{250, 500, 1000, 2000, 3000, 4000, 5000};
  return ns;
}

inline std::string col(const std::string& stem, const AlphaParam& a) { return stem + "_" + a.repr(); }

inline void push_stat(std::vector<std::string>& row, const std::optional<CellStats>& c, const std::string& field) {
  if (c && c->scalar(field).count > 0) {
    row.push_back(cell(c->mean(field)));
    row.push_back(cell(c->std(field)));
  } else {
    row.emplace_back();
    row.emplace_back();
  }
}

// Distribution figure: one row per bin value, a value and an occupancy
// column per alpha.
inline CsvTable distribution_figure(const EnsembleResult& r, const std::string& dist, const std::string& x_name,
                                    const std::string& stem, bool zero_fill) {
  CsvTable t;
  t.header = {x_name};
  std::set<std::size_t> xs;
  for (const auto& s : r.series) {
    t.header.push_back(col(stem, s.alpha));
    t.header.push_back(col("n", s.alpha));
    const auto& c = s.cells.back().network;
    if (c) {
      for (const auto& [x, _] : c->distributions.at(dist)) xs.insert(x);
    }
  }
  for (std::size_t x : xs) {
    std::vector<std::string> row{cell(x)};
    for (const auto& s : r.series) {
      const auto& c = s.cells.back().network;
      if (!c) {
        row.emplace_back();
        row.emplace_back();
        continue;
      }
      const auto& bins = c->distributions.at(dist);
      auto it = bins.find(x);
      if (zero_fill) {
        const auto filled = c->zero_filled(dist);
        auto f = filled.find(x);
        row.push_back(cell(f == filled.end() ? 0.0 : f->second));
      } else {
        row.push_back(it == bins.end() ? std::string() : cell(it->second.mean));
      }
      row.push_back(cell(it == bins.end() ? std::size_t{0} : it->second.count));
    }
    t.add_row(std::move(row));
  }
  return t;
}

// Scalar vs N, one (mean, std) column pair per alpha, optionally followed by
// the baseline's pair.
inline CsvTable versus_nodes(const EnsembleResult& r, const std::vector<std::pair<std::string, std::string>>& fields,
                             const std::string& baseline_field = {}, const std::string& baseline_stem = {}) {
  CsvTable t;
  t.header = {"N"};
  for (const auto& s : r.series) {
    for (const auto& [field, stem] : fields) {
      t.header.push_back(col(stem, s.alpha));
      t.header.push_back(col(stem + "_std", s.alpha));
    }
    if (!baseline_field.empty()) {
      t.header.push_back(col(baseline_stem, s.alpha));
      t.header.push_back(col(baseline_stem + "_std", s.alpha));
    }
  }
  for (std::size_t i = 0; i < r.spec.snapshot_nodes.size(); ++i) {
    std::vector<std::string> row{cell(r.spec.snapshot_nodes[i])};
    for (const auto& s : r.series) {
      for (const auto& [field, _] : fields) push_stat(row, s.cells[i].network, field);
      if (!baseline_field.empty()) push_stat(row, s.cells[i].baseline, baseline_field);
    }
    t.add_row(std::move(row));
  }
  return t;
}

// Scalars vs alpha at the largest snapshot.
inline CsvTable versus_alpha(const EnsembleResult& r, const std::vector<std::pair<std::string, std::string>>& fields,
                             bool with_count = false) {
  CsvTable t;
  t.header = {"alpha"};
  for (const auto& [_, stem] : fields) {
    t.header.push_back(stem);
    t.header.push_back(stem + "_std");
  }
  if (with_count) t.header.push_back("count");
  for (const auto& s : r.series) {
    std::vector<std::string> row{s.alpha.repr()};
    const auto& c = s.cells.back().network;
    for (const auto& [field, _] : fields) push_stat(row, c, field);
    if (with_count) row.push_back(cell(c ? c->scalar(fields.front().first).count : std::size_t{0}));
    t.add_row(std::move(row));
  }
  return t;
}

// Every M up to 100, then about 100 log-spaced values per decade.
inline std::vector<std::size_t> growth_grid(std::size_t max_links) {
  std::vector<std::size_t> out;
  for (std::size_t m = 1; m <= std::min<std::size_t>(100, max_links); ++m) out.push_back(m);
  for (int i = 1;; ++i) {
    const auto m = static_cast<std::size_t>(std::llround(100.0 * std::pow(10.0, i / 100.0)));
    if (m > max_links) break;
    if (m > out.back()) out.push_back(m);
  }
  if (!out.empty() && out.back() != max_links && max_links > 100) out.push_back(max_links);
  return out;
}

}  // namespace detail

inline constexpr int kFigureCount = 10;

// Sweep reproducing one figure's dataset with its caption's parameters.
inline SweepSpec figure_spec(int figure) {
  using detail::alpha_list;
  SweepSpec s;
  s.realizations = 20;
  s.with_baseline = false;
  const std::vector<std::size_t> n5000{5000};
  const auto alpha_grid = alpha_list({-3, -2.5, -2.1, -1.8, -1.4, -1, -0.5, 0, 0.5, 1, 2, 3});
  switch (figure) {
    case 1:
    case 4:
      s.alphas = alpha_list({5, 2, 1, 0, -1, -1.8, -2.5});
      s.snapshot_nodes = detail::size_ladder();
      s.with_baseline = true;
      break;
    case 2:
      s.alphas = alpha_list({2, 0, -1, -1.8, -2.5});
      s.snapshot_nodes = n5000;
      break;
    case 3:
      s.alphas = alpha_list({-3, -2.5, -2.1, -1.8, -1.4, -1, -0.5, 0, 1, 2});
      s.snapshot_nodes = {1000, 2000, 3000, 4000, 5000};
      break;
    case 5:
      s.alphas = alpha_list({2, -0.1, -0.5, -2});
      s.snapshot_nodes = n5000;
      break;
    case 6:
      s.alphas = alpha_list({5, 2, 1, 0, -1, -2, -2.5});
      s.snapshot_nodes = n5000;
      s.compute_metrics = false;
      break;
    case 7:
    case 10:
      s.alphas = alpha_grid;
      s.snapshot_nodes = n5000;
      break;
    case 8:
      s.alphas = alpha_list({2, 0, -1, -1.8, -2.5});
      s.snapshot_nodes = detail::size_ladder();
      break;
    case 9:
      s.alphas = alpha_list({-2.5, -1, 0, 1, 2});
      s.snapshot_nodes = n5000;
      break;
    default:
      throw InvalidConfig("figure id must be in 1.." + std::to_string(kFigureCount) + ", got " +
                          std::to_string(figure));
  }
  return s;
}

// Tables for one figure from a finished sweep.
inline std::vector<FigureSeries> figure_series(int figure, const EnsembleResult& r) {
  using namespace detail;
  switch (figure) {
    case 1: return {{"d", versus_nodes(r, {{"d", "d"}}, "d", "dprime")}};
    case 2: return {{"p_of_j", distribution_figure(r, "p_of_j", "j", "p", true)}};
    case 3: {
      CsvTable t;
      t.header = {"alpha"};
      for (auto n : r.spec.snapshot_nodes) {
        t.header.push_back("d_N" + std::to_string(n));
        t.header.push_back("d_std_N" + std::to_string(n));
      }
      for (const auto& s : r.series) {
        std::vector<std::string> row{s.alpha.repr()};
        for (const auto& c : s.cells) push_stat(row, c.network, "d");
        t.add_row(std::move(row));
      }
      return {{"d_vs_alpha", std::move(t)}};
    }
    case 4: return {{"C", versus_nodes(r, {{"C", "C"}}, "C", "Cprime")}};
    case 5: return {{"P_of_k", distribution_figure(r, "P_of_k", "k", "P", true)}};
    case 6: {
      CsvTable t;
      t.header = {"M"};
      std::size_t longest = 0;
      for (const auto& s : r.series) {
        t.header.push_back(col("N", s.alpha));
        t.header.push_back(col("N_std", s.alpha));
        longest = std::max(longest, s.growth.size());
      }
      for (std::size_t m : growth_grid(longest)) {
        std::vector<std::string> row{cell(m)};
        for (const auto& s : r.series) {
          if (m <= s.growth.size()) {
            row.push_back(cell(s.growth[m - 1].mean_nodes));
            row.push_back(cell(s.growth[m - 1].std_nodes));
          } else {
            row.emplace_back();
            row.emplace_back();
          }
        }
        t.add_row(std::move(row));
      }
      return {{"growth", std::move(t)}};
    }
    case 7: return {{"connectivity", versus_alpha(r, {{"mean_k", "mean_k"}, {"f_k", "f_k"}})}};
    case 8: return {{"hubs", versus_nodes(r, {{"mean_k", "mean_k"}, {"k_max", "k_max"}})}};
    case 9: return {{"C_by_degree", distribution_figure(r, "C_by_degree", "k", "C", false)}};
    case 10: return {{"assortativity", versus_alpha(r, {{"r", "r"}}, true)}};
    default: throw InvalidConfig("figure id must be in 1.." + std::to_string(kFigureCount));
  }
}

}  // namespace goldnet
