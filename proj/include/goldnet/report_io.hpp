#pragma once

#include <string>

#include "json.hpp"

#include "goldnet/csv.hpp"
#include "goldnet/metrics.hpp"

namespace goldnet {

template <typename Map>
nlohmann::ordered_json distribution_json(const Map& m) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [x, v] : m) arr.push_back({x, v});
  return arr;
}

// Flat document: scalars as keys, distributions as [x, value] pairs.
inline nlohmann::ordered_json to_json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["N"] = r.N;
  j["M"] = r.M;
  j["d"] = r.d;
  j["reachable_fraction"] = r.reachable_fraction;
  j["giant_component_size"] = r.giant_component_size;
  j["C"] = r.C;
  j["clustering_convention"] = std::string(to_string(r.clustering_convention));
  j["mean_k"] = r.mean_k;
  j["f_k"] = r.f_k;
  j["k_max"] = r.k_max;
  j["r"] = r.r ? nlohmann::ordered_json(*r.r) : nlohmann::ordered_json(nullptr);
  j["p_of_j"] = distribution_json(r.p_of_j);
  j["P_of_k"] = distribution_json(r.P_of_k);
  j["C_by_degree"] = distribution_json(r.C_by_degree);
  return j;
}

inline const std::vector<std::string>& report_scalar_columns() {
  static const std::vector<std::string> cols{"N",   "M",      "d",   "reachable_fraction", "giant_component_size",
                                             "C",   "mean_k", "f_k", "k_max",              "r"};
  return cols;
}

inline std::vector<std::string> report_scalar_cells(const MetricsReport& r) {
  return {cell(r.N),      cell(r.M),   cell(r.d),     cell(r.reachable_fraction), cell(r.giant_component_size),
          cell(r.C),      cell(r.mean_k), cell(r.f_k), cell(r.k_max),           r.r ? cell(*r.r) : std::string()};
}

// One header row plus one row per report.
inline CsvTable report_rows(std::span<const MetricsReport> reports) {
  CsvTable t;
  t.header = report_scalar_columns();
  for (const auto& r : reports) t.add_row(report_scalar_cells(r));
  return t;
}

// Two-column "x,value" table for a distribution.
template <typename Map>
CsvTable distribution_table(const Map& m, std::string x_name, std::string value_name) {
  CsvTable t;
  t.header = {std::move(x_name), std::move(value_name)};
  for (const auto& [x, v] : m) t.add_row({std::to_string(x), cell(v)});
  return t;
}

}  // namespace goldnet
