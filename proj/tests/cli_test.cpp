#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cli_support.hpp"
#include "goldnet/format.hpp"

namespace {

using cli::fs::path;

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : lines_of(text)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

// header/row widths agree and every non-empty cell is a plain number
void check_csv(const std::string& text) {
  const auto rows = parse_csv(text);
  ASSERT_FALSE(rows.empty());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), rows[0].size()) << "row " << i;
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      if (rows[i][c].empty() || rows[i][c] == "+inf" || rows[i][c] == "-inf") continue;
      double v;
      ASSERT_TRUE(goldnet::parse_double(rows[i][c], v)) << rows[i][c];
    }
  }
}

TEST(Cli, BuildFirstEvenNumber) {
  const auto dir = cli::scratch("build8");
  ASSERT_EQ(cli::run("build --alpha 0 --max-even 8 --seed 1 --out " + dir.string()), 0);
  const auto edges = lines_of(goldnet::read_file(dir / "edges/goldbach-net.txt"));
  ASSERT_EQ(edges.size(), 2u);
  EXPECT_EQ(edges[0], "# goldbach-net alpha=0 seed=1 M=1 N=2");
  EXPECT_EQ(edges[1], "3 5 8");
  EXPECT_TRUE(cli::fs::exists(dir / "report.csv"));
  EXPECT_TRUE(cli::fs::exists(dir / "manifest.json"));
}

TEST(Cli, MinusInfinityIsSeedIndependent) {
  const auto a = cli::scratch("neg_a");
  const auto b = cli::scratch("neg_b");
  ASSERT_EQ(cli::run("build --alpha -inf --max-even 12 --seed 1 --out " + a.string()), 0);
  ASSERT_EQ(cli::run("build --alpha -inf --max-even 12 --seed 2 --out " + b.string()), 0);
  const auto ea = lines_of(goldnet::read_file(a / "edges/goldbach-net.txt"));
  const auto eb = lines_of(goldnet::read_file(b / "edges/goldbach-net.txt"));
  EXPECT_EQ(std::vector<std::string>(ea.begin() + 1, ea.end()),
            (std::vector<std::string>{"3 5 8", "3 7 10", "5 7 12"}));
  EXPECT_EQ(std::vector<std::string>(ea.begin() + 1, ea.end()), std::vector<std::string>(eb.begin() + 1, eb.end()));
}

TEST(Cli, BuildIsReproducible) {
  const auto dir = cli::scratch("repro_build");
  std::string why;
  EXPECT_TRUE(cli::reproducible("build --alpha 2 --target-nodes 100 --seed 7 --baseline --out " + dir.string(), dir, &why))
      << why;
  EXPECT_TRUE(cli::fs::exists(dir / "edges/gnm.txt"));
  check_csv(goldnet::read_file(dir / "report.csv"));
  check_csv(goldnet::read_file(dir / "report_p_of_j.csv"));
}

TEST(Cli, BuildJsonReport) {
  const auto dir = cli::scratch("json_build");
  ASSERT_EQ(cli::run("build --alpha 1 --target-nodes 200 --format json --clustering paper --out " + dir.string()), 0);
  const auto j = nlohmann::json::parse(goldnet::read_file(dir / "report.json"));
  EXPECT_GE(j["N"].get<int>(), 200);
  EXPECT_EQ(j["clustering_convention"], "paper");
  double psum = 0;
  for (const auto& bin : j["p_of_j"]) psum += bin[1].get<double>();
  EXPECT_NEAR(psum, 1.0, 1e-9);
}

TEST(Cli, FlagErrorsExitTwo) {
  const auto dir = cli::scratch("flags");
  const std::string out = " --out " + dir.string();
  EXPECT_EQ(cli::run("build --alpha 0 --max-even 9" + out), 2);
  EXPECT_EQ(cli::run("build --alpha zero --max-even 10" + out), 2);
  EXPECT_EQ(cli::run("build --alpha 0" + out), 2);
  EXPECT_EQ(cli::run("build --alpha 0 --max-even 10 --target-nodes 5" + out), 2);
  EXPECT_EQ(cli::run("build --alpha 0 --max-even 10 --clustering other" + out), 2);
  EXPECT_EQ(cli::run("sweep --alphas 0 --snapshots 100,50" + out), 2);
  EXPECT_EQ(cli::run("sweep --alphas 0 --snapshots 100 --realizations 0" + out), 2);
  EXPECT_EQ(cli::run("figure 11" + out), 2);
  EXPECT_EQ(cli::run("frobnicate" + out), 2);
}

TEST(Cli, RuntimeErrorsExitThree) {
  const auto dir = cli::scratch("runtime");
  EXPECT_EQ(cli::run("build --alpha -2.5 --target-nodes 5000 --max-even-cap 1000 --out " + dir.string()), 3);
}

TEST(Cli, SweepOneCellDocument) {
  const auto dir = cli::scratch("sweep1");
  ASSERT_EQ(cli::run("sweep --alphas 0 --realizations 1 --snapshots 100 --out " + dir.string()), 0);
  const auto j = nlohmann::json::parse(goldnet::read_file(dir / "sweep.json"));
  ASSERT_EQ(j["series"].size(), 1u);
  ASSERT_EQ(j["series"][0]["cells"].size(), 1u);
  const auto& cell = j["series"][0]["cells"][0]["network"];
  EXPECT_EQ(cell["realizations"], 1);
  EXPECT_EQ(cell["scalars"]["d"]["std"], 0.0);
  EXPECT_FALSE(j["seed_rule"].get<std::string>().empty());
}

TEST(Cli, SweepAcrossTransitionIsReproducible) {
  const auto dir = cli::scratch("sweep2");
  std::string why;
  EXPECT_TRUE(cli::reproducible(
      "sweep --alphas -2.5,-1.8 --alpha 1 --realizations 2 --snapshots 100,300 --format csv --seed 3 --out " +
          dir.string(),
      dir, &why))
      << why;
  const auto rows = parse_csv(goldnet::read_file(dir / "sweep.csv"));
  EXPECT_EQ(rows.size(), 1u + 3 * 2);
  check_csv(goldnet::read_file(dir / "sweep.csv"));
}

TEST(Cli, FigureTwoColumnsSumToOne) {
  const auto dir = cli::scratch("fig2");
  ASSERT_EQ(cli::run("figure 2 --alphas 0,-2 --snapshots 300 --realizations 3 --out " + dir.string()), 0);
  const auto text = goldnet::read_file(dir / "fig2/p_of_j.csv");
  check_csv(text);
  const auto rows = parse_csv(text);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"j", "p_0", "n_0", "p_-2", "n_-2"}));
  for (std::size_t c : {1u, 3u}) {
    double sum = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) sum += std::stod(rows[r][c]);
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(Cli, FigureTenSigns) {
  const auto dir = cli::scratch("fig10");
  ASSERT_EQ(cli::run("figure 10 --alphas -2,2 --snapshots 1000 --realizations 4 --out " + dir.string()), 0);
  const auto rows = parse_csv(goldnet::read_file(dir / "fig10/assortativity.csv"));
  ASSERT_EQ(rows[0], (std::vector<std::string>{"alpha", "r", "r_std", "count"}));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_GT(std::stod(rows[1][1]), 0.0);  // alpha = -2
  EXPECT_LT(std::stod(rows[2][1]), 0.0);  // alpha = 2
}

TEST(Cli, FigureSixGrowthOrdering) {
  const auto dir = cli::scratch("fig6");
  ASSERT_EQ(cli::run("figure 6 --alphas 2,-2 --snapshots 1000 --realizations 3 --out " + dir.string()), 0);
  const auto rows = parse_csv(goldnet::read_file(dir / "fig6/growth.csv"));
  ASSERT_EQ(rows[0], (std::vector<std::string>{"M", "N_2", "N_std_2", "N_-2", "N_std_-2"}));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (std::stoul(rows[r][0]) < 100 || rows[r][1].empty() || rows[r][3].empty()) continue;
    EXPECT_GE(std::stod(rows[r][1]), std::stod(rows[r][3])) << rows[r][0];
  }
}

TEST(Cli, FigureUnreachedSnapshotLeavesEmptyCells) {
  const auto dir = cli::scratch("fig1_empty");
  ASSERT_EQ(cli::run("figure 1 --alphas -2.5 --snapshots 100,3000 --realizations 2 --max-even-cap 10000 --out " +
                     dir.string()),
            0);
  const auto rows = parse_csv(goldnet::read_file(dir / "fig1/d.csv"));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_FALSE(rows[1][1].empty());
  EXPECT_TRUE(rows[2][1].empty());
}

}  // namespace
