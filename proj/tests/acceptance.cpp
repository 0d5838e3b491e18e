// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "goldnet/baseline.hpp"
#include "goldnet/ensemble.hpp"
#include "goldnet/goldbach.hpp"
#include "goldnet/metrics.hpp"
#include "goldnet/netbuild.hpp"
#include "oracles.hpp"

using namespace goldnet;

namespace {

int failures = 0;

__attribute__((format(printf, 1, 2))) std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

void verdict(int id, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

bool criterion_1() {
  const PrimeTable table(20'000);
  BuildConfig cfg;
  cfg.alpha = AlphaParam::finite(0);
  cfg.stop = MaxEven{10'000};
  cfg.seed = 1;
  const auto g = build(cfg, table);
  bool ok = g.num_edges() == 4997;
  std::uint64_t expected_n = 8;
  for (const auto& e : g.edges()) {
    ok = ok && e.n == expected_n && e.p + e.q == e.n && e.p < e.q && oracle::trial_prime(e.p) &&
         oracle::trial_prime(e.q);
    expected_n += 2;
  }
  try {
    const auto s = g.to_simple_graph();  // rejects loops and duplicate links
    ok = ok && s.num_edges() == g.num_edges();
  } catch (const Error&) {
    ok = false;
  }
  verdict(1, ok, strf("M=%zu N=%zu", g.num_edges(), g.num_nodes()));
  return ok;
}

bool matches_oracles(const oracle::MatrixGraph& m) {
  const auto edges = m.edges();
  const SimpleGraph g(m.n, edges);
  const auto hist = oracle::pair_histogram(oracle::floyd_warshall(m));
  bool ok = true;
  if (hist.empty()) {
    try {
      shortest_distance_stats(g);
      ok = false;
    } catch (const DegenerateGraph&) {
    }
  } else {
    ok = shortest_distance_stats(g).pair_counts == hist;
  }
  const auto tri = oracle::triangle_counts(m);
  ok = ok && triangles_per_node(g) == tri;
  double c = 0;
  for (std::size_t i = 0; i < m.n; ++i) {
    const double k = static_cast<double>(m.degree(i));
    if (k >= 2) c += static_cast<double>(tri[i]) / (k * (k - 1) / 2);
  }
  ok = ok && std::abs(clustering(g).C - c / static_cast<double>(m.n)) < 1e-12;
  return ok;
}

bool criterion_2() {
  const PrimeTable table(10'000);
  std::size_t mismatched_n = 0;
  for (std::uint64_t n = 8; n <= 10'000; n += 2) {
    const auto d = decompose(table, n);
    const auto brute = oracle::goldbach_pairs(n);
    bool same = d.pairs.size() == brute.size();
    for (std::size_t i = 0; same && i < brute.size(); ++i) {
      same = d.pairs[i].p == brute[i].p && d.pairs[i].q == brute[i].q;
    }
    mismatched_n += !same;
  }
  Rng rng(2024);
  std::size_t mismatched_graphs = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + rng.below(7);
    mismatched_graphs += !matches_oracles(oracle::random_graph(n, 0.1 + 0.8 * rng.uniform01(), rng));
  }
  const bool ok = mismatched_n == 0 && mismatched_graphs == 0;
  verdict(2, ok, strf("decomposition mismatches=%zu graph mismatches=%zu/1000", mismatched_n, mismatched_graphs));
  return ok;
}

bool criterion_3() {
  const PrimeTable table(100);
  const auto d = decompose(table, 24);
  const SelectionWeights w(d, AlphaParam::finite(1));
  constexpr int draws = 100'000;
  std::vector<int> hits(d.pairs.size(), 0);
  Rng rng(3);
  for (int i = 0; i < draws; ++i) ++hits[w.select(rng.uniform01())];
  const double expected[] = {14.0 / 26, 10.0 / 26, 2.0 / 26};
  bool ok = d.pairs.size() == 3 && d.pairs[0].p == 5 && d.pairs[1].p == 7 && d.pairs[2].p == 11;
  std::string detail;
  for (std::size_t i = 0; ok && i < 3; ++i) {
    const double freq = static_cast<double>(hits[i]) / draws;
    const double sigma = std::sqrt(expected[i] * (1 - expected[i]) / draws);
    const double z = (freq - expected[i]) / sigma;
    ok = std::abs(z) <= 3;
    detail += strf("(%u,%u) f=%.5f z=%+.2f ", d.pairs[i].p, d.pairs[i].q, freq, z);
  }
  verdict(3, ok, detail);
  return ok;
}

const std::vector<std::size_t> kFitSnapshots{250, 500, 1000, 2000, 4000};

EnsembleResult main_sweep() {
  SweepSpec s;
  for (double a : {-2.5, -2.1, -1.8, -1.4, -1.0, 0.0, 1.0, 2.0}) s.alphas.push_back(AlphaParam::finite(a));
  s.snapshot_nodes = {250, 500, 1000, 2000, 4000, 5000};
  s.realizations = 20;
  s.master_seed = 20240601;
  s.with_baseline = true;
  return run_sweep(s);
}

double mean_at(const EnsembleResult& r, double alpha, std::size_t n, const std::string& field) {
  const auto& cell = r.at(alpha).cell_at(n);
  if (!cell.network) return std::nan("");
  return cell.network->mean(field);
}

oracle::Fit fit_d(const EnsembleResult& r, double alpha, bool log_n) {
  std::vector<double> x, y;
  for (std::size_t n : kFitSnapshots) {
    x.push_back(log_n ? std::log(static_cast<double>(n)) : static_cast<double>(n));
    y.push_back(mean_at(r, alpha, n, "d"));
  }
  return oracle::linear_fit(x, y);
}

void criterion_4(const EnsembleResult& r) {
  const auto fit = fit_d(r, 0, true);
  bool clustered = true;
  std::string cs;
  for (const auto& cell : r.at(0.0).cells) {
    const bool above = cell.network && cell.baseline && cell.network->mean("C") > cell.baseline->mean("C");
    clustered = clustered && above;
    if (cell.network && cell.baseline) {
      cs += strf(" N=%zu:%.4f/%.4f", cell.snapshot, cell.network->mean("C"), cell.baseline->mean("C"));
    }
  }
  verdict(4, fit.r2 >= 0.97 && clustered, strf("R2(d~lnN)=%.4f; C/C':%s", fit.r2, cs.c_str()));
}

void criterion_5(const EnsembleResult& r) {
  const auto lin = fit_d(r, -2.5, false);
  const auto log = fit_d(r, -2.5, true);
  const double ratio = mean_at(r, -2.5, 4000, "d") / mean_at(r, 0, 4000, "d");
  verdict(5, lin.r2 > log.r2 && ratio >= 3.0,
          strf("R2(d~N)=%.4f R2(d~lnN)=%.4f d(-2.5)/d(0) at N=4000 = %.3f", lin.r2, log.r2, ratio));
}

void criterion_6(const EnsembleResult& r) {
  const std::vector<double> alphas{-2.5, -2.1, -1.8, -1.4, -1.0, 0.0};
  std::vector<double> d;
  for (double a : alphas) d.push_back(mean_at(r, a, 4000, "d"));
  bool monotone = true;
  std::size_t biggest = 0;
  std::string ds;
  for (std::size_t i = 0; i < d.size(); ++i) ds += strf(" %g:%.3f", alphas[i], d[i]);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    monotone = monotone && d[i + 1] <= d[i];
    if (d[i] - d[i + 1] > d[biggest] - d[biggest + 1]) biggest = i;
  }
  // jumps (-2.1 -> -1.8) and (-1.8 -> -1.4) lie inside the bracket
  const bool bracketed = biggest == 1 || biggest == 2;
  verdict(6, monotone && bracketed,
          strf("monotone=%s largest jump %g -> %g;%s", monotone ? "yes" : "no", alphas[biggest], alphas[biggest + 1], ds.c_str()));
}

void criterion_7(const EnsembleResult& r) {
  const auto& neg = r.at(-1.0).cell_at(5000).network;
  const auto& pos = r.at(1.0).cell_at(5000).network;
  const bool ok = neg && pos && neg->mean("r") > neg->std("r") && pos->mean("r") < -pos->std("r");
  verdict(7, ok,
          neg && pos ? strf("r(-1)=%+.4f±%.4f r(+1)=%+.4f±%.4f", neg->mean("r"), neg->std("r"),
                                   pos->mean("r"), pos->std("r"))
                     : std::string("N=5000 not reached"));
}

void criterion_8(const EnsembleResult& r) {
  const double growth = mean_at(r, 2, 4000, "k_max") / mean_at(r, 2, 1000, "k_max");
  const auto& cells = r.at(-2.5).cells;
  const auto reached = std::find_if(cells.rbegin(), cells.rend(), [](const CellResult& c) { return c.network.has_value(); });
  bool flat = false;
  std::string detail = strf("alpha=2 k_m(4000)/k_m(1000)=%.3f", growth);
  if (reached != cells.rend()) {
    const double km = reached->network->mean("k_max"), mk = reached->network->mean("mean_k");
    flat = km <= 3 * mk;
    detail += strf("; alpha=-2.5 N=%zu k_m=%.2f <k>=%.3f", reached->snapshot, km, mk);
  }
  verdict(8, growth >= 2 && flat, detail);
}

void criterion_9() {
  SweepSpec s;
  s.alphas = {AlphaParam::finite(2), AlphaParam::finite(-2)};
  s.snapshot_nodes = {5000};
  s.realizations = 20;
  s.master_seed = 909;
  s.compute_metrics = false;
  const auto r = run_sweep(s);
  const auto& hi = r.at(2.0).growth;
  const auto& lo = r.at(-2.0).growth;
  std::size_t compared = 0, violations = 0, first_bad = 0;
  for (std::size_t m = 100; m <= std::min(hi.size(), lo.size()); ++m) {
    ++compared;
    if (hi[m - 1].mean_nodes < lo[m - 1].mean_nodes) {
      if (!violations) first_bad = m;
      ++violations;
    }
  }
  verdict(9, compared > 0 && violations == 0,
          strf("compared M in [100, %zu]: violations=%zu%s", 99 + compared, violations,
                      (violations ? strf(" first at M=%zu", first_bad) : std::string()).c_str()));
}

void criterion_10(const EnsembleResult& r) {
  const double k_neg = mean_at(r, -2.5, 5000, "mean_k"), k_zero = mean_at(r, 0, 5000, "mean_k");
  const double f_neg = mean_at(r, -2.5, 5000, "f_k"), f_zero = mean_at(r, 0, 5000, "f_k");
  verdict(10, k_neg > k_zero && f_zero > f_neg,
          strf("<k>(-2.5)=%.3f <k>(0)=%.3f f(0)=%.3f f(-2.5)=%.3f", k_neg, k_zero, f_zero, f_neg));
}

void criterion_11() {
  const auto base = cli::scratch("acceptance_repro");
  const std::vector<std::pair<std::string, std::string>> commands{
      {"build", "build --alpha -1.8 --target-nodes 1000 --seed 11 --baseline --out "},
      {"build_json", "build --alpha +inf --max-even 20000 --seed 11 --format json --out "},
      {"sweep", "sweep --alphas -2.5,0,2 --snapshots 200,800 --realizations 3 --seed 11 --out "},
      {"figure", "figure 8 --snapshots 300,600 --realizations 2 --seed 11 --out "},
  };
  bool ok = true;
  std::string detail;
  for (const auto& [name, args] : commands) {
    const auto dir = base / name;
    cli::fs::create_directories(dir);
    std::string why;
    const bool same = cli::reproducible(args + dir.string(), dir, &why);
    ok = ok && same;
    detail += strf(" %s:%s", name.c_str(), same ? "identical" : why.c_str());
  }
  verdict(11, ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  const auto sweep = main_sweep();
  criterion_4(sweep);
  criterion_5(sweep);
  criterion_6(sweep);
  criterion_7(sweep);
  criterion_8(sweep);
  criterion_9();
  criterion_10(sweep);
  criterion_11();
  std::printf("%d of 11 criteria failed\n", failures);
  return failures ? 1 : 0;
}
