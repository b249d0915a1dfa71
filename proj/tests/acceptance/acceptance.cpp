// Acceptance runner: one [PASS]/[FAIL] line per criterion.
//
//   semiot_acceptance          run every criterion
//   semiot_acceptance AC4 AC7  run the named criteria
//
// Exit status is 0 only when every selected criterion passes.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "semiot/brenier.hpp"
#include "semiot/clustering.hpp"
#include "semiot/exact_lp.hpp"
#include "semiot/io/bench.hpp"
#include "semiot/io/cli.hpp"
#include "semiot/io/generate.hpp"
#include "semiot/io/point_io.hpp"
#include "semiot/io/result_io.hpp"
#include "semiot/sinkhorn.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace semiot;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("violated: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

struct Criterion {
  std::string id;
  std::string title;
  double budget_seconds;
  std::function<void(Outcome&)> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double median_cost(const KernelMatrix& c) {
  std::vector<double> v(c.entries().data().begin(), c.entries().data().end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

constexpr int kOracleInstances = 50;

// --- AC1 ---------------------------------------------------------------------

void oracle_equality(Outcome& o) {
  int equal = 0, binary = 0, converged = 0, fixed_converged = 0, fixed_equal = 0;
  for (int seed = 1; seed <= kOracleInstances; ++seed) {
    const auto [src, tgt] = fixture::far_targets(static_cast<std::uint64_t>(seed), 10);
    const double lp = lp_solve(cost_matrix(src, tgt), src.masses(), tgt.masses()).cost;

    BrenierConfig cfg;
    cfg.schedule = StepSchedule::diminishing;
    const auto r = solve(src, tgt, cfg);
    if (!r.converged) continue;
    ++converged;
    if (std::abs(r.cost - lp) <= 1e-6 * lp) ++equal;
    bool is_binary = true;
    for (std::size_t i = 0; i < src.size(); ++i) {
      int ones = 0;
      for (std::size_t j = 0; j < tgt.size(); ++j) {
        if (r.plan(i, j) == 0.1) ++ones;
        else if (r.plan(i, j) != 0.0) is_binary = false;
      }
      if (ones != 1) is_binary = false;
    }
    if (is_binary) ++binary;

    const auto f = solve(src, tgt);
    if (f.converged) {
      ++fixed_converged;
      if (std::abs(f.cost - lp) <= 1e-6 * lp) ++fixed_equal;
    }
  }
  o.require(converged == kOracleInstances, fmt("all %d runs converge (got %d)", kOracleInstances, converged));
  o.require(equal == converged, fmt("cost equals lp within 1e-6 relative (%d of %d)", equal, converged));
  o.require(binary == converged, fmt("binary plan with one 0.1 per row (%d of %d)", binary, converged));
  o.note(fmt("diminishing schedule: %d/%d converged, %d equal, %d binary", converged, kOracleInstances, equal, binary));
  o.note(fmt("fixed schedule (diagnostic): %d/%d converged, %d of those equal lp", fixed_converged, kOracleInstances,
             fixed_equal));
}

// --- AC2 ---------------------------------------------------------------------

void sinkhorn_dominance(Outcome& o) {
  const double fractions[] = {0.01, 0.1, 1.0};
  for (double frac : fractions) {
    int compared = 0, unconverged = 0, underflow = 0, below = 0, not_strict = 0;
    double min_gap = INFINITY;
    for (int seed = 1; seed <= kOracleInstances; ++seed) {
      const auto [src, tgt] = fixture::far_targets(static_cast<std::uint64_t>(seed), 10);
      const auto c = cost_matrix(src, tgt);
      const double lp = lp_solve(c, src.masses(), tgt.masses()).cost;
      SinkhornConfig cfg;
      cfg.regularization = frac * median_cost(c);
      cfg.marginal_tolerance = 1e-10;
      cfg.max_iters = 100000;
      const auto s = sinkhorn_solve(c, src.masses(), tgt.masses(), cfg);
      if (s.failed_zero_denominator) {
        ++underflow;
        continue;
      }
      if (!s.converged) {
        ++unconverged;
        continue;
      }
      ++compared;
      const double gap = s.cost - lp;
      min_gap = std::min(min_gap, gap);
      if (gap < -1e-9) ++below;
      if (!(gap > 1e-6)) ++not_strict;
    }
    o.require(underflow == 0, fmt("no underflow at %.2f*median(C) (%d)", frac, underflow));
    o.require(below == 0, fmt("sinkhorn >= lp at %.2f*median(C) (%d below)", frac, below));
    o.require(not_strict == 0, fmt("gap > 1e-6 at %.2f*median(C) (%d instances not strict)", frac, not_strict));
    o.note(fmt("lambda=%.2f*median(C): %d compared, %d unconverged after 1e5 rounds, min gap %.3g", frac, compared,
               unconverged, min_gap));
  }
}

// --- AC3 ---------------------------------------------------------------------

void zero_denominator(Outcome& o) {
  const auto [src, tgt] = fixture::far_targets(3);
  const auto c = cost_matrix(src, tgt);
  o.note(fmt("150x2 instance, max cost %.1f", c.entries().max_coeff()));
  o.require(c.entries().max_coeff() >= 1e3, "costs reach the thousands");
  SinkhornConfig cfg;
  cfg.regularization = 0.05;
  const auto naive = sinkhorn_solve(c, src.masses(), tgt.masses(), cfg);
  o.require(naive.failed_zero_denominator, "naive path reports failed_zero_denominator");
  o.require(!naive.converged, "failed run is not converged");
  cfg.stabilized = true;
  const auto stable = sinkhorn_solve(c, src.masses(), tgt.masses(), cfg);
  o.require(!stable.failed_zero_denominator && std::isfinite(stable.cost), "stabilized path completes");
  o.note(fmt("stabilized: %zu rounds, converged=%d, row residual %.3g", stable.iterations, stable.converged,
             stable.row_residual));
}

// --- AC4 ---------------------------------------------------------------------

void marginal_invariant(Outcome& o) {
  std::size_t iterates = 0, violations = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto [src, tgt] = fixture::far_targets(seed);
    solve(src, tgt, {}, [&, &src = src](const IterationView& it) {
      ++iterates;
      if (extract_plan(it.assignment, src.masses()).row_residual(src.masses()) > 1e-12) ++violations;
    });
  }
  o.require(violations == 0, fmt("%zu row-marginal violations", violations));
  o.note(fmt("%zu iterates checked over 20 runs", iterates));
}

// --- AC5 ---------------------------------------------------------------------

void gradient_check(Outcome& o) {
  Rng rng(2024);
  int checked = 0, rejected = 0;
  double worst = 0.0;
  while (checked < 100) {
    const Matrix xs = oracle::random_points(rng, 12, 2), xt = oracle::random_points(rng, 3, 2);
    const auto ps = oracle::random_masses(rng, 12), pt = oracle::random_masses(rng, 3);
    std::vector<double> h{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
    const double margin = oracle::tie_margin(oracle::inner_products(xs, xt), h);
    if (margin < 1e-4) {
      ++rejected;
      continue;
    }
    ++checked;
    const auto m = inner_product_matrix(DiscreteMeasure(xs, ps), DiscreteMeasure(xt, pt));
    const HeightVector hv(h);
    const auto a = evaluate_envelope(m, hv, 1e-9);
    const auto g = gradient(cell_weights(a, ps), pt);
    const double e0 = energy(a, ps, pt, hv);
    const double delta = margin / 4.0;
    for (std::size_t j = 0; j < 3; ++j) {
      auto hp = h;
      hp[j] += delta;
      const HeightVector hpv(hp);
      const double fd = (energy(evaluate_envelope(m, hpv, 1e-9), ps, pt, hpv) - e0) / delta;
      worst = std::max(worst, std::abs(fd - g[j]));
    }
  }
  o.require(worst <= 1e-9, fmt("max |fd - g| = %.3g exceeds 1e-9", worst));
  o.note(fmt("100 tie-free height vectors (%d near-tie draws skipped), max |fd - g| = %.3g", rejected, worst));
}

// --- AC6 ---------------------------------------------------------------------

void shift_and_mean(Outcome& o) {
  Rng rng(606);
  double worst_shift = 0.0, worst_drift = 0.0;
  std::size_t steps = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto src = DiscreteMeasure::uniform(oracle::random_points(rng, 7, 2));
    const auto tgt = DiscreteMeasure::uniform(oracle::random_points(rng, 3, 2));
    const auto m = inner_product_matrix(src, tgt);
    const HeightVector h({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const double e = energy(evaluate_envelope(m, h, 1e-9), src.masses(), tgt.masses(), h);
    for (double c : {1.0, -1.0, 1e3, -1e3}) {
      const auto hs = h.shifted(c);
      worst_shift = std::max(worst_shift,
                             std::abs(energy(evaluate_envelope(m, hs, 1e-9), src.masses(), tgt.masses(), hs) - e));
    }

    BrenierConfig cfg;
    cfg.max_steps = 1000;
    cfg.tolerance = 1e-8;
    double lo = INFINITY, hi = -INFINITY;
    const auto r = solve(src, tgt, cfg, [&](const IterationView& it) {
      const double mean = std::accumulate(it.heights.begin(), it.heights.end(), 0.0) / 3.0;
      lo = std::min(lo, mean);
      hi = std::max(hi, mean);
    });
    steps += r.iterations;
    worst_drift = std::max(worst_drift, hi - lo);
  }
  o.require(worst_shift <= 1e-9, fmt("energy shift error %.3g", worst_shift));
  o.require(worst_drift <= 1e-10, fmt("mean drift %.3g", worst_drift));
  o.require(steps == 10000, fmt("each run performs 1000 updates (total %zu)", steps));
  o.note(fmt("max |E(h+c1) - E(h)| = %.3g, max mean drift = %.3g over %zu updates", worst_shift, worst_drift, steps));
}

// --- AC7 ---------------------------------------------------------------------

void lp_oracle(Outcome& o) {
  Rng rng(707);
  int checked = 0, mismatched = 0;
  double worst = 0.0;
  while (checked < 200) {
    const std::size_t ns = 1 + rng.index(6), nt = 1 + rng.index(6);
    if (ns * nt > 12) continue;
    const int g = 1 + static_cast<int>(rng.index(4));
    auto draw = [&](std::size_t parts) {
      std::vector<double> out(parts, 0.0);
      for (int u = 0; u < g; ++u) out[rng.index(parts)] += 1.0;
      for (double& x : out) x /= g;
      return out;
    };
    const auto ps = draw(ns), pt = draw(nt);
    const auto c = cost_matrix(DiscreteMeasure(oracle::random_points(rng, ns, 2), std::vector<double>(ns, 1.0)),
                               DiscreteMeasure(oracle::random_points(rng, nt, 2), std::vector<double>(nt, 1.0)));
    const double diff = std::abs(lp_solve(c, ps, pt).cost -
                                 brute_force_solve(c, ps, pt, static_cast<std::size_t>(g)).cost);
    worst = std::max(worst, diff);
    if (diff > 1e-9) ++mismatched;
    ++checked;
  }
  o.require(mismatched == 0, fmt("%d instances disagree", mismatched));
  o.note(fmt("%d micro instances, max |lp - brute force| = %.3g", checked, worst));
}

// --- AC8 ---------------------------------------------------------------------

void clustering_reproduction(Outcome& o) {
  io::MixtureParams p;
  p.components = 5;
  p.count = 250;
  const auto sample = io::generate_gaussian_mixture(p, 7);
  ClusterConfig cfg;
  cfg.k = 5;
  cfg.outer_steps = 10;
  cfg.seed = 1;
  const auto state = cluster(sample.measure, cfg);
  const double radius = 3.0 * p.sigma / std::sqrt(50.0);
  double worst = 0.0;
  for (std::size_t j = 0; j < 5; ++j) {
    double best = INFINITY;
    for (std::size_t l = 0; l < 5; ++l)
      best = std::min(best, std::sqrt(squared_distance(state.centers.point(j), sample.means.row(l))));
    worst = std::max(worst, best);
  }
  o.require(worst <= radius, fmt("farthest center %.3f from its mean, limit %.3f", worst, radius));

  std::vector<std::size_t> sizes(5, 0);
  for (std::size_t a : state.assignments) ++sizes[a];
  const double slack = state.steps.back().inner_residual * 250.0;
  bool balanced = true;
  std::string size_text;
  for (std::size_t s : sizes) {
    balanced = balanced && std::abs(static_cast<double>(s) - 50.0) <= slack + 1e-9;
    size_text += std::to_string(s) + " ";
  }
  o.require(balanced, "cluster sizes within 50 +- inner residual");
  o.require(state.cost_trace.back() < state.cost_trace.front(), "final cost below initial cost");
  o.note(fmt("max center error %.3f (limit %.3f); sizes %s; cost %.4g -> %.4g", worst, radius, size_text.c_str(),
             state.cost_trace.front(), state.cost_trace.back()));
}

// --- AC9 ---------------------------------------------------------------------

void center_gradient_check(Outcome& o) {
  Rng rng(909);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix xs = oracle::random_points(rng, 8, 2, -5, 5), xc = oracle::random_points(rng, 3, 2, -5, 5);
    Matrix t(8, 3);
    for (double& x : t.data()) x = rng.uniform();
    const TransportPlan plan(t);
    const auto g = center_gradient(plan, DiscreteMeasure::uniform(xs), DiscreteMeasure::uniform(xc));
    const double h = 1e-5;
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t d = 0; d < 2; ++d) {
        Matrix up = xc, down = xc;
        up(j, d) += h;
        down(j, d) -= h;
        const double fd = (oracle::fixed_cost(t, xs, up) - oracle::fixed_cost(t, xs, down)) / (2 * h);
        worst = std::max(worst, std::abs(fd - g(j, d)) / std::max(1.0, std::abs(g(j, d))));
      }
    }
  }
  o.require(worst <= 1e-6, fmt("relative gradient error %.3g", worst));

  io::MixtureParams p;
  p.components = 4;
  p.count = 120;
  int increases = 0, steps = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ClusterConfig cfg;
    cfg.k = 4;
    cfg.seed = seed;
    cfg.center_update = CenterUpdate::barycenter;
    for (const auto& step : cluster(io::generate_gaussian_mixture(p, seed).measure, cfg).steps) {
      ++steps;
      if (step.cost_after_update > step.cost * (1 + 1e-12)) ++increases;
    }
  }
  o.require(increases == 0, fmt("%d barycenter steps increased the fixed-plan cost", increases));
  o.note(fmt("50 instances, max relative error %.3g; %d barycenter steps checked", worst, steps));
}

// --- AC10 --------------------------------------------------------------------

void relative_timing(Outcome& o) {
  const auto [src, tgt] = fixture::far_targets(3);
  io::BenchOptions opt;
  opt.repetitions = 5;
  opt.sinkhorn.regularization = 0.05;
  opt.sinkhorn.stabilized = true;
  const auto rows = io::run_bench(src, tgt, opt);
  const double tb = rows[0].seconds, ts = rows[1].seconds;
  o.require(ts < tb, fmt("stabilized sinkhorn %.3g s is not faster than brenier %.3g s", ts, tb));
  o.require(tb < 30.0 && ts < 30.0, "both under 30 s");
  o.note(fmt("lambda=0.05: brenier %.3g s (converged=%d), sinkhorn %.3g s (converged=%d)", tb, rows[0].converged, ts,
             rows[1].converged));

  const double med = median_cost(cost_matrix(src, tgt));
  for (double frac : {0.1, 1.0}) {
    opt.sinkhorn.regularization = frac * med;
    const auto alt = io::run_bench(src, tgt, opt);
    o.note(fmt("lambda=%.2f*median(C) (diagnostic): brenier %.3g s, sinkhorn %.3g s (converged=%d)", frac,
               alt[0].seconds, alt[1].seconds, alt[1].converged));
  }
}

// --- AC11 --------------------------------------------------------------------

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = io::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/// Runs the full pipeline into `dir`; returns the files to compare across reruns.
std::map<std::string, std::string> pipeline(const fs::path& dir, Outcome& o) {
  const auto p = [&](const std::string& name) { return (dir / name).string(); };
  fs::create_directories(dir);
  auto expect = [&](const CliRun& r, int code, const std::string& what) {
    o.require(r.code == code, fmt("%s exits %d (got %d)", what.c_str(), code, r.code));
  };

  expect(cli({"gen", "gaussian_mixture", "--k", "2", "--n", "10", "--seed", "4", "-o", p("src10.csv"), "--means",
              p("tgt10.csv")}),
         0, "gen 10x2");
  expect(cli({"gen", "gaussian_mixture", "--k", "2", "--n", "150", "--seed", "3", "-o", p("src150.csv")}), 0,
         "gen 150");
  expect(cli({"gen", "gaussian_mixture", "--k", "2", "--n", "2", "--seed", "1003", "--scale", "60", "-o",
              p("tgt150.json")}),
         0, "gen far targets");
  expect(cli({"gen", "gaussian_mixture", "--k", "5", "--n", "250", "--seed", "7", "-o", p("mix250.csv")}), 0,
         "gen 250");
  expect(cli({"gen", "uniform", "--n", "10", "--seed", "1", "-o", p("uni.csv")}), 0, "gen uniform");

  // Point files round-trip through both formats.
  for (const char* f : {"src10.csv", "tgt150.json", "uni.csv"}) {
    const auto m = io::read_points(p(f));
    const auto fmt_ = io::format_from_path(p(f));
    o.require(io::format_points(m, fmt_) == io::read_text(p(f)), std::string(f) + " re-serializes identically");
  }
  const auto uniform = io::read_points(p("uni.csv"));
  o.require(std::all_of(uniform.masses().begin(), uniform.masses().end(), [](double m) { return m == 0.1; }),
            "uniform masses are 0.1");

  expect(cli({"solve", "brenier", p("src10.csv"), p("tgt10.csv"), "-o", p("brenier.json")}), 0, "solve brenier");
  expect(cli({"solve", "lp", p("src10.csv"), p("tgt10.csv"), "-o", p("lp.json")}), 0, "solve lp");
  expect(cli({"solve", "sinkhorn", p("src10.csv"), p("tgt10.csv"), "--reg", "5", "-o", p("sinkhorn.json")}), 0,
         "solve sinkhorn --reg 5");
  expect(cli({"solve", "sinkhorn", p("src150.csv"), p("tgt150.json"), "--reg", "0.05", "-o", p("underflow.json")}), 2,
         "solve sinkhorn --reg 0.05 on 150x2");

  const auto src10 = io::read_points(p("src10.csv")), tgt10 = io::read_points(p("tgt10.csv"));
  const auto c10 = cost_matrix(src10, tgt10);
  for (const char* f : {"brenier.json", "lp.json", "sinkhorn.json", "underflow.json"}) {
    const auto doc = nlohmann::json::parse(io::read_text(p(f)));
    bool schema = doc.is_object();
    for (const char* key : {"method", "cost", "converged", "iterations", "residual", "plan", "elapsed_seconds", "config"})
      schema = schema && doc.contains(key);
    schema = schema && doc["method"].is_string() && doc["cost"].is_number() && doc["converged"].is_boolean() &&
             doc["iterations"].is_number_unsigned() && doc["plan"].is_array() && doc["config"].is_object();
    o.require(schema, std::string(f) + " has the result schema");
    if (!schema) continue;
    const auto rec = io::result_from_json(doc);
    o.require(io::result_to_json(rec) == doc, std::string(f) + " round-trips");
    if (std::string(f) != "underflow.json") {
      const double recomputed = plan_cost(TransportPlan(rec.plan), c10);
      o.require(std::abs(recomputed - rec.cost) <= 1e-9 * (1 + rec.cost), std::string(f) + " cost recomputes");
    }
  }
  o.require(io::result_from_json(nlohmann::json::parse(io::read_text(p("underflow.json")))).failed_zero_denominator ==
                std::optional<bool>(true),
            "underflow flag recorded");
  const auto b = io::result_from_json(nlohmann::json::parse(io::read_text(p("brenier.json"))));
  const auto l = io::result_from_json(nlohmann::json::parse(io::read_text(p("lp.json"))));
  o.require(std::abs(b.cost - l.cost) <= 1e-6 * l.cost, "brenier and lp costs agree");

  const auto bench = cli({"bench", p("src10.csv"), p("tgt10.csv"), "--reg", "5", "-o", p("bench.csv")});
  expect(bench, 0, "bench");
  const auto bench_text = io::read_text(p("bench.csv"));
  o.require(bench_text.rfind("method,cost,seconds,converged\nbrenier,", 0) == 0, "bench csv header and order");
  o.require(std::count(bench_text.begin(), bench_text.end(), '\n') == 4, "bench has three rows");
  o.require(bench.err.find("brenier") != std::string::npos, "bench prints plans for small inputs");

  expect(cli({"cluster", p("mix250.csv"), "--k", "5", "--steps", "10", "--seed", "1", "-o", p("cluster"), "--svg-dir",
              p("svg")}),
         0, "cluster");
  int svgs = 0;
  for (const auto& e : fs::directory_iterator(dir / "svg")) svgs += e.path().extension() == ".svg";
  o.require(svgs == 11, fmt("cluster writes init + 10 step SVGs (got %d)", svgs));

  io::write_text(p("bad.csv"), "x1,x2,mass\n1,2\n");
  expect(cli({"solve", "lp", p("bad.csv"), p("tgt10.csv")}), 1, "malformed input");
  io::write_text(p("d3.csv"), "x1,x2,x3,mass\n0,0,0,0.5\n1,1,1,0.5\n");
  expect(cli({"cluster", p("d3.csv"), "--k", "2", "-o", p("d3out"), "--svg-dir", p("d3svg")}), 1, "svg with d=3");

  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), dir).string();
    std::string text = io::read_text(e.path());
    if (e.path().extension() == ".json" && text.find("\"elapsed_seconds\"") != std::string::npos) {
      auto doc = nlohmann::json::parse(text);
      doc.erase("elapsed_seconds");
      text = doc.dump();
    }
    if (rel == "bench.csv") {
      // Keep method, cost and converged; drop the timing column.
      std::istringstream in(text);
      std::string line, kept;
      while (std::getline(in, line)) {
        const auto a = line.find(','), b2 = line.find(',', a + 1), c = line.find(',', b2 + 1);
        kept += line.substr(0, b2) + line.substr(c) + "\n";
      }
      text = kept;
    }
    files[rel] = text;
  }
  return files;
}

void cli_contract(Outcome& o) {
  const fs::path root = fs::temp_directory_path() / "semiot_acceptance_cli";
  fs::remove_all(root);
  const auto first = pipeline(root / "a", o);
  const auto second = pipeline(root / "b", o);
  o.require(first.size() == second.size(), "reruns produce the same file set");
  int differing = 0;
  for (const auto& [name, text] : first) {
    auto it = second.find(name);
    if (it == second.end() || it->second != text) {
      ++differing;
      o.note("differs on rerun: " + name);
    }
  }
  o.require(differing == 0, fmt("%d files differ between seeded reruns", differing));
  o.note(fmt("%zu output files compared across two seeded runs", first.size()));
  fs::remove_all(root);
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"AC1", "brenier equals lp on 10x2 two-blob instances", 5.0, oracle_equality},
      {"AC2", "sinkhorn cost dominates lp", 5.0, sinkhorn_dominance},
      {"AC3", "naive sinkhorn zero-denominator failure", 1.0, zero_denominator},
      {"AC4", "row marginals hold at every iterate", 10.0, marginal_invariant},
      {"AC5", "gradient matches finite differences", 5.0, gradient_check},
      {"AC6", "shift invariance and mean preservation", 5.0, shift_and_mean},
      {"AC7", "network simplex matches brute force", 30.0, lp_oracle},
      {"AC8", "clustering recovers five gaussians", 60.0, clustering_reproduction},
      {"AC9", "center gradient and barycenter monotonicity", 5.0, center_gradient_check},
      {"AC10", "stabilized sinkhorn faster than brenier", 60.0, relative_timing},
      {"AC11", "cli pipeline contract", 60.0, cli_contract},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failed = 0, ran = 0;
  for (const auto& c : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    ++ran;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs <= c.budget_seconds, fmt("runtime %.2f s over the %.0f s budget", secs, c.budget_seconds));
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << fmt(" (%.2f s)", secs) << "\n";
    for (const auto& n : o.notes) std::cout << "       " << n << "\n";
    if (!o.pass) ++failed;
  }
  if (ran == 0) {
    std::cerr << "no criterion matched\n";
    return 2;
  }
  std::cout << ran - failed << "/" << ran << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
