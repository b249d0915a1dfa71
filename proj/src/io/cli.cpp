#include "semiot/io/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "semiot/brenier.hpp"
#include "semiot/clustering.hpp"
#include "semiot/error.hpp"
#include "semiot/exact_lp.hpp"
#include "semiot/io/bench.hpp"
#include "semiot/io/generate.hpp"
#include "semiot/io/point_io.hpp"
#include "semiot/io/result_io.hpp"
#include "semiot/io/svg.hpp"
#include "semiot/sinkhorn.hpp"

namespace semiot::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string output;
  std::string format;
};

// Zero means "derive from the data" for step size and tolerance.
struct BrenierFlags {
  double step_size = 0.0;
  std::size_t max_steps = 10000;
  double tolerance = 0.0;
  double tie_tolerance = 1e-9;
  std::string schedule = "fixed";

  BrenierConfig config() const {
    BrenierConfig cfg;
    if (step_size != 0.0) cfg.step_size = step_size;
    if (tolerance != 0.0) cfg.tolerance = tolerance;
    cfg.max_steps = max_steps;
    cfg.tie_tolerance = tie_tolerance;
    cfg.schedule = schedule == "diminishing" ? StepSchedule::diminishing : StepSchedule::fixed;
    return cfg;
  }
};

struct SinkhornFlags {
  double reg = 0.05;
  std::size_t max_iters = 10000;
  double marginal_tolerance = 1e-8;
  bool stabilized = false;

  SinkhornConfig config() const {
    SinkhornConfig cfg;
    cfg.regularization = reg;
    cfg.max_iters = max_iters;
    cfg.marginal_tolerance = marginal_tolerance;
    cfg.stabilized = stabilized;
    return cfg;
  }
};

void add_brenier_flags(CLI::App* app, BrenierFlags& f) {
  app->add_option("--step-size", f.step_size, "Gradient step on the heights (0: 0.1 * range(M) / n_t)");
  app->add_option("--max-steps", f.max_steps, "Maximum gradient updates")->check(CLI::PositiveNumber);
  app->add_option("--tol", f.tolerance, "Convergence threshold on max |w - p_t| (0: 1e-3 * max p_t)");
  app->add_option("--tie-tol", f.tie_tolerance, "Relative tie band")->check(CLI::PositiveNumber);
  app->add_option("--schedule", f.schedule, "Step schedule")->check(CLI::IsMember({"fixed", "diminishing"}));
}

void add_sinkhorn_flags(CLI::App* app, SinkhornFlags& f) {
  app->add_option("--reg", f.reg, "Entropic regularization")->check(CLI::PositiveNumber);
  app->add_option("--max-iters", f.max_iters, "Maximum scaling rounds")->check(CLI::PositiveNumber);
  app->add_option("--marginal-tol", f.marginal_tolerance, "Marginal tolerance")->check(CLI::PositiveNumber);
  app->add_flag("--stabilized", f.stabilized, "Log-domain scaling");
}

json brenier_config_json(const SolveReport& r, const BrenierConfig& cfg) {
  return json{{"step_size", r.step_size},
              {"max_steps", cfg.max_steps},
              {"tolerance", r.tolerance},
              {"tie_tolerance", cfg.tie_tolerance},
              {"schedule", cfg.schedule == StepSchedule::fixed ? "fixed" : "diminishing"}};
}

json sinkhorn_config_json(const SinkhornConfig& cfg) {
  return json{{"regularization", cfg.regularization},
              {"max_iters", cfg.max_iters},
              {"marginal_tolerance", cfg.marginal_tolerance},
              {"underflow_floor", cfg.underflow_floor},
              {"stabilized", cfg.stabilized}};
}

void emit(const GlobalOptions& g, std::string_view text, std::ostream& out) {
  if (g.output.empty()) {
    out << text;
  } else {
    write_text(g.output, text);
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- gen --------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  MixtureParams mixture;
  std::string means_path;
};

int cmd_gen(const GenArgs& a, const GlobalOptions& g, std::ostream& out) {
  PointFormat format = PointFormat::csv;
  if (!g.format.empty()) {
    format = parse_format_name(g.format);
  } else if (!g.output.empty()) {
    format = format_from_path(g.output);
  }
  if (a.kind == "gaussian_mixture") {
    const MixtureSample s = generate_gaussian_mixture(a.mixture, g.seed);
    if (!a.means_path.empty()) write_points(a.means_path, DiscreteMeasure::uniform(s.means), format_from_path(a.means_path));
    emit(g, format_points(s.measure, format), out);
  } else {
    emit(g, format_points(generate_uniform(a.mixture.count, a.mixture.dim, a.mixture.scale, g.seed), format), out);
  }
  return kExitOk;
}

// --- solve ------------------------------------------------------------------

struct SolveArgs {
  std::string method;
  std::string source;
  std::string target;
  BrenierFlags brenier;
  SinkhornFlags sinkhorn;
  bool brute_force = false;
  std::size_t granularity = 0;
};

int cmd_solve(const SolveArgs& a, const GlobalOptions& g, std::ostream& out) {
  const DiscreteMeasure src = read_points(a.source);
  const DiscreteMeasure tgt = read_points(a.target);
  require_same_dim(src, tgt);
  require_balanced(src.masses(), tgt.masses());
  if (a.brute_force && a.method != "lp") throw ValidationError("--brute-force applies to the lp method only");

  ResultRecord rec;
  rec.method = a.method;
  int code = kExitOk;
  std::optional<TransportPlan> plan;

  if (a.method == "brenier") {
    const BrenierConfig cfg = a.brenier.config();
    const auto start = std::chrono::steady_clock::now();
    SolveReport r = solve(src, tgt, cfg);
    rec.elapsed_seconds = seconds_since(start);
    rec.converged = r.converged;
    rec.iterations = r.iterations;
    rec.residual = r.residual;
    rec.config = brenier_config_json(r, cfg);
    rec.config["empty_cells"] = r.empty_cells;
    plan = std::move(r.plan);
    code = r.converged ? kExitOk : kExitNotConverged;
  } else if (a.method == "sinkhorn") {
    const SinkhornConfig cfg = a.sinkhorn.config();
    const auto start = std::chrono::steady_clock::now();
    const KernelMatrix c = cost_matrix(src, tgt);
    SinkhornReport r = sinkhorn_solve(c, src.masses(), tgt.masses(), cfg);
    rec.elapsed_seconds = seconds_since(start);
    rec.converged = r.converged;
    rec.iterations = r.iterations;
    rec.residual = std::max(r.row_residual, r.col_residual);
    rec.failed_zero_denominator = r.failed_zero_denominator;
    rec.config = sinkhorn_config_json(cfg);
    plan = std::move(r.plan);
    code = r.converged && !r.failed_zero_denominator ? kExitOk : kExitNotConverged;
  } else {
    const auto start = std::chrono::steady_clock::now();
    const KernelMatrix c = cost_matrix(src, tgt);
    ExactReport r = a.brute_force ? brute_force_solve(c, src.masses(), tgt.masses(), a.granularity)
                                  : lp_solve(c, src.masses(), tgt.masses());
    rec.elapsed_seconds = seconds_since(start);
    rec.converged = true;
    rec.iterations = r.pivots;
    rec.residual = std::max(r.plan.row_residual(src.masses()), r.plan.col_residual(tgt.masses()));
    rec.config = json{{"brute_force", a.brute_force}};
    if (a.brute_force) rec.config["granularity"] = a.granularity;
    plan = std::move(r.plan);
  }

  // The reported cost is always recomputed from the plan.
  rec.cost = plan_cost(*plan, cost_matrix(src, tgt));
  rec.plan = plan->entries();
  emit(g, result_to_json(rec).dump(2) + "\n", out);
  return code;
}

// --- bench ------------------------------------------------------------------

struct BenchArgs {
  std::string source;
  std::string target;
  std::size_t repetitions = 1;
  BrenierFlags brenier;
  SinkhornFlags sinkhorn;
};

int cmd_bench(const BenchArgs& a, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  const DiscreteMeasure src = read_points(a.source);
  const DiscreteMeasure tgt = read_points(a.target);
  BenchOptions opts;
  opts.repetitions = a.repetitions;
  opts.brenier = a.brenier.config();
  opts.sinkhorn = a.sinkhorn.config();
  const auto rows = run_bench(src, tgt, opts);
  emit(g, format_bench_csv(rows), out);
  if (src.size() * tgt.size() <= 40) err << format_bench_plans(rows);
  for (const auto& r : rows) {
    if (!r.error.empty()) err << r.method << ": " << r.error << "\n";
  }
  const bool all_ok = std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.converged && r.error.empty(); });
  return all_ok ? kExitOk : kExitNotConverged;
}

// --- cluster ----------------------------------------------------------------

struct ClusterArgs {
  std::string source;
  std::size_t k = 5;
  std::size_t steps = 10;
  double center_step = 0.0;
  std::string mode = "gradient";
  std::string svg_dir;
  BrenierFlags brenier;
};

std::string step_name(std::size_t step, std::size_t total) {
  const std::size_t width = std::max<std::size_t>(2, std::to_string(total).size());
  std::string digits = std::to_string(step);
  return "step_" + std::string(width - std::min(width, digits.size()), '0') + digits + ".svg";
}

int cmd_cluster(const ClusterArgs& a, const GlobalOptions& g, std::ostream& out) {
  const DiscreteMeasure src = read_points(a.source);
  if (!a.svg_dir.empty() && src.dim() != 2) {
    throw ValidationError("--svg-dir needs 2-dimensional points, got d=" + std::to_string(src.dim()));
  }
  ClusterConfig cfg;
  cfg.k = a.k;
  cfg.outer_steps = a.steps;
  if (a.center_step != 0.0) cfg.center_step_size = a.center_step;
  cfg.inner = a.brenier.config();
  cfg.center_update = a.mode == "barycenter" ? CenterUpdate::barycenter : CenterUpdate::gradient;
  cfg.seed = g.seed;

  const ClusterState state = cluster(src, cfg);

  const fs::path dir = g.output.empty() ? fs::path(".") : fs::path(g.output);
  fs::create_directories(dir);
  std::string assignments = "index,cluster\n";
  for (std::size_t i = 0; i < state.assignments.size(); ++i) {
    assignments += std::to_string(i) + "," + std::to_string(state.assignments[i]) + "\n";
  }
  write_text(dir / "assignments.csv", assignments);
  write_points(dir / "centers.json", state.centers, PointFormat::json);
  std::string trace = "step,cost\n";
  for (std::size_t s = 0; s < state.cost_trace.size(); ++s) {
    trace += std::to_string(s + 1) + "," + format_double(state.cost_trace[s]) + "\n";
  }
  write_text(dir / "cost_trace.csv", trace);

  if (!a.svg_dir.empty()) {
    const fs::path svg_dir(a.svg_dir);
    fs::create_directories(svg_dir);
    const auto& first = state.steps.front();
    write_text(svg_dir / "init.svg",
               render_cluster_svg(src.points(), first.assignments, state.initial_centers, "initialization"));
    for (std::size_t s = 0; s < state.steps.size(); ++s) {
      const auto& st = state.steps[s];
      write_text(svg_dir / step_name(s + 1, state.steps.size()),
                 render_cluster_svg(src.points(), st.assignments, st.centers_after, "step " + std::to_string(s + 1)));
    }
  }

  const bool final_ok = state.steps.back().inner_converged;
  out << "clusters: " << cfg.k << "  steps: " << state.steps.size() << "  initial cost: "
      << format_double(state.cost_trace.front()) << "  final cost: " << format_double(state.cost_trace.back())
      << "  unconverged inner solves: " << state.unconverged_inner_solves << "\n";
  return final_ok ? kExitOk : kExitNotConverged;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete optimal transport: approximate Brenier, Sinkhorn and exact LP solvers", "semiot"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--output,-o", g.output, "Output file (cluster: output directory)");
  app.add_option("--format", g.format, "Point file format")->check(CLI::IsMember({"csv", "json"}));

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a point set");
  gen_cmd->fallthrough();
  gen_cmd->add_option("kind", gen.kind, "gaussian_mixture or uniform")
      ->required()
      ->check(CLI::IsMember({"gaussian_mixture", "uniform"}));
  gen_cmd->add_option("--k", gen.mixture.components, "Mixture components")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--n", gen.mixture.count, "Number of points")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--dim", gen.mixture.dim, "Dimension")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--sigma", gen.mixture.sigma, "Component standard deviation")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--separation", gen.mixture.separation, "Minimum mean spacing in sigmas");
  gen_cmd->add_option("--scale", gen.mixture.scale, "Side of the box holding means (uniform: points)")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--means", gen.means_path, "Also write component means to this file");

  SolveArgs sv;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one transport problem and write a result file");
  solve_cmd->fallthrough();
  solve_cmd->add_option("method", sv.method, "brenier, sinkhorn or lp")
      ->required()
      ->check(CLI::IsMember({"brenier", "sinkhorn", "lp"}));
  solve_cmd->add_option("source", sv.source, "Source point file")->required();
  solve_cmd->add_option("target", sv.target, "Target point file")->required();
  add_brenier_flags(solve_cmd, sv.brenier);
  add_sinkhorn_flags(solve_cmd, sv.sinkhorn);
  solve_cmd->add_flag("--brute-force", sv.brute_force, "lp: exhaustive integer-flow search");
  solve_cmd->add_option("--granularity", sv.granularity, "Mass grid 1/granularity for --brute-force");

  BenchArgs bn;
  auto* bench_cmd = app.add_subcommand("bench", "Compare brenier, sinkhorn and lp on the same inputs");
  bench_cmd->fallthrough();
  bench_cmd->add_option("source", bn.source, "Source point file")->required();
  bench_cmd->add_option("target", bn.target, "Target point file")->required();
  bench_cmd->add_option("--repetitions", bn.repetitions, "Timed runs per solver")->check(CLI::PositiveNumber);
  add_brenier_flags(bench_cmd, bn.brenier);
  add_sinkhorn_flags(bench_cmd, bn.sinkhorn);

  ClusterArgs cl;
  auto* cluster_cmd = app.add_subcommand("cluster", "Wasserstein clustering with uniform cluster masses");
  cluster_cmd->fallthrough();
  cluster_cmd->add_option("source", cl.source, "Point file to cluster")->required();
  cluster_cmd->add_option("--k", cl.k, "Number of clusters")->check(CLI::PositiveNumber);
  cluster_cmd->add_option("--steps", cl.steps, "Outer steps")->check(CLI::PositiveNumber);
  cluster_cmd->add_option("--center-step", cl.center_step, "Center gradient step (0: 0.5 / max column mass)");
  cluster_cmd->add_option("--mode", cl.mode, "Center update")->check(CLI::IsMember({"gradient", "barycenter"}));
  cluster_cmd->add_option("--svg-dir", cl.svg_dir, "Write one SVG per step here (2D only)");
  add_brenier_flags(cluster_cmd, cl.brenier);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, g, out);
    if (solve_cmd->parsed()) return cmd_solve(sv, g, out);
    if (bench_cmd->parsed()) return cmd_bench(bn, g, out, err);
    return cmd_cluster(cl, g, out);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNotConverged;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

}  // namespace semiot::io
