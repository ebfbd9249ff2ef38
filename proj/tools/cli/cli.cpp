#include "cli.hpp"

#include <CLI11.hpp>
#include <climits>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>

#include "output.hpp"
#include "perimeter/analytics.hpp"
#include "perimeter/errors.hpp"
#include "perimeter/kinematics.hpp"
#include "perimeter/sweep.hpp"

namespace perimeter::cli {

namespace {

struct Config {
  RawParams params;
  std::vector<long> n;
  int trials = 100;
  std::uint64_t seed = 1;
  std::vector<std::string> grid;
  std::string out;
  Format format = Format::kCsv;
  double dt = 0.0;
  double eps_capture = 1e-3;
  unsigned threads = 0;
  double theta_a = 0.0;
  std::optional<double> theta_d;
  int surface_points = 64;
};

// Output file or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw Error("cannot open output file '" + path + "'");
    os_ = &file_;
  }
  std::ostream& stream() { return *os_; }
  void close() {
    os_->flush();
    if (!*os_) throw Error("failed writing output");
  }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

const char* extension(Format f) { return f == Format::kCsv ? ".csv" : ".jsonl"; }

std::string trials_path(const std::string& out, Format f) {
  std::filesystem::path p(out);
  const std::string stem = p.has_extension() ? p.stem().string() : p.filename().string();
  return (p.parent_path() / (stem + ".trials" + extension(f))).string();
}

GameParams validated(const Config& c) {
  return validate_params(c.params.r_T, c.params.rho_T, c.params.rho_A, c.params.nu);
}

long single_n(const Config& c, long fallback) {
  if (c.n.empty()) return fallback;
  if (c.n.size() > 1) throw DomainError("--n takes a single value for this command");
  return c.n.front();
}

int cmd_simulate(const Config& c, std::ostream& out) {
  const GameParams params = validated(c);
  const int n = static_cast<int>(single_n(c, 200));
  const std::vector<SessionRecord> records =
      run_sessions(params, n, c.trials, c.seed, c.threads);
  const std::vector<PrefixStat> stats = aggregate_sessions(records);
  const double ps = p_star(params);
  const double asym = asymptotic_percentage(ps);
  const std::vector<double> resets = expected_resets_table(n, ps);

  Sink sink(c.out, out);
  TableWriter table(sink.stream(), c.format,
                    {"N", "mean_pct", "ci_lo", "ci_hi", "analytic_pct", "asymptotic_pct"});
  for (const PrefixStat& s : stats) {
    const double analytic = 100.0 * (s.n - resets[static_cast<std::size_t>(s.n - 1)]) / s.n;
    table.row({std::int64_t{s.n}, s.mean, s.ci_lo, s.ci_hi, analytic, asym});
  }
  sink.close();

  if (!c.out.empty()) {
    Sink trials(trials_path(c.out, c.format), out);
    TableWriter t(trials.stream(), c.format, {"trial", "seed", "N", "pct"});
    for (std::size_t i = 0; i < records.size(); ++i) {
      const std::vector<double> pct = prefix_percentages(records[i]);
      for (std::size_t k = 0; k < pct.size(); ++k) {
        t.row({static_cast<std::int64_t>(i), records[i].seed, static_cast<std::int64_t>(k + 1),
               pct[k]});
      }
    }
    trials.close();
  }
  return kOk;
}

int cmd_analytic(const Config& c, std::ostream& out) {
  const GameParams params = validated(c);
  const long n = single_n(c, 200);
  const double ps = p_star(params);
  const std::vector<double> resets = expected_resets_table(n, ps);
  Sink sink(c.out, out);
  TableWriter table(sink.stream(), c.format, {"N", "expected_resets", "percentage"});
  for (long k = 1; k <= n; ++k) {
    const double e = resets[static_cast<std::size_t>(k - 1)];
    table.row({std::int64_t{k}, e, 100.0 * (static_cast<double>(k) - e) / static_cast<double>(k)});
  }
  table.row({std::string("inf"), Blank{}, asymptotic_percentage(ps)});
  sink.close();
  return kOk;
}

int cmd_sweep(const Config& c, std::ostream& out) {
  if (c.grid.size() != 2) throw DomainError("sweep needs exactly two --grid axes");
  SweepSpec spec;
  spec.outer = parse_grid_axis(c.grid[0]);
  spec.inner = parse_grid_axis(c.grid[1]);
  spec.base = c.params;
  spec.horizons = c.n.empty() ? std::vector<long>{20} : c.n;
  spec.threads = c.threads;
  const std::vector<SweepRow> rows = sweep(spec);

  std::vector<std::string> columns{to_string(spec.outer.param), to_string(spec.inner.param),
                                   "feasible", "theta_max", "p_star"};
  for (long h : spec.horizons) columns.push_back("pct_N" + std::to_string(h));
  columns.push_back("pct_inf");

  Sink sink(c.out, out);
  TableWriter table(sink.stream(), c.format, columns);
  for (const SweepRow& r : rows) {
    std::vector<Cell> cells{r.outer_value, r.inner_value, std::int64_t{r.feasible ? 1 : 0}};
    if (r.feasible) {
      cells.insert(cells.end(), {r.theta_max, r.p_star});
      for (double v : r.percentages) cells.push_back(v);
      cells.push_back(r.asymptotic);
    } else {
      cells.resize(columns.size(), Blank{});
    }
    table.row(cells);
  }
  sink.close();
  return kOk;
}

int cmd_verify(const Config& c, std::ostream& out, std::ostream& err) {
  const GameParams params = validated(c);
  const int n = static_cast<int>(single_n(c, 500));
  const AgreementReport r =
      verify_outcome_agreement(params, n, c.seed, c.dt, c.eps_capture, 1e-3, c.threads);
  Sink sink(c.out, out);
  TableWriter table(sink.stream(), c.format,
                    {"n_games", "n_compared", "n_skipped", "n_agree", "n_capture", "n_breach",
                     "max_capture_discrepancy", "max_circle_residual", "max_center_residual",
                     "discrepancy_bound", "ok"});
  table.row({std::int64_t{r.n_games}, std::int64_t{r.n_compared}, std::int64_t{r.n_skipped},
             std::int64_t{r.n_agree}, std::int64_t{r.n_capture}, std::int64_t{r.n_breach},
             r.max_capture_discrepancy, r.max_circle_residual, r.max_center_residual,
             r.discrepancy_bound, std::int64_t{r.ok() ? 1 : 0}});
  sink.close();
  if (!r.ok()) {
    err << "verification failed: " << r.n_agree << "/" << r.n_compared
        << " verdicts agree, max capture discrepancy " << format_number(r.max_capture_discrepancy)
        << " (bound " << format_number(r.discrepancy_bound) << ")\n";
    return kVerificationFailed;
  }
  return kOk;
}

int cmd_trace(const Config& c, std::ostream& out) {
  const GameParams params = validated(c);
  const GameEngine engine(params);
  const DefenderState state =
      c.theta_d ? DefenderState::on_capture_circle(*c.theta_d) : DefenderState::at_center();
  const Trajectory tr =
      simulate_kinematic(engine, state, c.theta_a, {c.dt, c.eps_capture, 1});
  const DefenderPlan plan = engine.plan(state, c.theta_a);

  // Engagement surface in the world frame of this game.
  const EngagementDomain dom = engagement_domain(params);
  std::vector<Point2> surface;
  for (int i = 0; i < c.surface_points; ++i) {
    const double tau =
        dom.tau_min + (dom.tau_max - dom.tau_min) * i / std::max(c.surface_points - 1, 1);
    surface.push_back(engine.to_world(engagement_candidate(tau, params).x_D_eng, c.theta_a,
                                      plan.side));
  }

  Sink sink(c.out, out);
  std::ostream& os = sink.stream();
  const std::string kind = to_string(tr.terminal.kind);
  if (c.format == Format::kCsv) {
    os << "# capture_radius=" << format_number(engine.capture_radius()) << '\n'
       << "# theta_max=" << format_number(engine.theta_max()) << '\n'
       << "# terminal=" << kind << ',' << format_number(tr.terminal.point.x) << ','
       << format_number(tr.terminal.point.y) << ',' << format_number(tr.terminal.t) << '\n';
    os << "# engagement_surface=";
    for (std::size_t i = 0; i < surface.size(); ++i) {
      os << (i ? ";" : "") << format_number(surface[i].x) << ' ' << format_number(surface[i].y);
    }
    os << '\n';
  } else {
    nlohmann::ordered_json meta;
    meta["type"] = "meta";
    meta["capture_radius"] = std::stod(format_number(engine.capture_radius()));
    meta["theta_max"] = std::stod(format_number(engine.theta_max()));
    meta["terminal"] = {{"kind", kind},
                        {"x", std::stod(format_number(tr.terminal.point.x))},
                        {"y", std::stod(format_number(tr.terminal.point.y))},
                        {"t", std::stod(format_number(tr.terminal.t))}};
    auto& poly = meta["engagement_surface"] = nlohmann::ordered_json::array();
    for (const Point2& q : surface) {
      poly.push_back({std::stod(format_number(q.x)), std::stod(format_number(q.y))});
    }
    os << meta.dump() << '\n';
  }
  TableWriter table(os, c.format, {"t", "x_A", "y_A", "x_D", "y_D", "phase"});
  for (const TrajectorySample& s : tr.samples) {
    table.row({s.t, s.x_A.x, s.x_A.y, s.x_D.x, s.x_D.y, std::string(to_string(s.phase))});
  }
  sink.close();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Sequential perimeter defense simulator"};
  app.name("perimeter");
  app.set_config("--config", "", "Flat key=value file keyed by long flag names, e.g. rho-a = 1.5")
      ->check(CLI::ExistingFile);
  app.allow_config_extras(false);
  app.require_subcommand(1, 1);

  app.add_option("--r-t", c.params.r_T, "Target radius")->capture_default_str();
  app.add_option("--rho-t", c.params.rho_T, "Width of the target sensing annulus")
      ->capture_default_str();
  app.add_option("--rho-a", c.params.rho_A, "Intruder sensing radius")->capture_default_str();
  app.add_option("--nu", c.params.nu, "Intruder-to-defender speed ratio")->capture_default_str();
  app.add_option("--n", c.n,
                 "Intruders per session (simulate, default 200), table length (analytic, "
                 "200), games (verify, 500) or horizons (sweep, repeatable, default 20)")
      ->check(CLI::Range(1L, static_cast<long>(INT_MAX)));
  app.add_option("--trials", c.trials, "Sessions for simulate")
      ->check(CLI::Range(1, INT_MAX))
      ->capture_default_str();
  app.add_option("--seed", c.seed, "Base seed")->capture_default_str();
  app.add_option("--grid", c.grid, "Sweep axis <param>=<lo>:<hi>:<steps>, given twice");
  app.add_option("--out", c.out, "Output file (default: stdout)");
  std::string format_name = "csv";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  app.add_option("--dt", c.dt, "Kinematic timestep (0: 1e-4 * (r_T + rho_T))")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--eps-capture", c.eps_capture, "Kinematic capture distance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--threads", c.threads, "Worker threads (0: all cores)")->capture_default_str();
  app.add_option("--theta-a", c.theta_a, "Arrival angle for trace")->capture_default_str();
  app.add_option("--theta-d", c.theta_d,
                 "Defender angle on the capture circle for trace (default: at the center)");

  auto* simulate = app.add_subcommand("simulate", "Seeded sessions: mean capture percentage per prefix");
  auto* analytic = app.add_subcommand("analytic", "Expected resets and capture percentage per horizon");
  auto* sweep_cmd = app.add_subcommand("sweep", "Capture percentages over a two-parameter grid");
  auto* verify = app.add_subcommand("verify", "Replay games kinematically against the event engine");
  auto* trace = app.add_subcommand("trace", "Kinematic trajectory of one game");
  for (CLI::App* s : {simulate, analytic, sweep_cmd, verify, trace}) s->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  c.format = format_name == "jsonl" ? Format::kJsonl : Format::kCsv;

  try {
    if (simulate->parsed()) return cmd_simulate(c, out);
    if (analytic->parsed()) return cmd_analytic(c, out);
    if (sweep_cmd->parsed()) return cmd_sweep(c, out);
    if (verify->parsed()) return cmd_verify(c, out, err);
    return cmd_trace(c, out);
  } catch (const NoTermination& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
}

}  // namespace perimeter::cli
