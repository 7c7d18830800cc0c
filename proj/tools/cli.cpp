#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "lpmlens/entropy_projection.hpp"
#include "lpmlens/errors.hpp"
#include "lpmlens/evaluation.hpp"
#include "lpmlens/json_io.hpp"
#include "lpmlens/log_io.hpp"
#include "lpmlens/log_stats.hpp"
#include "lpmlens/lpm_discovery.hpp"
#include "lpmlens/markov_projection.hpp"
#include "lpmlens/mrig_projection.hpp"
#include "lpmlens/parallel.hpp"
#include "lpmlens/petri_net.hpp"
#include "lpmlens/process_tree.hpp"

namespace lpmlens::cli {
namespace {

using nlohmann::json;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct GlobalOptions {
  std::string case_column = "case";
  std::string activity_column = "activity";
  std::string time_column;
  std::string config_path;
  std::string out_path;
  std::size_t threads = 0;
  bool allow_partial = false;
};

struct MethodOptions {
  double inflation = 1.5;
  int expansion_power = 2;
  int max_iterations = 100;
  double entropy_ratio = 0.7;
  double mrig_threshold = 0.1;
};

struct DiscoveryOptions {
  std::size_t top_k = 20;
  double support_prune = 0.0;
  double determinism_prune = 0.0;
  std::size_t max_activities = 4;
  std::size_t max_len = 5;
  std::string support_norm = "log-ratio";
  std::vector<double> weights{0.2, 0.2, 0.2, 0.2, 0.2};
  double timeout_seconds = 0.0;
};

void add_method_options(CLI::App* app, MethodOptions& m) {
  app->add_option("--inflation", m.inflation, "MCL inflation (> 1)")->capture_default_str();
  app->add_option("--expansion", m.expansion_power, "MCL expansion power (>= 2)")->capture_default_str();
  app->add_option("--max-iter", m.max_iterations, "MCL iteration limit")->capture_default_str();
  app->add_option("--entropy-ratio", m.entropy_ratio, "entropy ratio threshold r in [0,1]")->capture_default_str();
  app->add_option("--mrig-threshold", m.mrig_threshold, "minimum relative information gain")->capture_default_str();
}

void add_discovery_options(CLI::App* app, DiscoveryOptions& d) {
  app->add_option("--top-k", d.top_k, "ranking length")->capture_default_str();
  app->add_option("--support-prune", d.support_prune, "support pruning threshold")->capture_default_str();
  app->add_option("--determinism-prune", d.determinism_prune, "determinism pruning threshold")
      ->capture_default_str();
  app->add_option("--max-activities", d.max_activities, "largest model size")->capture_default_str();
  app->add_option("--max-len", d.max_len, "length bound for language fit")->capture_default_str();
  app->add_option("--support-norm", d.support_norm, "log-ratio or trace-ratio")
      ->check(CLI::IsMember({"log-ratio", "trace-ratio"}))
      ->capture_default_str();
  app->add_option("--weights", d.weights,
                  "support,confidence,language-fit,determinism,coverage weights")
      ->delimiter(',')
      ->expected(5);
  app->add_option("--timeout", d.timeout_seconds, "discovery time limit in seconds (0 = none)");
}

MclParams mcl_params(const MethodOptions& m) {
  MclParams p;
  p.inflation = m.inflation;
  p.expansion_power = m.expansion_power;
  p.max_iterations = m.max_iterations;
  return p;
}

DiscoveryParams discovery_params(const DiscoveryOptions& d, std::size_t threads) {
  DiscoveryParams p;
  p.top_k = d.top_k;
  p.support_prune = d.support_prune;
  p.determinism_prune = d.determinism_prune;
  p.max_activities = d.max_activities;
  p.score.max_len = d.max_len;
  p.score.support_norm = d.support_norm == "trace-ratio" ? SupportNorm::TraceRatio : SupportNorm::LogRatio;
  if (d.weights.size() != 5) throw UsageError("--weights needs exactly five values");
  p.score.weights = ScoreWeights::from_array({d.weights[0], d.weights[1], d.weights[2], d.weights[3], d.weights[4]});
  p.threads = threads;
  if (d.timeout_seconds > 0.0) {
    p.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(d.timeout_seconds));
  }
  p.validate();
  return p;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Flat key=value lines fill options the command line left unset.
void apply_config(const std::string& path, CLI::App& root, CLI::App* sub) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open config file '" + path + "'");
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config line is not key=value", number);
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    CLI::Option* opt = sub != nullptr ? sub->get_option_no_throw("--" + key) : nullptr;
    if (opt == nullptr) opt = root.get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("unknown config key '" + key + "' on line " + std::to_string(number));
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

EventLog read_log(const GlobalOptions& g, const std::string& path, std::ostream& err) {
  CsvConfig config;
  config.case_column = g.case_column;
  config.activity_column = g.activity_column;
  if (!g.time_column.empty()) config.time_column = g.time_column;
  ParseDiagnostics diag;
  auto log = load_log(path, config, &diag);
  err << "read " << log.trace_count() << " traces, " << log.total_events() << " events, " << log.alphabet().size()
      << " activities from " << path << "\n";
  if (diag.skipped_events > 0) err << "warning: skipped " << diag.skipped_events << " events without a name\n";
  return log;
}

void emit(const GlobalOptions& g, const std::string& text, std::ostream& out) {
  if (g.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.out_path, std::ios::binary);
  if (!file) throw FormatError("cannot write '" + g.out_path + "'");
  file << text;
}

void emit_json(const GlobalOptions& g, const json& j, std::ostream& out) { emit(g, j.dump(2) + "\n", out); }

std::string matrix_csv(const EventLog& log, const ActivityMatrix& m) {
  std::ostringstream s;
  s.precision(17);
  const auto& t = log.activities();
  s << "activity";
  for (auto a : m.order()) s << "," << t.name(a);
  s << "\n";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    s << t.name(m.order()[i]);
    for (std::size_t j = 0; j < m.dim(); ++j) s << "," << m(i, j);
    s << "\n";
  }
  return s.str();
}

ProjectionSet parse_projection_arg(const EventLog& log, const std::string& text) {
  std::vector<ActivityId> ids;
  std::stringstream in(text);
  std::string name;
  while (std::getline(in, name, ',')) {
    name = trim(name);
    const auto id = log.activities().find(name);
    if (id == ActivityTable::npos) throw FormatError("activity '" + name + "' does not occur in the log");
    ids.push_back(id);
  }
  if (ids.empty()) throw UsageError("--projection needs at least one activity");
  return ProjectionSet(std::move(ids));
}

json timing_json(const ProjectedDiscoveryResult& r, double projection_seconds) {
  json runs = json::array();
  for (const auto& run : r.runs) runs.push_back(run.seconds);
  return json{{"projection_set_seconds", projection_seconds},
              {"projected_run_seconds", runs},
              {"rescoring_seconds", r.rescoring_seconds}};
}

void export_dots(const EventLog& log, const Ranking& ranking, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    const auto path = std::filesystem::path(dir) / ("lpm_" + std::to_string(i + 1) + ".dot");
    std::ofstream f(path);
    if (!f) throw FormatError("cannot write '" + path.string() + "'");
    f << to_dot(tree_to_net(ranking[i].tree), log.activities(), "lpm_" + std::to_string(i + 1));
  }
}

int timeout_exit(const GlobalOptions& g, std::ostream& err) {
  err << "error: time limit reached";
  err << (g.allow_partial ? "; partial results written\n" : "; rerun with --allow-partial to keep partial results\n");
  return kTimeout;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projection-set discovery and local process model mining"};
  app.name("lpm_lens");
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--case-col", g.case_column, "CSV case-id column")->capture_default_str();
  app.add_option("--activity-col", g.activity_column, "CSV activity column")->capture_default_str();
  app.add_option("--time-col", g.time_column, "CSV timestamp column used to order events");
  app.add_option("--config", g.config_path, "flat key=value configuration file");
  app.add_option("--out", g.out_path, "write JSON here instead of stdout");
  app.add_option("--threads", g.threads, "worker threads (default: LPM_LENS_THREADS or logical cores)");
  app.add_flag("--allow-partial", g.allow_partial, "write partial results when a time limit is reached");

  std::string log_path;

  auto* stats = app.add_subcommand("stats", "directly-follows/precedes and connectedness matrices");
  std::string stats_format = "json", stats_order = "appearance", stats_matrix = "connectedness";
  stats->add_option("log", log_path, "event log (.csv or .xes)")->required();
  stats->add_option("--format", stats_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  stats->add_option("--order", stats_order, "appearance or lexicographic")
      ->check(CLI::IsMember({"appearance", "lexicographic"}));
  stats->add_option("--matrix", stats_matrix, "matrix for CSV output: dfr, dpr or connectedness")
      ->check(CLI::IsMember({"dfr", "dpr", "connectedness"}));

  auto* project = app.add_subcommand("project", "discover a projection family");
  std::string method_name;
  MethodOptions project_method;
  project->add_option("method", method_name, "markov, entropy or mrig")
      ->required()
      ->check(CLI::IsMember({"markov", "entropy", "mrig"}));
  project->add_option("log", log_path, "event log (.csv or .xes)")->required();
  add_method_options(project, project_method);

  auto* discover_cmd = app.add_subcommand("discover", "rank local process models");
  DiscoveryOptions discover_opts;
  std::string projections_path, dot_dir;
  bool with_timing = false;
  discover_cmd->add_option("log", log_path, "event log (.csv or .xes)")->required();
  add_discovery_options(discover_cmd, discover_opts);
  discover_cmd->add_option("--projections", projections_path, "JSON projection family to mine on");
  discover_cmd->add_flag("--timing", with_timing, "include per-phase wall-clock seconds");
  discover_cmd->add_option("--export-dot", dot_dir, "write a Petri net DOT file per ranked model here");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "compare projected discovery with full discovery");
  DiscoveryOptions eval_discovery;
  MethodOptions eval_method;
  std::string eval_method_name = "markov", timing_mode = "cpu-sum", csv_row;
  std::size_t repetitions = 10;
  std::uint64_t seed = 0;
  std::vector<std::size_t> cutoffs{5, 10, 20};
  double truth_timeout = 600.0;
  bool eval_timing = false;
  evaluate_cmd->add_option("log", log_path, "event log (.csv or .xes)")->required();
  evaluate_cmd->add_option("--method", eval_method_name, "markov, entropy or mrig")
      ->check(CLI::IsMember({"markov", "entropy", "mrig"}))
      ->capture_default_str();
  add_method_options(evaluate_cmd, eval_method);
  add_discovery_options(evaluate_cmd, eval_discovery);
  evaluate_cmd->add_option("--repetitions", repetitions, "random baseline repetitions")->capture_default_str();
  evaluate_cmd->add_option("--seed", seed, "random baseline seed")->capture_default_str();
  evaluate_cmd->add_option("--cutoffs", cutoffs, "ranking cutoffs k")->delimiter(',');
  evaluate_cmd->add_option("--timing-mode", timing_mode, "wall or cpu-sum")
      ->check(CLI::IsMember({"wall", "cpu-sum"}))
      ->capture_default_str();
  evaluate_cmd->add_flag("--timing", eval_timing, "include timing and speedup (varies between runs)");
  evaluate_cmd->add_option("--ground-truth-timeout", truth_timeout, "seconds allowed for full-log discovery")
      ->capture_default_str();
  evaluate_cmd->add_option("--csv-row", csv_row, "append a one-line summary to this CSV file");

  auto* export_cmd = app.add_subcommand("export", "write a (projected) log as CSV or a model as DOT");
  std::string projection_arg, model_text;
  export_cmd->add_option("log", log_path, "event log (.csv or .xes)")->required();
  export_cmd->add_option("--projection", projection_arg, "comma-separated activities to keep");
  export_cmd->add_option("--model", model_text, "process tree to render as a Petri net, e.g. seq(a,b)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help(e.get_name() == "--help" ? "" : e.get_name());
    for (auto* sub : app.get_subcommands()) out << sub->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    CLI::App* active = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
    if (!g.config_path.empty()) apply_config(g.config_path, app, active);
    const std::size_t threads = g.threads == 0 ? default_thread_count() : g.threads;

    if (active == stats) {
      const auto log = read_log(g, log_path, err);
      const auto order =
          activity_order(log, stats_order == "lexicographic" ? ActivityOrder::Lexicographic : ActivityOrder::Appearance);
      const auto dfr = dfr_matrix(log, order);
      const auto dpr = dpr_matrix(log, order);
      const auto conn = connectedness_matrix(log, order);
      if (stats_format == "csv") {
        const auto& m = stats_matrix == "dfr" ? dfr : stats_matrix == "dpr" ? dpr : conn;
        emit(g, matrix_csv(log, m), out);
      } else {
        emit_json(g,
                  json{{"dfr", matrix_to_json(log, dfr)},
                       {"dpr", matrix_to_json(log, dpr)},
                       {"connectedness", matrix_to_json(log, conn)},
                       {"entropy", total_entropy(log)}},
                  out);
      }
      err << "log entropy " << total_entropy(log) << " bits\n";
      return kOk;
    }

    if (active == project) {
      const auto log = read_log(g, log_path, err);
      ProjectionFamily family;
      if (method_name == "markov") {
        const auto r = discover_markov_projections(log, mcl_params(project_method));
        if (!r.converged) err << "warning: MCL did not converge in " << r.iterations << " iterations\n";
        family = r.family;
      } else if (method_name == "entropy") {
        family = discover_entropy_projections(log, project_method.entropy_ratio, threads).family;
      } else {
        family = discover_mrig_projections(log, project_method.mrig_threshold, threads).family;
      }
      emit_json(g, family_to_json(log, family), out);
      err << method_name << ": " << family.sets.size() << " projection sets\n";
      return kOk;
    }

    if (active == discover_cmd) {
      const auto log = read_log(g, log_path, err);
      const auto params = discovery_params(discover_opts, threads);
      json result;
      bool timed_out = false;
      std::vector<std::string> warnings;
      Ranking ranking;
      if (!projections_path.empty()) {
        std::ifstream in(projections_path);
        if (!in) throw FormatError("cannot open '" + projections_path + "'");
        json fj;
        try {
          fj = json::parse(in);
        } catch (const json::exception& e) {
          throw FormatError(std::string("projection file is not valid JSON: ") + e.what());
        }
        const auto start = Clock::now();
        const auto family = family_from_json(log, fj);
        const double load_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        auto r = discover_with_projections(log, family, params);
        ranking = r.ranking;
        timed_out = r.timed_out;
        warnings = r.warnings;
        if (with_timing) result["timing"] = timing_json(r, load_seconds);
      } else {
        const auto start = Clock::now();
        auto r = discover(log, params);
        ranking = r.ranking;
        timed_out = r.timed_out;
        warnings = r.warnings;
        if (with_timing) {
          result["timing"] = json{{"discovery_seconds", std::chrono::duration<double>(Clock::now() - start).count()}};
        }
        err << "scored " << r.scored << " candidates, pruned " << r.pruned << "\n";
      }
      for (const auto& w : warnings) err << "warning: " << w << "\n";
      result["ranking"] = ranking_to_json(log, ranking);
      result["complete"] = !timed_out;
      if (timed_out && !g.allow_partial) return timeout_exit(g, err);
      emit_json(g, result, out);
      if (!dot_dir.empty()) export_dots(log, ranking, dot_dir);
      err << ranking.size() << " models ranked\n";
      return timed_out ? timeout_exit(g, err) : kOk;
    }

    if (active == evaluate_cmd) {
      const auto log = read_log(g, log_path, err);
      EvaluationConfig config;
      config.method.method = parse_projection_method(eval_method_name);
      config.method.mcl = mcl_params(eval_method);
      config.method.entropy_ratio = eval_method.entropy_ratio;
      config.method.mrig_threshold = eval_method.mrig_threshold;
      config.method.threads = threads;
      config.discovery = discovery_params(eval_discovery, threads);
      config.discovery.deadline.reset();
      config.repetitions = repetitions;
      config.seed = seed;
      config.cutoffs = cutoffs;
      config.timing = timing_mode == "wall" ? TimingMode::Wall : TimingMode::CpuSum;
      config.ground_truth_timeout = std::chrono::duration<double>(truth_timeout);
      const auto report = evaluate(log, config);
      for (const auto& w : report.warnings) err << "warning: " << w << "\n";
      if (!report.complete && !g.allow_partial) return timeout_exit(g, err);
      emit_json(g, report_to_json(log, report, eval_timing), out);
      if (!report.complete) return timeout_exit(g, err);
      if (!csv_row.empty()) {
        const bool fresh = !std::filesystem::exists(csv_row);
        std::ofstream row(csv_row, std::ios::app);
        if (!row) throw FormatError("cannot write '" + csv_row + "'");
        if (fresh) row << "method,k,recall,ndcg,baseline_recall,baseline_recall_se,baseline_ndcg,baseline_ndcg_se,speedup\n";
        for (auto k : config.cutoffs) {
          row << eval_method_name << "," << k << "," << report.recall_at.at(k) << "," << report.ndcg_at.at(k) << ","
              << report.baseline_recall_at.at(k).mean << "," << report.baseline_recall_at.at(k).standard_error << ","
              << report.baseline_ndcg_at.at(k).mean << "," << report.baseline_ndcg_at.at(k).standard_error << ","
              << report.speedup << "\n";
        }
      }
      err << eval_method_name << ": " << report.family.sets.size() << " projection sets, speedup " << report.speedup
          << "x (" << timing_mode << ")\n";
      for (auto k : config.cutoffs) {
        err << "  k=" << k << " recall " << report.recall_at.at(k) << " (random " << report.baseline_recall_at.at(k).mean
            << ") ndcg " << report.ndcg_at.at(k) << " (random " << report.baseline_ndcg_at.at(k).mean << ")\n";
      }
      return kOk;
    }

    if (active == export_cmd) {
      auto log = read_log(g, log_path, err);
      if (!model_text.empty()) {
        const auto tree = parse_tree(model_text, static_cast<const ActivityTable&>(log.activities()));
        emit(g, to_dot(tree_to_net(tree), log.activities(), "lpm"), out);
        return kOk;
      }
      std::ostringstream csv;
      if (!projection_arg.empty()) {
        write_csv(csv, project_log(log, parse_projection_arg(log, projection_arg)));
      } else {
        write_csv(csv, log);
      }
      emit(g, csv.str(), out);
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const TimeoutError& e) {
    err << "error: " << e.what() << "\n";
    return kTimeout;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}

}  // namespace lpmlens::cli
