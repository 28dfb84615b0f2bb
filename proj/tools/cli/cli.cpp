#include "cli.hpp"

#include <rumorlab/analytics.hpp>
#include <rumorlab/harness.hpp>
#include <rumorlab/report_io.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace rumorlab::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

struct Options {
  // common
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  unsigned workers = 0;
  std::string format = "csv";
  std::string out_path;

  // experiment
  std::vector<std::string> protocols;
  std::string estimator = "first-timestamp";
  std::string adversary;
  std::string graph = "lazy-tree";
  int d = 4;
  double theta = 1.0;
  double lambda = 1.0;
  std::optional<double> t;
  std::optional<std::size_t> K;
  std::optional<double> p;
  std::optional<double> observe_at;
  std::size_t n = 0;
  int depth = 0;
  std::uint64_t graph_seed = 1;
  std::optional<int> source_degree;
  bool allow_large_degree = false;
  std::string dump_trace;
  bool verbose = false;

  // sweep / compare
  std::string axis;
  std::vector<std::string> values;

  // theory
  std::vector<std::string> formulas;
  std::vector<double> theory_d, theory_theta, theory_t, theory_p;
  bool table2 = false;

  // ingest
  std::string mapping_path;
};

/// Expands "1,2,5" and "1..8" style lists.
std::vector<double> expand_values(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& item : items) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_double(item));
      continue;
    }
    double lo = parse_double(item.substr(0, dots));
    double hi = parse_double(item.substr(dots + 2));
    if (lo != std::floor(lo) || hi != std::floor(hi) || hi < lo)
      throw std::invalid_argument("range '" + item + "' must be integer lo..hi with lo <= hi");
    for (double v = lo; v <= hi; v += 1.0) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("--values is empty");
  return out;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app->add_option("--trials", o.trials, "Monte Carlo trials per point")->capture_default_str();
  app->add_option("--workers", o.workers, "Worker threads (0 = all cores)")->capture_default_str();
  app->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_option("--out", o.out_path, "Output file (default: stdout)");
}

void add_experiment(CLI::App* app, Options& o, bool protocol_required) {
  auto* proto = app->add_option("--protocol", o.protocols, "trickle or diffusion")
                    ->check(CLI::IsMember({"trickle", "diffusion"}))
                    ->delimiter(',');
  if (protocol_required) proto->required()->expected(1);
  app->add_option("--estimator", o.estimator,
                  "first-timestamp | spy-first-timestamp | ball | trc | reporting-centrality | "
                  "rumor-center")
      ->capture_default_str();
  app->add_option("--adversary", o.adversary,
                  "eavesdropper | spy | snapshot (default follows the estimator)");
  app->add_option("--graph", o.graph,
                  "lazy-tree | regular-tree | random-regular | path to an edge list")
      ->capture_default_str();
  app->add_option("--d", o.d, "Tree / graph degree")->capture_default_str();
  app->add_option("--theta", o.theta, "Adversary connections (trickle) or report rate (diffusion)")
      ->capture_default_str();
  app->add_option("--lambda", o.lambda, "Diffusion spreading rate")->capture_default_str();
  app->add_option("--t", o.t, "Time horizon / estimation time");
  app->add_option("--K", o.K, "Stop after K infections");
  app->add_option("--p", o.p, "Spy probability");
  app->add_option("--observe-at", o.observe_at, "Observation time (default: stop time)");
  app->add_option("--n", o.n, "Nodes of a random regular graph");
  app->add_option("--depth", o.depth, "Depth of an explicit regular tree");
  app->add_option("--graph-seed", o.graph_seed, "Seed of the random regular graph")
      ->capture_default_str();
  app->add_option("--source-degree", o.source_degree, "Degree of the source on a lazy tree");
  app->add_flag("--allow-large-degree", o.allow_large_degree,
                "Let timestamp rumor centrality run on degree > 6");
  app->add_option("--dump-trace", o.dump_trace, "Write the spreading trace of trial 0 as CSV");
  app->add_flag("--verbose", o.verbose, "Print diagnostics to stderr");
}

ExperimentSpec make_spec(const Options& o, Protocol protocol) {
  ExperimentSpec spec;
  spec.spread.protocol = protocol;
  spec.spread.theta = o.theta;
  spec.spread.lambda = o.lambda;
  spec.spread.horizon.max_time = o.t;
  spec.spread.horizon.max_infections = o.K;
  spec.estimator = parse_estimator(o.estimator);

  if (!o.adversary.empty()) {
    spec.adversary.model = parse_adversary(o.adversary);
  } else if (spec.estimator == Method::spy_first_timestamp) {
    spec.adversary.model = AdversaryModel::spy;
  } else if (spec.estimator == Method::rumor_center) {
    spec.adversary.model = AdversaryModel::snapshot;
  }
  if (spec.adversary.model == AdversaryModel::spy && !o.p)
    throw std::invalid_argument("the spy adversary needs --p");
  spec.adversary.p = o.p.value_or(0.0);
  spec.adversary.t = o.observe_at;

  auto& g = spec.graph;
  g.d = o.d;
  g.depth = o.depth;
  g.n = o.n;
  g.graph_seed = o.graph_seed;
  g.source_degree = o.source_degree;
  try {
    g.model = parse_graph_model(o.graph);
  } catch (const std::invalid_argument&) {
    g.model = GraphModel::edge_list;
    g.path = o.graph;
  }
  if (g.model == GraphModel::random_regular && o.n == 0)
    throw std::invalid_argument("--graph random-regular needs --n");

  bool first_report_only = spec.estimator == Method::first_timestamp &&
                           spec.adversary.model == AdversaryModel::eavesdropper && !o.observe_at;
  if (!o.t && !o.K && !first_report_only && spec.estimator != Method::ball_centrality &&
      spec.estimator != Method::timestamp_rumor_centrality)
    spec.spread.horizon.max_infections = 500;

  spec.trials = o.trials;
  spec.master_seed = o.seed;
  spec.workers = o.workers;
  spec.trc.allow_large_degree = o.allow_large_degree;
  return spec;
}

json optional_json(const auto& v) { return v ? json(*v) : json(nullptr); }

json spec_json(const ExperimentSpec& spec) {
  json j;
  j["protocol"] = to_string(spec.spread.protocol);
  j["estimator"] = to_string(spec.estimator);
  j["adversary"] = to_string(spec.adversary.model);
  j["graph"] = to_string(spec.graph.model);
  if (spec.graph.model == GraphModel::edge_list) j["graph_path"] = spec.graph.path;
  if (spec.graph.model == GraphModel::random_regular) {
    j["n"] = spec.graph.n;
    j["graph_seed"] = spec.graph.graph_seed;
  }
  if (spec.graph.model == GraphModel::regular_tree) j["depth"] = spec.graph.depth;
  j["d"] = spec.graph.d;
  j["source_degree"] = optional_json(spec.graph.source_degree);
  j["theta"] = spec.spread.theta;
  j["lambda"] = spec.spread.lambda;
  j["t"] = optional_json(spec.spread.horizon.max_time);
  j["K"] = optional_json(spec.spread.horizon.max_infections);
  j["p"] = spec.adversary.p;
  j["observe_at"] = optional_json(spec.adversary.t);
  j["trials"] = spec.trials;
  j["seed"] = spec.master_seed;
  return j;
}

/// Output stream for --out, or the caller's stream.
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw std::runtime_error("cannot write " + path);
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }

private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void print_diagnostics(std::ostream& err, const DetectionReport& r) {
  const auto& d = r.diagnostics;
  err << "# " << to_string(r.spec.spread.protocol) << '/' << to_string(r.spec.estimator)
      << ": p_hat=" << r.p_hat << " no_estimate=" << d.no_estimate
      << " source_in_candidates=" << d.source_in_candidates << " max_candidates=" << d.max_candidates
      << " mean_stop_time=" << d.mean_stop_time << " mean_infected=" << d.mean_infected
      << " wall_time=" << r.wall_time << "s\n";
}

void emit_reports(const Options& o, const std::vector<DetectionReport>& reports, const json& config,
                  std::ostream& out, std::ostream& err) {
  std::vector<ReportRow> rows;
  for (const auto& r : reports) {
    rows.push_back(to_row(r));
    if (o.verbose) print_diagnostics(err, r);
  }
  Sink sink(o.out_path, out);
  if (o.format == "json")
    write_report_json(sink.get(), rows, config.dump());
  else
    write_report_csv(sink.get(), rows, config.dump());
}

Protocol single_protocol(const Options& o) { return parse_protocol(o.protocols.front()); }

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentSpec spec = make_spec(o, single_protocol(o));
  if (!o.dump_trace.empty()) {
    std::ofstream trace_out(o.dump_trace);
    if (!trace_out) throw std::runtime_error("cannot write " + o.dump_trace);
    write_trace_csv(trace_out, trace_for_trial(spec, 0));
  }
  DetectionReport report = run_experiment(spec);
  json config = spec_json(spec);
  config["subcommand"] = "simulate";
  config["version"] = kVersion;
  emit_reports(o, {report}, config, out, err);
  return ok;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentSpec base = make_spec(o, single_protocol(o));
  auto values = expand_values(o.values);
  auto reports = sweep(base, o.axis, values);
  json config = spec_json(base);
  config["subcommand"] = "sweep";
  config["axis"] = o.axis;
  config["values"] = values;
  config["version"] = kVersion;
  emit_reports(o, reports, config, out, err);
  return ok;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> protocols = o.protocols;
  if (protocols.empty()) protocols = {"trickle", "diffusion"};
  auto values = expand_values(o.values);

  std::vector<CompareRow> rows;
  json config;
  config["subcommand"] = "compare";
  config["axis"] = o.axis;
  config["values"] = values;
  config["runs"] = json::array();
  for (const auto& name : protocols) {
    ExperimentSpec base = make_spec(o, parse_protocol(name));
    config["runs"].push_back(spec_json(base));
    auto reports = sweep(base, o.axis, values);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      if (o.verbose) print_diagnostics(err, r);
      rows.push_back({name, std::string(to_string(r.spec.estimator)), o.axis, values[i], r.p_hat,
                      r.ci_low, r.ci_high, r.strict_win_rate,
                      r.theory ? std::optional<double>(r.theory->value) : std::nullopt});
    }
  }
  config["version"] = kVersion;
  Sink sink(o.out_path, out);
  if (o.format == "json")
    write_compare_json(sink.get(), rows, config.dump());
  else
    write_compare_csv(sink.get(), rows, config.dump());
  return ok;
}

std::vector<std::optional<double>> grid(const std::vector<double>& v) {
  if (v.empty()) return {std::nullopt};
  return {v.begin(), v.end()};
}

int cmd_theory(const Options& o, std::ostream& out) {
  if (o.formulas.empty() && !o.table2)
    throw std::invalid_argument("theory needs --formula or --table2");
  std::vector<Formula> formulas;
  for (const auto& f : o.formulas) formulas.push_back(parse_formula(f));

  std::vector<TheoryRow> rows;
  std::set<std::string> seen;
  auto add = [&](const TheoryValue& v) {
    TheoryRow row = to_row(v);
    std::string key = row.formula_id;
    for (const auto& x : {row.d, row.theta, row.t, row.p})
      key += "|" + (x ? format_double(*x) : std::string());
    if (seen.insert(key).second) rows.push_back(row);
  };

  for (auto d : grid(o.theory_d))
    for (auto theta : grid(o.theory_theta))
      for (auto t : grid(o.theory_t))
        for (auto p : grid(o.theory_p)) {
          TheoryParams params{d, theta, t, p,
                              o.source_degree ? std::optional<double>(*o.source_degree)
                                              : std::nullopt};
          for (Formula f : formulas) add(evaluate(f, params));
          if (o.table2) {
            if (!d || !theta) throw std::invalid_argument("--table2 needs --d and --theta");
            TheoryParams cell = params;
            if (!cell.t) cell.t = *d + 1;
            for (Formula f : {Formula::trickle_ft_lb, Formula::trickle_ml_lb, Formula::trickle_ml_ub,
                              Formula::diffusion_ft, Formula::rc_constant})
              add(evaluate(f, cell));
          }
        }

  json config;
  config["subcommand"] = "theory";
  config["formulas"] = o.formulas;
  config["table2"] = o.table2;
  config["d"] = o.theory_d;
  config["theta"] = o.theory_theta;
  config["t"] = o.theory_t;
  config["p"] = o.theory_p;
  config["source_degree"] = optional_json(o.source_degree);
  config["version"] = kVersion;
  Sink sink(o.out_path, out);
  if (o.format == "json")
    write_theory_json(sink.get(), rows, config.dump());
  else
    write_theory_csv(sink.get(), rows, config.dump());
  return ok;
}

int cmd_ingest(const Options& o, std::ostream& out) {
  LoadedGraph loaded = load_edge_list(o.graph);
  const Graph& g = loaded.graph;
  std::size_t min_deg = g.node_count() ? g.degree(0) : 0;
  for (NodeId v = 0; v < g.node_count(); ++v) min_deg = std::min(min_deg, g.degree(v));

  json summary;
  summary["nodes"] = g.node_count();
  summary["edges"] = g.edge_count();
  summary["components"] = component_count(g);
  summary["triangles"] = triangle_count(g);
  summary["min_degree"] = min_deg;
  summary["max_degree"] = g.max_degree();
  summary["mean_degree"] = g.node_count() ? 2.0 * g.edge_count() / g.node_count() : 0.0;

  if (!o.mapping_path.empty()) {
    std::ofstream map_out(o.mapping_path);
    if (!map_out) throw std::runtime_error("cannot write " + o.mapping_path);
    map_out << "node,original_id\n";
    for (std::size_t i = 0; i < loaded.original_ids.size(); ++i)
      map_out << i << ',' << loaded.original_ids[i] << '\n';
  }

  json config;
  config["subcommand"] = "ingest";
  config["graph_path"] = o.graph;
  config["version"] = kVersion;
  Sink sink(o.out_path, out);
  if (o.format == "json") {
    sink.get() << json{{"config", config}, {"summary", summary}}.dump(2) << '\n';
  } else {
    sink.get() << "# " << config.dump() << '\n'
               << "nodes,edges,components,triangles,min_degree,max_degree,mean_degree\n"
               << g.node_count() << ',' << g.edge_count() << ',' << component_count(g) << ','
               << triangle_count(g) << ',' << min_deg << ',' << g.max_degree() << ','
               << format_double(summary["mean_degree"].get<double>()) << '\n';
  }
  return ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rumor source detection lab: spreading simulation, estimators and theory", "rumorlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto* theory = app.add_subcommand("theory", "Evaluate closed-form detection probabilities");
  add_common(theory, o);
  theory->add_option("--formula", o.formulas, "Formula id(s)")->delimiter(',');
  theory->add_option("--d", o.theory_d, "Degree(s)")->delimiter(',');
  theory->add_option("--theta", o.theory_theta, "Theta value(s)")->delimiter(',');
  theory->add_option("--t", o.theory_t, "Time(s)")->delimiter(',');
  theory->add_option("--p", o.theory_p, "Spy probability(ies)")->delimiter(',');
  theory->add_option("--source-degree", o.source_degree, "Source degree for diffusion_ft_tree");
  theory->add_flag("--table2", o.table2, "Emit the summary table cells for each (d, theta)");

  auto* simulate = app.add_subcommand("simulate", "Run one Monte Carlo experiment");
  add_common(simulate, o);
  add_experiment(simulate, o, true);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment over a list of parameter values");
  add_common(sweep_cmd, o);
  add_experiment(sweep_cmd, o, true);
  sweep_cmd->add_option("--axis", o.axis, "d | theta | t | K | p | trials")->required();
  sweep_cmd->add_option("--values", o.values, "Comma list; a..b for integer ranges")
      ->required()
      ->delimiter(',');

  auto* compare = app.add_subcommand("compare", "Sweep trickle and diffusion side by side");
  add_common(compare, o);
  add_experiment(compare, o, false);
  compare->add_option("--axis", o.axis, "d | theta | t | K | p | trials")->required();
  compare->add_option("--values", o.values, "Comma list; a..b for integer ranges")
      ->required()
      ->delimiter(',');

  auto* ingest = app.add_subcommand("ingest", "Load an edge list and summarize it");
  add_common(ingest, o);
  ingest->add_option("--graph", o.graph, "Edge-list file")->required();
  ingest->add_option("--mapping", o.mapping_path, "Write dense-id to original-id mapping CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    if (*theory) return cmd_theory(o, out);
    if (*simulate) return cmd_simulate(o, out, err);
    if (*sweep_cmd) return cmd_sweep(o, out, err);
    if (*compare) return cmd_compare(o, out, err);
    if (*ingest) return cmd_ingest(o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return runtime_error;
  }
  return usage_error;
}

}  // namespace rumorlab::cli
