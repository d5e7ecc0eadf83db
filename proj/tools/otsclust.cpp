// Command-line front end: simulation of benchmark scenarios, feature
// extraction, distance matrices, fuzzy C-medoids clustering, automatic
// lag selection, (C, m) grid selection, partition evaluation,
// two-dimensional scaling, and the Monte-Carlo benchmark harness.
//
// Exit codes: 0 ok, 2 configuration/validation error, 3 I/O error,
// 4 degenerate data. Logs go to stderr; data goes to files or stdout.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "otsclust/bench.hpp"
#include "otsclust/clustering.hpp"
#include "otsclust/core.hpp"
#include "otsclust/estimation.hpp"
#include "otsclust/eval.hpp"
#include "otsclust/io.hpp"
#include "otsclust/kernels.hpp"
#include "otsclust/lagsel.hpp"
#include "otsclust/metrics.hpp"
#include "otsclust/simgen.hpp"

namespace {

using namespace otsclust;
using nlohmann::json;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::io_error:
      return 3;
    case Errc::zero_dispersion:
    case Errc::zero_variance:
    case Errc::degenerate_distances:
    case Errc::all_cells_degenerate:
      return 4;
    default:
      return 2;
  }
}

std::vector<double> parse_grid(const std::string& text) {
  // Either "start:end:step" or a comma-separated list.
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    double start = 0.0, end = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> end >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0)
      raise(Errc::config_error, "grid '" + text + "' must be start:end:step or a comma list");
    for (double v = start; v <= end + 1e-12; v += step) grid.push_back(v);
  } else {
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) grid.push_back(std::stod(item));
  }
  if (grid.empty()) raise(Errc::config_error, "grid '" + text + "' is empty");
  return grid;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  if (text.find(':') != std::string::npos) {
    int start = 0, end = 0;
    char c = 0;
    std::istringstream in(text);
    if (!(in >> start >> c >> end) || c != ':' || end < start)
      raise(Errc::config_error, "range '" + text + "' must be start:end or a comma list");
    for (int v = start; v <= end; ++v) values.push_back(v);
  } else {
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) values.push_back(std::stoi(item));
  }
  if (values.empty()) raise(Errc::config_error, "list '" + text + "' is empty");
  return values;
}

/// Resolves --lags: "auto" runs the selection procedure, otherwise the
/// value is a comma-separated explicit list.
LagSet resolve_lags(const std::string& spec, const std::vector<OrdinalSeries>& data, double alpha,
                    int max_lag, unsigned threads) {
  if (spec == "auto") {
    LagSelectionConfig cfg;
    cfg.alpha = alpha;
    cfg.max_lag = max_lag;
    const auto report = select_lags(data, cfg, threads);
    std::ostringstream lags_text;
    for (int l : report.lag_set.lags()) lags_text << ' ' << l;
    std::cerr << "[otsclust] auto lag selection chose{" << lags_text.str() << " }"
              << (report.fallback ? " (fallback)" : "") << '\n';
    return report.lag_set;
  }
  return LagSet(parse_int_list(spec));
}

std::vector<std::string> series_ids(const std::vector<OrdinalSeries>& data) {
  std::vector<std::string> ids;
  ids.reserve(data.size());
  for (const auto& s : data) ids.push_back(s.id);
  return ids;
}

void write_json_output(const json& obj, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << obj.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) raise(Errc::io_error, "cannot open '" + path + "' for writing");
  out << obj.dump(2) << '\n';
}

struct CommonArgs {
  unsigned threads = 0;
};

int run(int argc, char** argv) {
  CLI::App app{"Fuzzy clustering toolkit for ordinal time series"};
  app.require_subcommand(1);

  CommonArgs common;
  app.add_option("--threads", common.threads, "Worker thread cap (default: all cores)");

  // --- simulate ---
  auto* sim = app.add_subcommand("simulate", "Generate a benchmark scenario data set");
  int sim_scenario = 1;
  std::string sim_length = "600";
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  sim->add_option("--scenario", sim_scenario, "Scenario id (1..7)")->required();
  sim->add_option("--length", sim_length, "Series length, or 'variable' (scenario 5)");
  sim->add_option("--seed", sim_seed, "Random seed");
  sim->add_option("-o,--output", sim_out, "Output directory")->required();

  // --- features ---
  auto* feat = app.add_subcommand("features", "Estimate per-series features");
  std::string feat_in, feat_out, feat_lags = "1";
  double feat_alpha = 0.05;
  int feat_maxlag = 10;
  feat->add_option("-i,--input", feat_in, "Series file (JSONL or CSV)")->required();
  feat->add_option("--lags", feat_lags, "Comma list of lags, or 'auto'");
  feat->add_option("--alpha", feat_alpha, "Significance level for --lags auto");
  feat->add_option("--max-lag", feat_maxlag, "Maximum lag for --lags auto");
  feat->add_option("-o,--output", feat_out, "Output JSON (default: stdout)");

  // --- distmat ---
  auto* dist = app.add_subcommand("distmat", "Compute a pairwise distance matrix");
  std::string dist_in, dist_out, dist_csv, dist_metric = "d1", dist_lags = "1";
  double dist_alpha = 0.05;
  int dist_maxlag = 10;
  dist->add_option("-i,--input", dist_in, "Series file")->required();
  dist->add_option("--metric", dist_metric, "Metric: d1, d2, pmf, acf");
  dist->add_option("--lags", dist_lags, "Comma list of lags, or 'auto'");
  dist->add_option("--alpha", dist_alpha, "Significance level for --lags auto");
  dist->add_option("--max-lag", dist_maxlag, "Maximum lag for --lags auto");
  dist->add_option("-o,--output", dist_out, "Output JSON")->required();
  dist->add_option("--csv", dist_csv, "Also write totals as CSV");

  // --- cluster ---
  auto* clus = app.add_subcommand("cluster", "Fuzzy C-medoids clustering");
  std::string clus_in, clus_out, clus_metric = "d1", clus_lags = "auto";
  int clus_c = 2, clus_restarts = 5, clus_maxiter = 100, clus_maxlag = 10;
  double clus_m = 2.0, clus_alpha = 0.05, clus_beta = 0.5;
  std::uint64_t clus_seed = 0;
  bool clus_weighted = false;
  clus->add_option("-i,--input", clus_in, "Series file")->required();
  clus->add_option("--metric", clus_metric, "Metric: d1, d2, pmf, acf");
  clus->add_option("--clusters", clus_c, "Cluster count C (>= 2)")->required();
  clus->add_option("--fuzziness", clus_m, "Fuzziness m (> 1)")->required();
  clus->add_option("--lags", clus_lags, "Comma list of lags, or 'auto'");
  clus->add_option("--alpha", clus_alpha, "Significance level for --lags auto");
  clus->add_option("--max-lag", clus_maxlag, "Maximum lag for --lags auto");
  clus->add_option("--seed", clus_seed, "Random seed");
  clus->add_option("--restarts", clus_restarts, "Restarts keeping the best objective");
  clus->add_option("--max-iter", clus_maxiter, "Iteration cap");
  clus->add_flag("--weighted", clus_weighted, "Weighted solver (learns beta)");
  clus->add_option("--initial-beta", clus_beta, "Starting beta for the weighted solver");
  clus->add_option("-o,--output", clus_out, "Partition JSON (default: stdout)");

  // --- select-lags ---
  auto* slag = app.add_subcommand("select-lags", "Automatic lag-set selection");
  std::string slag_in, slag_out;
  double slag_alpha = 0.05;
  int slag_maxlag = 5;
  slag->add_option("-i,--input", slag_in, "Series file")->required();
  slag->add_option("--alpha", slag_alpha, "Global significance level");
  slag->add_option("--max-lag", slag_maxlag, "Maximum lag to test");
  slag->add_option("-o,--output", slag_out, "Report JSON (default: stdout)");

  // --- select-cm ---
  auto* scm = app.add_subcommand("select-cm", "Joint (C, m) selection by validity indices");
  std::string scm_in, scm_out, scm_metric = "d1", scm_lags = "auto", scm_cgrid = "2:6",
              scm_mgrid = "1.1:4:0.1";
  double scm_alpha = 0.05;
  int scm_maxlag = 10, scm_restarts = 5, scm_maxiter = 100;
  std::uint64_t scm_seed = 0;
  scm->add_option("-i,--input", scm_in, "Series file")->required();
  scm->add_option("--metric", scm_metric, "Metric: d1, d2, pmf, acf");
  scm->add_option("--lags", scm_lags, "Comma list of lags, or 'auto'");
  scm->add_option("--alpha", scm_alpha, "Significance level for --lags auto");
  scm->add_option("--max-lag", scm_maxlag, "Maximum lag for --lags auto");
  scm->add_option("--c-grid", scm_cgrid, "Cluster grid, start:end or comma list");
  scm->add_option("--m-grid", scm_mgrid, "Fuzziness grid, start:end:step or comma list");
  scm->add_option("--seed", scm_seed, "Random seed");
  scm->add_option("--restarts", scm_restarts, "Restarts per grid cell");
  scm->add_option("--max-iter", scm_maxiter, "Iteration cap");
  scm->add_option("-o,--output", scm_out, "Selection JSON (default: stdout)");

  // --- evaluate ---
  auto* eval_cmd = app.add_subcommand("evaluate", "Score a partition against ground truth");
  std::string eval_part, eval_truth, eval_out;
  double eval_cutoff = 0.0;
  eval_cmd->add_option("--partition", eval_part, "Partition JSON")->required();
  eval_cmd->add_option("--truth", eval_truth, "Ground-truth labels JSON")->required();
  eval_cmd->add_option("--cutoff", eval_cutoff,
                       "Membership cutoff for the correct-classification criterion");
  eval_cmd->add_option("-o,--output", eval_out, "Report JSON (default: stdout)");

  // --- mds ---
  auto* mds_cmd = app.add_subcommand("mds", "Two-dimensional scaling of a distance matrix");
  std::string mds_in, mds_out;
  mds_cmd->add_option("-i,--input", mds_in, "Distance matrix JSON")->required();
  mds_cmd->add_option("-o,--output", mds_out, "Embedding CSV")->required();

  // --- bench ---
  auto* bench_cmd = app.add_subcommand("bench", "Monte-Carlo benchmark over a scenario");
  int bench_scenario = 1, bench_trials = 50, bench_restarts = 5, bench_maxiter = 100;
  std::string bench_length = "600", bench_metrics = "d1", bench_mgrid = "1.2,1.4,1.6,1.8,2.0",
              bench_lags, bench_out, bench_csv;
  std::uint64_t bench_seed = 0;
  double bench_cutoff = 0.0;
  bench_cmd->add_option("--scenario", bench_scenario, "Scenario id (1..7)")->required();
  bench_cmd->add_option("--length", bench_length, "Series length, or 'variable' (scenario 5)");
  bench_cmd->add_option("--metric", bench_metrics, "Comma list of metrics");
  bench_cmd->add_option("--m-grid", bench_mgrid, "Fuzziness grid");
  bench_cmd->add_option("--trials", bench_trials, "Trial count");
  bench_cmd->add_option("--seed", bench_seed, "Base seed; trial t uses seed + t");
  bench_cmd->add_option("--restarts", bench_restarts, "Solver restarts per cell");
  bench_cmd->add_option("--max-iter", bench_maxiter, "Iteration cap");
  bench_cmd->add_option("--lags", bench_lags, "Comma list of lags (default: scenario lags)");
  bench_cmd->add_option("--cutoff", bench_cutoff, "Membership cutoff (scenarios 6/7)");
  bench_cmd->add_option("-o,--output", bench_out, "Report JSON (default: stdout)");
  bench_cmd->add_option("--csv", bench_csv, "Trial-level CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (sim->parsed()) {
    std::optional<std::size_t> length;
    if (sim_length != "variable") length = static_cast<std::size_t>(std::stoull(sim_length));
    const auto data = scenario(sim_scenario, length, sim_seed);
    std::filesystem::create_directories(sim_out);
    const auto dir = std::filesystem::path(sim_out);
    write_series_jsonl((dir / "series.jsonl").string(), data.series);
    write_labels_json((dir / "labels.json").string(), series_ids(data.series), data.labels);
    std::cerr << "[otsclust] wrote " << data.series.size() << " series to " << sim_out << '\n';
    return 0;
  }

  if (feat->parsed()) {
    const auto data = read_series_file(feat_in);
    const LagSet lags = resolve_lags(feat_lags, data, feat_alpha, feat_maxlag, common.threads);
    const auto reprs = build_reprs(data, lags, common.threads);
    json out = json::array();
    for (const auto& r : reprs) {
      out.push_back({{"id", r.id},
                     {"n", r.n},
                     {"length", r.length},
                     {"lags", lags.lags()},
                     {"cumulative_marginal", r.cum_marginal},
                     {"pmf", r.pmf},
                     {"loc", r.features.loc},
                     {"disp", r.features.disp},
                     {"asym", r.features.asym},
                     {"skew", r.features.skew},
                     {"kappa", r.features.kappas},
                     {"acf", r.acf},
                     {"degenerate", r.degenerate}});
    }
    write_json_output(out, feat_out);
    return 0;
  }

  if (dist->parsed()) {
    const auto data = read_series_file(dist_in);
    const LagSet lags = resolve_lags(dist_lags, data, dist_alpha, dist_maxlag, common.threads);
    const auto matrix =
        pairwise_matrix(data, metric_from_name(dist_metric), lags, common.threads);
    write_matrix_json(dist_out, matrix);
    if (!dist_csv.empty()) write_matrix_csv(dist_csv, matrix);
    return 0;
  }

  if (clus->parsed()) {
    const auto data = read_series_file(clus_in);
    const LagSet lags = resolve_lags(clus_lags, data, clus_alpha, clus_maxlag, common.threads);
    const auto matrix =
        pairwise_matrix(data, metric_from_name(clus_metric), lags, common.threads);
    ClusterConfig cfg;
    cfg.clusters = clus_c;
    cfg.fuzziness = clus_m;
    cfg.max_iter = clus_maxiter;
    cfg.seed = clus_seed;
    cfg.weighted = clus_weighted;
    cfg.initial_beta = clus_beta;
    const auto part = cluster_with_restarts(matrix, cfg, clus_restarts, common.threads);
    if (clus_out.empty()) clus_out = "-";
    if (clus_out == "-") {
      // Partition JSON to stdout via a temporary buffer file is avoided;
      // reuse the writer against /dev/stdout.
      write_partition_json("/dev/stdout", part, matrix.ids(), cfg, metric_from_name(clus_metric),
                           lags);
    } else {
      write_partition_json(clus_out, part, matrix.ids(), cfg, metric_from_name(clus_metric),
                           lags);
    }
    return 0;
  }

  if (slag->parsed()) {
    const auto data = read_series_file(slag_in);
    LagSelectionConfig cfg;
    cfg.alpha = slag_alpha;
    cfg.max_lag = slag_maxlag;
    const auto report = select_lags(data, cfg, common.threads);
    if (slag_out.empty()) slag_out = "/dev/stdout";
    write_lag_report_json(slag_out, report, series_ids(data));
    return 0;
  }

  if (scm->parsed()) {
    const auto data = read_series_file(scm_in);
    const LagSet lags = resolve_lags(scm_lags, data, scm_alpha, scm_maxlag, common.threads);
    const auto matrix = pairwise_matrix(data, metric_from_name(scm_metric), lags, common.threads);
    const auto c_grid = parse_int_list(scm_cgrid);
    const auto m_grid = parse_grid(scm_mgrid);
    const auto sel =
        select_c_m(matrix, c_grid, m_grid, scm_seed, scm_restarts, scm_maxiter, common.threads);
    json cells = json::array();
    for (const auto& cell : sel.cells) {
      cells.push_back({{"clusters", cell.clusters},
                       {"fuzziness", cell.fuzziness},
                       {"valid", cell.valid},
                       {"xie_beni", cell.indices.xie_beni},
                       {"kwon", cell.indices.kwon},
                       {"tang", cell.indices.tang},
                       {"bensaid", cell.indices.bensaid},
                       {"standardized_average", cell.standardized_average}});
    }
    write_json_output(json{{"format", "ots-cmselection"},
                           {"version", 1},
                           {"metric", scm_metric},
                           {"lags", lags.lags()},
                           {"best_clusters", sel.best_clusters},
                           {"best_fuzziness", sel.best_fuzziness},
                           {"cells", cells}},
                      scm_out);
    return 0;
  }

  if (eval_cmd->parsed()) {
    const auto file = read_partition_json(eval_part);
    const auto labels = read_labels_json(eval_truth, file.ids);
    json out = {{"format", "ots-evaluation"}, {"version", 1}};
    const bool has_isolated =
        std::find(labels.begin(), labels.end(), "none") != labels.end();
    if (eval_cutoff > 0.0) {
      out["cutoff"] = eval_cutoff;
      out["correct"] = correct_classification(file.partition, labels, eval_cutoff);
    }
    if (!has_isolated) {
      std::vector<int> reference;
      std::map<std::string, int> label_ids;
      for (const auto& label : labels)
        reference.push_back(
            label_ids.emplace(label, static_cast<int>(label_ids.size())).first->second);
      const auto a = arif(reference, file.partition);
      const auto j = jif(reference, file.partition);
      out["arif"] = a.value;
      out["jif"] = j.value;
      if (a.degenerate || j.degenerate) out["degenerate"] = true;
    }
    write_json_output(out, eval_out);
    return 0;
  }

  if (mds_cmd->parsed()) {
    const auto matrix = read_matrix_json(mds_in);
    const auto embedding = mds_2d(matrix);
    write_embedding_csv(mds_out, embedding, matrix.ids());
    std::cerr << "[otsclust] stress " << embedding.stress << ", R^2 " << embedding.r_squared
              << '\n';
    return 0;
  }

  if (bench_cmd->parsed()) {
    BenchConfig cfg;
    cfg.scenario = bench_scenario;
    if (bench_length != "variable")
      cfg.length = static_cast<std::size_t>(std::stoull(bench_length));
    else
      cfg.length.reset();
    cfg.metrics.clear();
    {
      std::istringstream in(bench_metrics);
      std::string item;
      while (std::getline(in, item, ',')) cfg.metrics.push_back(metric_from_name(item));
    }
    cfg.m_grid = parse_grid(bench_mgrid);
    cfg.trials = bench_trials;
    cfg.seed = bench_seed;
    cfg.restarts = bench_restarts;
    cfg.max_iter = bench_maxiter;
    if (!bench_lags.empty()) cfg.lags = LagSet(parse_int_list(bench_lags));
    if (bench_cutoff > 0.0) cfg.cutoff = bench_cutoff;
    cfg.threads = common.threads;

    const auto result = run_bench(cfg);

    json cells = json::array();
    for (const auto& cell : result.cells) {
      json c = {{"metric", metric_name(cell.metric)}, {"fuzziness", cell.fuzziness}};
      if (result.cutoff_mode) {
        c["rate"] = cell.rate;
      } else {
        c["arif"] = cell.mean_arif;
        c["jif"] = cell.mean_jif;
      }
      cells.push_back(std::move(c));
    }
    json out = {{"format", "ots-bench"},
                {"version", 1},
                {"scenario", bench_scenario},
                {"trials", bench_trials},
                {"cells", cells}};
    if (!result.aufc.empty()) out["aufc"] = result.aufc;
    write_json_output(out, bench_out);

    if (!bench_csv.empty()) {
      std::ofstream csv(bench_csv);
      if (!csv) raise(Errc::io_error, "cannot open '" + bench_csv + "' for writing");
      csv << (result.cutoff_mode ? "trial,metric,m,success\n" : "trial,metric,m,arif,jif\n");
      for (const auto& rec : result.trial_records) {
        csv << rec.trial << ',' << metric_name(rec.metric) << ',' << rec.fuzziness;
        if (result.cutoff_mode)
          csv << ',' << (rec.success ? 1 : 0) << '\n';
        else
          csv << ',' << rec.arif << ',' << rec.jif << '\n';
      }
    }
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "[otsclust] error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "[otsclust] error: " << e.what() << '\n';
    return 2;
  }
}
