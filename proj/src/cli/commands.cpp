#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cli/csv.hpp"
#include "cli/report.hpp"
#include "stgc/causality.hpp"
#include "stgc/changepoint.hpp"
#include "stgc/dkf.hpp"
#include "stgc/estimator.hpp"
#include "stgc/rng.hpp"
#include "stgc/simulate.hpp"
#include "stgc/spatial.hpp"

namespace stgc::cli {

namespace fs = std::filesystem;

namespace {

struct PartitionFlags {
  int windows = 0;
  int window_length = 0;
  std::vector<int> changepoints;
  bool optimal = false;
  int l0 = kDefaultMinWindow;
  int m0 = 5;
  int stride = 5;
  long exhaustive_limit = 50000;
  std::vector<double> lambdas;

  [[nodiscard]] int count() const {
    return (windows > 0) + (window_length > 0) + !changepoints.empty() + optimal;
  }

  [[nodiscard]] SearchConfig search() const {
    SearchConfig cfg;
    cfg.m0 = m0;
    cfg.l0 = l0;
    cfg.stride = stride;
    cfg.exhaustive_limit = exhaustive_limit;
    cfg.lambda_grid = lambdas;
    return cfg;
  }
};

void add_partition_flags(CLI::App* cmd, PartitionFlags& p) {
  cmd->add_option("--windows", p.windows, "Number of equal windows");
  cmd->add_option("--window-length", p.window_length, "Length of equal windows");
  cmd->add_option("--changepoints", p.changepoints, "Explicit change-point set, e.g. 1,216,416,716,1201")
      ->delimiter(',');
  cmd->add_flag("--optimal", p.optimal, "Search the partition by BIC");
  cmd->add_option("--l0", p.l0, "Minimum window length")->capture_default_str();
  cmd->add_option("--m0", p.m0, "Largest number of windows searched")->capture_default_str();
  cmd->add_option("--stride", p.stride, "Candidate change-point spacing")->capture_default_str();
  cmd->add_option("--exhaustive-limit", p.exhaustive_limit, "Enumerate cells with at most this many partitions")
      ->capture_default_str();
  cmd->add_option("--lambda", p.lambdas, "Trade-off grid (default 0.02..1.0 step 0.02)")->delimiter(',');
}

// Partition from the flags; `source` names the flag that produced it.
ChangePointSet resolve_partition(const TimeSeriesPair& pair, const PartitionFlags& p, std::string& source,
                                 std::optional<SearchResult>& search) {
  if (p.windows > 0) {
    source = "windows";
    if (pair.T() / p.windows < 1) throw Error(ErrorCode::WindowTooShort, "too many windows for the series");
    return ChangePointSet::uniform(pair.T(), pair.T() / p.windows, p.l0);
  }
  if (p.window_length > 0) {
    source = "window_length";
    return ChangePointSet::uniform(pair.T(), p.window_length, p.l0);
  }
  if (!p.changepoints.empty()) {
    source = "changepoints";
    return ChangePointSet::validate(p.changepoints, pair.T(), p.l0);
  }
  if (p.optimal) {
    source = "optimal";
    search = search_optimal_partition(pair, p.search());
    return search->best.changepoints;
  }
  source = "trivial";
  return ChangePointSet::trivial(pair.T());
}

std::vector<Direction> directions_from(const std::string& text) {
  if (text == "both") return {Direction::x_to_y, Direction::y_to_x};
  return {parse_direction(text)};
}

void emit(const Json& j, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(output);
  if (!f) throw Error(ErrorCode::IoError, "cannot write '" + output + "'");
  f << j.dump(2) << '\n';
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

std::string rate_tag(double rate) {
  std::ostringstream s;
  s << rate << "hz";
  return s.str();
}

// Runs body(i) for i in [0, n) on up to `jobs` threads; the first error is
// rethrown after all workers stop.
template <typename Body>
void parallel_for(int n, int jobs, Body body) {
  jobs = std::clamp(jobs, 1, std::max(n, 1));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string kind;
  std::uint64_t seed = 1;
  int reps = 1;
  std::string out_dir;
  std::optional<double> u1;
  std::optional<double> u2;
  int jobs = 1;
  std::vector<double> rates{2.0, 1.0};
  double noise = 0.20;
  double a21 = 0.5;
  bool no_flip = false;
  double hrf_delay_x = 6.0;
  double hrf_delay_y = 6.0;
  int lfp_steps = 40000;
  int flip_step = 18000;
};

Json run_simulate(const SimulateArgs& a) {
  if (a.reps < 1) throw Error(ErrorCode::InvalidConfig, "--reps must be at least 1");
  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  if (ec || !fs::is_directory(a.out_dir)) throw Error(ErrorCode::IoError, "cannot create '" + a.out_dir + "'");

  BoldSimConfig bold;
  bold.sample_rates = a.rates;
  bold.noise_fraction_total = a.noise;
  bold.a21_magnitude = a.a21;
  bold.sign_flip = !a.no_flip;
  bold.hrf_x.delay_response = a.hrf_delay_x;
  bold.hrf_y.delay_response = a.hrf_delay_y;
  bold.lfp_steps = a.lfp_steps;
  bold.flip_step = a.flip_step;
  if (a.kind == "bold") bold.validate();

  std::vector<Json> entries(static_cast<std::size_t>(a.reps));
  parallel_for(a.reps, a.jobs, [&](int rep) {
    const auto r = static_cast<std::uint64_t>(rep);
    const std::uint64_t rep_seed = mix_seed(a.seed, r);
    char stem[64];
    std::snprintf(stem, sizeof stem, "%s_%04d", a.kind.c_str(), rep);
    Json e;
    e["index"] = rep;
    e["seed"] = rep_seed;
    Json files = Json::array();
    if (a.kind == "continuous") {
      const double u1 = a.u1.value_or(draw_uniform_parameter(a.seed, r, 0, 0.0, 1.0));
      const double u2 = a.u2.value_or(draw_uniform_parameter(a.seed, r, 1, 0.0, 1.0));
      const SimulatedPair sim = simulate_continuous(rep_seed, u1, u2);
      write_pair_csv(fs::path(a.out_dir) / (std::string(stem) + ".csv"), sim.pair);
      files.push_back(std::string(stem) + ".csv");
      e["u1"] = u1;
      e["u2"] = u2;
      e["truth_direction"] = "both";
    } else if (a.kind == "stepwise") {
      const double u1 = a.u1.value_or(draw_uniform_parameter(a.seed, r, 0, 0.5, 1.5));
      const SimulatedPair sim = simulate_stepwise(rep_seed, u1);
      write_pair_csv(fs::path(a.out_dir) / (std::string(stem) + ".csv"), sim.pair);
      files.push_back(std::string(stem) + ".csv");
      e["u1"] = u1;
      e["truth_changepoints"] = sim.truth->points();
      e["truth_direction"] = "x_to_y";
    } else {
      BoldSimConfig cfg = bold;
      cfg.seed = rep_seed;
      const BoldSimulation sim = simulate_bold(cfg);
      for (const auto& rate : sim.rates) {
        const std::string name = std::string(stem) + "_" + rate_tag(rate.rate_hz) + ".csv";
        write_pair_csv(fs::path(a.out_dir) / name, rate.pair);
        files.push_back(name);
      }
      e["truth_direction"] = sim.coupled ? "x_to_y" : "none";
    }
    e["files"] = std::move(files);
    entries[static_cast<std::size_t>(rep)] = std::move(e);
  });

  Json manifest;
  manifest["kind"] = a.kind;
  manifest["seed"] = a.seed;
  manifest["reps"] = a.reps;
  Json config;
  if (a.kind == "bold") {
    config["lfp_steps"] = bold.lfp_steps;
    config["lfp_dt"] = bold.lfp_dt;
    config["flip_step"] = bold.flip_step;
    config["sign_flip"] = bold.sign_flip;
    config["a11"] = bold.a11;
    config["a22"] = bold.a22;
    config["a21_magnitude"] = bold.a21_magnitude;
    config["neuronal_shift_steps"] = bold.neuronal_shift_steps;
    config["sample_rates"] = bold.sample_rates;
    config["noise_fraction_total"] = bold.noise_fraction_total;
    config["physiological_share"] = bold.physiological_share;
    config["burn_in_steps"] = bold.burn_in_steps;
    for (const auto& [key, h] : {std::pair{"hrf_x", bold.hrf_x}, std::pair{"hrf_y", bold.hrf_y}}) {
      config[key] = {{"delay_response", h.delay_response},         {"delay_undershoot", h.delay_undershoot},
                     {"dispersion_response", h.dispersion_response}, {"dispersion_undershoot", h.dispersion_undershoot},
                     {"ratio", h.ratio},                           {"onset", h.onset},
                     {"kernel_length", h.kernel_length}};
    }
  } else {
    config["steps"] = kToyModelSteps;
    if (a.u1) config["u1"] = *a.u1;
    if (a.u2) config["u2"] = *a.u2;
  }
  manifest["config"] = std::move(config);
  manifest["replicates"] = entries;
  std::ofstream f(fs::path(a.out_dir) / "manifest.json");
  if (!f) throw Error(ErrorCode::IoError, "cannot write manifest in '" + a.out_dir + "'");
  f << manifest.dump(2) << '\n';
  return manifest;
}

// ---------------------------------------------------------------------- gc

struct GcArgs {
  std::string input;
  std::string method = "classic";
  std::string direction = "both";
  double alpha = 0.05;
  bool no_standardize = false;
  int realign = 0;
  std::string label;
  std::string output;
  int mc_draws = 100000;
  std::uint64_t mc_seed = 0x5eed;
  DkfConfig dkf;
  PartitionFlags partition;
};

Json run_gc(const GcArgs& a) {
  const int nflags = a.partition.count();
  if (nflags > 1) {
    throw Error(ErrorCode::IncompatibleFlags, "use only one of --windows, --window-length, --changepoints, --optimal");
  }
  if ((a.method == "classic" || a.method == "dkf") && nflags > 0) {
    throw Error(ErrorCode::IncompatibleFlags, "method '" + a.method + "' does not take a partition");
  }
  if ((a.method == "average" || a.method == "cumulative") && nflags == 0) {
    throw Error(ErrorCode::IncompatibleFlags,
                "method '" + a.method + "' needs --windows, --window-length, --changepoints or --optimal");
  }

  TimeSeriesPair pair = read_pair_csv(a.input);
  if (a.realign != 0) pair = realign_bold(pair, a.realign);
  if (!a.no_standardize) pair = standardize(pair);

  Json report;
  report["input"] = a.input;
  report["method"] = a.method;
  report["standardized"] = !a.no_standardize;
  report["realign"] = a.realign;
  report["n_samples"] = pair.size();
  report["T"] = pair.T();
  report["dt"] = pair.dt();
  report["alpha"] = a.alpha;

  std::string source;
  std::optional<SearchResult> search;
  Json results = Json::array();
  if (a.method == "dkf") {
    for (const Direction d : directions_from(a.direction)) {
      Json r = to_json(dkf_gc(pair, a.dkf, d), a.alpha);
      r["label"] = a.label + direction_label(pair, d);
      results.push_back(std::move(r));
    }
    report["dkf"] = {{"order", a.dkf.order},
                     {"process_noise_var", a.dkf.process_noise_var},
                     {"obs_noise_var", a.dkf.obs_noise_var_init},
                     {"n_bootstrap", a.dkf.n_bootstrap},
                     {"warmup", a.dkf.warmup},
                     {"seed", a.dkf.seed}};
  } else {
    const ChangePointSet s = resolve_partition(pair, a.partition, source, search);
    report["partition"] = {{"source", source}, {"changepoints", s.points()}};
    const AverageGcOptions opts{a.mc_draws, a.mc_seed};
    for (const Direction d : directions_from(a.direction)) {
      const TvMvarFit fit = fit_tvmvar(pair, s, d);
      GcEstimate est;
      if (a.method == "classic") {
        est = cumulative_gc(fit);
        est.kind = GcKind::classic;
      } else if (a.method == "average") {
        est = average_gc(fit, opts);
      } else if (a.method == "cumulative") {
        est = cumulative_gc(fit);
      } else {
        throw Error(ErrorCode::InvalidConfig, "unknown method '" + a.method + "'");
      }
      Json r = to_json(est, a.alpha);
      r["label"] = a.label + direction_label(pair, d);
      results.push_back(std::move(r));
    }
    const TvMvarFit fit = fit_tvmvar(pair, s, Direction::x_to_y);
    report["llf"] = fit.llf;
    report["bic"] = bic_from_llf(fit.llf, pair.T());
  }
  report["results"] = std::move(results);
  if (search) report["search"] = to_json(*search);
  return report;
}

// -------------------------------------------------------------------- stgc

struct StgcArgs {
  std::string input;
  std::string roi_a;
  std::string roi_b;
  std::string flavor = "average";
  double alpha = 0.05;
  bool no_standardize = false;
  std::string label;
  std::string output;
  int mc_draws = 100000;
  std::uint64_t mc_seed = 0x5eed;
  PartitionFlags partition;
};

Json run_stgc(const StgcArgs& a) {
  const int nflags = a.partition.count();
  if (nflags > 1) {
    throw Error(ErrorCode::IncompatibleFlags, "use only one of --windows, --window-length, --changepoints, --optimal");
  }
  if (a.flavor == "classic" && nflags > 0) {
    throw Error(ErrorCode::IncompatibleFlags, "flavor 'classic' does not take a partition");
  }
  if (a.flavor != "classic" && a.flavor != "average" && a.flavor != "cumulative") {
    throw Error(ErrorCode::InvalidConfig, "unknown flavor '" + a.flavor + "'");
  }
  if (a.flavor != "classic" && nflags == 0) {
    throw Error(ErrorCode::IncompatibleFlags,
                "flavor '" + a.flavor + "' needs --windows, --window-length, --changepoints or --optimal");
  }

  RoiMatrix data = read_roi_csv(a.input);
  if (!a.no_standardize) {
    std::vector<std::vector<double>> cols;
    std::vector<std::string> rois;
    std::vector<std::string> ids;
    for (std::size_t v = 0; v < data.num_voxels(); ++v) {
      std::vector<double> c = data.column(v);
      standardize_in_place(c);
      cols.push_back(std::move(c));
      rois.push_back(data.roi_of(v));
      ids.push_back(data.voxel_id(v));
    }
    data = RoiMatrix(std::move(cols), std::move(rois), std::move(ids), data.dt());
  }

  StgcReport rep;
  std::string source = "trivial";
  if (a.flavor == "classic") {
    rep = voxel_level_gc(data, a.roi_a, a.roi_b);
  } else {
    StgcOptions opts;
    opts.flavor = a.flavor == "average" ? StgcFlavor::average : StgcFlavor::cumulative;
    opts.l0 = a.partition.l0;
    opts.average = {a.mc_draws, a.mc_seed};
    const int T = static_cast<int>(data.num_samples()) - 1;
    if (a.partition.windows > 0) {
      opts.partitioner = Partitioner::uniform;
      opts.window_length = T / a.partition.windows;
      source = "windows";
    } else if (a.partition.window_length > 0) {
      opts.partitioner = Partitioner::uniform;
      opts.window_length = a.partition.window_length;
      source = "window_length";
    } else if (!a.partition.changepoints.empty()) {
      opts.partitioner = Partitioner::fixed_set;
      opts.changepoints = a.partition.changepoints;
      source = "changepoints";
    } else {
      opts.partitioner = Partitioner::optimal_search;
      opts.search = a.partition.search();
      source = "optimal";
    }
    rep = stgc(data, a.roi_a, a.roi_b, opts);
  }

  Json report;
  report["input"] = a.input;
  report["flavor"] = a.flavor;
  report["partition_source"] = source;
  report["standardized"] = !a.no_standardize;
  report["roi_a"] = a.roi_a;
  report["roi_b"] = a.roi_b;
  Json result = to_json(rep.aggregate, std::nullopt);
  result["label"] = a.label + a.roi_a + "->" + a.roi_b;
  report["results"] = Json::array({result});
  report["stgc"] = to_json(rep, a.alpha);
  return report;
}

// ------------------------------------------------------------- reliability

struct ReliabilityArgs {
  std::string report1;
  std::string report2;
  std::string scatter;
  std::string output;
};

Json run_reliability(const ReliabilityArgs& a) {
  const std::vector<LabeledValue> s1 = labeled_values(read_json(a.report1));
  const std::vector<LabeledValue> s2 = labeled_values(read_json(a.report2));
  const double r = reliability(s1, s2);

  Json report;
  report["r"] = r;
  report["n"] = s1.size();
  Json pairs = Json::array();
  std::optional<std::ofstream> scatter;
  if (!a.scatter.empty()) {
    scatter.emplace(a.scatter);
    if (!*scatter) throw Error(ErrorCode::IoError, "cannot write '" + a.scatter + "'");
    *scatter << "label,session1,session2\n";
  }
  for (const auto& lv : s1) {
    const auto it = std::find_if(s2.begin(), s2.end(), [&](const LabeledValue& o) { return o.label == lv.label; });
    pairs.push_back({{"label", lv.label}, {"session1", lv.value}, {"session2", it->value}});
    if (scatter) *scatter << lv.label << ',' << format_double(lv.value) << ',' << format_double(it->value) << '\n';
  }
  report["pairs"] = std::move(pairs);
  return report;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-varying and spatio-temporal Granger causality"};
  app.set_config("--config", "", "Key/value file of default flag values");
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic corpus with a manifest");
  sim_cmd->add_option("kind", sim.kind, "continuous | stepwise | bold")
      ->required()
      ->check(CLI::IsMember({"continuous", "stepwise", "bold"}));
  sim_cmd->add_option("--seed", sim.seed, "Base seed")->capture_default_str();
  sim_cmd->add_option("--reps", sim.reps, "Number of replicates")->capture_default_str();
  sim_cmd->add_option("--out", sim.out_dir, "Output directory")->required();
  sim_cmd->add_option("--u1", sim.u1, "Fix u1 instead of drawing it per replicate");
  sim_cmd->add_option("--u2", sim.u2, "Fix u2 instead of drawing it per replicate");
  sim_cmd->add_option("--jobs", sim.jobs, "Parallel replicates")->capture_default_str();
  sim_cmd->add_option("--rates", sim.rates, "BOLD sample rates in Hz")->delimiter(',');
  sim_cmd->add_option("--noise", sim.noise, "BOLD total noise fraction")->capture_default_str();
  sim_cmd->add_option("--a21", sim.a21, "BOLD X->Y coupling magnitude")->capture_default_str();
  sim_cmd->add_flag("--no-flip", sim.no_flip, "Keep the BOLD coupling sign constant");
  sim_cmd->add_option("--hrf-delay-x", sim.hrf_delay_x, "HRF response delay of X (s)")->capture_default_str();
  sim_cmd->add_option("--hrf-delay-y", sim.hrf_delay_y, "HRF response delay of Y (s)")->capture_default_str();
  sim_cmd->add_option("--lfp-steps", sim.lfp_steps, "BOLD neuronal steps at 10 ms")->capture_default_str();
  sim_cmd->add_option("--flip-step", sim.flip_step, "BOLD step after which the coupling flips")
      ->capture_default_str();

  GcArgs gc;
  auto* gc_cmd = app.add_subcommand("gc", "Granger causality of a t,x,y CSV");
  gc_cmd->add_option("input", gc.input, "Input CSV")->required();
  gc_cmd->add_option("--method", gc.method, "classic | average | cumulative | dkf")
      ->check(CLI::IsMember({"classic", "average", "cumulative", "dkf"}))
      ->capture_default_str();
  gc_cmd->add_option("--direction", gc.direction, "x_to_y | y_to_x | both")->capture_default_str();
  gc_cmd->add_option("--alpha", gc.alpha, "Significance threshold")->capture_default_str();
  gc_cmd->add_flag("--no-standardize", gc.no_standardize, "Fit the raw series");
  gc_cmd->add_option("--realign", gc.realign, "Pair x[t+d] with y[t] before fitting");
  gc_cmd->add_option("--label", gc.label, "Prefix for result labels");
  gc_cmd->add_option("--output,-o", gc.output, "Write the report here instead of stdout");
  gc_cmd->add_option("--mc-draws", gc.mc_draws, "Monte Carlo draws for average GC")->capture_default_str();
  gc_cmd->add_option("--mc-seed", gc.mc_seed, "Monte Carlo seed")->capture_default_str();
  gc_cmd->add_option("--dkf-order", gc.dkf.order, "DKF model order")->capture_default_str();
  gc_cmd->add_option("--dkf-q", gc.dkf.process_noise_var, "DKF random-walk variance")->capture_default_str();
  gc_cmd->add_option("--dkf-r", gc.dkf.obs_noise_var_init, "DKF observation noise variance")->capture_default_str();
  gc_cmd->add_option("--bootstrap", gc.dkf.n_bootstrap, "DKF bootstrap replicates")->capture_default_str();
  gc_cmd->add_option("--warmup", gc.dkf.warmup, "DKF residuals dropped at the start")->capture_default_str();
  gc_cmd->add_option("--dkf-seed", gc.dkf.seed, "DKF bootstrap seed")->capture_default_str();
  add_partition_flags(gc_cmd, gc.partition);

  StgcArgs st;
  auto* st_cmd = app.add_subcommand("stgc", "Spatio-temporal GC between two ROIs");
  st_cmd->add_option("input", st.input, "ROI CSV with t,ROI:voxel,... columns")->required();
  st_cmd->add_option("--roi-a", st.roi_a, "Cause ROI")->required();
  st_cmd->add_option("--roi-b", st.roi_b, "Effect ROI")->required();
  st_cmd->add_option("--flavor", st.flavor, "classic | average | cumulative")->capture_default_str();
  st_cmd->add_option("--alpha", st.alpha, "Significance threshold for the per-pair table")->capture_default_str();
  st_cmd->add_flag("--no-standardize", st.no_standardize, "Fit the raw voxel series");
  st_cmd->add_option("--label", st.label, "Prefix for the result label");
  st_cmd->add_option("--output,-o", st.output, "Write the report here instead of stdout");
  st_cmd->add_option("--mc-draws", st.mc_draws, "Monte Carlo draws for average GC")->capture_default_str();
  st_cmd->add_option("--mc-seed", st.mc_seed, "Monte Carlo seed")->capture_default_str();
  add_partition_flags(st_cmd, st.partition);

  ReliabilityArgs rel;
  auto* rel_cmd = app.add_subcommand("reliability", "Pearson r between two sessions' reports");
  rel_cmd->add_option("report1", rel.report1, "First session report (or array of reports)")->required();
  rel_cmd->add_option("report2", rel.report2, "Second session report (or array of reports)")->required();
  rel_cmd->add_option("--scatter", rel.scatter, "Write label,session1,session2 CSV");
  rel_cmd->add_option("--output,-o", rel.output, "Write the result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*sim_cmd) {
      const Json manifest = run_simulate(sim);
      out << "wrote " << sim.reps << " replicate(s) to " << sim.out_dir << '\n';
    } else if (*gc_cmd) {
      emit(run_gc(gc), gc.output, out);
    } else if (*st_cmd) {
      emit(run_stgc(st), st.output, out);
    } else if (*rel_cmd) {
      emit(run_reliability(rel), rel.output, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace stgc::cli
