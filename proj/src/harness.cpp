#include "gmoea/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "gmoea/metrics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace gmoea {

namespace {

std::string canonical_algorithm(std::string tag) {
  if (tag == "GMOEA-star" || tag == "GMOEA_star") return "GMOEA*";
  if (tag == "GMOEA-minus" || tag == "GMOEA_minus" || tag == "GMOEA−") return "GMOEA-";
  return tag;
}

[[noreturn]] void bad_key(const std::string& key, const char* what) {
  throw ConfigError("config key '" + key + "': " + what);
}

class StrictObject {
 public:
  StrictObject(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected a JSON object");
  }

  template <typename T>
  T require(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError(where_ + ": missing required key '" + key + "'");
    return get<T>(key);
  }

  template <typename T>
  T get_or(const std::string& key, T fallback) {
    if (!j_.contains(key)) return fallback;
    return get<T>(key);
  }

  bool has(const std::string& key) {
    return j_.contains(key);
  }

  // every known key must be claimed through require/get_or before finish()
  void finish() {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end())
        throw ConfigError(where_ + ": unknown key '" + it.key() + "'");
  }

 private:
  template <typename T>
  T get(const std::string& key) {
    seen_.push_back(key);
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception&) {
      bad_key(key, "wrong type");
    }
  }

  const json& j_;
  std::string where_;
  std::vector<std::string> seen_;
};

}  // namespace

RunConfig parse_run_config(const json& j) {
  StrictObject o(j, "run config");
  RunConfig cfg;
  cfg.algorithm = canonical_algorithm(o.require<std::string>("algorithm"));
  cfg.problem = o.require<std::string>("problem");
  cfg.D = o.require<int>("D");
  cfg.seed = o.require<std::uint64_t>("seed");
  cfg.N = o.get_or<int>("N", 0);
  cfg.budget = o.get_or<long long>("budget", 0);
  cfg.trace_cadence = o.get_or<long long>("trace_cadence", 0);
  cfg.var.eta_c = o.get_or<double>("eta_c", 20.0);
  cfg.var.p_c = o.get_or<double>("p_c", 1.0);
  cfg.var.eta_m = o.get_or<double>("eta_m", 20.0);
  cfg.var.p_m = o.get_or<double>("p_m", -1.0);
  cfg.var.gan_share = o.get_or<double>("gan_share", 0.5);
  cfg.var.pm_on_gan = o.get_or<bool>("pm_on_gan", false);
  cfg.gan.epochs = o.get_or<int>("epochs", 200);
  cfg.gan.batch = o.get_or<int>("batch", 32);
  cfg.gan.lr_d = o.get_or<double>("lr_d", 1e-4);
  cfg.gan.lr_g = o.get_or<double>("lr_g", 4e-4);
  cfg.gan.beta1 = o.get_or<double>("beta1", 0.5);
  cfg.gan.beta2 = o.get_or<double>("beta2", 0.999);
  cfg.gan.adam_reset = o.get_or<bool>("adam_reset", false);
  cfg.gan.non_saturating = o.get_or<bool>("non_saturating", false);
  const std::string act = o.get_or<std::string>("hidden_activation", "relu");
  if (act == "relu") cfg.gan.hidden = Activation::Relu;
  else if (act == "sigmoid") cfg.gan.hidden = Activation::Sigmoid;
  else throw ConfigError("config key 'hidden_activation': expected 'relu' or 'sigmoid'");
  o.finish();
  cfg.resolve();
  return cfg;
}

namespace {

json parse_json_file(const std::string& path, const char* what) {
  std::ifstream f(path);
  if (!f) throw ConfigError(std::string(what) + ": cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is a 1-based offset into the input
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw ConfigError(std::string(what) + ": " + path + ":" + std::to_string(line) +
                      ": JSON parse error: " + e.what());
  }
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  return parse_run_config(parse_json_file(path, "run config"));
}

ordered_json run_config_to_json(const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  cfg.resolve();
  cfg.var.p_m = cfg.var.resolved_p_m(cfg.D);  // echo the explicit value
  ordered_json j;
  j["algorithm"] = cfg.algorithm;
  j["problem"] = cfg.problem;
  j["D"] = cfg.D;
  j["N"] = cfg.N;
  j["budget"] = cfg.budget;
  j["seed"] = cfg.seed;
  j["trace_cadence"] = cfg.trace_cadence;
  j["eta_c"] = cfg.var.eta_c;
  j["p_c"] = cfg.var.p_c;
  j["eta_m"] = cfg.var.eta_m;
  j["p_m"] = cfg.var.p_m;
  j["gan_share"] = cfg.var.gan_share;
  j["pm_on_gan"] = cfg.var.pm_on_gan;
  j["epochs"] = cfg.gan.epochs;
  j["batch"] = cfg.gan.batch;
  j["lr_d"] = cfg.gan.lr_d;
  j["lr_g"] = cfg.gan.lr_g;
  j["beta1"] = cfg.gan.beta1;
  j["beta2"] = cfg.gan.beta2;
  j["adam_reset"] = cfg.gan.adam_reset;
  j["non_saturating"] = cfg.gan.non_saturating;
  j["hidden_activation"] = cfg.gan.hidden == Activation::Relu ? "relu" : "sigmoid";
  return j;
}

ordered_json run_record_to_json(const RunRecord& rec, bool with_timing) {
  ordered_json j;
  j["config"] = run_config_to_json(rec.config);
  j["seed"] = rec.seed;
  j["fe_used"] = rec.fe_used;
  j["wall_ms"] = with_timing ? rec.wall_ms : 0;
  j["snapshots"] = ordered_json::array();
  for (const auto& s : rec.snapshots) {
    ordered_json js;
    js["fe"] = s.fe;
    js["igd"] = s.igd;
    js["hv"] = s.hv;
    j["snapshots"].push_back(std::move(js));
  }
  j["final_objectives"] = rec.final_objectives;
  j["final_decisions"] = rec.final_decisions;
  return j;
}

std::string serialize_record(const RunRecord& rec, bool with_timing) {
  return run_record_to_json(rec, with_timing).dump(2) + "\n";
}

RunRecord parse_run_record(const json& j) {
  StrictObject o(j, "run record");
  RunRecord rec;
  if (!j.contains("config")) throw ConfigError("run record: missing 'config'");
  rec.config = parse_run_config(j.at("config"));
  rec.seed = o.require<std::uint64_t>("seed");
  o.require<json>("config");
  rec.fe_used = o.require<long long>("fe_used");
  rec.wall_ms = o.require<long long>("wall_ms");
  const json snaps = o.require<json>("snapshots");
  if (!snaps.is_array()) throw ConfigError("run record: 'snapshots' must be an array");
  for (const auto& js : snaps) {
    StrictObject so(js, "snapshot");
    Snapshot s;
    s.fe = so.require<long long>("fe");
    s.igd = so.require<double>("igd");
    s.hv = so.require<double>("hv");
    so.finish();
    rec.snapshots.push_back(s);
  }
  rec.final_objectives = o.require<std::vector<ObjectiveVector>>("final_objectives");
  rec.final_decisions = o.require<std::vector<DecisionVector>>("final_decisions");
  o.finish();
  return rec;
}

RunRecord load_run_record(const std::string& path) {
  return parse_run_record(parse_json_file(path, "run record"));
}

ExperimentPlan parse_plan(const json& j) {
  StrictObject o(j, "experiment plan");
  ExperimentPlan plan;
  const json cells = o.require<json>("cells");
  if (!cells.is_array() || cells.empty())
    throw ConfigError("experiment plan: 'cells' must be a non-empty array");
  for (const auto& jc : cells) {
    StrictObject oc(jc, "plan cell");
    ExperimentPlan::Cell c;
    c.algorithm = canonical_algorithm(oc.require<std::string>("algorithm"));
    c.problem = oc.require<std::string>("problem");
    c.D = oc.require<int>("D");
    oc.finish();
    if (!is_known_algorithm(c.algorithm))
      throw ConfigError("experiment plan: unknown algorithm '" + c.algorithm + "'");
    make_problem(c.problem, c.D);  // validates
    plan.cells.push_back(std::move(c));
  }
  plan.runs = o.get_or<int>("runs", 20);
  if (plan.runs < 1) throw ConfigError("experiment plan: 'runs' must be >= 1");
  plan.base_seed = o.get_or<std::uint64_t>("base_seed", 1);
  plan.out_dir = o.get_or<std::string>("out_dir", "records");
  plan.parallelism = o.get_or<int>("parallelism", 1);
  if (plan.parallelism < 1) throw ConfigError("experiment plan: 'parallelism' must be >= 1");
  if (o.has("overrides")) plan.overrides = o.require<json>("overrides");
  o.finish();
  if (!plan.overrides.is_null()) {
    StrictObject ov(plan.overrides, "plan overrides");
    // validated per-cell in cell_run_config; here only the shape
  }
  return plan;
}

ExperimentPlan load_plan(const std::string& path) {
  return parse_plan(parse_json_file(path, "experiment plan"));
}

std::string record_path(const std::string& out_dir, const ExperimentPlan::Cell& cell, int run) {
  return out_dir + "/" + cell.problem + "_" + std::to_string(cell.D) + "/" +
         algorithm_slug(cell.algorithm) + "/run_" + std::to_string(run) + ".json";
}

RunConfig cell_run_config(const ExperimentPlan& plan, const ExperimentPlan::Cell& cell, int run) {
  json j = plan.overrides.is_null() ? json::object() : plan.overrides;
  if (j.contains("algorithm") || j.contains("problem") || j.contains("D") || j.contains("seed"))
    throw ConfigError("plan overrides may not set algorithm/problem/D/seed");
  j["algorithm"] = cell.algorithm;
  j["problem"] = cell.problem;
  j["D"] = cell.D;
  j["seed"] = plan.base_seed + static_cast<std::uint64_t>(run);
  return parse_run_config(j);
}

void run_experiment(const ExperimentPlan& plan, std::ostream& log, bool with_timing) {
  struct Task {
    const ExperimentPlan::Cell* cell;
    int run;
  };
  std::vector<Task> tasks;
  for (const auto& cell : plan.cells)
    for (int r = 0; r < plan.runs; ++r) tasks.push_back({&cell, r});

  // validate every config up front so failures happen before any work
  for (const auto& t : tasks) cell_run_config(plan, *t.cell, t.run);

  int threads = plan.parallelism;
  if (const char* env = std::getenv("GMOEA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw ConfigError("GMOEA_THREADS must be a positive integer, got '" + std::string(env) +
                        "'");
    threads = static_cast<int>(v);
  }
  threads = std::min<int>(threads, static_cast<int>(tasks.size()));

  for (const auto& cell : plan.cells)
    fs::create_directories(fs::path(plan.out_dir) / (cell.problem + "_" + std::to_string(cell.D)) /
                           algorithm_slug(cell.algorithm));

  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  std::vector<std::string> failures;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      try {
        const RunConfig cfg = cell_run_config(plan, *t.cell, t.run);
        const RunRecord rec = run_algorithm(cfg);
        const std::string path = record_path(plan.out_dir, *t.cell, t.run);
        std::ofstream f(path, std::ios::binary);
        if (!f) throw StateError("cannot write " + path);
        f << serialize_record(rec, with_timing);
        std::lock_guard<std::mutex> lk(log_mutex);
        log << t.cell->problem << " D=" << t.cell->D << " " << t.cell->algorithm << " run "
            << t.run << ": fe=" << rec.fe_used << " igd=" << rec.snapshots.back().igd
            << " wall_ms=" << rec.wall_ms << "\n";
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(log_mutex);
        failures.push_back(e.what());
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (!failures.empty())
    throw StateError("experiment: " + std::to_string(failures.size()) +
                     " run(s) failed; first: " + failures.front());
}

// ---------------------------------------------------------------------------
// stats / trace
// ---------------------------------------------------------------------------

namespace {

struct LoadedRecord {
  RunRecord rec;
  int run = 0;
};

// records grouped as group[(problem, D)][algorithm] -> runs
using RecordTree =
    std::map<std::pair<std::string, int>, std::map<std::string, std::vector<LoadedRecord>>>;

int problem_order(const std::string& name) {
  const auto& names = problem_names();
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? static_cast<int>(names.size()) : static_cast<int>(it - names.begin());
}

int algorithm_order(const std::string& tag) {
  const auto it = std::find(kAlgorithmTags.begin(), kAlgorithmTags.end(), tag);
  return it == kAlgorithmTags.end() ? static_cast<int>(kAlgorithmTags.size())
                                    : static_cast<int>(it - kAlgorithmTags.begin());
}

RecordTree load_records(const std::string& dir) {
  if (!fs::is_directory(dir)) throw ConfigError("records directory not found: " + dir);
  RecordTree tree;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.rfind("run_", 0) != 0 || entry.path().extension() != ".json") continue;
    LoadedRecord lr;
    lr.rec = load_run_record(entry.path().string());
    try {
      lr.run = std::stoi(name.substr(4, name.size() - 9));
    } catch (...) {
      lr.run = 0;
    }
    tree[{lr.rec.config.problem, lr.rec.config.D}][lr.rec.config.algorithm].push_back(
        std::move(lr));
  }
  if (tree.empty()) throw ConfigError("no run_<k>.json records found under " + dir);
  for (auto& [cell, algs] : tree)
    for (auto& [alg, recs] : algs)
      std::sort(recs.begin(), recs.end(),
                [](const LoadedRecord& a, const LoadedRecord& b) { return a.run < b.run; });
  return tree;
}

double quantile(std::vector<double> v, double p) {  // linear interpolation
  std::sort(v.begin(), v.end());
  if (v.size() == 1) return v[0];
  const double idx = p * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(idx);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = idx - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

std::string fmt_double(double v) { return json(v).dump(); }  // shortest round-trip

struct StatsRow {
  std::string problem;
  int D = 0;
  std::string algorithm;
  double igd_median = 0, igd_iqr = 0, hv_median = 0, hv_iqr = 0;
  std::string symbol;
  bool best_igd = false, best_hv = false;
};

std::vector<StatsRow> build_stats(const RecordTree& tree, const std::string& ref_algorithm) {
  std::vector<StatsRow> rows;
  for (const auto& [cell, algs] : tree) {
    std::vector<std::string> tags;
    for (const auto& [alg, _] : algs) tags.push_back(alg);
    std::sort(tags.begin(), tags.end(), [](const std::string& a, const std::string& b) {
      return algorithm_order(a) < algorithm_order(b);
    });

    const auto ref_it = algs.find(ref_algorithm);
    std::vector<StatsRow> group;
    for (const auto& tag : tags) {
      const auto& recs = algs.at(tag);
      std::vector<double> igds, hvs;
      for (const auto& lr : recs) {
        igds.push_back(final_indicator(lr.rec, Indicator::Igd));
        hvs.push_back(final_indicator(lr.rec, Indicator::Hv));
      }
      StatsRow row;
      row.problem = cell.first;
      row.D = cell.second;
      row.algorithm = tag;
      row.igd_median = quantile(igds, 0.5);
      row.igd_iqr = quantile(igds, 0.75) - quantile(igds, 0.25);
      row.hv_median = quantile(hvs, 0.5);
      row.hv_iqr = quantile(hvs, 0.75) - quantile(hvs, 0.25);
      if (tag == ref_algorithm && ref_it != algs.end()) {
        row.symbol = "ref";
      } else if (ref_it == algs.end()) {
        row.symbol = "n/a";  // reference missing in this cell
      } else {
        std::vector<RunRecord> a, b;
        for (const auto& lr : recs) a.push_back(lr.rec);
        for (const auto& lr : ref_it->second) b.push_back(lr.rec);
        if (a.size() < 2 || b.size() < 2) {
          row.symbol = "n/a";
        } else {
          const CompareResult c = compare(a, b, Indicator::Igd);
          row.symbol = c.symbol == '+' ? "+" : (c.symbol == '-' ? "-" : "=");
        }
      }
      group.push_back(std::move(row));
    }
    // best-cell markers by median
    if (!group.empty()) {
      std::size_t bi = 0, bh = 0;
      for (std::size_t i = 1; i < group.size(); ++i) {
        if (group[i].igd_median < group[bi].igd_median) bi = i;
        if (group[i].hv_median > group[bh].hv_median) bh = i;
      }
      group[bi].best_igd = true;
      group[bh].best_hv = true;
    }
    rows.insert(rows.end(), group.begin(), group.end());
  }
  std::stable_sort(rows.begin(), rows.end(), [](const StatsRow& a, const StatsRow& b) {
    if (problem_order(a.problem) != problem_order(b.problem))
      return problem_order(a.problem) < problem_order(b.problem);
    if (a.D != b.D) return a.D < b.D;
    return algorithm_order(a.algorithm) < algorithm_order(b.algorithm);
  });
  return rows;
}

}  // namespace

void write_stats(const std::string& records_dir, const std::string& ref_algorithm,
                 std::ostream& csv, std::ostream& text) {
  const RecordTree tree = load_records(records_dir);

  std::string ref = ref_algorithm;
  if (ref.empty()) {
    ref = "GMOEA";
    bool found = false;
    for (const auto& [cell, algs] : tree) found |= algs.count("GMOEA") > 0;
    if (!found) ref = tree.begin()->second.begin()->first;
  } else {
    ref = canonical_algorithm(ref);
  }

  const std::vector<StatsRow> rows = build_stats(tree, ref);

  csv << "problem,D,algorithm,igd_median,igd_iqr,hv_median,hv_iqr,symbol_vs_ref\n";
  for (const auto& r : rows)
    csv << r.problem << ',' << r.D << ',' << r.algorithm << ',' << fmt_double(r.igd_median) << ','
        << fmt_double(r.igd_iqr) << ',' << fmt_double(r.hv_median) << ',' << fmt_double(r.hv_iqr)
        << ',' << r.symbol << "\n";

  text << std::left << std::setw(9) << "problem" << std::setw(6) << "D" << std::setw(12)
       << "algorithm" << std::setw(14) << "igd_median" << std::setw(13) << "igd_iqr"
       << std::setw(14) << "hv_median" << std::setw(13) << "hv_iqr" << "vs " << ref << "\n";
  std::ostringstream num;
  auto short_num = [](double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
  };
  for (const auto& r : rows) {
    text << std::left << std::setw(9) << r.problem << std::setw(6) << r.D << std::setw(12)
         << r.algorithm << std::setw(14) << (short_num(r.igd_median) + (r.best_igd ? "*" : ""))
         << std::setw(13) << short_num(r.igd_iqr) << std::setw(14)
         << (short_num(r.hv_median) + (r.best_hv ? "*" : "")) << std::setw(13)
         << short_num(r.hv_iqr) << r.symbol << "\n";
  }
}

void write_trace(const std::string& records_dir, std::ostream& csv) {
  const RecordTree tree = load_records(records_dir);
  csv << "problem,D,algorithm,run,fe,igd,hv\n";
  std::vector<std::pair<std::pair<std::string, int>, std::string>> cells;
  for (const auto& [cell, algs] : tree)
    for (const auto& [alg, _] : algs) cells.push_back({cell, alg});
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    if (problem_order(a.first.first) != problem_order(b.first.first))
      return problem_order(a.first.first) < problem_order(b.first.first);
    if (a.first.second != b.first.second) return a.first.second < b.first.second;
    return algorithm_order(a.second) < algorithm_order(b.second);
  });
  for (const auto& [cell, alg] : cells)
    for (const auto& lr : tree.at(cell).at(alg))
      for (const auto& s : lr.rec.snapshots)
        csv << cell.first << ',' << cell.second << ',' << alg << ',' << lr.run << ',' << s.fe
            << ',' << fmt_double(s.igd) << ',' << fmt_double(s.hv) << "\n";
}

// ---------------------------------------------------------------------------
// CLI
// ---------------------------------------------------------------------------

namespace {

void write_file_or_stream(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw StateError("cannot write " + path);
  f << content;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"GAN-assisted multiobjective evolutionary optimization harness"};
  app.require_subcommand(1);

  // --- run ---
  auto* cmd_run = app.add_subcommand("run", "Execute a single run config, emit its record");
  std::string run_config_path, run_out_path;
  bool run_timing = false;
  cmd_run->add_option("config", run_config_path, "Run config JSON file")->required();
  cmd_run->add_option("-o,--out", run_out_path, "Record output path (default stdout)");
  cmd_run->add_flag("--timing", run_timing,
                    "Embed measured wall_ms (breaks byte reproducibility)");

  // --- experiment ---
  auto* cmd_exp = app.add_subcommand("experiment", "Execute every run of an experiment plan");
  std::string plan_path;
  bool exp_timing = false;
  cmd_exp->add_option("plan", plan_path, "Experiment plan JSON file")->required();
  cmd_exp->add_flag("--timing", exp_timing,
                    "Embed measured wall_ms (breaks byte reproducibility)");

  // --- stats ---
  auto* cmd_stats = app.add_subcommand("stats", "Summarize a record tree (medians, IQRs, tests)");
  std::string stats_dir, stats_ref, stats_csv_path;
  cmd_stats->add_option("records", stats_dir, "Directory of run records")->required();
  cmd_stats->add_option("--ref", stats_ref, "Reference algorithm for the rank-sum symbol");
  cmd_stats->add_option("--csv", stats_csv_path, "Write the CSV here ('-' for stdout)");

  // --- trace ---
  auto* cmd_trace = app.add_subcommand("trace", "Convergence-profile CSV from a record tree");
  std::string trace_dir, trace_out;
  cmd_trace->add_option("records", trace_dir, "Directory of run records")->required();
  cmd_trace->add_option("-o,--out", trace_out, "CSV output path (default stdout)");

  // --- losses ---
  auto* cmd_losses = app.add_subcommand("losses", "Run a config and emit its GAN loss trace CSV");
  std::string losses_config_path, losses_out;
  cmd_losses->add_option("config", losses_config_path, "Run config JSON file")->required();
  cmd_losses->add_option("-o,--out", losses_out, "CSV output path (default stdout)");

  // --- problems ---
  auto* cmd_problems = app.add_subcommand("problems", "List the benchmark suite");

  std::vector<std::string> argv = args;
  try {
    std::vector<const char*> cargv;
    cargv.push_back("gmoea");
    for (const auto& a : argv) cargv.push_back(a.c_str());
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (cmd_run->parsed()) {
      RunConfig cfg;
      try {
        cfg = load_run_config(run_config_path);
      } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
      }
      const RunRecord rec = run_algorithm(cfg);
      err << "run complete: fe=" << rec.fe_used << " wall_ms=" << rec.wall_ms << "\n";
      write_file_or_stream(run_out_path, serialize_record(rec, run_timing), out);
      return 0;
    }
    if (cmd_exp->parsed()) {
      ExperimentPlan plan;
      try {
        plan = load_plan(plan_path);
        // validate configs up front; config problems exit 1
        for (const auto& cell : plan.cells)
          for (int r = 0; r < plan.runs; ++r) cell_run_config(plan, cell, r);
        if (const char* env = std::getenv("GMOEA_THREADS")) (void)env;
      } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
      }
      run_experiment(plan, err, exp_timing);
      return 0;
    }
    if (cmd_stats->parsed()) {
      std::ostringstream csv, text;
      try {
        write_stats(stats_dir, stats_ref, csv, text);
      } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
      }
      out << text.str();
      if (!stats_csv_path.empty()) write_file_or_stream(stats_csv_path, csv.str(), out);
      return 0;
    }
    if (cmd_trace->parsed()) {
      std::ostringstream csv;
      try {
        write_trace(trace_dir, csv);
      } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
      }
      write_file_or_stream(trace_out, csv.str(), out);
      return 0;
    }
    if (cmd_losses->parsed()) {
      RunConfig cfg;
      try {
        cfg = load_run_config(losses_config_path);
      } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
      }
      const RunRecord rec = run_algorithm(cfg);
      std::ostringstream csv;
      write_loss_trace_csv(rec.losses, csv);
      write_file_or_stream(losses_out, csv.str(), out);
      return 0;
    }
    if (cmd_problems->parsed()) {
      out << std::left << std::setw(9) << "problem" << std::setw(4) << "M" << std::setw(22)
          << "D presets" << std::setw(30) << "budgets" << "N\n";
      for (const auto& name : problem_names()) {
        const ProblemSpec spec = make_problem(name, 30);
        std::ostringstream dims, budgets;
        for (int d : dimension_presets()) {
          dims << d << " ";
          budgets << budget_for_dimension(d) << " ";
        }
        out << std::left << std::setw(9) << name << std::setw(4) << spec.M << std::setw(22)
            << dims.str() << std::setw(30) << budgets.str()
            << default_population_size(spec.M) << "\n";
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "runtime error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace gmoea
