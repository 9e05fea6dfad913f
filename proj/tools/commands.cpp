#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

#include "phwo/golden.hpp"
#include "phwo/qa.hpp"
#include "phwo/spectral.hpp"
#include "phwo/svd.hpp"
#include "phwo/tts.hpp"

namespace phwocli {

using namespace phwo;

// ---------------------------------------------------------------- common --

CostFunction ProblemSpec::build() const {
  if (problem == "plain_hw") return make_plain_hw(n);
  if (problem == "plateau") return make_plateau(n, l, u);
  if (problem == "spike") return make_spike(n);
  if (problem == "convex") return make_convex_perturbed(n);
  if (problem == "vandam") return make_vandam(n);
  if (problem == "custom") return load_cost_file(cost_file);
  throw std::invalid_argument("unknown problem '" + problem + "'");
}

json ProblemSpec::describe() const {
  json j;
  j["problem"] = problem;
  j["n"] = n;
  if (problem == "plateau") {
    j["l"] = l;
    j["u"] = u;
  }
  if (problem == "custom") j["cost_file"] = cost_file;
  return j;
}

int worker_count() {
  if (const char* env = std::getenv("PHWO_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f) {
  const int workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        f(i);
    });
  for (auto& t : pool) t.join();
}

std::uint64_t config_hash(const json& manifest) {
  json core;
  for (const char* key : {"subcommand", "problem", "params"})
    if (manifest.contains(key)) core[key] = manifest.at(key);
  const std::string dump = core.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

CsvWriter::CsvWriter(const std::string& path, std::uint64_t hash,
                     const std::vector<std::string>& columns) {
  f = std::fopen(path.c_str(), "w");
  if (f == nullptr) fail_json("io", "cannot open output file " + path);
  std::fprintf(f, "# config %016llx\n", static_cast<unsigned long long>(hash));
  for (std::size_t i = 0; i < columns.size(); ++i)
    std::fprintf(f, "%s%s", i ? "," : "", columns[i].c_str());
  std::fprintf(f, "\n");
}

CsvWriter::~CsvWriter() {
  if (f != nullptr) std::fclose(f);
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    std::fprintf(f, "%s%.17g", i ? "," : "", values[i]);
  std::fprintf(f, "\n");
}

void CsvWriter::raw_row(const std::string& line) {
  std::fprintf(f, "%s\n", line.c_str());
}

void write_manifest(const std::string& out_base, const json& manifest) {
  json full = manifest;
  full["config_hash"] =
      json::string_t(([](std::uint64_t h) {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(h));
        return std::string(buf);
      })(config_hash(manifest)));
  full["timestamp"] = static_cast<long long>(std::time(nullptr));
  const std::string path = out_base + ".manifest.json";
  FILE* f = std::fopen(path.c_str(), "w");
  if (f == nullptr) fail_json("io", "cannot open manifest file " + path);
  const std::string dump = full.dump(2);
  std::fwrite(dump.data(), 1, dump.size(), f);
  std::fputc('\n', f);
  std::fclose(f);
}

TfGrid parse_tf_grid(const std::string& text) {
  TfGrid g;
  if (text.empty()) return g;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &g.t_min, &g.t_max,
                  &g.points_per_decade) != 3)
    fail_json("args", "tf-grid expects min:max:points_per_decade");
  return g;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  const char* p = text.c_str();
  while (*p) {
    char* end = nullptr;
    const long v = std::strtol(p, &end, 10);
    if (end == p) fail_json("args", "bad integer list: " + text);
    out.push_back(static_cast<int>(v));
    p = (*end == ',') ? end + 1 : end;
  }
  if (out.empty()) fail_json("args", "empty integer list");
  return out;
}

void fail_json(const std::string& code, const std::string& message) {
  json err;
  err["error"] = code;
  err["message"] = message;
  std::fprintf(stderr, "%s\n", err.dump().c_str());
  std::exit(2);
}

// -------------------------------------------------------------- spectrum --

int cmd_spectrum(const ProblemSpec& prob, int k, int s_points,
                 const std::string& out) {
  auto cost = prob.build();
  k = std::min(k, cost.n + 1);  // small systems have fewer levels
  json manifest;
  manifest["subcommand"] = "spectrum";
  manifest["problem"] = prob.describe();
  manifest["params"] = {{"k", k}, {"s_points", s_points}};
  const auto hash = config_hash(manifest);

  std::vector<std::string> cols = {"s"};
  for (int i = 0; i < k; ++i) cols.push_back("e" + std::to_string(i));
  cols.push_back("gap");
  const std::string csv = out + ".csv";
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(s_points));
  parallel_for(static_cast<std::size_t>(s_points), [&](std::size_t i) {
    const double s = s_points > 1 ? static_cast<double>(i) / (s_points - 1) : 0.0;
    auto slice = spectrum(build(cost, s), k, false);
    auto& row = rows[i];
    row.push_back(s);
    for (double e : slice.eigenvalues) row.push_back(e);
    row.push_back(slice.gap());
  });
  {
    CsvWriter w(csv, hash, cols);
    for (const auto& row : rows) w.row(row);
  }

  auto [s_min, gap_min] = min_gap(cost);
  json summary;
  summary["min_gap"] = gap_min;
  summary["s_at_min_gap"] = s_min;
  std::printf("%s\n", summary.dump().c_str());
  manifest["outputs"] = {csv};
  write_manifest(out, manifest);
  return 0;
}

// ---------------------------------------------------------------- evolve --

int cmd_evolve_qa(const ProblemSpec& prob, double tf, int samples,
                  const std::string& out) {
  auto cost = prob.build();
  json manifest;
  manifest["subcommand"] = "evolve-qa";
  manifest["problem"] = prob.describe();
  manifest["params"] = {{"tf", tf}, {"samples", samples}};

  std::vector<double> pts;
  for (int i = 1; i <= samples; ++i)
    pts.push_back(static_cast<double>(i) / samples);
  auto traj = evolve(cost, tf, {}, pts);

  const std::string csv = out + ".csv";
  {
    CsvWriter w(csv, config_hash(manifest), {"s", "p_gs", "mean_hw"});
    for (const auto& st : traj.states)
      w.row({st.s, ground_prob(st, cost), expected_hw(st)});
  }
  json summary;
  summary["p_gs_final"] = ground_prob(traj.states.back(), cost);
  summary["max_norm_drift"] = traj.max_norm_drift;
  std::printf("%s\n", summary.dump().c_str());
  manifest["outputs"] = {csv};
  write_manifest(out, manifest);
  return 0;
}

int cmd_evolve_svd(const ProblemSpec& prob, double tf, int samples,
                   const std::string& out) {
  auto cost = prob.build();
  json manifest;
  manifest["subcommand"] = "evolve-svd";
  manifest["problem"] = prob.describe();
  manifest["params"] = {{"tf", tf}, {"samples", samples}};

  std::vector<double> pts;
  for (int i = 1; i <= samples; ++i)
    pts.push_back(static_cast<double>(i) / samples);
  auto traj = evolve_svd(cost, tf, {}, pts);

  const std::string csv = out + ".csv";
  {
    CsvWriter w(csv, config_hash(manifest),
                {"s", "theta", "phi", "p_gs", "mean_hw"});
    for (const auto& sm : traj.samples) {
      const double p = std::sin(sm.angles.theta / 2.0);
      w.row({sm.s, sm.angles.theta, sm.angles.phi,
             svd_sector_prob(sm.angles, cost), cost.n * p * p});
    }
  }
  json summary;
  summary["p_gs_final"] = svd_sector_prob(traj.samples.back().angles, cost);
  std::printf("%s\n", summary.dump().c_str());
  manifest["outputs"] = {csv};
  write_manifest(out, manifest);
  return 0;
}

// ----------------------------------------------------------- monte carlo --

int cmd_run_sa(const ProblemSpec& prob, const SAConfig& base, int seeds,
               const std::string& out) {
  auto cost = prob.build();
  json manifest;
  manifest["subcommand"] = "run-sa";
  manifest["problem"] = prob.describe();
  manifest["params"] = {{"beta_initial", base.beta_initial},
                        {"beta_final", base.beta_final},
                        {"sweeps", base.sweeps},
                        {"mode", base.mode == SolverMode::solver ? "solver"
                                                                 : "annealer"},
                        {"seeds", seeds}};

  std::vector<SARunResult> results(static_cast<std::size_t>(seeds));
  parallel_for(static_cast<std::size_t>(seeds), [&](std::size_t i) {
    SAConfig cfg = base;
    cfg.seed = i;
    results[i] = run_sa(cost, cfg);
  });

  const std::string csv = out + ".csv";
  int hits = 0;
  {
    CsvWriter w(csv, config_hash(manifest),
                {"seed", "best_w", "final_w", "success", "spin_updates"});
    for (int i = 0; i < seeds; ++i) {
      const auto& r = results[static_cast<std::size_t>(i)];
      hits += r.success;
      w.row({static_cast<double>(i), static_cast<double>(r.best_w),
             static_cast<double>(r.final_w), r.success ? 1.0 : 0.0,
             static_cast<double>(r.spin_updates)});
    }
  }
  const auto wi = wilson_interval(hits, seeds);
  json summary;
  summary["success_fraction"] = wi.p;
  summary["wilson_low"] = wi.low;
  summary["wilson_high"] = wi.high;
  std::printf("%s\n", summary.dump().c_str());
  manifest["outputs"] = {csv};
  write_manifest(out, manifest);
  return 0;
}

int cmd_run_sqa(const ProblemSpec& prob, const SQAConfig& base, int seeds,
                const std::string& out) {
  auto cost = prob.build();
  json manifest;
  manifest["subcommand"] = "run-sqa";
  manifest["problem"] = prob.describe();
  manifest["params"] = {{"beta", base.beta},
                        {"n_tau", base.n_tau},
                        {"sweeps", base.sweeps},
                        {"budget", base.spin_update_budget},
                        {"mode", base.mode == SolverMode::solver ? "solver"
                                                                 : "annealer"},
                        {"seeds", seeds}};

  std::vector<SQARunResult> results(static_cast<std::size_t>(seeds));
  parallel_for(static_cast<std::size_t>(seeds), [&](std::size_t i) {
    SQAConfig cfg = base;
    cfg.seed = i;
    results[i] = run_sqa(cost, cfg);
  });

  const std::string csv = out + ".csv";
  int hits = 0;
  {
    CsvWriter w(csv, config_hash(manifest),
                {"seed", "best_w", "final_w", "success", "spin_updates",
                 "mean_cluster"});
    for (int i = 0; i < seeds; ++i) {
      const auto& r = results[static_cast<std::size_t>(i)];
      hits += r.success;
      w.row({static_cast<double>(i), static_cast<double>(r.best_w),
             static_cast<double>(r.final_w), r.success ? 1.0 : 0.0,
             static_cast<double>(r.spin_updates), r.mean_cluster_size});
    }
  }
  const auto wi = wilson_interval(hits, seeds);
  json summary;
  summary["success_fraction"] = wi.p;
  summary["wilson_low"] = wi.low;
  summary["wilson_high"] = wi.high;
  std::printf("%s\n", summary.dump().c_str());
  manifest["outputs"] = {csv};
  write_manifest(out, manifest);
  return 0;
}

// ----------------------------------------------------------------- gibbs --

int cmd_gibbs(const ProblemSpec& prob, double beta_min, double beta_max,
              int points, const std::string& out) {
  auto cost = prob.build();
  json manifest;
  manifest["subcommand"] = "gibbs";
  manifest["problem"] = prob.describe();
  manifest["params"] = {{"beta_min", beta_min},
                        {"beta_max", beta_max},
                        {"points", points}};
  const std::string csv = out + ".csv";
  {
    CsvWriter w(csv, config_hash(manifest),
                {"beta", "mean_hw", "background", "signal"});
    for (int i = 0; i < points; ++i) {
      const double beta =
          beta_min + (beta_max - beta_min) * i / std::max(1, points - 1);
      const double hw = gibbs_expected_hw(cost, beta);
      const double bg = gibbs_background(cost.n, beta);
      w.row({beta, hw, bg, hw - bg});
    }
  }
  manifest["outputs"] = {csv};
  write_manifest(out, manifest);
  return 0;
}

// ------------------------------------------------------------- potential --

int cmd_potential(const ProblemSpec& prob, double s, int theta_points,
                  const std::string& out) {
  auto cost = prob.build();
  json manifest;
  manifest["subcommand"] = "potential";
  manifest["problem"] = prob.describe();
  manifest["params"] = {{"s", s}, {"theta_points", theta_points}};
  const std::string csv = out + ".csv";
  {
    CsvWriter w(csv, config_hash(manifest), {"theta", "value"});
    for (int i = 0; i < theta_points; ++i) {
      const double th = M_PI * i / (theta_points - 1);
      w.row({th, vsc_sym(cost, {th, 0.0}, s)});
    }
  }
  json summary;
  summary["minima"] = json::array();
  for (const auto& m : landscape_scan(cost, s))
    summary["minima"].push_back({{"theta", m.theta}, {"value", m.value}});
  std::printf("%s\n", summary.dump().c_str());
  manifest["outputs"] = {csv};
  write_manifest(out, manifest);
  return 0;
}

// ------------------------------------------------------------------- tts --

double solver_pgs(const std::string& solver, const CostFunction& cost,
                  double point, int seeds) {
  if (solver == "qa") {
    auto traj = evolve(cost, point, {}, {1.0});
    return ground_prob(traj.states.back(), cost);
  }
  if (solver == "svd") {
    auto traj = evolve_svd(cost, point, {}, {1.0});
    return svd_sector_prob(traj.samples.back().angles, cost);
  }
  if (solver == "sa") {
    const auto budget = static_cast<std::uint64_t>(point);
    std::atomic<int> hits{0};
    parallel_for(static_cast<std::size_t>(seeds), [&](std::size_t i) {
      SAConfig cfg;
      cfg.sweeps = std::max<int>(
          1, static_cast<int>(budget / static_cast<std::uint64_t>(cost.n)));
      cfg.seed = i;
      if (run_sa(cost, cfg).success) hits.fetch_add(1);
    });
    return static_cast<double>(hits.load()) / seeds;
  }
  if (solver == "sqa") {
    const auto budget = static_cast<std::uint64_t>(point);
    std::atomic<int> hits{0};
    parallel_for(static_cast<std::size_t>(seeds), [&](std::size_t i) {
      SQAConfig cfg;
      cfg.beta = 64.0;
      cfg.n_tau = 8;
      cfg.sweeps = 1 << 30;
      cfg.spin_update_budget = budget;
      cfg.seed = i;
      if (run_sqa(cost, cfg).success) hits.fetch_add(1);
    });
    return static_cast<double>(hits.load()) / seeds;
  }
  fail_json("args", "unknown solver '" + solver + "'");
}

namespace {

// Prefills p_gs on the log grid (in parallel for the deterministic solvers)
// so optimize_tts only computes fresh points during refinement. The merge
// into the ordered map is index-driven, so output is worker-count invariant.
void prefill_pgs(const std::string& solver, const CostFunction& cost,
                 const TfGrid& grid, int seeds,
                 std::map<double, double>& cache) {
  std::vector<double> ts;
  const double lo = std::log10(grid.t_min), hi = std::log10(grid.t_max);
  const int count = std::max(
      2, static_cast<int>(std::ceil((hi - lo) * grid.points_per_decade)) + 1);
  for (int i = 0; i < count; ++i)
    ts.push_back(std::pow(10.0, lo + (hi - lo) * i / (count - 1)));

  if (solver == "qa" || solver == "svd") {
    std::vector<double> ps(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
      ps[i] = solver_pgs(solver, cost, ts[i], seeds);
    });
    for (std::size_t i = 0; i < ts.size(); ++i) cache[ts[i]] = ps[i];
  } else {
    // the seed fan-out is already parallel inside solver_pgs
    for (double t : ts) cache[t] = solver_pgs(solver, cost, t, seeds);
  }
}

}  // namespace

TTSResult tts_for(const std::string& solver, const CostFunction& cost,
                  const TfGrid& grid, double pd, int seeds) {
  std::map<double, double> cache;
  prefill_pgs(solver, cost, grid, seeds, cache);
  auto pgs = [&](double t) {
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    const double p = solver_pgs(solver, cost, t, seeds);
    cache[t] = p;
    return p;
  };
  GridSpec gs;
  gs.t_min = grid.t_min;
  gs.t_max = grid.t_max;
  gs.points_per_decade = grid.points_per_decade;
  return optimize_tts(pgs, pd, gs);
}

ThresholdResult threshold_for(const std::string& solver,
                              const CostFunction& cost, const TfGrid& grid,
                              double p_thc, int seeds) {
  std::map<double, double> cache;
  prefill_pgs(solver, cost, grid, seeds, cache);
  auto pgs = [&](double t) {
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    const double p = solver_pgs(solver, cost, t, seeds);
    cache[t] = p;
    return p;
  };
  GridSpec gs;
  gs.t_min = grid.t_min;
  gs.t_max = grid.t_max;
  gs.points_per_decade = grid.points_per_decade;
  return threshold_time(pgs, p_thc, gs);
}

int cmd_tts(const ProblemSpec& prob, const std::vector<std::string>& solvers,
            const TfGrid& grid, double pd, int seeds, const std::string& out) {
  auto cost = prob.build();
  json manifest;
  manifest["subcommand"] = "tts";
  manifest["problem"] = prob.describe();
  manifest["params"] = {{"solvers", solvers},
                        {"tf_grid", {grid.t_min, grid.t_max, grid.points_per_decade}},
                        {"pd", pd},
                        {"seeds", seeds}};
  const auto hash = config_hash(manifest);

  json summary;
  std::vector<std::string> outputs;
  for (const auto& solver : solvers) {
    auto res = tts_for(solver, cost, grid, pd, seeds);

    const std::string csv = out + "." + solver + ".csv";
    {
      CsvWriter w(csv, hash, {"t_f", "p_gs", "tts"});
      for (const auto& pt : res.curve) w.row({pt.t_f, pt.p_gs, pt.tts});
    }
    outputs.push_back(csv);
    json s;
    s["solved"] = res.solved;
    s["t_f_opt"] = res.t_f_opt;
    s["tts_opt"] = res.tts_opt;
    s["p_gs_at_opt"] = res.p_gs_at_opt;
    if (solver == "sa" || solver == "sqa") {
      const int hits =
          static_cast<int>(std::lround(res.p_gs_at_opt * seeds));
      const auto wi = wilson_interval(hits, seeds);
      s["wilson_low"] = wi.low;
      s["wilson_high"] = wi.high;
    }
    summary[solver] = s;
  }
  std::printf("%s\n", summary.dump().c_str());
  manifest["outputs"] = outputs;
  write_manifest(out, manifest);
  return 0;
}

// ----------------------------------------------------------------- sweep --

int cmd_sweep(const ProblemSpec& prob, const std::vector<std::string>& solvers,
              const std::vector<int>& ns, const TfGrid& grid, double pd,
              int seeds, const std::string& out) {
  json manifest;
  manifest["subcommand"] = "sweep";
  manifest["problem"] = prob.describe();
  manifest["params"] = {{"solvers", solvers},
                        {"n_list", ns},
                        {"tf_grid", {grid.t_min, grid.t_max, grid.points_per_decade}},
                        {"pd", pd},
                        {"seeds", seeds}};
  const auto hash = config_hash(manifest);

  json fits;
  std::vector<std::string> outputs;
  for (const auto& solver : solvers) {
    const std::string csv = out + "." + solver + ".csv";
    CsvWriter w(csv, hash, {"n", "t_f_opt", "tts_opt", "p_gs_at_opt"});
    std::vector<double> fit_n, fit_t;
    for (int n : ns) {
      // spike is only defined on multiples of 4; skip the others quietly
      if (prob.problem == "spike" && n % 4 != 0) continue;
      ProblemSpec sized = prob;
      sized.n = n;
      auto cost = sized.build();
      auto res = tts_for(solver, cost, grid, pd, seeds);
      w.row({static_cast<double>(n), res.t_f_opt, res.tts_opt,
             res.p_gs_at_opt});
      if (res.solved && res.tts_opt > 0.0) {
        fit_n.push_back(n);
        fit_t.push_back(res.tts_opt);
      }
    }
    outputs.push_back(csv);
    if (fit_n.size() >= 4) {
      auto fit = scaling_fit(fit_n, fit_t);
      fits[solver] = {{"exponent", fit.exponent},
                      {"stderr", fit.stderr_exponent}};
    } else {
      fits[solver] = {{"exponent", nullptr},
                      {"note", "fewer than 4 solved sizes"}};
    }
  }
  const std::string fit_path = out + ".fit.json";
  {
    FILE* f = std::fopen(fit_path.c_str(), "w");
    if (f == nullptr) fail_json("io", "cannot open " + fit_path);
    const std::string dump = fits.dump(2);
    std::fwrite(dump.data(), 1, dump.size(), f);
    std::fputc('\n', f);
    std::fclose(f);
  }
  outputs.push_back(fit_path);
  std::printf("%s\n", fits.dump().c_str());
  manifest["outputs"] = outputs;
  write_manifest(out, manifest);
  return 0;
}

}  // namespace phwocli
