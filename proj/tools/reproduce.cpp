// Preset datasets behind `phwo reproduce <figure>`. Each preset emits the
// CSVs needed to replot one reference figure. Monte Carlo presets run at
// reduced sizes so they finish on a desk machine; the manifest says so.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "commands.hpp"
#include "phwo/qa.hpp"
#include "phwo/sa.hpp"
#include "phwo/spectral.hpp"
#include "phwo/svd.hpp"
#include "phwo/tts.hpp"

namespace phwocli {

using namespace phwo;

namespace {

// Reproduce flags start unset so each preset can pick its own size.
ProblemSpec with_defaults(ProblemSpec p, const std::string& problem, int n,
                          int l, int u) {
  if (p.problem.empty()) p.problem = problem;
  if (p.n <= 0) p.n = n;
  if (p.l < 0) p.l = l;
  if (p.u <= 0) p.u = u;
  return p;
}

json base_manifest(const std::string& figure, const ProblemSpec& prob,
                   json params) {
  params["figure"] = figure;
  json m;
  m["subcommand"] = "reproduce";
  m["problem"] = prob.describe();
  m["params"] = std::move(params);
  return m;
}

double ground_state_hw(const CostFunction& cost, double s) {
  auto slice = spectrum(build(cost, s), 2, true);
  double hw = 0.0;
  for (int w = 0; w <= cost.n; ++w)
    hw += w * slice.eigenvectors[0][w] * slice.eigenvectors[0][w];
  return hw;
}

double landscape_global_min_hw(const CostFunction& cost, double s) {
  auto minima = landscape_scan(cost, s);
  const auto best = std::min_element(
      minima.begin(), minima.end(),
      [](const auto& a, const auto& b) { return a.value < b.value; });
  const double p = std::sin(best->theta / 2.0);
  return cost.n * p * p;
}

std::vector<double> unit_grid(int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i)
    g[i] = static_cast<double>(i) / (points - 1);
  return g;
}

// ---------------------------------------------------------------- fig 1 --

// <HW> of the instantaneous ground state, the Gibbs state on the linear
// beta(s) = 0.1 + 5.9 s schedule, and the landscape global minimum.
int fig1a(ProblemSpec prob, const std::string& out) {
  prob = with_defaults(prob, "plateau", 512, 0, 6);
  auto cost = prob.build();
  const int points = 201;
  json manifest = base_manifest("fig1a", prob, {{"s_points", points}});
  const auto grid = unit_grid(points);

  std::vector<std::vector<double>> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const double s = grid[i];
    rows[i] = {s, ground_state_hw(cost, s),
               gibbs_expected_hw(cost, 0.1 + 5.9 * s),
               landscape_global_min_hw(cost, s)};
  });
  const std::string csv = out + ".csv";
  {
    CsvWriter w(csv, config_hash(manifest), {"s", "hw_gs", "hw_gibbs", "hw_sc"});
    for (const auto& r : rows) w.row(r);
  }
  manifest["outputs"] = {csv};
  write_manifest(out, manifest);
  return 0;
}

// Landscape just before, at, and just after the double-well degeneracy,
// plus the gap-position mismatch across sizes.
int fig1b(ProblemSpec prob, const std::string& out) {
  prob = with_defaults(prob, "plateau", 512, 0, 6);
  auto cost = prob.build();
  json manifest = base_manifest("fig1b", prob, {{"theta_points", 801}});

  auto deg = find_degeneracy(cost);
  if (!deg) fail_json("figure", "landscape never develops a double well");
  const double s_star = deg->s_star;
  const double ds = 0.01;

  const std::string landscape_csv = out + ".landscape.csv";
  {
    CsvWriter w(landscape_csv, config_hash(manifest),
                {"theta", "v_pre", "v_star", "v_post"});
    for (int i = 0; i < 801; ++i) {
      const double th = M_PI * i / 800;
      w.row({th, vsc_sym(cost, {th, 0.0}, s_star - ds),
             vsc_sym(cost, {th, 0.0}, s_star),
             vsc_sym(cost, {th, 0.0}, s_star + ds)});
    }
  }

  const std::string inset_csv = out + ".inset.csv";
  {
    CsvWriter w(inset_csv, config_hash(manifest), {"n", "distance"});
    for (int n : {64, 128, 256, 512}) {
      ProblemSpec sized = prob;
      sized.n = n;
      auto c = sized.build();
      auto d = find_degeneracy(c);
      if (!d) continue;
      const auto [s_min, gap] = min_gap(c);
      (void)gap;
      w.row({static_cast<double>(n), std::fabs(s_min - d->s_star)});
    }
  }

  json summary;
  summary["s_star"] = s_star;
  summary["hw_jump"] = deg->hw_jump;
  std::printf("%s\n", summary.dump().c_str());
  manifest["outputs"] = {landscape_csv, inset_csv};
  write_manifest(out, manifest);
  return 0;
}

// ---------------------------------------------------------------- fig 2 --

// Eigenstate populations along the TTS-optimal evolution, with the
// low-lying spectrum as the inset.
int fig2a(ProblemSpec prob, const std::string& out) {
  prob = with_defaults(prob, "plateau", 512, 0, 6);
  auto cost = prob.build();
  const int levels = 10, samples = 201;
  json manifest = base_manifest(
      "fig2a", prob, {{"levels", levels}, {"samples", samples}, {"pd", 0.7}});

  TfGrid grid;
  grid.t_min = 1.0;
  grid.t_max = 100.0;
  grid.points_per_decade = 60;
  auto opt = tts_for("qa", cost, grid, 0.7, 0);
  if (!opt.solved) fail_json("figure", "tts optimum not found");

  auto traj = evolve(cost, opt.t_f_opt, {}, unit_grid(samples));
  std::vector<std::vector<double>> pops(traj.states.size());
  parallel_for(traj.states.size(), [&](std::size_t i) {
    pops[i] = eigenpopulations(traj.states[i], cost, traj.states[i].s, levels);
  });

  std::vector<std::string> cols = {"s"};
  for (int i = 0; i < levels; ++i) cols.push_back("p" + std::to_string(i));
  const std::string pop_csv = out + ".populations.csv";
  {
    CsvWriter w(pop_csv, config_hash(manifest), cols);
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      std::vector<double> row = {traj.states[i].s};
      row.insert(row.end(), pops[i].begin(), pops[i].end());
      w.row(row);
    }
  }

  std::vector<std::string> ecols = {"s"};
  for (int i = 0; i < levels; ++i) ecols.push_back("e" + std::to_string(i));
  const auto sgrid = unit_grid(samples);
  std::vector<std::vector<double>> erows(sgrid.size());
  parallel_for(sgrid.size(), [&](std::size_t i) {
    auto slice = spectrum(build(cost, sgrid[i]), levels, false);
    erows[i] = {sgrid[i]};
    for (double e : slice.eigenvalues) erows[i].push_back(e);
  });
  const std::string spec_csv = out + ".spectrum.csv";
  {
    CsvWriter w(spec_csv, config_hash(manifest), ecols);
    for (const auto& r : erows) w.row(r);
  }

  json summary;
  summary["t_f_opt"] = opt.t_f_opt;
  summary["tts_opt"] = opt.tts_opt;
  std::printf("%s\n", summary.dump().c_str());
  manifest["outputs"] = {pop_csv, spec_csv};
  write_manifest(out, manifest);
  return 0;
}

// Optimal TTS against size for the dynamical solvers at full scale and for
// simulated annealing at small sizes (its operating point is the
// spin-update budget, so its TTS is measured in updates).
int fig2b(ProblemSpec prob, const std::string& out) {
  prob = with_defaults(prob, "plateau", 512, 0, 6);
  const std::vector<int> dyn_ns = {64, 128, 256, 512};
  const std::vector<int> sa_ns = {8, 12, 16, 24};
  json manifest = base_manifest(
      "fig2b", prob,
      {{"pd", 0.7},
       {"dyn_n_list", dyn_ns},
       {"sa_n_list", sa_ns},
       {"sa_seeds", 32},
       {"scaled_down", "sa sizes reduced; full-size runs need ~1e10 updates"}});
  const auto hash = config_hash(manifest);

  std::vector<std::string> outputs;
  TfGrid grid;
  grid.t_min = 1.0;
  grid.t_max = 100.0;
  grid.points_per_decade = 48;
  for (const std::string solver : {"qa", "svd"}) {
    const std::string csv = out + "." + solver + ".csv";
    CsvWriter w(csv, hash, {"n", "t_f_opt", "tts_opt", "p_gs_at_opt"});
    for (int n : dyn_ns) {
      ProblemSpec sized = prob;
      sized.n = n;
      auto res = tts_for(solver, sized.build(), grid, 0.7, 0);
      w.row({static_cast<double>(n), res.t_f_opt, res.tts_opt,
             res.p_gs_at_opt});
    }
    outputs.push_back(csv);
  }

  TfGrid budget;
  budget.t_min = 1e2;
  budget.t_max = 3e7;
  budget.points_per_decade = 4;
  {
    const std::string csv = out + ".sa.csv";
    CsvWriter w(csv, hash, {"n", "budget_opt", "tts_opt", "p_gs_at_opt"});
    for (int n : sa_ns) {
      ProblemSpec sized = prob;
      sized.n = n;
      auto res = tts_for("sa", sized.build(), budget, 0.7, 32);
      if (!res.solved) continue;
      w.row({static_cast<double>(n), res.t_f_opt, res.tts_opt,
             res.p_gs_at_opt});
    }
    outputs.push_back(csv);
  }

  // inset: optimal TTS against plateau width at fixed (reduced) size
  {
    TfGrid igrid;
    igrid.t_min = 1.0;
    igrid.t_max = 200.0;
    igrid.points_per_decade = 40;
    const std::string csv = out + ".inset.csv";
    CsvWriter w(csv, hash, {"u", "tts_qa", "tts_svd"});
    for (int u : {4, 6, 8}) {
      ProblemSpec sized = prob;
      sized.n = 256;
      sized.u = u;
      auto c = sized.build();
      w.row({static_cast<double>(u), tts_for("qa", c, igrid, 0.7, 0).tts_opt,
             tts_for("svd", c, igrid, 0.7, 0).tts_opt});
    }
    outputs.push_back(csv);
  }

  manifest["outputs"] = outputs;
  write_manifest(out, manifest);
  return 0;
}

// <HW> along the optimal-time evolution for both dynamical solvers, with
// their trace distance as the inset.
int fig2c(ProblemSpec prob, const std::string& out) {
  prob = with_defaults(prob, "plateau", 512, 0, 6);
  auto cost = prob.build();
  const int samples = 201;
  json manifest =
      base_manifest("fig2c", prob, {{"samples", samples}, {"pd", 0.7}});

  TfGrid grid;
  grid.t_min = 1.0;
  grid.t_max = 100.0;
  grid.points_per_decade = 60;
  auto opt = tts_for("qa", cost, grid, 0.7, 0);
  if (!opt.solved) fail_json("figure", "tts optimum not found");

  const auto pts = unit_grid(samples);
  auto qa = evolve(cost, opt.t_f_opt, {}, pts);
  auto svd = evolve_svd(cost, opt.t_f_opt, {}, pts);

  const std::string csv = out + ".csv";
  {
    CsvWriter w(csv, config_hash(manifest),
                {"s", "hw_qa", "hw_svd", "trace_distance"});
    for (std::size_t i = 0; i < qa.states.size(); ++i) {
      const double p = std::sin(svd.samples[i].angles.theta / 2.0);
      w.row({qa.states[i].s, expected_hw(qa.states[i]), cost.n * p * p,
             trace_distance_to_qa(svd.samples[i].angles, qa.states[i])});
    }
  }
  json summary;
  summary["t_f_opt"] = opt.t_f_opt;
  std::printf("%s\n", summary.dump().c_str());
  manifest["outputs"] = {csv};
  write_manifest(out, manifest);
  return 0;
}

// ---------------------------------------------------------------- fig 4 --

// Full TTS and success-probability curves on the convex problem, where the
// two dynamical solvers pick different peaks.
int fig4(ProblemSpec prob, const std::string& out) {
  prob = with_defaults(prob, "convex", 512, 0, 0);
  auto cost = prob.build();
  json manifest =
      base_manifest("fig4", prob, {{"tf_grid", {2.0, 40.0, 120}}, {"pd", 0.7}});
  const auto hash = config_hash(manifest);

  TfGrid grid;
  grid.t_min = 2.0;
  grid.t_max = 40.0;
  grid.points_per_decade = 120;
  json summary;
  std::vector<std::string> outputs;
  for (const std::string solver : {"qa", "svd"}) {
    auto res = tts_for(solver, cost, grid, 0.7, 0);
    const std::string csv = out + "." + solver + ".csv";
    {
      CsvWriter w(csv, hash, {"t_f", "p_gs", "tts"});
      for (const auto& pt : res.curve) w.row({pt.t_f, pt.p_gs, pt.tts});
    }
    outputs.push_back(csv);
    summary[solver] = {{"t_f_opt", res.t_f_opt}, {"tts_opt", res.tts_opt}};
  }
  std::printf("%s\n", summary.dump().c_str());
  manifest["outputs"] = outputs;
  write_manifest(out, manifest);
  return 0;
}

// ---------------------------------------------------------------- fig 5 --

// Time to reach success probability 0.9 against size: coherent evolution
// and its adiabatic-condition proxy at full scale, the Monte Carlo solvers
// at reduced sizes (their time axis is spin updates).
int fig5(ProblemSpec prob, const std::string& out) {
  prob = with_defaults(prob, "plateau", 512, 0, 6);
  const std::vector<int> qa_ns = {16, 32, 64, 128, 256};
  const std::vector<int> ad_ns = {64, 128, 256, 512, 1024, 2048};
  const std::vector<int> sa_ns = {8, 12, 16, 24};
  const std::vector<int> sqa_ns = {8, 16, 32, 64};
  json manifest = base_manifest(
      "fig5", prob,
      {{"p_thc", 0.9},
       {"qa_n_list", qa_ns},
       {"adiabatic_n_list", ad_ns},
       {"sa_n_list", sa_ns},
       {"sqa_n_list", sqa_ns},
       {"mc_seeds", 32},
       {"scaled_down",
        "sa and sqa sizes reduced so the runs finish on one machine"}});
  const auto hash = config_hash(manifest);
  std::vector<std::string> outputs;

  {
    TfGrid grid;
    grid.t_min = 1.0;
    grid.t_max = 400.0;
    grid.points_per_decade = 12;
    const std::string csv = out + ".qa.csv";
    CsvWriter w(csv, hash, {"n", "time"});
    for (int n : qa_ns) {
      ProblemSpec sized = prob;
      sized.n = n;
      auto res = threshold_for("qa", sized.build(), grid, 0.9, 0);
      if (res.reached) w.row({static_cast<double>(n), res.t_f});
    }
    outputs.push_back(csv);
  }

  {
    const std::string csv = out + ".adiabatic.csv";
    CsvWriter w(csv, hash, {"n", "time"});
    auto sgrid = unit_grid(2001);
    for (int n : ad_ns) {
      ProblemSpec sized = prob;
      sized.n = n;
      auto est = adiabatic_time_estimate(sized.build(), sgrid);
      w.row({static_cast<double>(n), est.time_estimate});
    }
    outputs.push_back(csv);
  }

  const auto mc_curve = [&](const std::string& solver,
                            const std::vector<int>& ns, double top) {
    TfGrid grid;
    grid.t_min = 1e2;
    grid.t_max = top;
    grid.points_per_decade = 4;
    const std::string csv = out + "." + solver + ".csv";
    CsvWriter w(csv, hash, {"n", "spin_updates"});
    for (int n : ns) {
      ProblemSpec sized = prob;
      sized.n = n;
      auto res = threshold_for(solver, sized.build(), grid, 0.9, 32);
      if (res.reached) w.row({static_cast<double>(n), res.t_f});
    }
    outputs.push_back(csv);
  };
  mc_curve("sa", sa_ns, 3e7);
  mc_curve("sqa", sqa_ns, 1e7);

  manifest["outputs"] = outputs;
  write_manifest(out, manifest);
  return 0;
}

// ---------------------------------------------------------------- fig 6 --

// Optimal TTS against size for the spike problem (sizes are multiples of 4).
int fig6a(ProblemSpec prob, const std::string& out) {
  prob = with_defaults(prob, "spike", 512, 0, 0);
  const std::vector<int> ns = {8, 16, 32, 64, 128, 256, 512};
  json manifest = base_manifest("fig6a", prob, {{"n_list", ns}, {"pd", 0.7}});
  const auto hash = config_hash(manifest);

  TfGrid grid;
  grid.t_min = 1.0;
  grid.t_max = 100.0;
  grid.points_per_decade = 48;
  std::vector<std::string> outputs;
  for (const std::string solver : {"qa", "svd"}) {
    const std::string csv = out + "." + solver + ".csv";
    CsvWriter w(csv, hash, {"n", "t_f_opt", "tts_opt", "p_gs_at_opt"});
    for (int n : ns) {
      ProblemSpec sized = prob;
      sized.problem = "spike";
      sized.n = n;
      auto res = tts_for(solver, sized.build(), grid, 0.7, 0);
      w.row({static_cast<double>(n), res.t_f_opt, res.tts_opt,
             res.p_gs_at_opt});
    }
    outputs.push_back(csv);
  }
  manifest["outputs"] = outputs;
  write_manifest(out, manifest);
  return 0;
}

// Populations along the spike evolution at the reference annealing time.
int fig6b(ProblemSpec prob, const std::string& out) {
  prob = with_defaults(prob, "spike", 512, 0, 0);
  auto cost = prob.build();
  const int levels = 10, samples = 201;
  const double tf = 9.85;
  json manifest = base_manifest(
      "fig6b", prob, {{"tf", tf}, {"levels", levels}, {"samples", samples}});

  auto traj = evolve(cost, tf, {}, unit_grid(samples));
  std::vector<std::vector<double>> pops(traj.states.size());
  parallel_for(traj.states.size(), [&](std::size_t i) {
    pops[i] = eigenpopulations(traj.states[i], cost, traj.states[i].s, levels);
  });

  std::vector<std::string> cols = {"s"};
  for (int i = 0; i < levels; ++i) cols.push_back("p" + std::to_string(i));
  const std::string csv = out + ".csv";
  {
    CsvWriter w(csv, config_hash(manifest), cols);
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      std::vector<double> row = {traj.states[i].s};
      row.insert(row.end(), pops[i].begin(), pops[i].end());
      w.row(row);
    }
  }
  json summary;
  summary["p_gs_final"] = ground_prob(traj.states.back(), cost);
  std::printf("%s\n", summary.dump().c_str());
  manifest["outputs"] = {csv};
  write_manifest(out, manifest);
  return 0;
}

// ---------------------------------------------------------------- fig 7 --

std::vector<double> beta_grid(int points, double beta_max) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = beta_max * i / (points - 1);
  return g;
}

// Thermal <HW> with and without the wide plateau.
int fig7a(ProblemSpec prob, const std::string& out) {
  prob = with_defaults(prob, "plateau", 128, 0, 26);
  auto plain = make_plain_hw(prob.n);
  auto plat = prob.build();
  json manifest = base_manifest("fig7a", prob, {{"beta_points", 241}});

  const std::string csv = out + ".csv";
  {
    CsvWriter w(csv, config_hash(manifest), {"beta", "hw_plain", "hw_plateau"});
    for (double beta : beta_grid(241, 6.0))
      w.row({beta, gibbs_expected_hw(plain, beta),
             gibbs_expected_hw(plat, beta)});
  }
  manifest["outputs"] = {csv};
  write_manifest(out, manifest);
  return 0;
}

int signal_figure(const char* tag, ProblemSpec prob, const std::string& out,
                  const std::vector<int>& ns, bool moving) {
  json manifest = base_manifest(
      tag, prob, {{"beta_points", 241}, {"n_list", ns}, {"moving", moving}});
  std::vector<std::string> cols = {"beta"};
  for (int n : ns) cols.push_back("signal_n" + std::to_string(n));

  std::vector<CostFunction> costs;
  for (int n : ns) {
    const int l = moving ? n / 4 : prob.l;
    costs.push_back(make_plateau(n, l, l + (prob.u - prob.l)));
  }
  const std::string csv = out + ".csv";
  {
    CsvWriter w(csv, config_hash(manifest), cols);
    for (double beta : beta_grid(241, 6.0)) {
      std::vector<double> row = {beta};
      for (std::size_t i = 0; i < costs.size(); ++i)
        row.push_back(gibbs_expected_hw(costs[i], beta) -
                      gibbs_background(costs[i].n, beta));
      w.row(row);
    }
  }
  manifest["outputs"] = {csv};
  write_manifest(out, manifest);
  return 0;
}

// The plateau signature <HW> - A(beta) across sizes, fixed plateau.
int fig7b(ProblemSpec prob, const std::string& out) {
  prob = with_defaults(prob, "plateau", 128, 0, 26);
  return signal_figure("fig7b", prob, out, {128, 256, 512, 1024}, false);
}

// Same signature with the plateau moving with size (l = n/4).
int fig7c(ProblemSpec prob, const std::string& out) {
  prob = with_defaults(prob, "plateau", 256, 0, 26);
  return signal_figure("fig7c", prob, out,
                       {256, 512, 1024, 2048, 3200, 4096}, true);
}

}  // namespace

int cmd_reproduce(const std::string& figure, ProblemSpec prob,
                  const std::string& out) {
  if (figure == "fig1a") return fig1a(prob, out);
  if (figure == "fig1b") return fig1b(prob, out);
  if (figure == "fig2a") return fig2a(prob, out);
  if (figure == "fig2b") return fig2b(prob, out);
  if (figure == "fig2c") return fig2c(prob, out);
  if (figure == "fig4") return fig4(prob, out);
  if (figure == "fig5") return fig5(prob, out);
  if (figure == "fig6a") return fig6a(prob, out);
  if (figure == "fig6b") return fig6b(prob, out);
  if (figure == "fig7a") return fig7a(prob, out);
  if (figure == "fig7b") return fig7b(prob, out);
  if (figure == "fig7c") return fig7c(prob, out);
  fail_json("figure", "unknown figure tag '" + figure + "'");
}

}  // namespace phwocli
