// phwo: command-line front end for the Hamming-weight annealing lab.
//
// Every subcommand accepts --manifest <file> holding either flat key=value
// lines or a JSON object; command-line flags override file values.

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using phwocli::json;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Nested JSON objects are flattened to their leaf keys so the problem and
// params blocks of an emitted run manifest line up with option names.
void flatten_json(const json& j,
                  std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      flatten_json(value, kv);
      continue;
    }
    if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ",";
        joined += v.is_string() ? v.get<std::string>() : v.dump();
      }
      kv.emplace_back(key, joined);
    } else {
      kv.emplace_back(key,
                      value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
}

// Fills options from a parameter file, either flat key=value lines or a
// JSON object. Only options absent from the command line are touched, so
// flags override file values. Keys with no matching option are skipped
// (emitted manifests carry bookkeeping fields like config_hash).
void apply_manifest(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) phwocli::fail_json("io", "cannot read manifest file " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());

  std::vector<std::pair<std::string, std::string>> kv;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    flatten_json(json::parse(text), kv);
  } else {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        phwocli::fail_json("args", "bad manifest line: " + line);
      kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }

  for (const auto& [key, value] : kv) {
    CLI::Option* op = cmd->get_option_no_throw("--" + key);
    if (op == nullptr) op = cmd->get_option_no_throw(key);
    if (op == nullptr || op->count() > 0) continue;
    op->add_result(value);
    op->run_callback();
  }
}

void add_problem_options(CLI::App* cmd, phwocli::ProblemSpec& p) {
  cmd->add_option("--problem", p.problem,
                  "plain_hw | plateau | spike | convex | vandam | custom");
  cmd->add_option("--n", p.n, "number of spins");
  cmd->add_option("--l", p.l, "plateau lower edge");
  cmd->add_option("--u", p.u, "plateau upper edge");
  cmd->add_option("--cost-file,--cost_file", p.cost_file,
                  "cost table for --problem custom");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  if (out.empty()) phwocli::fail_json("args", "empty solver list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"benchmark lab for perturbed Hamming-weight annealing"};
  app.require_subcommand(1);
  int rc = 0;

  // spectrum ---------------------------------------------------------------
  auto spec_prob = std::make_shared<phwocli::ProblemSpec>();
  auto* spectrum = app.add_subcommand("spectrum", "low-lying spectrum over s");
  add_problem_options(spectrum, *spec_prob);
  auto spectrum_manifest = std::make_shared<std::string>();
  spectrum->add_option("--manifest", *spectrum_manifest,
                  "run parameters file (key=value or JSON)");
  auto spec_k = std::make_shared<int>(6);
  auto spec_pts = std::make_shared<int>(201);
  auto spec_out = std::make_shared<std::string>("spectrum");
  spectrum->add_option("--k", *spec_k, "number of levels");
  spectrum->add_option("--s-points,--s_points", *spec_pts, "s grid size");
  spectrum->add_option("--out", *spec_out, "output base path");
  spectrum->callback([=, &rc] {
    apply_manifest(spectrum, *spectrum_manifest);
    rc = phwocli::cmd_spectrum(*spec_prob, *spec_k, *spec_pts, *spec_out);
  });

  // evolve-qa / evolve-svd ---------------------------------------------------
  auto qa_prob = std::make_shared<phwocli::ProblemSpec>();
  auto* evqa = app.add_subcommand("evolve-qa", "Schrodinger evolution");
  add_problem_options(evqa, *qa_prob);
  auto evqa_manifest = std::make_shared<std::string>();
  evqa->add_option("--manifest", *evqa_manifest,
                  "run parameters file (key=value or JSON)");
  auto qa_tf = std::make_shared<double>(10.0);
  auto qa_samples = std::make_shared<int>(200);
  auto qa_out = std::make_shared<std::string>("evolve-qa");
  evqa->add_option("--tf", *qa_tf, "total annealing time");
  evqa->add_option("--samples", *qa_samples, "trajectory sample count");
  evqa->add_option("--out", *qa_out, "output base path");
  evqa->callback([=, &rc] {
    apply_manifest(evqa, *evqa_manifest);
    rc = phwocli::cmd_evolve_qa(*qa_prob, *qa_tf, *qa_samples, *qa_out);
  });

  auto svd_prob = std::make_shared<phwocli::ProblemSpec>();
  auto* evsvd = app.add_subcommand("evolve-svd", "spin-coherent evolution");
  add_problem_options(evsvd, *svd_prob);
  auto evsvd_manifest = std::make_shared<std::string>();
  evsvd->add_option("--manifest", *evsvd_manifest,
                  "run parameters file (key=value or JSON)");
  auto svd_tf = std::make_shared<double>(10.0);
  auto svd_samples = std::make_shared<int>(200);
  auto svd_out = std::make_shared<std::string>("evolve-svd");
  evsvd->add_option("--tf", *svd_tf, "total annealing time");
  evsvd->add_option("--samples", *svd_samples, "trajectory sample count");
  evsvd->add_option("--out", *svd_out, "output base path");
  evsvd->callback([=, &rc] {
    apply_manifest(evsvd, *evsvd_manifest);
    rc = phwocli::cmd_evolve_svd(*svd_prob, *svd_tf, *svd_samples, *svd_out);
  });

  // run-sa -------------------------------------------------------------------
  auto sa_prob = std::make_shared<phwocli::ProblemSpec>();
  auto* rsa = app.add_subcommand("run-sa", "simulated annealing ensemble");
  add_problem_options(rsa, *sa_prob);
  auto rsa_manifest = std::make_shared<std::string>();
  rsa->add_option("--manifest", *rsa_manifest,
                  "run parameters file (key=value or JSON)");
  auto sa_cfg = std::make_shared<phwo::SAConfig>();
  auto sa_seeds = std::make_shared<int>(100);
  auto sa_mode = std::make_shared<std::string>("solver");
  auto sa_out = std::make_shared<std::string>("run-sa");
  rsa->add_option("--beta-initial,--beta_initial", sa_cfg->beta_initial);
  rsa->add_option("--beta-final,--beta_final", sa_cfg->beta_final);
  rsa->add_option("--sweeps", sa_cfg->sweeps);
  rsa->add_option("--mode", *sa_mode, "solver | annealer");
  rsa->add_option("--seeds", *sa_seeds, "ensemble size");
  rsa->add_option("--out", *sa_out, "output base path");
  rsa->callback([=, &rc] {
    apply_manifest(rsa, *rsa_manifest);
    sa_cfg->mode = *sa_mode == "annealer" ? phwo::SolverMode::annealer
                                          : phwo::SolverMode::solver;
    rc = phwocli::cmd_run_sa(*sa_prob, *sa_cfg, *sa_seeds, *sa_out);
  });

  // run-sqa --------------------------------------------------------------
  auto sqa_prob = std::make_shared<phwocli::ProblemSpec>();
  auto* rsqa = app.add_subcommand("run-sqa", "path-integral annealing ensemble");
  add_problem_options(rsqa, *sqa_prob);
  auto rsqa_manifest = std::make_shared<std::string>();
  rsqa->add_option("--manifest", *rsqa_manifest,
                  "run parameters file (key=value or JSON)");
  auto sqa_cfg = std::make_shared<phwo::SQAConfig>();
  auto sqa_seeds = std::make_shared<int>(100);
  auto sqa_mode = std::make_shared<std::string>("solver");
  auto sqa_out = std::make_shared<std::string>("run-sqa");
  rsqa->add_option("--beta-final,--beta_final,--beta", sqa_cfg->beta,
                   "inverse temperature");
  rsqa->add_option("--ntau,--n_tau", sqa_cfg->n_tau, "imaginary-time slices");
  rsqa->add_option("--sweeps", sqa_cfg->sweeps);
  rsqa->add_option("--budget", sqa_cfg->spin_update_budget,
                   "spin-update budget (0 = run all sweeps)");
  rsqa->add_option("--mode", *sqa_mode, "solver | annealer");
  rsqa->add_option("--seeds", *sqa_seeds, "ensemble size");
  rsqa->add_option("--out", *sqa_out, "output base path");
  rsqa->callback([=, &rc] {
    apply_manifest(rsqa, *rsqa_manifest);
    sqa_cfg->mode = *sqa_mode == "annealer" ? phwo::SolverMode::annealer
                                            : phwo::SolverMode::solver;
    rc = phwocli::cmd_run_sqa(*sqa_prob, *sqa_cfg, *sqa_seeds, *sqa_out);
  });

  // gibbs ---------------------------------------------------------------
  auto gb_prob = std::make_shared<phwocli::ProblemSpec>();
  auto* gibbs = app.add_subcommand("gibbs", "thermal <HW> over beta");
  add_problem_options(gibbs, *gb_prob);
  auto gibbs_manifest = std::make_shared<std::string>();
  gibbs->add_option("--manifest", *gibbs_manifest,
                  "run parameters file (key=value or JSON)");
  auto gb_min = std::make_shared<double>(0.0);
  auto gb_max = std::make_shared<double>(6.0);
  auto gb_pts = std::make_shared<int>(201);
  auto gb_out = std::make_shared<std::string>("gibbs");
  gibbs->add_option("--beta-min,--beta_min", *gb_min);
  gibbs->add_option("--beta-max,--beta_max", *gb_max);
  gibbs->add_option("--points", *gb_pts);
  gibbs->add_option("--out", *gb_out, "output base path");
  gibbs->callback([=, &rc] {
    apply_manifest(gibbs, *gibbs_manifest);
    rc = phwocli::cmd_gibbs(*gb_prob, *gb_min, *gb_max, *gb_pts, *gb_out);
  });

  // potential ----------------------------------------------------------
  auto pot_prob = std::make_shared<phwocli::ProblemSpec>();
  auto* pot = app.add_subcommand("potential", "spin-coherent landscape at s");
  add_problem_options(pot, *pot_prob);
  auto pot_manifest = std::make_shared<std::string>();
  pot->add_option("--manifest", *pot_manifest,
                  "run parameters file (key=value or JSON)");
  auto pot_s = std::make_shared<double>(0.5);
  auto pot_pts = std::make_shared<int>(401);
  auto pot_out = std::make_shared<std::string>("potential");
  pot->add_option("--s", *pot_s, "annealing parameter");
  pot->add_option("--theta-points,--theta_points", *pot_pts);
  pot->add_option("--out", *pot_out, "output base path");
  pot->callback([=, &rc] {
    apply_manifest(pot, *pot_manifest);
    rc = phwocli::cmd_potential(*pot_prob, *pot_s, *pot_pts, *pot_out);
  });

  // tts -----------------------------------------------------------------
  auto tts_prob = std::make_shared<phwocli::ProblemSpec>();
  auto* tts = app.add_subcommand("tts", "time-to-solution curve and optimum");
  add_problem_options(tts, *tts_prob);
  auto tts_manifest = std::make_shared<std::string>();
  tts->add_option("--manifest", *tts_manifest,
                  "run parameters file (key=value or JSON)");
  auto tts_solvers = std::make_shared<std::string>("qa,svd");
  auto tts_grid = std::make_shared<std::string>("1:100:60");
  auto tts_pd = std::make_shared<double>(0.7);
  auto tts_seeds = std::make_shared<int>(100);
  auto tts_out = std::make_shared<std::string>("tts");
  tts->add_option("--solver", *tts_solvers, "comma list of qa,svd,sa,sqa");
  tts->add_option("--tf-grid,--tf_grid", *tts_grid, "min:max:points_per_decade");
  tts->add_option("--pd", *tts_pd, "target success probability");
  tts->add_option("--seeds", *tts_seeds, "ensemble size for sa/sqa");
  tts->add_option("--out", *tts_out, "output base path");
  tts->callback([=, &rc] {
    apply_manifest(tts, *tts_manifest);
    rc = phwocli::cmd_tts(*tts_prob, split_list(*tts_solvers),
                          phwocli::parse_tf_grid(*tts_grid), *tts_pd,
                          *tts_seeds, *tts_out);
  });

  // sweep ----------------------------------------------------------------
  auto sw_prob = std::make_shared<phwocli::ProblemSpec>();
  auto* sweep = app.add_subcommand("sweep", "optimal TTS across problem sizes");
  add_problem_options(sweep, *sw_prob);
  auto sweep_manifest = std::make_shared<std::string>();
  sweep->add_option("--manifest", *sweep_manifest,
                  "run parameters file (key=value or JSON)");
  auto sw_solvers = std::make_shared<std::string>("qa,svd");
  auto sw_ns = std::make_shared<std::string>("64,128,256,512");
  auto sw_grid = std::make_shared<std::string>("1:100:60");
  auto sw_pd = std::make_shared<double>(0.7);
  auto sw_seeds = std::make_shared<int>(100);
  auto sw_out = std::make_shared<std::string>("sweep");
  sweep->add_option("--solver", *sw_solvers, "comma list of qa,svd,sa,sqa");
  sweep->add_option("--n-list,--n_list", *sw_ns, "comma list of sizes");
  sweep->add_option("--tf-grid,--tf_grid", *sw_grid, "min:max:points_per_decade");
  sweep->add_option("--pd", *sw_pd, "target success probability");
  sweep->add_option("--seeds", *sw_seeds, "ensemble size for sa/sqa");
  sweep->add_option("--out", *sw_out, "output base path");
  sweep->callback([=, &rc] {
    apply_manifest(sweep, *sweep_manifest);
    rc = phwocli::cmd_sweep(*sw_prob, split_list(*sw_solvers),
                            phwocli::parse_int_list(*sw_ns),
                            phwocli::parse_tf_grid(*sw_grid), *sw_pd,
                            *sw_seeds, *sw_out);
  });

  // reproduce --------------------------------------------------------------
  auto rp_prob = std::make_shared<phwocli::ProblemSpec>();
  rp_prob->problem.clear();
  rp_prob->n = 0;
  rp_prob->l = -1;
  rp_prob->u = 0;
  auto* rep = app.add_subcommand("reproduce", "preset figure datasets");
  auto rp_fig = std::make_shared<std::string>();
  auto rp_out = std::make_shared<std::string>();
  rep->add_option("figure", *rp_fig,
                  "fig1a fig1b fig2a fig2b fig2c fig4 fig5 fig6a fig6b "
                  "fig7a fig7b fig7c")
      ->required();
  add_problem_options(rep, *rp_prob);
  auto rep_manifest = std::make_shared<std::string>();
  rep->add_option("--manifest", *rep_manifest,
                  "run parameters file (key=value or JSON)");
  rep->add_option("--out", *rp_out, "output base path (default: figure tag)");
  rep->callback([=, &rc] {
    apply_manifest(rep, *rep_manifest);
    const std::string out = rp_out->empty() ? *rp_fig : *rp_out;
    rc = phwocli::cmd_reproduce(*rp_fig, *rp_prob, out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    phwocli::json err;
    err["error"] = "args";
    err["message"] = e.what();
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return 2;
  } catch (const std::exception& e) {
    phwocli::json err;
    err["error"] = "invalid";
    err["message"] = e.what();
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return 2;
  }
  return rc;
}
