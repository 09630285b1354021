#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "oltsp/oltsp.hpp"

using namespace oltsp;
namespace fs = std::filesystem;

namespace {

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
    std::cout << out << "\n";
  }
}

OracleResult solve(const Instance& inst, const std::string& method) {
  if (method == "bruteforce") return opt_bruteforce(inst);
  if (method == "dp") return opt_dp(inst);
  if (method == "zigzag") return opt_zigzag(inst);
  throw ValidationError("unknown oracle method '" + method + "'");
}

std::vector<Algorithm> parse_algos(const std::vector<std::string>& names) {
  std::vector<Algorithm> out;
  for (const auto& n : names) out.push_back(parse_algorithm(n));
  return out;
}

void report(const std::string& rows_path, const std::string& dir, double step) {
  std::ifstream in(rows_path);
  if (!in) throw Error("cannot open " + rows_path);
  const std::vector<SweepRow> rows = parse_rows_csv(in);
  fs::create_directories(dir);
  const std::vector<double> etas = linear_grid(1.0, step);
  const std::vector<double> pcts = linear_grid(100.0, 5.0);
  auto path = [&](const std::string& name) { return (fs::path(dir) / name).string(); };

  for (Algorithm a : {Algorithm::FarFirst, Algorithm::NearFirst, Algorithm::Pivot, Algorithm::WaitCopy}) {
    const std::vector<SweepRow> sel = rows_for(rows, a);
    if (sel.empty()) continue;
    const std::string name(to_string(a));
    const auto curve = max_ratio_curve(sel, etas);
    emit(path(name + "_curve.csv"), curve_csv(curve));
    emit(path(name + "_curve.svg"), curve_svg(curve, name + ": max ratio with error up to eta"));
    const Grid g = percentile_grid(sel, etas, pcts);
    emit(path(name + "_percentile.csv"), grid_csv(g));
    emit(path(name + "_percentile.svg"), grid_svg(g, name + ": max ratio over the best x% of instances"));
    if (a == Algorithm::Pivot) {
      const Grid d = delta_eta_grid(sel, etas, etas);
      emit(path("pivot_delta_eta.csv"), grid_csv(d));
      emit(path("pivot_delta_eta.svg"), grid_svg(d, "pivot: max ratio with delta <= x and eta <= y"));
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online TSP on the line with predictions: simulator, oracle, attacks and sweeps"};
  app.set_config("--config", "", "TOML/INI file with option values");
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance (JSON)");
  GenParams gp;
  std::string gen_variant = "open", gen_out;
  double gen_eta = 0.0;
  gen->add_option("--seed", gp.seed, "RNG seed")->capture_default_str();
  gen->add_option("--n-max", gp.n_max, "Maximum number of requests (>= 2)")->capture_default_str();
  gen->add_option("--c", gp.c, "Upper bound for the right extreme c' in [1, c]")->capture_default_str();
  gen->add_option("--r-max", gp.r_max, "Maximum release time")->capture_default_str();
  gen->add_option("--variant", gen_variant, "open|closed")->capture_default_str();
  gen->add_option("--eta", gen_eta, "Prediction error of a random mould (0 = perfect)")->capture_default_str();
  gen->add_option("-o,--out", gen_out, "Output path (default stdout)");

  // run
  auto* run = app.add_subcommand("run", "Simulate an algorithm on an instance");
  std::string run_algo = "farfirst", run_instance, run_variant, run_out;
  run->add_option("--algo", run_algo, "farfirst|nearfirst|pivot|waitcopy")->capture_default_str();
  run->add_option("--instance", run_instance, "Instance JSON")->required();
  run->add_option("--variant", run_variant, "Override the instance variant: open|closed");
  run->add_option("-o,--out", run_out, "Output path (default stdout)");

  // oracle
  auto* orc = app.add_subcommand("oracle", "Exact offline optimum of an instance");
  std::string orc_instance, orc_method = "dp", orc_out;
  orc->add_option("--instance", orc_instance, "Instance JSON")->required();
  orc->add_option("--method", orc_method, "bruteforce|dp|zigzag")->capture_default_str();
  orc->add_option("-o,--out", orc_out, "Output path (default stdout)");

  // attack
  auto* atk = app.add_subcommand("attack", "Run an adaptive attack against an algorithm");
  std::string atk_family = "fc", atk_algo = "farfirst", atk_out;
  int atk_rank = 201;
  atk->add_option("--family", atk_family, "fc|fo|flf|classic-closed|classic-open")->capture_default_str();
  atk->add_option("--n", atk_rank, "Attack rank (number of evenly spaced requests)")->capture_default_str();
  atk->add_option("--algo", atk_algo, "farfirst|nearfirst|pivot|waitcopy")->capture_default_str();
  atk->add_option("-o,--out", atk_out, "Output path (default stdout)");

  // sweep
  auto* swp = app.add_subcommand("sweep", "Prediction-error sweep over random instances (CSV rows)");
  SweepConfig sc;
  double eta_max = 1.0, eta_step = 0.05;
  std::vector<std::string> swp_algos{"farfirst", "nearfirst", "pivot"};
  std::string swp_out = "sweep.csv";
  swp->add_option("--seed", sc.params.seed, "RNG seed")->capture_default_str();
  swp->add_option("--count", sc.count, "Number of instances")->capture_default_str();
  swp->add_option("--n-max", sc.params.n_max, "Maximum number of requests")->capture_default_str();
  swp->add_option("--c", sc.params.c, "Upper bound for c'")->capture_default_str();
  swp->add_option("--r-max", sc.params.r_max, "Maximum release time")->capture_default_str();
  swp->add_option("--eta-max", eta_max, "Largest eta target")->capture_default_str();
  swp->add_option("--eta-step", eta_step, "Eta grid step")->capture_default_str();
  swp->add_option("--algos", swp_algos, "Algorithms to run")->capture_default_str();
  swp->add_option("--threads", sc.threads, "Worker threads")->capture_default_str();
  swp->add_option("-o,--out", swp_out, "Rows CSV path")->capture_default_str();

  // report
  auto* rep = app.add_subcommand("report", "Curves and grids (CSV + SVG) from sweep rows");
  std::string rep_rows = "sweep.csv", rep_dir = "report";
  double rep_step = 0.05;
  rep->add_option("--rows", rep_rows, "Rows CSV from `sweep`")->capture_default_str();
  rep->add_option("--out-dir", rep_dir, "Output directory")->capture_default_str();
  rep->add_option("--eta-step", rep_step, "Bucket width for eta and delta")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      Rng rng(gp.seed);
      Instance inst = gen_instance(gp, rng, parse_variant(gen_variant));
      if (gen_eta > 0.0) inst.predictions = apply_mould(inst, gen_mould(inst, 0, rng.next()), gen_eta);
      emit(gen_out, to_json(inst).dump(2) + "\n");
    } else if (*run) {
      Instance inst = normalize_instance(load_instance(run_instance));
      if (!run_variant.empty()) inst.variant = parse_variant(run_variant);
      const SimResult sim = simulate(inst, parse_algorithm(run_algo));
      const OracleResult opt = opt_zigzag(inst);
      json j = to_json(sim);
      j["algorithm"] = run_algo;
      j["variant"] = std::string(to_string(inst.variant));
      j["opt"] = opt.opt_makespan;
      j["ratio"] = competitive_ratio(sim, opt);
      j["eta"] = eta_error(inst).eta;
      emit(run_out, j.dump(2) + "\n");
    } else if (*orc) {
      const Instance inst = normalize_instance(load_instance(orc_instance));
      emit(orc_out, to_json(solve(inst, orc_method)).dump(2) + "\n");
    } else if (*atk) {
      const AttackRun r = run_attack(parse_attack(atk_family), atk_rank, parse_algorithm(atk_algo));
      json j{{"family", atk_family}, {"algorithm", atk_algo}, {"ratio", r.ratio}, {"makespan", r.sim.makespan},
             {"opt", r.oracle.opt_makespan}, {"transcript", to_json(r.transcript)}};
      if (r.t_commit) j["t_commit"] = *r.t_commit;
      if (r.side) j["committed_side"] = *r.side == Side::Left ? "left" : "right";
      emit(atk_out, j.dump(2) + "\n");
    } else if (*swp) {
      sc.etas = linear_grid(eta_max, eta_step);
      sc.algos = parse_algos(swp_algos);
      emit(swp_out, rows_csv(sweep(sc)));
    } else if (*rep) {
      report(rep_rows, rep_dir, rep_step);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
