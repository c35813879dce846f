#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tfr/generator.hpp"
#include "tfr/instance_io.hpp"
#include "tfr/model.hpp"
#include "tfr/search.hpp"
#include "tfr/simulate.hpp"

namespace {

using namespace tfr;

std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::TimeLimit: return "time_limit";
    default: return "infeasible";
  }
}

std::string stats_csv(const std::string& instance_name,
                      const std::string& features, const Instance& inst,
                      std::uint64_t seed, const SolveResult& res) {
  const SolveStats& st = res.stats;
  std::ostringstream os;
  os << "instance,features,gamma,alpha,seed,status,objective,lower_bound,gap,"
        "nodes_explored,armp_nodes,drmp_nodes,disagg_infeasible,cuts_added,"
        "root_lb,pricing_rounds,columns_generated,labels_created,"
        "labels_dominated,labels_extended,time_total_s,time_pricing_s,"
        "time_per_node_s,time_per_pricing_s\n";
  os << instance_name << "," << features << "," << format_double(inst.gamma)
     << "," << format_double(inst.alpha) << "," << seed << ","
     << status_name(res.status) << ","
     << (res.incumbent ? format_double(res.incumbent->objective) : "") << ","
     << format_double(res.lower_bound) << "," << format_double(res.gap) << ","
     << st.nodes_explored << "," << st.armp_nodes << "," << st.drmp_nodes
     << "," << st.disagg_infeasible << "," << st.cuts_added << ","
     << format_double(st.root_lb) << "," << st.pricing_rounds << ","
     << st.columns_generated << "," << st.labels_created << ","
     << st.labels_dominated << "," << st.labels_extended << ","
     << format_double(st.time_total) << "," << format_double(st.time_pricing)
     << ","
     << format_double(st.nodes_explored > 0
                          ? st.time_total / st.nodes_explored
                          : 0.0)
     << ","
     << format_double(st.pricing_rounds > 0
                          ? st.time_pricing / st.pricing_rounds
                          : 0.0)
     << "\n";
  return os.str();
}

// In-model feasibility of a plan against the stochastic instance: rebuilds
// every column's distributions and checks the chance constraint and the hard
// delay cap exactly.
struct ModelFeasibility {
  bool alpha_feasible = true;
  bool lfe_feasible = true;
};

ModelFeasibility model_feasibility(const Instance& inst, const Solution& sol) {
  ModelFeasibility out;
  for (const auto& c : sol.columns) {
    auto rebuilt = build_column(inst, c.route, c.profile, c.tl);
    if (!rebuilt) {
      out.lfe_feasible = false;
      continue;
    }
    for (std::size_t i = 0; i < rebuilt->route.size(); ++i) {
      const Task& t = inst.tasks[rebuilt->route[i]];
      if (rebuilt->finish[i].cdf(t.lf) + 1e-9 < inst.alpha)
        out.alpha_feasible = false;
      if (rebuilt->finish[i].max_time() > t.lf_e) out.lfe_feasible = false;
    }
  }
  return out;
}

int cmd_generate(const GeneratorParams& params, const std::string& out_path) {
  Instance inst = generate_instance(params);
  std::ostringstream name;
  name << "h" << params.horizon_minutes << "_f" << params.flights_per_hour
       << "_s" << format_double(params.worker_strength) << "_m"
       << (params.modes == ModeSet::Intermediate
               ? "i"
               : params.modes == ModeSet::SlowFast ? "sf" : "sif")
       << "_seed" << params.seed;
  inst.name = name.str();
  save_instance(inst, out_path);
  std::cout << "wrote " << out_path << " (" << inst.n_tasks() << " tasks, "
            << inst.n_profiles() << " profiles)\n";
  return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& out_path,
              const std::string& stats_path, SolveConfig cfg,
              std::uint64_t seed) {
  Instance inst = load_instance(instance_path);
  if (cfg.gamma) inst.gamma = *cfg.gamma;
  if (cfg.alpha) inst.alpha = *cfg.alpha;
  SolveResult res = solve(inst, cfg);
  if (!out_path.empty()) write_file(out_path, solution_to_json(res, inst));
  if (!stats_path.empty())
    write_file(stats_path, stats_csv(inst.name.empty() ? instance_path
                                                       : inst.name,
                                     feature_name(cfg.features), inst, seed,
                                     res));
  std::cout << "status=" << status_name(res.status);
  if (res.incumbent)
    std::cout << " objective=" << format_double(res.incumbent->objective);
  std::cout << " lb=" << format_double(res.lower_bound)
            << " gap=" << format_double(res.gap)
            << " nodes=" << res.stats.nodes_explored
            << " cuts=" << res.stats.cuts_added
            << " time=" << format_double(res.stats.time_total) << "s\n";
  return res.status == SolveStatus::Infeasible ? 1 : 0;
}

int cmd_simulate(const std::string& instance_path,
                 const std::string& solution_path, int scenarios,
                 std::uint64_t seed, const std::string& out_path,
                 const std::string& hist_path) {
  Instance inst = load_instance(instance_path);
  Solution sol = solution_from_json(read_file(solution_path), inst);
  EvalMetrics m = evaluate(inst, sol, scenarios, seed);
  std::ostringstream os;
  os << "scenarios,objective,objective_no_penalty,sl_mean,sl_std,sl_min\n"
     << m.scenarios << "," << format_double(m.objective) << ","
     << format_double(m.objective_no_penalty) << ","
     << format_double(m.sl_mean) << "," << format_double(m.sl_std) << ","
     << format_double(m.sl_min) << "\n";
  if (!out_path.empty())
    write_file(out_path, os.str());
  else
    std::cout << os.str();
  if (!hist_path.empty()) {
    std::ostringstream hs;
    hs << "delay_steps,count\n";
    for (std::size_t d = 0; d < m.delay_histogram.size(); ++d)
      hs << d << "," << m.delay_histogram[d] << "\n";
    write_file(hist_path, hs.str());
  }
  return 0;
}

int cmd_compare(const std::string& instance_path, int scenarios,
                int evpi_scenarios, std::uint64_t seed, double time_limit,
                const std::string& out_path) {
  Instance inst = load_instance(instance_path);
  SolveConfig cfg;
  cfg.time_limit = time_limit;

  struct Row {
    std::string mode;
    bool master_feasible = false;
    ModelFeasibility mf;
    EvalMetrics metrics;
    double vss = 0.0, evpi = 0.0;
    bool have_vss = false;
  };
  std::vector<Row> rows;

  SolveResult stoch = solve(inst, cfg);
  std::optional<Solution> mean_solution;

  for (TravelStat stat : {TravelStat::Best, TravelStat::Mean,
                          TravelStat::Median, TravelStat::Worst}) {
    Row row;
    row.mode = travel_stat_name(stat);
    SolveResult det = solve_deterministic(inst, stat, cfg);
    row.master_feasible = det.feasible() && det.incumbent.has_value();
    if (row.master_feasible) {
      row.mf = model_feasibility(inst, *det.incumbent);
      row.metrics = evaluate(inst, *det.incumbent, scenarios, seed);
      if (stat == TravelStat::Mean) mean_solution = det.incumbent;
    }
    rows.push_back(row);
  }
  {
    Row row;
    row.mode = "stochastic";
    row.master_feasible = stoch.feasible() && stoch.incumbent.has_value();
    if (row.master_feasible) {
      row.mf = model_feasibility(inst, *stoch.incumbent);
      row.metrics = evaluate(inst, *stoch.incumbent, scenarios, seed);
      VssEvpiResult ve =
          vss_evpi(inst, *stoch.incumbent,
                   mean_solution ? &*mean_solution : nullptr, scenarios,
                   evpi_scenarios, seed, cfg);
      row.vss = ve.vss;
      row.evpi = ve.evpi;
      row.have_vss = ve.available && mean_solution.has_value();
    }
    rows.push_back(row);
  }

  std::ostringstream os;
  os << "mode,master_feasible,alpha_feasible,lfe_feasible,stoch_feasible,"
        "objective,objective_no_penalty,sl_mean,sl_std,sl_min,vss,evpi\n";
  for (const auto& r : rows) {
    os << r.mode << "," << (r.master_feasible ? 1 : 0) << ",";
    if (r.master_feasible) {
      os << (r.mf.alpha_feasible ? 1 : 0) << "," << (r.mf.lfe_feasible ? 1 : 0)
         << "," << (r.mf.alpha_feasible && r.mf.lfe_feasible ? 1 : 0) << ","
         << format_double(r.metrics.objective) << ","
         << format_double(r.metrics.objective_no_penalty) << ","
         << format_double(r.metrics.sl_mean) << ","
         << format_double(r.metrics.sl_std) << ","
         << format_double(r.metrics.sl_min);
    } else {
      os << ",,,,,,,";
    }
    os << ",";
    if (r.have_vss)
      os << format_double(r.vss) << "," << format_double(r.evpi);
    else
      os << ",";
    os << "\n";
  }
  if (!out_path.empty())
    write_file(out_path, os.str());
  else
    std::cout << os.str();
  return 0;
}

int cmd_saa(const std::vector<std::string>& instance_paths, int start_n,
            int batches, std::uint64_t seed, double time_limit,
            const std::string& out_path) {
  std::vector<Instance> instances;
  std::vector<Solution> solutions;
  SolveConfig cfg;
  cfg.time_limit = time_limit;
  for (const auto& path : instance_paths) {
    Instance inst = load_instance(path);
    SolveResult res = solve(inst, cfg);
    if (!res.incumbent) {
      std::cerr << "skipping infeasible instance " << path << "\n";
      continue;
    }
    instances.push_back(std::move(inst));
    solutions.push_back(*res.incumbent);
  }
  std::vector<std::pair<const Instance*, const Solution*>> plans;
  for (std::size_t i = 0; i < instances.size(); ++i)
    plans.push_back({&instances[i], &solutions[i]});
  SaaResult res = saa_scenario_count(plans, start_n, batches, seed);
  std::ostringstream os;
  os << "n,max_rel_std,max_rel_ci,accepted\n";
  for (const auto& s : res.steps)
    os << s.n << "," << format_double(s.max_rel_std) << ","
       << format_double(s.max_rel_ci) << "," << (s.accepted ? 1 : 0) << "\n";
  os << "n_star," << res.n_star << ",,\n";
  if (!out_path.empty())
    write_file(out_path, os.str());
  else
    std::cout << os.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Team formation and routing under stochastic travel times"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate a synthetic instance");
  GeneratorParams gp;
  std::string gen_modes = "sif";
  std::string gen_out = "instance.json";
  gen->add_option("--horizon", gp.horizon_minutes,
                  "planning horizon in minutes (60, 90, 120)");
  gen->add_option("--fph", gp.flights_per_hour, "flights per hour (10/20/30)");
  gen->add_option("--strength", gp.worker_strength, "worker strength 0.1-0.9");
  gen->add_option("--modes", gen_modes, "mode set: i, sf or sif");
  gen->add_option("--seed", gp.seed, "generator seed");
  gen->add_option("--alpha", gp.alpha, "service level");
  gen->add_option("--gamma", gp.gamma, "workforce quantile");
  gen->add_option("--out", gen_out, "output instance file");

  // solve
  auto* slv = app.add_subcommand("solve", "run the exact solver");
  std::string solve_instance, solve_out = "solution.json", solve_stats;
  std::string solve_features = "full";
  double solve_time_limit = 180.0;
  double solve_gamma = -1.0, solve_alpha = -1.0;
  std::uint64_t solve_seed = 1;
  int solve_threads = 1;
  slv->add_option("--instance", solve_instance, "instance file")->required();
  slv->add_option("--out", solve_out, "solution file");
  slv->add_option("--stats", solve_stats, "stats CSV file");
  slv->add_option("--features", solve_features,
                  "full|basic|no-cgc|no-drmp|no-branching");
  slv->add_option("--time-limit", solve_time_limit, "seconds");
  slv->add_option("--gamma", solve_gamma, "override workforce quantile");
  slv->add_option("--alpha", solve_alpha, "override service level");
  slv->add_option("--seed", solve_seed, "seed recorded in outputs");
  slv->add_option("--threads", solve_threads, "pricing fan-out (default 1)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo evaluate a solution");
  std::string sim_instance, sim_solution, sim_out, sim_hist;
  int sim_scenarios = 500;
  std::uint64_t sim_seed = 1;
  sim->add_option("--instance", sim_instance, "instance file")->required();
  sim->add_option("--solution", sim_solution, "solution file")->required();
  sim->add_option("--scenarios", sim_scenarios, "scenario count");
  sim->add_option("--seed", sim_seed, "scenario seed");
  sim->add_option("--out", sim_out, "metrics CSV (stdout when omitted)");
  sim->add_option("--histogram", sim_hist, "delay histogram CSV");

  // compare
  auto* cmp = app.add_subcommand(
      "compare", "stochastic vs deterministic plans on one instance");
  std::string cmp_instance, cmp_out;
  int cmp_scenarios = 500, cmp_evpi = 100;
  std::uint64_t cmp_seed = 1;
  double cmp_time_limit = 180.0;
  cmp->add_option("--instance", cmp_instance, "instance file")->required();
  cmp->add_option("--scenarios", cmp_scenarios, "scenario count");
  cmp->add_option("--evpi-scenarios", cmp_evpi,
                  "scenarios re-optimized for EVPI");
  cmp->add_option("--seed", cmp_seed, "scenario seed");
  cmp->add_option("--time-limit", cmp_time_limit, "per-solve limit (s)");
  cmp->add_option("--out", cmp_out, "CSV output (stdout when omitted)");

  // saa
  auto* saa = app.add_subcommand("saa", "SAA scenario-count procedure");
  std::vector<std::string> saa_instances;
  int saa_start = 50, saa_batches = 25;
  std::uint64_t saa_seed = 1;
  double saa_time_limit = 180.0;
  std::string saa_out;
  saa->add_option("--instance", saa_instances, "instance file (repeatable)")
      ->required();
  saa->add_option("--start-n", saa_start, "initial scenario count");
  saa->add_option("--batches", saa_batches, "batches per step");
  saa->add_option("--seed", saa_seed, "scenario seed");
  saa->add_option("--time-limit", saa_time_limit, "per-solve limit (s)");
  saa->add_option("--out", saa_out, "CSV output (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      gp.modes = parse_mode_set(gen_modes);
      return cmd_generate(gp, gen_out);
    }
    if (slv->parsed()) {
      SolveConfig cfg;
      cfg.features = parse_features(solve_features);
      cfg.time_limit = solve_time_limit;
      cfg.threads = solve_threads;
      if (solve_gamma > 0) cfg.gamma = solve_gamma;
      if (solve_alpha > 0) cfg.alpha = solve_alpha;
      return cmd_solve(solve_instance, solve_out, solve_stats, cfg, solve_seed);
    }
    if (sim->parsed())
      return cmd_simulate(sim_instance, sim_solution, sim_scenarios, sim_seed,
                          sim_out, sim_hist);
    if (cmp->parsed())
      return cmd_compare(cmp_instance, cmp_scenarios, cmp_evpi, cmp_seed,
                         cmp_time_limit, cmp_out);
    if (saa->parsed())
      return cmd_saa(saa_instances, saa_start, saa_batches, saa_seed,
                     saa_time_limit, saa_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
