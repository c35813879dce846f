#include "tfr/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tfr {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

ordered_json dist_to_json(const DiscreteDistribution& d) {
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < d.size(); ++i)
    arr.push_back({d.times()[i], d.probs()[i]});
  return arr;
}

DiscreteDistribution dist_from_json(const ordered_json& arr) {
  std::vector<std::pair<int, double>> pairs;
  for (const auto& e : arr)
    pairs.emplace_back(e.at(0).get<int>(), e.at(1).get<double>());
  return DiscreteDistribution::from_pairs(pairs);
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  ordered_json j;
  j["name"] = inst.name;
  j["step_minutes"] = inst.step_minutes;
  j["horizon_steps"] = inst.bins.horizon;
  j["bin_length_steps"] = inst.bins.bin_length;
  j["alpha"] = inst.alpha;
  j["gamma"] = inst.gamma;
  j["locations"] = inst.n_locations;
  j["depot"] = inst.depot;
  j["skill_levels"] = inst.skill_levels;
  j["workforce"] = inst.workforce.available;

  ordered_json profiles = ordered_json::array();
  for (const auto& p : inst.profiles) profiles.push_back({{"xi", p.xi}});
  j["profiles"] = profiles;

  ordered_json tasks = ordered_json::array();
  for (const auto& t : inst.tasks) {
    ordered_json jt;
    jt["id"] = t.id;
    jt["location"] = t.location;
    jt["es"] = t.es;
    jt["lf"] = t.lf;
    jt["lf_e"] = t.lf_e;
    jt["weight"] = t.weight;
    ordered_json et = ordered_json::object();
    for (const auto& [q, p] : t.exec_time) et[std::to_string(q)] = p;
    jt["exec_times"] = et;
    tasks.push_back(jt);
  }
  j["tasks"] = tasks;

  ordered_json edges = ordered_json::array();
  for (int a = 0; a < inst.n_locations; ++a)
    for (int b = 0; b < inst.n_locations; ++b) {
      if (a == b) continue;
      ordered_json je;
      je["from"] = a;
      je["to"] = b;
      je["t_det"] = inst.edges.det(a, b);
      ordered_json bins = ordered_json::array();
      for (int k = 0; k < inst.edges.n_bins; ++k)
        bins.push_back(dist_to_json(inst.edges.dist(a, b, k)));
      je["travel_by_bin"] = bins;
      edges.push_back(je);
    }
  j["edges"] = edges;
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("instance: malformed JSON: ") +
                                e.what());
  }
  Instance inst;
  inst.name = j.value("name", std::string());
  inst.step_minutes = j.value("step_minutes", 2);
  inst.bins.horizon = j.at("horizon_steps").get<int>();
  inst.bins.bin_length = j.at("bin_length_steps").get<int>();
  inst.alpha = j.at("alpha").get<double>();
  inst.gamma = j.at("gamma").get<double>();
  inst.n_locations = j.at("locations").get<int>();
  inst.depot = j.at("depot").get<int>();
  inst.skill_levels = j.at("skill_levels").get<int>();
  inst.workforce.available = j.at("workforce").get<std::vector<int>>();

  int qid = 0;
  for (const auto& jp : j.at("profiles")) {
    Profile p;
    p.id = qid++;
    p.xi = jp.at("xi").get<std::vector<int>>();
    inst.profiles.push_back(p);
  }
  for (const auto& jt : j.at("tasks")) {
    Task t;
    t.id = jt.at("id").get<int>();
    t.location = jt.at("location").get<int>();
    t.es = jt.at("es").get<int>();
    t.lf = jt.at("lf").get<int>();
    t.lf_e = jt.at("lf_e").get<int>();
    t.weight = jt.at("weight").get<double>();
    for (const auto& [key, val] : jt.at("exec_times").items())
      t.exec_time[std::stoi(key)] = val.get<int>();
    inst.tasks.push_back(t);
  }
  for (std::size_t i = 0; i < inst.tasks.size(); ++i)
    if (inst.tasks[i].id != static_cast<int>(i))
      throw std::invalid_argument("instance: task ids must be 0..n-1 in order");

  inst.edges.n_locations = inst.n_locations;
  inst.edges.n_bins = inst.bins.count();
  inst.edges.t_det.assign(inst.n_locations * inst.n_locations, 0);
  inst.edges.travel.assign(inst.n_locations * inst.n_locations, {});
  for (const auto& je : j.at("edges")) {
    int a = je.at("from").get<int>();
    int b = je.at("to").get<int>();
    inst.edges.t_det[a * inst.n_locations + b] = je.at("t_det").get<int>();
    std::vector<DiscreteDistribution> per_bin;
    for (const auto& jb : je.at("travel_by_bin"))
      per_bin.push_back(dist_from_json(jb));
    if (static_cast<int>(per_bin.size()) != inst.edges.n_bins)
      throw std::invalid_argument("edges: bin count mismatch");
    inst.edges.travel[a * inst.n_locations + b] = std::move(per_bin);
  }
  inst.finalize();
  return inst;
}

std::string solution_to_json(const SolveResult& res, const Instance& inst) {
  ordered_json j;
  switch (res.status) {
    case SolveStatus::Optimal: j["status"] = "optimal"; break;
    case SolveStatus::TimeLimit: j["status"] = "time_limit"; break;
    default: j["status"] = "infeasible"; break;
  }
  j["alpha"] = inst.alpha;
  j["gamma"] = inst.gamma;
  j["lower_bound"] = res.lower_bound;
  j["gap"] = res.gap;
  if (res.incumbent) {
    const Solution& s = *res.incumbent;
    j["objective"] = s.objective;
    j["objective_master_scale"] = s.objective_unshifted;
    ordered_json cols = ordered_json::array();
    for (const auto& c : s.columns) {
      ordered_json jc;
      jc["route"] = c.route;
      jc["profile"] = c.profile;
      if (c.composition)
        jc["composition"] = *c.composition;
      else
        jc["composition"] = nullptr;
      jc["tl"] = c.tl;
      jc["tr"] = c.tr;
      ordered_json fg = ordered_json::object();
      ordered_json fd = ordered_json::object();
      for (std::size_t i = 0; i < c.route.size(); ++i) {
        fg[std::to_string(c.route[i])] = c.finish_gamma[i];
        fd[std::to_string(c.route[i])] = dist_to_json(c.finish[i]);
      }
      jc["finish_gamma"] = fg;
      jc["finish_distributions"] = fd;
      jc["expected_cost"] = c.cost_shifted;
      cols.push_back(jc);
    }
    j["columns"] = cols;
    ordered_json flows = ordered_json::array();
    for (const auto& f : s.flows) {
      ordered_json jf;
      jf["level"] = f.level + 1;  // 1-based skill levels in files
      jf["from"] = f.from < 0 ? ordered_json("depot") : ordered_json(f.from);
      jf["to"] = f.to < 0 ? ordered_json("depot") : ordered_json(f.to);
      jf["count"] = f.count;
      flows.push_back(jf);
    }
    j["worker_flows"] = flows;
  } else {
    j["objective"] = nullptr;
    j["columns"] = ordered_json::array();
    j["worker_flows"] = ordered_json::array();
  }
  return j.dump(2) + "\n";
}

Solution solution_from_json(const std::string& json_text,
                            const Instance& inst) {
  ordered_json j = ordered_json::parse(json_text);
  Solution s;
  s.objective = j.value("objective", 0.0);
  for (const auto& jc : j.at("columns")) {
    std::vector<int> route = jc.at("route").get<std::vector<int>>();
    int profile = jc.at("profile").get<int>();
    int tl = jc.at("tl").get<int>();
    auto col = build_column(inst, route, profile, tl);
    if (!col)
      throw std::invalid_argument(
          "solution: column infeasible for this instance");
    if (!jc.at("composition").is_null())
      col->composition = jc.at("composition").get<std::vector<int>>();
    s.columns.push_back(std::move(*col));
    s.objective_unshifted += s.columns.back().cost;
  }
  for (const auto& jf : j.at("worker_flows")) {
    WorkerFlow f;
    f.level = jf.at("level").get<int>() - 1;
    f.from = jf.at("from").is_string() ? -1 : jf.at("from").get<int>();
    f.to = jf.at("to").is_string() ? -1 : jf.at("to").get<int>();
    f.count = jf.at("count").get<int>();
    s.flows.push_back(f);
  }
  return s;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_instance(const Instance& inst, const std::string& path) {
  write_file(path, instance_to_json(inst));
}

Instance load_instance(const std::string& path) {
  return instance_from_json(read_file(path));
}

}  // namespace tfr
