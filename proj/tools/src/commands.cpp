#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "loadbal/artifacts.hpp"
#include "loadbal/errors.hpp"
#include "loadbal/instance_io.hpp"
#include "loadbal/matching.hpp"
#include "loadbal/oracle.hpp"
#include "loadbal/solvers.hpp"

namespace loadbal::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

const std::vector<std::string> kAlgos = {"seq", "congest-unweighted", "congest-weighted", "local-weighted", "backup"};

ordered_json schedule_json(std::span<const ScheduleEntry> schedule) {
  ordered_json out = ordered_json::array();
  for (const auto& e : schedule) {
    out.push_back({{"B", e.B},
                   {"client_perfect", e.client_perfect},
                   {"matched", e.matching.total()},
                   {"newly_assigned", e.newly_assigned}});
  }
  return out;
}

ordered_json loads_json(const Instance& instance, const LoadVector& loads) {
  ordered_json out = ordered_json::array();
  for (int s = 0; s < instance.num_servers(); ++s) out.push_back({instance.server_vertex(s), loads.loads[s]});
  return out;
}

double ratio(double value, double opt) {
  if (opt == 0.0) return value == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return value / opt;
}

std::optional<AlgorithmId> sim_id(const std::string& algo) {
  if (algo == "congest-unweighted") return AlgorithmId::kCongestUnweighted;
  if (algo == "congest-weighted") return AlgorithmId::kCongestWeighted;
  if (algo == "local-weighted") return AlgorithmId::kLocalWeighted;
  if (algo == "backup") return AlgorithmId::kCongestBackup;
  return std::nullopt;
}

ordered_json oracle_json(const Instance& solved, const SolveRequest& req, const LoadVector& loads) {
  ordered_json out;
  if (req.algo == "backup") {
    try {
      auto opt = opt_backup_enum(solved, req.r, req.enum_limit);
      out["opt_linf"] = opt.linf;
      out["ratio_linf"] = ratio(static_cast<double>(loads.max()), static_cast<double>(opt.linf));
    } catch (const InputError& e) {
      out["skipped"] = e.what();
    }
    return out;
  }
  if (solved.unit_weights()) out["opt_minmax"] = opt_minmax_unweighted(solved);
  out["opt_split_linf"] = opt_split(solved);
  if (assignment_count(solved, req.enum_limit) > req.enum_limit) {
    out["skipped"] = "more than " + std::to_string(req.enum_limit) + " assignments; exact p-norm optima not computed";
    if (solved.unit_weights()) {
      out["ratio_linf"] = ratio(static_cast<double>(loads.max()), out["opt_minmax"].get<double>());
    }
    return out;
  }
  const std::vector<double> ps = {1.0, 2.0, 3.0, kInfNorm};
  const std::vector<std::string> names = {"p1", "p2", "p3", "linf"};
  auto opt = opt_allnorm_enum(solved, ps, req.enum_limit);
  for (std::size_t i = 0; i < ps.size(); ++i) out["opt_" + names[i]] = opt.optimum[i];
  for (std::size_t i = 0; i < ps.size(); ++i) out["ratio_" + names[i]] = ratio(loads.norm(ps[i]), opt.optimum[i]);
  out["all_norm_witness"] = opt.canonical_is_all_norm;
  return out;
}

}  // namespace

ordered_json solve_report(const Instance& instance, const SolveRequest& req) {
  if (std::find(kAlgos.begin(), kAlgos.end(), req.algo) == kAlgos.end()) {
    throw InputError("unknown algorithm '" + req.algo +
                     "' (expected seq, congest-unweighted, congest-weighted, local-weighted, backup)");
  }
  if (req.algo == "congest-unweighted" && !instance.unit_weights()) {
    throw InputError(
        "congest-unweighted needs unit weights; use congest-weighted, local-weighted or seq, which normalize "
        "weights and reduce to weight classes");
  }
  const bool normalize = req.algo != "congest-unweighted";
  const Instance solved = normalize ? normalize_weights(instance) : instance;

  ordered_json report;
  report["instance_digest"] = instance_digest(instance);
  report["algorithm"] = req.algo;
  report["n"] = instance.n();
  report["m"] = instance.m();
  report["weights_normalized"] = normalize && !(solved == instance);

  ordered_json diagnostics;
  Assignment assignment;
  MultiAssignment multi;
  const bool is_backup = req.algo == "backup";
  auto t0 = Clock::now();
  if (req.algo == "seq") {
    auto res = solve_sequential(solved);
    diagnostics["phases"] = res.split.phases;
    diagnostics["per_b"] = schedule_json(res.split.schedule);
    assignment = std::move(res.assignment);
  } else if (req.algo == "congest-unweighted") {
    auto res = solve_unweighted(solved);
    diagnostics["k"] = res.k;
    diagnostics["per_b"] = schedule_json(res.schedule);
    assignment = std::move(res.assignment);
  } else if (req.algo == "congest-weighted") {
    auto res = solve_weighted_congest(solved);
    diagnostics["k"] = res.k;
    diagnostics["classes"] = ordered_json::array();
    for (const auto& c : res.classes) {
      diagnostics["classes"].push_back({{"class_index", c.class_index},
                                        {"clients", c.sub.instance.num_clients()},
                                        {"per_b", schedule_json(c.result.schedule)}});
    }
    assignment = std::move(res.assignment);
  } else if (req.algo == "local-weighted") {
    auto res = solve_weighted_local(solved);
    diagnostics["k"] = res.k;
    diagnostics["expanded_n"] = res.expanded.expanded.n();
    diagnostics["emulation_per_b"] = schedule_json(res.emulation.schedule);
    diagnostics["classes"] = ordered_json::array();
    for (const auto& c : res.classes) {
      diagnostics["classes"].push_back({{"class_index", c.class_index},
                                        {"clients", c.sub.instance.num_clients()},
                                        {"matched", c.matching.total()}});
    }
    assignment = std::move(res.assignment);
  } else {
    auto res = solve_backup(solved, req.r);
    diagnostics["k"] = res.k;
    diagnostics["classes"] = ordered_json::array();
    for (const auto& c : res.classes) {
      diagnostics["classes"].push_back({{"class_index", c.class_index},
                                        {"clients", c.sub.instance.num_clients()},
                                        {"per_b", schedule_json(c.schedule)}});
    }
    multi = std::move(res.assignment);
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();

  const LoadVector loads = is_backup ? multi.loads(solved) : assignment.loads(solved);
  if (is_backup) {
    report["r"] = req.r;
    report["assignment"] = multi_assignment_to_json(solved, multi);
  } else {
    report["assignment"] = assignment_to_json(solved, assignment);
  }
  report["loads"] = loads_json(solved, loads);
  report["norms"] = norms_to_json(loads);
  for (double p : req.extra_norms) report["norms"]["p" + std::to_string(p)] = loads.norm(p);
  if (report["weights_normalized"].get<bool>()) {
    LoadVector original = is_backup ? multi.loads(instance) : assignment.loads(instance);
    report["original_norms"] = norms_to_json(original);
  }
  report["diagnostics"] = std::move(diagnostics);

  if (req.oracle) report["oracle"] = oracle_json(solved, req, loads);

  if (req.simulate) {
    auto id = sim_id(req.algo);
    if (!id) throw InputError("algorithm '" + req.algo + "' has no distributed simulation");
    ModelSpec spec;
    spec.model = req.model.value_or(*id == AlgorithmId::kLocalWeighted ? Model::kLocal : Model::kCongest);
    spec.bandwidth_factor = req.bandwidth_factor;
    auto sim = run_simulation(solved, *id, spec, req.seed, req.r);
    ordered_json s;
    s["algorithm"] = std::string(to_string(*id));
    s["model"] = std::string(to_string(spec.model));
    s["bandwidthFactor"] = spec.bandwidth_factor;
    s["n"] = solved.n();
    s["nExpanded"] = sim.n_expanded;
    s["roundBudget"] = round_budget(*id, solved.n(), spec, sim.n_expanded);
    s["matchesDirect"] = is_backup ? sim.multi_assignment == multi : sim.assignment == assignment;
    const ordered_json trace = trace_to_json(sim.trace);
    for (const auto& [key, value] : trace.items()) s[key] = value;
    report["simulation"] = std::move(s);
  }
  if (req.include_time) report["wall_time_ns"] = elapsed;
  return report;
}

namespace {

ordered_json path_json(const Instance& instance, const AugPath& path) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < path.clients.size(); ++i) {
    out.push_back(instance.client_vertex(path.clients[i]));
    out.push_back(instance.server_vertex(path.servers[i]));
  }
  return out;
}

CheckResult check_budget(const json& doc) {
  CheckResult r{"budget", false, "", nullptr};
  if (!doc.contains("simulation")) {
    r.detail = "artifact has no 'simulation' section";
    return r;
  }
  const json& s = doc["simulation"];
  try {
    auto id = parse_algorithm(s.at("algorithm").get<std::string>());
    ModelSpec spec;
    spec.model = parse_model(s.at("model").get<std::string>());
    spec.bandwidth_factor = s.at("bandwidthFactor").get<int>();
    SimTrace trace;
    trace.n = s.at("n").get<int>();
    trace.charged_rounds = s.at("chargedRounds").get<std::int64_t>();
    std::int64_t phase_sum = 0;
    for (const auto& p : s.at("phases")) phase_sum += p.at("rounds").get<std::int64_t>();
    for (const auto& m : s.at("simulatedMessages")) {
      trace.messages.push_back({m.at("round").get<std::int64_t>(), m.at("edge").get<int>(), m.at("bits").get<std::int64_t>()});
    }
    const auto budget = round_budget(id, trace.n, spec, s.value("nExpanded", 0));
    const bool messages_ok = verify_message_budget(trace, spec);
    r.pass = trace.charged_rounds <= budget && phase_sum == trace.charged_rounds && messages_ok;
    r.detail = "charged " + std::to_string(trace.charged_rounds) + " of budget " + std::to_string(budget) +
               (messages_ok ? "; messages within bandwidth" : "; a message exceeds the bandwidth");
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed simulation section: ") + e.what());
  }
  return r;
}

}  // namespace

std::vector<CheckResult> verify_artifact(const Instance& instance, const std::string& artifact_text,
                                         const std::vector<std::string>& checks) {
  Artifact art = artifact_from_json(instance, artifact_text);
  std::vector<CheckResult> out;
  for (const auto& check : checks) {
    const auto colon = check.find(':');
    const std::string name = check.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : check.substr(colon + 1);
    CheckResult r{check, false, "", nullptr};
    auto need_matching = [&]() -> const CapMatching& {
      if (!art.matching) throw InputError("check '" + check + "' needs a matching artifact");
      return *art.matching;
    };
    if (name == "validity") {
      if (art.matching) {
        r.pass = art.matching->feasible(instance);
        r.detail = r.pass ? "matching respects all capacities" : "matching violates a capacity";
      } else if (art.assignment) {
        r.pass = art.assignment->valid(instance);
        r.detail = r.pass ? "total assignment along edges" : "assignment is not total or uses a non-edge";
      } else {
        r.pass = art.multi_assignment->valid(instance);
        r.detail = r.pass ? "every client on r distinct adjacent servers" : "placement is invalid";
      }
    } else if (name == "no-short-aug-paths") {
      int k = 0;
      try {
        k = std::stoi(arg);
      } catch (const std::exception&) {
        throw InputError("check '" + check + "' needs an odd integer bound, e.g. no-short-aug-paths:17");
      }
      const auto& x = need_matching();
      auto witness = verify_no_short_aug_paths(instance, x, k);
      r.pass = !witness;
      if (witness) {
        r.detail = "augmenting path of length " + std::to_string(witness->length());
        r.witness = path_json(instance, *witness);
      } else {
        r.detail = "no augmenting path of length <= " + std::to_string(k);
      }
    } else if (name == "expansion") {
      double alpha = 0;
      try {
        alpha = std::stod(arg);
      } catch (const std::exception&) {
        throw InputError("check '" + check + "' needs a numeric alpha, e.g. expansion:2");
      }
      const auto& x = need_matching();
      std::vector<Mult> tau;
      for (Mult t : x.profile().server_cap) tau.push_back(static_cast<Mult>(std::floor(static_cast<double>(t) / alpha)));
      try {
        auto ce = verify_expansion_lemma(instance, x.profile().client_cap, tau, alpha, x);
        r.pass = !ce;
        if (ce) {
          r.detail = "client without a short augmenting path";
          r.witness = counterexample_to_json(*ce);
        } else {
          r.detail = "every unsaturated client has a short augmenting path";
        }
      } catch (const PreconditionError& e) {
        r.detail = std::string("precondition failed: ") + e.what();
      }
    } else if (name == "cost-reducing") {
      if (!art.assignment) throw InputError("check 'cost-reducing' needs an assignment artifact");
      auto path = find_cost_reducing_path(instance, *art.assignment);
      r.pass = !path;
      if (path) {
        r.detail = "cost-reducing path found";
        r.witness = ordered_json::array();
        for (std::size_t i = 0; i < path->clients.size(); ++i) {
          r.witness.push_back(instance.server_vertex(path->servers[i]));
          r.witness.push_back(instance.client_vertex(path->clients[i]));
        }
        r.witness.push_back(instance.server_vertex(path->servers.back()));
      } else {
        r.detail = "no cost-reducing path";
      }
    } else if (name == "budget") {
      r = check_budget(json::parse(artifact_text));
      r.check = check;
    } else {
      throw InputError("unknown check '" + check +
                       "' (expected validity, no-short-aug-paths:K, expansion:ALPHA, cost-reducing, budget)");
    }
    out.push_back(std::move(r));
  }
  return out;
}

GeneratorSpec generator_from_json(const json& spec) {
  GeneratorSpec g;
  if (!spec.is_object() || !spec.contains("name")) throw InputError("generator spec needs a 'name'");
  for (const auto& [key, _] : spec.items()) {
    static const std::vector<std::string> known = {"name", "clients", "servers", "k", "p", "exponent", "max_weight"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InputError("unknown field 'generator." + key + "'");
    }
  }
  g.name = spec["name"].get<std::string>();
  g.clients = spec.value("clients", 0);
  g.servers = spec.value("servers", 0);
  g.k = spec.value("k", 0);
  g.p = spec.value("p", 0.0);
  g.exponent = spec.value("exponent", 2.0);
  g.max_weight = spec.value("max_weight", Weight{1});
  return g;
}

namespace {

void bench_row(std::ostream& out, const Instance& inst, const std::string& algo, std::uint64_t seed, bool oracle,
               int r, int repeats) {
  SolveRequest req;
  req.algo = algo;
  req.oracle = oracle;
  req.r = r;
  req.seed = seed;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  ordered_json report;
  for (int i = 0; i < std::max(1, repeats); ++i) {
    report = solve_report(inst, req);
    best = std::min(best, report["wall_time_ns"].get<std::int64_t>());
  }
  std::string ratio_col, rounds_col;
  if (oracle && report["oracle"].contains("ratio_linf")) {
    std::ostringstream os;
    os.precision(6);
    os << report["oracle"]["ratio_linf"].get<double>();
    ratio_col = os.str();
  }
  if (sim_id(algo)) {
    req.oracle = false;
    req.simulate = true;
    auto sim = solve_report(inst, req);
    rounds_col = std::to_string(sim["simulation"]["chargedRounds"].get<std::int64_t>());
  }
  out << inst.n() << ',' << inst.m() << ',' << algo << ',' << seed << ',' << best << ','
      << report["norms"]["inf"].get<std::int64_t>() << ',' << ratio_col << ',' << rounds_col << '\n';
}

}  // namespace

void run_bench(const json& suite, std::ostream& out) {
  out << "n,m,algo,seed,time_ns,linf,ratio,charged_rounds\n";
  if (suite.contains("entries")) {
    for (const auto& entry : suite["entries"]) {
      GeneratorSpec g = generator_from_json(entry.at("generator"));
      std::vector<std::uint64_t> seeds = entry.value("seeds", std::vector<std::uint64_t>{1});
      std::vector<std::string> algos = entry.value("algos", std::vector<std::string>{"seq"});
      const bool oracle = entry.value("oracle", false);
      const int r = entry.value("r", 2);
      const int repeats = entry.value("repeats", 1);
      for (auto seed : seeds) {
        Instance inst = generate_instance(g, seed);
        for (const auto& algo : algos) bench_row(out, inst, algo, seed, oracle, r, repeats);
      }
    }
  }
  if (suite.contains("doubling")) {
    const json& d = suite["doubling"];
    const std::string algo = d.value("algo", std::string("seq"));
    const int lo = d.value("min_log2", 10);
    const int hi = d.value("max_log2", 16);
    const double degree = d.value("avg_degree", 4.0);
    const Weight max_weight = d.value("max_weight", Weight{4});
    const std::uint64_t seed = d.value("seed", std::uint64_t{1});
    const int repeats = d.value("repeats", 1);
    for (int l = lo; l <= hi; ++l) {
      GeneratorSpec g;
      g.name = max_weight > 1 ? "weighted-random" : "random-bipartite";
      g.clients = 1 << (l - 1);
      g.servers = 1 << (l - 1);
      g.p = std::min(1.0, degree / g.servers);
      g.max_weight = max_weight;
      bench_row(out, generate_instance(g, seed), algo, seed, false, 2, repeats);
    }
  }
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Load balancing solvers, oracles and round-accounted simulations"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  GeneratorSpec gspec;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("generator", gspec.name,
                  "random-bipartite | star | disjoint-perfect | power-law-degrees | weighted-random")
      ->required();
  gen->add_option("--clients", gspec.clients, "Number of clients");
  gen->add_option("--servers", gspec.servers, "Number of servers");
  gen->add_option("--k", gspec.k, "Size of disjoint-perfect");
  gen->add_option("--p", gspec.p, "Edge probability");
  gen->add_option("--exponent", gspec.exponent, "Power-law degree exponent");
  gen->add_option("--max-weight", gspec.max_weight, "Largest client weight");
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("-o,--output", gen_out, "Output path (stdout when omitted)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance and print a JSON run report");
  std::string solve_in, solve_out, model_name;
  SolveRequest req;
  solve->add_option("instance", solve_in, "Instance file")->required();
  solve->add_option("--algo", req.algo, "seq | congest-unweighted | congest-weighted | local-weighted | backup");
  solve->add_option("--r", req.r, "Number of servers per client for backup");
  solve->add_flag("--oracle", req.oracle, "Compare against exact optima when small enough");
  solve->add_option("--enum-limit", req.enum_limit, "Largest assignment space the oracle enumerates");
  solve->add_flag("--simulate", req.simulate, "Also run the round-accounted simulation");
  solve->add_option("--model", model_name, "CONGEST | LOCAL");
  solve->add_option("--bandwidth-factor", req.bandwidth_factor, "CONGEST bandwidth is this times ceil(log2 n) bits");
  solve->add_option("--seed", req.seed, "Seed recorded with the simulation");
  solve->add_option("--norm", req.extra_norms, "Additional p-norms to report");
  solve->add_option("-o,--output", solve_out, "Report path (stdout when omitted)");

  // match
  auto* match = app.add_subcommand("match", "Compute a capacitated matching and dump it as JSON");
  std::string match_in, match_out, edge_cap = "unbounded", layer_log;
  Mult kappa = 1, tau = 1;
  bool weighted_kappa = false;
  int k = 0, phases = 0;
  match->add_option("instance", match_in, "Instance file")->required();
  match->add_option("--kappa", kappa, "Uniform client capacity");
  match->add_flag("--weighted-kappa", weighted_kappa, "Use client weights as client capacities");
  match->add_option("--tau", tau, "Uniform server capacity");
  match->add_option("--edge-cap", edge_cap, "one | unbounded");
  auto* k_opt = match->add_option("--k", k, "Eliminate augmenting paths of length <= k");
  auto* phase_opt = match->add_option("--phases", phases, "Run this many blocking-flow phases instead");
  k_opt->excludes(phase_opt);
  match->add_option("--layer-log", layer_log, "Write per-phase layer sizes as CSV");
  match->add_option("-o,--output", match_out, "Output path (stdout when omitted)");

  // verify
  auto* verify = app.add_subcommand("verify", "Check an assignment, matching or report");
  std::string verify_in, verify_art;
  std::vector<std::string> checks;
  verify->add_option("instance", verify_in, "Instance file")->required();
  verify->add_option("artifact", verify_art, "Assignment, matching dump or solve report")->required();
  verify->add_option("--check", checks,
                     "validity | no-short-aug-paths:K | expansion:ALPHA | cost-reducing | budget (repeatable)")
      ->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite and write CSV");
  std::string suite_path, bench_out;
  std::string doubling;
  bench->add_option("suite", suite_path, "Suite JSON file")->required();
  bench->add_option("-o,--output", bench_out, "CSV path (stdout when omitted)");
  bench->add_option("--doubling", doubling, "Append a seq doubling series over n = 2^MIN..2^MAX, given as MIN:MAX");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen) {
      Instance inst;
      try {
        inst = generate_instance(gspec, gen_seed);
      } catch (const InputError& e) {
        err << "error: " << e.what() << "\n\n" << gen->help();
        return kError;
      }
      write_text(gen_out, instance_to_json(inst), out);
      if (!gen_out.empty() && gen_out != "-") out << instance_digest(inst) << '\n';
      return kOk;
    }
    if (*solve) {
      if (!model_name.empty()) req.model = parse_model(model_name);
      Instance inst = read_instance(solve_in);
      try {
        auto report = solve_report(inst, req);
        write_text(solve_out, report.dump(2) + "\n", out);
        return kOk;
      } catch (const InfeasibleError& e) {
        ordered_json doc;
        doc["instance_digest"] = instance_digest(inst);
        doc["algorithm"] = req.algo;
        doc["status"] = "infeasible";
        doc["client"] = e.client_vertex();
        doc["message"] = e.what();
        write_text(solve_out, doc.dump(2) + "\n", out);
        err << "infeasible: " << e.what() << '\n';
        return kInfeasible;
      }
    }
    if (*match) {
      Instance inst = read_instance(match_in);
      if (k_opt->count() == 0 && phase_opt->count() == 0) throw InputError("match needs --k or --phases");
      EdgeCapMode mode;
      if (edge_cap == "one") {
        mode = EdgeCapMode::kOne;
      } else if (edge_cap == "unbounded") {
        mode = EdgeCapMode::kUnbounded;
      } else {
        throw InputError("--edge-cap must be one or unbounded");
      }
      CapacityProfile profile = CapacityProfile::uniform(inst, kappa, tau, mode);
      if (weighted_kappa) profile.client_cap.assign(inst.weights().begin(), inst.weights().end());
      std::ofstream log;
      PhaseOptions opts;
      if (!layer_log.empty()) {
        log.open(layer_log);
        if (!log) throw InputError("cannot write '" + layer_log + "'");
        log << "phase,layer,vertices\n";
        opts.layer_log = &log;
      }
      CapMatching x = k_opt->count() ? eliminate_short_paths(inst, profile, k, opts)
                                     : blocking_flow_matching(inst, profile, phases, opts);
      write_text(match_out, matching_to_json(inst, x).dump() + "\n", out);
      return kOk;
    }
    if (*verify) {
      Instance inst = read_instance(verify_in);
      auto results = verify_artifact(inst, read_file(verify_art), checks);
      ordered_json doc;
      bool all = true;
      doc["checks"] = ordered_json::array();
      for (const auto& r : results) {
        all = all && r.pass;
        ordered_json row{{"check", r.check}, {"pass", r.pass}, {"detail", r.detail}};
        if (!r.witness.is_null()) row["witness"] = r.witness;
        doc["checks"].push_back(std::move(row));
      }
      doc["pass"] = all;
      out << doc.dump(2) << '\n';
      return all ? kOk : kError;
    }
    if (*bench) {
      json suite = json::parse(read_file(suite_path));
      if (!doubling.empty()) {
        auto colon = doubling.find(':');
        if (colon == std::string::npos) throw InputError("--doubling expects MIN:MAX");
        suite["doubling"]["min_log2"] = std::stoi(doubling.substr(0, colon));
        suite["doubling"]["max_log2"] = std::stoi(doubling.substr(colon + 1));
      }
      std::ostringstream csv;
      run_bench(suite, csv);
      write_text(bench_out, csv.str(), out);
      return kOk;
    }
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace loadbal::cli
