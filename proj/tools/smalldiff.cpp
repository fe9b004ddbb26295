// smalldiff command-line tool.
//
// Exit codes: 0 pass, 1 property violation, 2 usage or input error, 3 capacity.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "smalldiff/smalldiff.hpp"

namespace sd = smalldiff;
using sd::json;

namespace {

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kCapacity = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw sd::invalid_input("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Reals in reports are rounded to 12 significant digits before serialization.
json rounded(json j) {
  if (j.is_number_float()) return sd::round12(j.get<double>());
  if (j.is_structured()) {
    for (auto& v : j) v = rounded(std::move(v));
  }
  return j;
}

void emit(const json& j) { std::cout << rounded(j).dump(2) << '\n'; }

json report(const std::string& command, const json& params) {
  json r;
  r["tool"] = "smalldiff";
  r["version"] = sd::kVersion;
  r["command"] = command;
  r["params"] = params;
  return r;
}

void write_file(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw sd::invalid_input("cannot write " + path);
  out << rounded(j).dump(2) << '\n';
}

json config_json(const sd::ConfigPoint& p) {
  return {{"L", p.L}, {"endpoints", p.endpoints}};
}

json stationarity_json(const sd::StationarityReport& r) {
  return {{"xi", r.xi},
          {"complemented", r.complemented},
          {"boundary_level", r.level},
          {"interior_floor", r.floor},
          {"boundary_residuals", r.boundary_residuals},
          {"interior_min", r.interior_min},
          {"tolerance", r.tolerance},
          {"passes", r.passes}};
}

std::string csv_real(double x) { return sd::format12(x); }

struct OptFlags {
  int restarts = 16;
  int max_iters = 10'000;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::string config;
  bool free_measure = false;
  double stationarity_tol = 1e-4;
  std::string output;
};

void add_opt_flags(CLI::App* cmd, OptFlags& f) {
  cmd->add_option("--restarts", f.restarts, "multistart count")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", f.max_iters, "iterations per restart")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--tol", f.tol, "stop when the search direction max-norm drops below this");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--config", f.config,
                  "JSON file with any of restarts, max_iters, tol, seed; flags given on the "
                  "command line take precedence");
  cmd->add_option("--stationarity-tol", f.stationarity_tol, "tolerance of the stationarity report");
  cmd->add_option("-o,--output", f.output, "also write the best configuration to this file");
}

sd::OptOptions resolve(CLI::App* cmd, const OptFlags& f) {
  sd::OptOptions o;
  if (!f.config.empty()) {
    const json cfg = sd::parse_json(read_input(f.config));
    if (!cfg.is_object()) throw sd::invalid_input("config must be a JSON object");
    try {
      if (cfg.contains("restarts")) o.restarts = cfg.at("restarts").get<int>();
      if (cfg.contains("max_iters")) o.max_iters = cfg.at("max_iters").get<int>();
      if (cfg.contains("tol")) o.tol = cfg.at("tol").get<double>();
      if (cfg.contains("seed")) o.seed = cfg.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
      throw sd::invalid_input(std::string("bad config value: ") + e.what());
    }
  }
  if (f.config.empty() || cmd->count("--restarts")) o.restarts = f.restarts;
  if (f.config.empty() || cmd->count("--max-iters")) o.max_iters = f.max_iters;
  if (f.config.empty() || cmd->count("--tol")) o.tol = f.tol;
  if (f.config.empty() || cmd->count("--seed")) o.seed = f.seed;
  o.fix_measure = !f.free_measure;
  return o;
}

json options_json(const sd::OptOptions& o) {
  return {{"restarts", o.restarts},
          {"max_iters", o.max_iters},
          {"tol", o.tol},
          {"seed", o.seed},
          {"fix_measure", o.fix_measure}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small differences on the circle: functionals, bounds and path-power colourings"};
  app.set_version_flag("--version", std::string(sd::kVersion));
  app.require_subcommand(1);

  std::function<int()> action;

  // phi
  std::string phi_path;
  auto* phi_cmd = app.add_subcommand("phi", "evaluate the pair functional of an arc set");
  phi_cmd->add_option("input", phi_path, "ArcSet JSON file, - for stdin")->required();
  phi_cmd->callback([&] {
    action = [&] {
      const sd::ArcSet a = sd::arcset_from_json(sd::parse_json(read_input(phi_path)));
      const sd::PiecewiseLinear g = sd::g_profile(a);
      json breaks = json::array();
      for (const auto& k : g.knots()) breaks.push_back({k.x, k.value});
      json r = report("phi", {{"input", phi_path}});
      r["set"] = sd::to_json(a);
      r["measure"] = a.measure();
      r["xi"] = a.density();
      r["phi"] = sd::phi(a);
      r["eta"] = sd::eta(a);
      r["density_bound"] = sd::density_bound(a.density(), a.perimeter());
      r["g_breakpoints"] = std::move(breaks);
      emit(r);
      return kPass;
    };
  });

  // bound
  double b_xi = 0.0, b_L = 1.0;
  int b_k = 0, b_m = 1, b_n = 1;
  auto* bound_cmd = app.add_subcommand("bound", "evaluate a lower bound");
  bound_cmd->require_subcommand(1);
  auto* bd = bound_cmd->add_subcommand("density", "(xi + W(xi) - 1) L");
  bd->add_option("--xi", b_xi)->required();
  bd->add_option("--L", b_L)->required();
  bd->callback([&] {
    action = [&] {
      std::cout << sd::format12(sd::density_bound(b_xi, b_L)) << '\n';
      return kPass;
    };
  });
  auto* bc = bound_cmd->add_subcommand("colouring", "(sqrt(k^2+1) - k) L");
  bc->add_option("--k", b_k)->required();
  bc->add_option("--L", b_L)->required();
  bc->callback([&] {
    action = [&] {
      std::cout << sd::format12(sd::colouring_bound(b_k, b_L)) << '\n';
      return kPass;
    };
  });
  auto* bdis = bound_cmd->add_subcommand("discrete", "((sqrt(k^2+1) - k) m - 1/2) n - m^2/2");
  bdis->add_option("--k", b_k)->required();
  bdis->add_option("--m", b_m)->required();
  bdis->add_option("--n", b_n)->required();
  bdis->callback([&] {
    action = [&] {
      std::cout << sd::format12(sd::discrete_bound(b_k, b_m, b_n)) << '\n';
      return kPass;
    };
  });

  // construct
  double c_xi = 0.5, c_L = 1.0;
  int c_k = 0, c_n = 1, c_t = 1, c_m = 1;
  std::string c_input, c_output;
  auto* construct_cmd = app.add_subcommand("construct", "generate extremal configurations");
  construct_cmd->require_subcommand(1);
  auto* ce = construct_cmd->add_subcommand("equispaced", "n equally spread arcs of density xi");
  ce->add_option("--xi", c_xi)->required();
  ce->add_option("--L", c_L)->required();
  ce->add_option("--n", c_n)->required();
  ce->add_option("-o,--output", c_output, "write the ArcSet JSON to this file");
  ce->callback([&] {
    action = [&] {
      const sd::ArcSet a = sd::equispaced_density(c_xi, c_L, c_n);
      json r = report("construct equispaced", {{"xi", c_xi}, {"L", c_L}, {"n", c_n}});
      r["set"] = sd::to_json(a);
      r["phi"] = sd::phi(a);
      r["bound"] = sd::density_bound(a.density(), c_L);
      r["eta"] = sd::eta(a);
      write_file(c_output, sd::to_json(a));
      emit(r);
      return kPass;
    };
  });
  auto* ca = construct_cmd->add_subcommand("alternating", "(k+1) n arcs coloured round-robin");
  ca->add_option("--k", c_k)->required();
  ca->add_option("--n", c_n)->required();
  ca->add_option("-o,--output", c_output, "write the Partition JSON to this file");
  ca->callback([&] {
    action = [&] {
      const sd::Partition p = sd::alternating_partition(c_k, c_n);
      const double total = sd::phi_partition(p);
      const double bound = sd::colouring_bound(c_k, p.perimeter());
      json r = report("construct alternating", {{"k", c_k}, {"n", c_n}});
      r["partition"] = sd::to_json(p);
      r["sum_phi"] = total;
      r["bound"] = bound;
      r["slack"] = total - bound;
      write_file(c_output, sd::to_json(p));
      emit(r);
      return kPass;
    };
  });
  auto* cb = construct_cmd->add_subcommand("blocks", "blocks of t consecutive integers");
  cb->add_option("--k", c_k)->required();
  cb->add_option("--n", c_n)->required();
  cb->add_option("--t", c_t)->required();
  cb->add_option("--m", c_m, "also report monochromatic edges of the m-th path power");
  cb->add_option("-o,--output", c_output, "write the colouring JSON to this file");
  cb->callback([&] {
    action = [&] {
      const sd::DiscreteColouring c = sd::block_colouring(c_k, c_n, c_t);
      json params{{"k", c_k}, {"n", c_n}, {"t", c_t}};
      if (cb->count("--m")) params["m"] = c_m;
      json r = report("construct blocks", params);
      r["colouring"] = sd::to_json(c);
      r["witness"] = c.to_string();
      if (cb->count("--m")) {
        if (c_m < 1) throw sd::invalid_input("m must be >= 1");
        r["mono_edges"] = sd::mono_edges(c, c_m);
      }
      write_file(c_output, sd::to_json(c));
      emit(r);
      return kPass;
    };
  });
  auto* cu = construct_cmd->add_subcommand("blowup", "cells of length 1/m coloured by a colouring");
  cu->add_option("--input", c_input, "colouring JSON file, - for stdin")->required();
  cu->add_option("--m", c_m)->required();
  cu->add_option("-o,--output", c_output, "write the Partition JSON to this file");
  cu->callback([&] {
    action = [&] {
      const sd::DiscreteColouring c = sd::colouring_from_json(sd::parse_json(read_input(c_input)));
      const sd::Partition p = sd::blowup(c, c_m);
      const double mm = static_cast<double>(c_m) * c_m;
      const double rhs =
          static_cast<double>(sd::mono_edges(c, c_m)) / mm + c.n() / (2.0 * mm) + 0.5;
      json r = report("construct blowup", {{"input", c_input}, {"m", c_m}});
      r["partition"] = sd::to_json(p);
      r["sum_phi"] = sd::phi_partition(p);
      r["mono_edges"] = sd::mono_edges(c, c_m);
      r["bridge_rhs"] = rhs;
      write_file(c_output, sd::to_json(p));
      emit(r);
      return kPass;
    };
  });

  // optimize
  OptFlags of;
  double o_xi = 0.5, o_L = 1.0;
  int o_n = 1, o_k = 0;
  bool o_sweep = false;
  auto* optimize_cmd = app.add_subcommand("optimize", "multistart local search");
  optimize_cmd->require_subcommand(1);
  auto* od = optimize_cmd->add_subcommand("density", "minimise eta over n-arc sets");
  od->add_option("--xi", o_xi)->required();
  od->add_option("--L", o_L)->required();
  od->add_option("--n", o_n, "arc count, or the largest arc count with --sweep")->required();
  od->add_flag("--free-measure", of.free_measure, "let the density vary during the search");
  od->add_flag("--sweep", o_sweep, "run every arc count 1..n");
  add_opt_flags(od, of);
  od->callback([&] {
    action = [&] {
      const sd::OptOptions opts = resolve(od, of);
      json params{{"xi", o_xi}, {"L", o_L}, {"n", o_n}, {"sweep", o_sweep}};
      params["options"] = options_json(opts);
      params["stationarity_tol"] = of.stationarity_tol;
      json r = report("optimize density", params);
      auto run_json = [&](int n, const sd::OptResult& res) {
        const sd::ArcSet best = sd::arcset_of(res.best);
        return json{{"n", n},
                    {"best", config_json(res.best)},
                    {"set", sd::to_json(best)},
                    {"xi", best.density()},
                    {"eta_value", res.eta_value},
                    {"stationarity_residual", res.stationarity_residual},
                    {"trajectory_length", res.trajectory_length},
                    {"restarts_used", res.restarts_used},
                    {"seed", res.seed},
                    {"stationarity", stationarity_json(sd::stationarity_report(
                                         best, of.stationarity_tol))}};
      };
      if (o_sweep) {
        json runs = json::array();
        const auto results = sd::minimize_eta_sweep(o_xi, o_L, o_n, opts);
        for (std::size_t i = 0; i < results.size(); ++i) {
          runs.push_back(run_json(static_cast<int>(i) + 1, results[i]));
        }
        r["runs"] = std::move(runs);
      } else {
        const sd::OptResult res = sd::minimize_eta(o_xi, o_L, o_n, opts);
        r["result"] = run_json(o_n, res);
        write_file(of.output, sd::to_json(sd::arcset_of(res.best)));
      }
      emit(r);
      return kPass;
    };
  });
  auto* op = optimize_cmd->add_subcommand("partition", "minimise the sum over colour classes");
  op->add_option("--k", o_k)->required();
  op->add_option("--L", o_L)->required();
  op->add_option("--n-per-part", o_n, "arcs per colour")->required();
  add_opt_flags(op, of);
  op->callback([&] {
    action = [&] {
      const sd::OptOptions opts = resolve(op, of);
      json params{{"k", o_k}, {"L", o_L}, {"n_per_part", o_n}};
      params["options"] = options_json(opts);
      json r = report("optimize partition", params);
      const sd::PartitionOptResult res = sd::minimize_partition(o_k, o_L, o_n, opts);
      r["partition"] = sd::to_json(res.best);
      r["cuts"] = res.cuts;
      r["objective"] = res.objective;
      r["bound"] = res.bound;
      r["slack"] = res.slack;
      r["stationarity_residual"] = res.stationarity_residual;
      r["trajectory_length"] = res.trajectory_length;
      r["restarts_used"] = res.restarts_used;
      r["seed"] = res.seed;
      write_file(of.output, sd::to_json(res.best));
      emit(r);
      return kPass;
    };
  });

  // discrete
  int d_k = 1, d_m = 1, d_n = 1, d_n2 = 1;
  std::string d_method = "dp";
  auto* discrete_cmd = app.add_subcommand("discrete", "path-power colourings");
  discrete_cmd->require_subcommand(1);
  const char* header = "k,m,n,f,bound,slack,witness";
  auto csv_row = [](int k, int m, int n, const sd::DiscreteSolution& s) {
    const double bound = sd::discrete_bound(k, m, n);
    std::cout << k << ',' << m << ',' << n << ',' << s.value << ',' << csv_real(bound) << ','
              << csv_real(static_cast<double>(s.value) - bound) << ',' << s.witness.to_string()
              << '\n';
  };
  auto* dsolve = discrete_cmd->add_subcommand("solve", "exact f(k, m, n) with a witness");
  dsolve->add_option("--k", d_k)->required();
  dsolve->add_option("--m", d_m)->required();
  dsolve->add_option("--n", d_n)->required();
  dsolve->add_option("--method", d_method)->check(CLI::IsMember({"dp", "brute"}));
  dsolve->callback([&] {
    action = [&] {
      const sd::DiscreteInstance inst{d_k, d_m, d_n};
      inst.validate();
      if (d_n < d_m) throw sd::domain_error("the bound needs n >= m");
      const sd::DiscreteSolution s = d_method == "brute" ? sd::f_brute(inst) : sd::f_exact_dp(inst);
      std::cout << header << '\n';
      csv_row(d_k, d_m, d_n, s);
      return kPass;
    };
  });
  auto* dscan = discrete_cmd->add_subcommand("scan", "f(k, m, n) for n = m..n_max");
  dscan->add_option("--k", d_k)->required();
  dscan->add_option("--m", d_m)->required();
  dscan->add_option("--n-max", d_n)->required();
  dscan->callback([&] {
    action = [&] {
      if (d_n < d_m) throw sd::domain_error("n-max must be >= m");
      int status = kPass;
      std::cout << header << '\n';
      for (int n = d_m; n <= d_n; ++n) {
        const sd::DiscreteSolution s = sd::f_exact_dp({d_k, d_m, n});
        csv_row(d_k, d_m, n, s);
        if (static_cast<double>(s.value) - sd::discrete_bound(d_k, d_m, n) < -1e-9) {
          status = kViolation;
        }
      }
      return status;
    };
  });
  auto* dalpha = discrete_cmd->add_subcommand("alpha", "bracket the per-vertex limit");
  dalpha->add_option("--k", d_k)->required();
  dalpha->add_option("--m", d_m)->required();
  dalpha->add_option("--n-max", d_n)->required();
  dalpha->callback([&] {
    action = [&] {
      const sd::AlphaBracket b = sd::alpha_estimate(d_k, d_m, d_n);
      json r = report("discrete alpha", {{"k", d_k}, {"m", d_m}, {"n_max", d_n}});
      r["lower"] = b.lower;
      r["upper"] = b.upper;
      r["argmin_n"] = b.argmin_n;
      r["width"] = b.upper - b.lower;
      emit(r);
      return b.lower <= b.upper ? kPass : kViolation;
    };
  });
  auto* dsub = discrete_cmd->add_subcommand("subadd", "f(n1+n2) <= f(n1) + f(n2) + C(m+1, 2)");
  dsub->add_option("--k", d_k)->required();
  dsub->add_option("--m", d_m)->required();
  dsub->add_option("--n1", d_n)->required();
  dsub->add_option("--n2", d_n2)->required();
  dsub->callback([&] {
    action = [&] {
      const sd::BoundReport b = sd::subadditivity_check(d_k, d_m, d_n, d_n2);
      json r = report("discrete subadd", {{"k", d_k}, {"m", d_m}, {"n1", d_n}, {"n2", d_n2}});
      r["bound_value"] = b.bound_value;
      r["achieved_value"] = b.achieved_value;
      r["slack"] = b.slack;
      r["context"] = b.context;
      r["passes"] = b.passes;
      emit(r);
      return b.passes ? kPass : kViolation;
    };
  });

  // verify
  std::string v_suite;
  int v_samples = -1;
  std::uint64_t v_seed = 0;
  auto* verify_cmd = app.add_subcommand("verify", "run a named invariant suite");
  verify_cmd->add_option("suite", v_suite, "suite name")->required();
  verify_cmd->add_option("--samples", v_samples, "sample count (suite default if omitted)");
  verify_cmd->add_option("--seed", v_seed, "random seed");
  verify_cmd->callback([&] {
    action = [&] {
      const auto& table = sd::suites();
      const auto it = table.find(v_suite);
      if (it == table.end()) {
        std::string names;
        for (const auto& [name, info] : table) names += (names.empty() ? "" : ", ") + name;
        throw sd::invalid_input("unknown suite \"" + v_suite + "\"; known: " + names);
      }
      const int samples = v_samples >= 0 ? v_samples : it->second.default_samples;
      const sd::SuiteOutcome o = it->second.run(samples, v_seed);
      json r = report("verify", {{"suite", v_suite}, {"samples", samples}, {"seed", v_seed}});
      r["metric"] = o.metric;
      r["checked"] = o.checked;
      r["worst"] = o.worst;
      r["passed"] = o.passed;
      r["counterexample"] = o.counterexample;
      emit(r);
      return o.passed ? kPass : kViolation;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const sd::capacity_error& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
