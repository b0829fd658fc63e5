// nsplan: plan, evaluate and export non-stationary MDP domains.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "nsplan/domain_io.hpp"
#include "nsplan/errors.hpp"
#include "nsplan/generator.hpp"
#include "nsplan/harness.hpp"
#include "nsplan/wasserstein.hpp"
#include "nsplan/worst_case.hpp"

namespace {

struct Options {
  std::string domain = "bridge";
  double epsilon = 0.5;
  std::vector<double> epsilonGrid = {0.0, 0.5, 1.0};
  std::string algo = "rats";
  int dmax = 3;
  std::string heuristic = "zero";
  int episodes = 100;
  std::uint64_t seed = 0;
  int horizon = 20;
  bool memoize = true;
  std::string metric = "manhattan";
  std::string out;
  std::string format = "json";
  int exportHorizon = -1;
};

nsplan::MetricKind metric_kind(const std::string& s) {
  if (s == "discrete") return nsplan::MetricKind::Discrete;
  if (s == "manhattan") return nsplan::MetricKind::Manhattan;
  throw nsplan::ConfigError("metric must be discrete or manhattan");
}

nsplan::LoadedDomain make_domain(const Options& opt) {
  if (opt.domain == "bridge") {
    nsplan::BridgeSpec spec;
    spec.epsilon = opt.epsilon;
    spec.metric = metric_kind(opt.metric);
    if (opt.exportHorizon > 0) spec.horizon = opt.exportHorizon;
    nsplan::BridgeDomain dom = nsplan::build_bridge(spec);
    nsplan::LoadedDomain out;
    out.nsmdp = std::move(dom.nsmdp);
    out.metric = std::move(dom.metric);
    out.startState = dom.start;
    out.name = "bridge";
    return out;
  }
  return nsplan::load_domain_file(opt.domain);
}

nsplan::EvalConfig make_eval_config(const Options& opt,
                                    const nsplan::LoadedDomain& dom) {
  nsplan::EvalConfig cfg;
  cfg.algo = nsplan::algo_from_string(opt.algo);
  cfg.episodes = opt.episodes;
  cfg.episodeLen = opt.horizon;
  cfg.seed = opt.seed;
  cfg.rats.dMax = opt.dmax;
  cfg.rats.lp = dom.nsmdp.lipschitz_p();
  cfg.rats.lr = dom.nsmdp.lipschitz_r();
  cfg.rats.memoize = opt.memoize;
  if (opt.heuristic == "mc") {
    cfg.rats.heuristic.kind = nsplan::HeuristicKind::RolloutLowerBound;
    cfg.rats.heuristic.seed = nsplan::derive_seed(opt.seed, 0xB00F);
  }
  return cfg;
}

void print_summary(const nsplan::EvaluationReport& rep) {
  std::printf(
      "domain=%s algo=%s episodes=%d episode_len=%d seed=%llu\n"
      "mean=%.6f stddev=%.6f cvar@%.2f=%.6f\n",
      rep.domainName.c_str(), nsplan::to_string(rep.config.algo).c_str(),
      rep.config.episodes, rep.config.episodeLen,
      static_cast<unsigned long long>(rep.config.seed), rep.mean, rep.stddev,
      rep.config.cvarQ, rep.cvar);
}

int cmd_run(const Options& opt) {
  const auto dom = make_domain(opt);
  const auto cfg = make_eval_config(opt, dom);
  const auto rep =
      nsplan::evaluate(dom.nsmdp, dom.metric, cfg, dom.startState, dom.name);
  print_summary(rep);
  if (!opt.out.empty()) {
    if (opt.format == "json") {
      nsplan::write_report_json(rep, opt.out + ".json");
      std::printf("wrote %s.json\n", opt.out.c_str());
    }
    nsplan::write_report_csv(rep, opt.out + ".csv");
    std::printf("wrote %s.csv\n", opt.out.c_str());
  }
  return 0;
}

int cmd_sweep(const Options& opt) {
  if (opt.domain != "bridge")
    throw nsplan::ConfigError("sweep runs on the builtin bridge domain");
  nsplan::BridgeSpec spec;
  spec.metric = metric_kind(opt.metric);
  nsplan::EvalConfig cfg;
  Options tmp = opt;
  {
    nsplan::BridgeDomain probe = nsplan::build_bridge(spec);
    nsplan::LoadedDomain ld;
    ld.nsmdp = std::move(probe.nsmdp);
    cfg = make_eval_config(tmp, ld);
  }
  const std::vector<nsplan::AlgoKind> algos = {nsplan::AlgoKind::Rats,
                                               nsplan::AlgoKind::DpSnapshot,
                                               nsplan::AlgoKind::DpNsmdp};
  const auto sweep =
      nsplan::sweep_bridge(spec, opt.epsilonGrid, algos, cfg);
  std::printf("epsilon     algo         mean      stddev    cvar@%.2f\n",
              cfg.cvarQ);
  for (const auto& cell : sweep.cells)
    std::printf("%-11.3f %-12s %-9.4f %-9.4f %-9.4f\n", cell.epsilon,
                nsplan::to_string(cell.algo).c_str(), cell.report.mean,
                cell.report.stddev, cell.report.cvar);
  if (!opt.out.empty()) {
    nsplan::write_sweep_long_csv(sweep, opt.out + "_long.csv");
    nsplan::write_sweep_summary_csv(sweep, opt.out + "_summary.csv");
    std::printf("wrote %s_long.csv and %s_summary.csv\n", opt.out.c_str(),
                opt.out.c_str());
    if (opt.format == "json") {
      nsplan::write_sweep_json(sweep, opt.out + ".json");
      std::printf("wrote %s.json\n", opt.out.c_str());
    }
  }
  return 0;
}

int cmd_export(const Options& opt) {
  if (opt.out.empty())
    throw nsplan::ConfigError("export-domain needs --out");
  const auto dom = make_domain(opt);
  nsplan::save_domain_file(dom.nsmdp, dom.metric, dom.startState, dom.name,
                           opt.out);
  std::printf("wrote %s\n", opt.out.c_str());
  return 0;
}

//----------------------------------------------------------------------------
// validate: invariant battery over the library

int cmd_validate(const Options& opt) {
  using namespace nsplan;
  int failures = 0;
  const auto check = [&](const std::string& name,
                         const std::function<void()>& body) {
    try {
      body();
      std::printf("check: %-58s ok\n", name.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("check: %-58s FAIL (%s)\n", name.c_str(), e.what());
    }
  };
  const auto require = [](bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
  };

  check("bridge tables are well formed at epsilon 0, 0.5, 1", [&] {
    for (double eps : {0.0, 0.5, 1.0}) {
      BridgeSpec spec;
      spec.epsilon = eps;
      const auto dom = build_bridge(spec);
      dom.nsmdp.validate();
      const auto rep = dom.nsmdp.verify_lipschitz(dom.metric);
      require(rep.ok(), "declared drift rate exceeded");
    }
  });

  check("w1 metric axioms and plan marginals on random rows", [&] {
    Rng rng(derive_seed(opt.seed, 11));
    const auto metric = StateMetric::manhattan(
        {{0, 0}, {0, 1}, {1, 1}, {2, 0}, {2, 2}});
    const auto draw = [&] {
      std::vector<double> p(5);
      double tot = 0.0;
      for (double& x : p) tot += (x = 0.05 + rng.uniform());
      for (double& x : p) x /= tot;
      return p;
    };
    for (int trial = 0; trial < 25; ++trial) {
      const auto mu = draw(), nu = draw(), xi = draw();
      const auto ab = w1(mu, nu, metric);
      require(ab.distance >= 0.0, "negative distance");
      require(w1_distance(mu, mu, metric) <= 1e-12, "d(x,x) != 0");
      require(std::abs(ab.distance - w1_distance(nu, mu, metric)) <= 1e-9,
              "asymmetric distance");
      require(ab.distance <= w1_distance(mu, xi, metric) +
                                 w1_distance(xi, nu, metric) + 1e-9,
              "triangle inequality violated");
      for (int i = 0; i < 5; ++i) {
        double row = 0.0, col = 0.0;
        for (int j = 0; j < 5; ++j) {
          row += ab.plan.flow[i][j];
          col += ab.plan.flow[j][i];
        }
        require(std::abs(row - mu[i]) <= 1e-12 &&
                    std::abs(col - nu[i]) <= 1e-12,
                "plan marginals off");
      }
      std::vector<double> dirac(5, 0.0);
      const int k = static_cast<int>(rng.uniform_int(5));
      dirac[k] = 1.0;
      require(std::abs(w1_distance(mu, dirac, metric) -
                       w1_to_dirac(mu, k, metric)) <= 1e-9,
              "point-mass distance mismatch");
    }
  });

  check("ball minimizer matches the two-state closed form", [&] {
    Rng rng(derive_seed(opt.seed, 12));
    const auto metric = StateMetric::discrete(2);
    for (int trial = 0; trial < 50; ++trial) {
      AdmissibleSet adm;
      const double p0 = 0.05 + 0.9 * rng.uniform();
      adm.centerP = CategoricalDistribution({p0, 1.0 - p0});
      adm.radiusP = rng.uniform();
      adm.metric = &metric;
      std::vector<double> v = {rng.uniform(-1.0, 1.0),
                               rng.uniform(-1.0, 1.0)};
      const auto sol = lp_oracle_worst_transition(adm, v);
      const int lo = v[0] <= v[1] ? 0 : 1;
      const double moved = std::min(adm.radiusP, adm.centerP[1 - lo]);
      const double expect = adm.centerP.expectation(v) -
                            moved * std::abs(v[0] - v[1]);
      require(std::abs(sol.value - expect) <= 1e-9,
              "two-state optimum mismatch");
      require(w1_distance(sol.q, adm.centerP.probs(), metric) <=
                  adm.radiusP + 1e-9,
              "minimizer left the ball");
    }
  });

  check("ball minimizer satisfies strong duality on random instances", [&] {
    Rng rng(derive_seed(opt.seed, 13));
    const auto metric = StateMetric::manhattan(
        {{0, 0}, {0, 2}, {1, 0}, {3, 1}, {2, 2}, {0, 4}});
    for (int trial = 0; trial < 40; ++trial) {
      AdmissibleSet adm;
      std::vector<double> p(6);
      double tot = 0.0;
      for (double& x : p) tot += (x = 0.02 + rng.uniform());
      for (double& x : p) x /= tot;
      adm.centerP = CategoricalDistribution(p);
      adm.radiusP = 3.0 * rng.uniform();
      adm.metric = &metric;
      std::vector<double> v(6);
      for (double& x : v) x = rng.uniform(-1.0, 1.0);
      const auto sol = lp_oracle_worst_transition(adm, v);
      require(w1_distance(sol.q, adm.centerP.probs(), metric) <=
                  adm.radiusP + 1e-9,
              "minimizer left the ball");
      double dual = -sol.lambdaDual * adm.radiusP;
      for (int i = 0; i < 6; ++i) {
        if (adm.centerP[i] <= 0.0) continue;
        double cmin = v[0] + sol.lambdaDual * metric(i, 0);
        for (int j = 1; j < 6; ++j)
          cmin = std::min(cmin, v[j] + sol.lambdaDual * metric(i, j));
        dual += adm.centerP[i] * cmin;
      }
      require(std::abs(sol.value - dual) <= 1e-7, "duality gap");
    }
  });

  check("tree search is identical with and without memoization", [&] {
    GeneratorSpec gen;
    gen.nStates = 6;
    gen.nActions = 2;
    gen.horizon = 4;
    gen.lp = 0.2;
    gen.lr = 0.05;
    gen.seed = derive_seed(opt.seed, 14);
    const auto inst = generate_nsmdp(gen);
    RatsConfig cfg;
    cfg.dMax = 3;
    cfg.lp = gen.lp;
    cfg.lr = gen.lr;
    const auto snap = inst.nsmdp.snapshot(0);
    cfg.memoize = true;
    const auto on = rats_plan(snap, inst.metric, 0, cfg);
    cfg.memoize = false;
    const auto off = rats_plan(snap, inst.metric, 0, cfg);
    require(on.action == off.action && on.rootValue == off.rootValue,
            "memoized result differs");
    for (std::size_t a = 0; a < on.actionValues.size(); ++a)
      require(on.actionValues[a] == off.actionValues[a],
              "memoized action value differs");
  });

  check("generated instances respect their declared drift rates", [&] {
    for (int trial = 0; trial < 3; ++trial) {
      GeneratorSpec gen;
      gen.nStates = 5 + trial;
      gen.horizon = 5;
      gen.lp = 0.15;
      gen.lr = 0.1;
      gen.metric = trial == 1 ? MetricKind::Manhattan : MetricKind::Discrete;
      gen.seed = derive_seed(opt.seed, 15 + trial);
      const auto inst = generate_nsmdp(gen);
      const auto rep = inst.nsmdp.verify_lipschitz(inst.metric);
      require(rep.ok(), "drift rate exceeded");
    }
  });

  check("domain files round trip", [&] {
    BridgeSpec spec;
    spec.epsilon = 0.25;
    spec.horizon = 6;
    const auto dom = build_bridge(spec);
    const auto path = std::filesystem::temp_directory_path() /
                      "nsplan_validate_roundtrip.json";
    save_domain_file(dom.nsmdp, dom.metric, dom.start, "bridge", path.string());
    const auto back = load_domain_file(path.string());
    std::filesystem::remove(path);
    require(back.startState == dom.start, "start state changed");
    require(back.nsmdp.horizon() == dom.nsmdp.horizon(), "horizon changed");
    for (int t = 0; t < dom.nsmdp.horizon(); ++t)
      for (int s = 0; s < dom.nsmdp.n_states(); ++s)
        for (int a = 0; a < dom.nsmdp.n_actions(); ++a)
          for (int s2 = 0; s2 < dom.nsmdp.n_states(); ++s2) {
            require(back.nsmdp.trans(t, s, a)[s2] ==
                        dom.nsmdp.trans(t, s, a)[s2],
                    "transition changed in the round trip");
            require(back.nsmdp.reward(t, s, a, s2) ==
                        dom.nsmdp.reward(t, s, a, s2),
                    "reward changed in the round trip");
          }
  });

  if (failures > 0) {
    std::printf("%d check(s) failed\n", failures);
    return 3;
  }
  std::printf("all checks passed\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planning toolkit for drifting Markov decision processes"};
  app.require_subcommand(1);

  Options opt;
  const auto add_common = [&](CLI::App* sub, bool sweepGrid) {
    sub->add_option("--domain", opt.domain,
                    "'bridge' or a path to a domain JSON file")
        ->capture_default_str();
    if (sweepGrid)
      sub->add_option("--epsilon", opt.epsilonGrid,
                      "epsilon grid for the sweep")
          ->capture_default_str();
    else
      sub->add_option("--epsilon", opt.epsilon,
                      "bridge degradation balance in [0, 1]")
          ->capture_default_str();
    sub->add_option("--metric", opt.metric, "state metric for the bridge")
        ->check(CLI::IsMember({"discrete", "manhattan"}))
        ->capture_default_str();
    sub->add_option("--seed", opt.seed, "master random seed")
        ->capture_default_str();
    sub->add_option("--out", opt.out, "output basename (or file for export)");
    sub->add_option("--format", opt.format, "primary report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };
  const auto add_eval = [&](CLI::App* sub) {
    sub->add_option("--algo", opt.algo, "planner to evaluate")
        ->check(CLI::IsMember({"rats", "dp-snapshot", "dp-nsmdp"}))
        ->capture_default_str();
    sub->add_option("--dmax", opt.dmax, "search depth of the tree planner")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--heuristic", opt.heuristic,
                    "frontier heuristic of the tree planner")
        ->check(CLI::IsMember({"zero", "mc"}))
        ->capture_default_str();
    sub->add_option("--episodes", opt.episodes, "episodes per evaluation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--horizon", opt.horizon, "episode length in epochs")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--memoize", opt.memoize,
                    "share decision nodes across the tree (true/false)")
        ->capture_default_str();
  };

  auto* run = app.add_subcommand("run", "Evaluate one planner on one domain");
  add_common(run, false);
  add_eval(run);

  auto* sweep = app.add_subcommand(
      "sweep", "Evaluate every planner over an epsilon grid on the bridge");
  add_common(sweep, true);
  add_eval(sweep);

  auto* validate =
      app.add_subcommand("validate", "Run the library invariant battery");
  validate->add_option("--seed", opt.seed, "seed for the randomized checks")
      ->capture_default_str();

  auto* exportDom = app.add_subcommand(
      "export-domain", "Freeze a domain to a self-contained JSON file");
  add_common(exportDom, false);
  exportDom->add_option("--horizon", opt.exportHorizon,
                        "override the builtin horizon (epochs)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(opt);
    if (sweep->parsed()) return cmd_sweep(opt);
    if (validate->parsed()) return cmd_validate(opt);
    if (exportDom->parsed()) return cmd_export(opt);
  } catch (const nsplan::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
